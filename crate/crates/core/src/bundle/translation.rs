use std::collections::BTreeMap;

use super::{BundleSpec, Mode};
use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::ncalg::linalg::{kernel, rank, span, Echelon, SparseVec};
use crate::ncalg::{solve_membership, NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

/// Pairs `(u, v)` of basis words with `deg u + deg v <= degree`.
pub(crate) fn pair_words(p: &Presentation, degree: usize) -> Vec<(Word, Word)> {
    let basis = p.monomial_basis(degree);
    let mut out = Vec::new();
    for u in &basis {
        for v in &basis {
            if u.degree() + v.degree() <= degree {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// Extra word length allowed when building `P(dB)P` for exactness.
pub const EXACT_SLACK: usize = 2;

/// `τ(a)` for every `H`-basis word `a` of degree `<= degree`, each checked
/// against `χ(τ(a)) = 1⊗a`.
#[derive(Debug, Clone)]
pub struct TranslationTable {
    pub degree: usize,
    pub entries: BTreeMap<Word, Tensor>,
}

impl TranslationTable {
    pub fn get(&self, a: &Word) -> Result<&Tensor> {
        self.entries.get(a).ok_or_else(|| {
            Error::TruncationTooSmall(format!(
                "no translation for an H-word of degree {}",
                a.degree()
            ))
        })
    }

    /// `τ` extended linearly to an element of `H`.
    pub fn apply(&self, a: &NCElement) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (w, c) in a.terms() {
            out.add_scaled(self.get(w)?, c);
        }
        Ok(out)
    }
}

impl BundleSpec {
    /// A preimage of `a` under `π`, searched over `P`-basis words of
    /// increasing degree up to `deg a + D`.
    pub fn pi_preimage(&self, a: &NCElement) -> Result<NCElement> {
        let pi = self
            .projection()
            .ok_or_else(|| Error::Hypothesis("bundle has no projection".into()))?;
        let p = self.total();
        let a = self.h_pres().reduce(a)?;
        let limit = a.max_degree() + self.degree();
        for k in 0..=limit {
            let basis = p.monomial_basis(k);
            let images = basis
                .iter()
                .map(|w| Ok(pi.apply_word(w)?.to_element()))
                .collect::<Result<Vec<_>>>()?;
            if let Some(x) = solve_membership(&a, &images) {
                return Ok(NCElement::from_terms(
                    basis.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
                ));
            }
        }
        Err(Error::PreimageNotFound {
            target: self.h_pres().render(&a),
            degree: limit,
        })
    }

    /// A representative in `P⊗P` of the translation map `τ(a)`, with
    /// `χ(τ(a)) = 1⊗a` verified.
    pub fn translation_map(&self, a: &NCElement) -> Result<Tensor> {
        let hp = self.h_pres();
        let a = hp.reduce(a)?;
        let t = match self.mode() {
            Mode::Projection => {
                // τ(a) = S(u₍₁₎) ⊗ u₍₂₎ for u ∈ π⁻¹(a)
                let ph = self
                    .total_hopf()
                    .expect("projection mode has a Hopf total space");
                let u = self.pi_preimage(&a)?;
                ph.antipode_on_leg(&ph.coproduct(&u)?, 0)?
            }
            Mode::Trivialisation => {
                // τ = (Φ⁻¹⊗Φ)∘Δ
                let tr = self.trivialisation().unwrap();
                let d = self.hopf().coproduct(&a)?;
                tr.phi.apply_on_leg(&tr.phi_inv.apply_on_leg(&d, 0)?, 1)?
            }
            Mode::Bare => {
                let target = Tensor::from_elements(&[&NCElement::one(), &a]);
                let limit = 2 * self.degree().max(a.max_degree());
                self.chi_preimage(&target, limit)?
                    .ok_or_else(|| Error::PreimageNotFound {
                        target: format!("1(x){}", hp.render(&a)),
                        degree: limit,
                    })?
            }
        };
        let chi = self.chi(&t)?;
        if chi != Tensor::from_elements(&[&NCElement::one(), &a]) {
            return Err(Error::Hypothesis(format!(
                "χ(τ({})) = {}",
                hp.render(&a),
                chi.render(&[self.total().gens(), hp.gens()])
            )));
        }
        Ok(t)
    }

    /// Solves `χ(x) = target` over pairs of `P`-words of total degree
    /// `<= degree`.
    pub fn chi_preimage(&self, target: &Tensor, degree: usize) -> Result<Option<Tensor>> {
        let pairs = pair_words(self.total(), degree);
        let mut ech = Echelon::new();
        for (u, v) in &pairs {
            let x = Tensor::pure(vec![u.clone(), v.clone()], QRat::one());
            ech.insert(self.chi(&x)?.as_map());
        }
        Ok(ech.coordinates(target.as_map()).map(|coords| {
            let mut t = Tensor::zero(2);
            for (j, c) in coords {
                let (u, v) = &pairs[j];
                t.add_term(vec![u.clone(), v.clone()], &c);
            }
            t
        }))
    }

    pub fn translation_table(&self, degree: usize) -> Result<TranslationTable> {
        let mut entries = BTreeMap::new();
        for a in self.h_pres().monomial_basis(degree) {
            let t = self.translation_map(&NCElement::word(a.clone()))?;
            entries.insert(a, t);
        }
        Ok(TranslationTable { degree, entries })
    }

    /// For every `H`-basis word `a` of degree `<= degree`, exhibits `x` with
    /// `χ(x) = 1⊗a`, and spot-checks left `P`-linearity of `χ`.
    pub fn freeness_check(&self, degree: usize) -> Result<Report> {
        let hp = self.h_pres();
        let p = self.total();
        let g2 = [p.gens(), p.gens()];
        let mut rep = Report::new(format!("freeness ({} mode)", self.mode().as_str()));
        for a in hp.monomial_basis(degree) {
            let name = a.render(hp.gens());
            let id = format!("bundle.free.{name}");
            match self.translation_map(&NCElement::word(a.clone())) {
                Ok(t) => rep.check(
                    id,
                    "χ(τ(a)) = 1⊗a",
                    degree,
                    true,
                    format!("τ({name}) = {}", t.render(&g2)),
                ),
                Err(e) => rep.check(id, "χ(τ(a)) = 1⊗a", degree, false, e.to_string()),
            }
        }
        let mut bad = None;
        let small = p.monomial_basis(degree.min(2));
        'outer: for w in &small {
            for (u, v) in pair_words(p, degree.min(2)) {
                let x = Tensor::pure(vec![u, v], QRat::one());
                let lhs = self.chi(&x.left_act(&NCElement::word(w.clone()), p)?)?;
                let rhs = self.chi(&x)?.left_act(&NCElement::word(w.clone()), p)?;
                if lhs != rhs {
                    bad = Some(format!("w = {}", w.render(p.gens())));
                    break 'outer;
                }
            }
        }
        rep.check(
            "bundle.chi.left_linear",
            "χ(w·x) = (w⊗1)χ(x)",
            degree.min(2),
            bad.is_none(),
            bad.unwrap_or_default(),
        );
        Ok(rep)
    }

    /// Compares `ker χ` within the span of `P⊗P`-words of total degree
    /// `<= degree` with the horizontal forms `P(dB)P` built from words of
    /// degree `<= degree + EXACT_SLACK`; rewriting such as `ad = 1 + q bc`
    /// lowers degree, so the truncations only line up with some slack.
    pub fn exactness_check(&self, degree: usize) -> Result<Report> {
        let p = self.total();
        let pairs = pair_words(p, degree);
        let mut images = Vec::new();
        for (u, v) in &pairs {
            images.push(
                self.chi(&Tensor::pure(vec![u.clone(), v.clone()], QRat::one()))?
                    .as_map()
                    .clone(),
            );
        }
        let ker: Vec<SparseVec<Vec<Word>>> = kernel(&images)
            .into_iter()
            .map(|rel| {
                rel.into_iter()
                    .map(|(j, c)| (vec![pairs[j].0.clone(), pairs[j].1.clone()], c))
                    .collect()
            })
            .collect();
        let hor = self.horizontal_span(degree + EXACT_SLACK)?;
        let ker_span = span(&ker);
        let hor_span = span(&hor);
        let mut hor_in_ker = None;
        for x in &hor {
            if !self.chi(&Tensor::from_map(2, x.clone()))?.is_zero() {
                hor_in_ker = Some(x);
                break;
            }
        }
        let ker_in_hor = ker.iter().find(|x| !hor_span.contains(x));
        let g2 = [p.gens(), p.gens()];
        let render = |v: &SparseVec<Vec<Word>>| Tensor::from_map(2, v.clone()).render(&g2);
        // dim(P(dB)P ∩ W) = dim P(dB)P − rank of the projection away from W,
        // W the words of total degree <= degree
        let outside: Vec<SparseVec<Vec<Word>>> = hor_span
            .basis()
            .map(|v| {
                v.iter()
                    .filter(|(k, _)| k.iter().map(Word::degree).sum::<usize>() > degree)
                    .map(|(k, c)| (k.clone(), c.clone()))
                    .collect()
            })
            .collect();
        let hor_low = hor_span.rank() - rank(&outside);
        let mut rep = Report::new(format!("exactness ({} mode)", self.mode().as_str()));
        rep.check(
            "bundle.exact.dims",
            "dim ker χ = dim P(dB)P",
            degree,
            ker_span.rank() == hor_low,
            format!(
                "dim ker χ = {}, dim P(dB)P = {} (built to degree {})",
                ker_span.rank(),
                hor_low,
                degree + EXACT_SLACK
            ),
        );
        rep.check(
            "bundle.exact.horizontal_in_kernel",
            "P(dB)P ⊂ ker χ",
            degree,
            hor_in_ker.is_none(),
            hor_in_ker
                .map(render)
                .unwrap_or_else(|| format!("{} spanning forms", hor.len())),
        );
        rep.check(
            "bundle.exact.kernel_in_horizontal",
            "ker χ ⊂ P(dB)P",
            degree,
            ker_in_hor.is_none(),
            ker_in_hor
                .map(render)
                .unwrap_or_else(|| format!("dim {}", ker_span.rank())),
        );
        Ok(rep)
    }

    /// Spanning set of `u·d(b)·v` for coinvariant `b` and basis words
    /// `u, v`, with total degree `<= degree`.
    pub fn horizontal_span(&self, degree: usize) -> Result<Vec<SparseVec<Vec<Word>>>> {
        let p = self.total();
        let basis = p.monomial_basis(degree);
        let mut out = Vec::new();
        for b in self.coinvariants(degree)? {
            if b.as_scalar().is_some() {
                continue;
            }
            let db = crate::diffcalc::d_universal(&b);
            for u in &basis {
                for v in &basis {
                    if u.degree() + b.max_degree() + v.degree() > degree {
                        continue;
                    }
                    let t = db
                        .tensor()
                        .left_act(&NCElement::word(u.clone()), p)?
                        .right_act(&NCElement::word(v.clone()), p)?;
                    if !t.is_zero() {
                        out.push(t.as_map().clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_tensor, Model};
    use crate::presets;

    fn fibration(d: usize) -> BundleSpec {
        BundleSpec::from_model(&presets::load("suq2").unwrap(), d).unwrap()
    }

    #[test]
    fn translation_of_z() {
        let b = fibration(3);
        let p = b.total();
        let z = NCElement::word(b.h_pres().gens().parse_word("Z").unwrap());
        let t = b.translation_map(&z).unwrap();
        let expect = parse_tensor("d(x)a - q^-1*b(x)c", &[p.gens(), p.gens()]).unwrap();
        assert_eq!(t, expect);
        assert_eq!(
            b.pi_preimage(&z).unwrap(),
            NCElement::word(p.gens().parse_word("a").unwrap())
        );
        let one = b.translation_map(&NCElement::one()).unwrap();
        assert_eq!(one, Tensor::unit(2));
        let table = b.translation_table(3).unwrap();
        assert_eq!(table.entries.len(), 7);
    }

    #[test]
    fn fibration_is_free_and_exact_at_low_degree() {
        let b = fibration(2);
        let f = b.freeness_check(2).unwrap();
        assert!(f.passed(), "{}", f.render_text());
        let e = b.exactness_check(2).unwrap();
        assert!(e.passed(), "{}", e.render_text());
        let e0 = b.exactness_check(0).unwrap();
        assert!(e0
            .find("bundle.exact.dims")
            .unwrap()
            .witness
            .contains("dim ker χ = 0"));
    }

    #[test]
    fn trivial_coaction_is_not_free() {
        let src = format!(
            "{}coaction T : H -> H {{ Z = Z(x)1; Zi = Zi(x)1 }}\n",
            presets::source("u1").unwrap()
        );
        let b = BundleSpec::from_model(&Model::from_source(&src).unwrap(), 1).unwrap();
        let rep = b.freeness_check(1).unwrap();
        assert_eq!(
            rep.find("bundle.free.1").unwrap().status,
            crate::report::Status::Pass
        );
        assert_eq!(
            rep.find("bundle.free.Z").unwrap().status,
            crate::report::Status::Fail
        );
    }

    #[test]
    fn trivial_bundle_translation_is_group_like() {
        let b = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        assert_eq!(b.mode(), Mode::Trivialisation);
        let hp = b.h_pres();
        let p = b.total();
        let z2 = NCElement::word(hp.gens().parse_word("Z^2").unwrap());
        let t = b.translation_map(&z2).unwrap();
        let expect = parse_tensor("Zi^2(x)Z^2", &[p.gens(), p.gens()]).unwrap();
        assert_eq!(t, expect);
        assert!(b.freeness_check(2).unwrap().passed());
        let e = b.exactness_check(2).unwrap();
        assert!(e.passed(), "{}", e.render_text());
    }
}
