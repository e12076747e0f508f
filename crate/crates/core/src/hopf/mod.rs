//! Hopf algebra structure maps on a presented algebra, axiom verification,
//! the adjoint coaction, and the convolution algebra of basis linear maps.

mod algmap;
mod linmap;
mod tensor;

pub use algmap::{AlgebraMap, RuleViolation};
pub(crate) use linmap::is_unital_algebra_map;
pub use linmap::{convolution_inverse, convolve, element_inverse, BasisLinearMap, InverseStrategy};
pub use tensor::Tensor;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncalg::{NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

/// Coproduct, counit and antipode on a presented algebra, given on
/// generators and extended (anti-)multiplicatively.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    pres: Arc<Presentation>,
    delta: AlgebraMap,
    eps: AlgebraMap,
    s: AlgebraMap,
    s_inv: Option<AlgebraMap>,
}

impl HopfStructure {
    /// Generator tables are indexed like `pres.gens()`; `None` entries make
    /// the corresponding operation fail on words containing that generator.
    pub fn new(
        pres: Arc<Presentation>,
        delta: Vec<Option<Tensor>>,
        eps: Vec<Option<QRat>>,
        s: Vec<Option<NCElement>>,
        s_inv: Option<Vec<Option<NCElement>>>,
    ) -> Result<Self> {
        let g = pres.gens().clone();
        let delta = AlgebraMap::new(
            "Δ",
            g.clone(),
            vec![pres.clone(), pres.clone()],
            delta,
            false,
        )?;
        let eps = AlgebraMap::from_scalars("ε", g.clone(), eps)?;
        let s = AlgebraMap::from_elements("S", g.clone(), pres.clone(), s, true)?;
        let s_inv = match s_inv {
            Some(v) => Some(AlgebraMap::from_elements("S⁻¹", g, pres.clone(), v, true)?),
            None => None,
        };
        Ok(HopfStructure {
            pres,
            delta,
            eps,
            s,
            s_inv,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn coproduct(&self, x: &NCElement) -> Result<Tensor> {
        self.delta.apply(x)
    }

    pub fn coproduct_word(&self, w: &Word) -> Result<Tensor> {
        self.delta.apply_word(w)
    }

    pub fn counit(&self, x: &NCElement) -> Result<QRat> {
        Ok(self.eps.apply(x)?.to_scalar())
    }

    pub fn counit_word(&self, w: &Word) -> Result<QRat> {
        Ok(self.eps.apply_word(w)?.to_scalar())
    }

    pub fn antipode(&self, x: &NCElement) -> Result<NCElement> {
        Ok(self.s.apply(x)?.to_element())
    }

    pub fn has_bijective_antipode(&self) -> bool {
        self.s_inv.is_some()
    }

    pub fn antipode_inverse(&self, x: &NCElement) -> Result<NCElement> {
        let m = self
            .s_inv
            .as_ref()
            .ok_or_else(|| Error::IncompleteHopf("no inverse antipode supplied".into()))?;
        Ok(m.apply(x)?.to_element())
    }

    pub fn coproduct_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        self.delta.apply_on_leg(t, i)
    }

    pub fn counit_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        self.eps.apply_on_leg(t, i)
    }

    pub fn antipode_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        self.s.apply_on_leg(t, i)
    }

    pub fn antipode_inverse_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        let m = self
            .s_inv
            .as_ref()
            .ok_or_else(|| Error::IncompleteHopf("no inverse antipode supplied".into()))?;
        m.apply_on_leg(t, i)
    }

    /// `(Δ⊗id)∘Δ`, i.e. `a₍₁₎⊗a₍₂₎⊗a₍₃₎`.
    pub fn iterated_coproduct(&self, x: &NCElement) -> Result<Tensor> {
        self.coproduct_on_leg(&self.coproduct(x)?, 0)
    }

    pub fn is_group_like(&self, w: &Word) -> Result<bool> {
        let d = self.coproduct_word(w)?;
        Ok(d == Tensor::pure(vec![w.clone(), w.clone()], QRat::one())
            && self.counit_word(w)?.is_one())
    }

    /// Right adjoint coaction `a ↦ a₍₂₎ ⊗ S(a₍₁₎)a₍₃₎`.
    pub fn adjoint_coaction(&self, x: &NCElement) -> Result<Tensor> {
        let t = self.antipode_on_leg(&self.iterated_coproduct(x)?, 0)?;
        let mut out = Tensor::zero(2);
        for (legs, c) in t.terms() {
            let right = self.pres.mul_words(&legs[0], &legs[2])?;
            for (w, d) in right.terms() {
                out.add_term(vec![legs[1].clone(), w.clone()], &(c * d));
            }
        }
        Ok(out)
    }

    /// `m∘(S⊗id)∘Δ` (left) or `m∘(id⊗S)∘Δ` (right) on an element.
    pub fn antipode_contraction(&self, x: &NCElement, left: bool) -> Result<NCElement> {
        let d = self.coproduct(x)?;
        let t = self.antipode_on_leg(&d, if left { 0 } else { 1 })?;
        Ok(t.merge_legs(0, &self.pres)?.to_element())
    }

    /// The map `a ↦ ε(a)1` into `codomain` on the basis of degree `<= degree`.
    pub fn unit_counit_map(
        &self,
        codomain: Arc<Presentation>,
        degree: usize,
    ) -> Result<BasisLinearMap> {
        BasisLinearMap::from_element_fn(self.pres.clone(), codomain, degree, |w| {
            Ok(NCElement::scalar(self.counit_word(w)?))
        })
    }

    /// Coassociativity, both counit laws, both antipode laws on every basis
    /// word of degree `<= degree`, compatibility of Δ, ε, S with every rule,
    /// and `S∘S⁻¹ = S⁻¹∘S = id` when `S⁻¹` is supplied.
    pub fn check_hopf_axioms(&self, degree: usize) -> Result<Report> {
        let mut rep = Report::new(format!("Hopf axioms for {}", self.pres.name()));
        let g = self.pres.gens();
        let basis = self.pres.monomial_basis(degree);
        let p = self.pres.as_ref();
        let one = NCElement::one();

        let mut fails: [Vec<String>; 7] = Default::default();
        for w in &basis {
            let x = NCElement::word(w.clone());
            let d = self.coproduct_word(w)?;
            let l = self.coproduct_on_leg(&d, 0)?;
            let r = self.coproduct_on_leg(&d, 1)?;
            if l != r {
                fails[0].push(format!(
                    "{}: (Δ⊗id)Δ = {} but (id⊗Δ)Δ = {}",
                    w.render(g),
                    l.render_uniform(g),
                    r.render_uniform(g)
                ));
            }
            let cl = self.counit_on_leg(&d, 0)?.to_element();
            if cl != x {
                fails[1].push(format!("{}: (ε⊗id)Δ = {}", w.render(g), p.render(&cl)));
            }
            let cr = self.counit_on_leg(&d, 1)?.to_element();
            if cr != x {
                fails[2].push(format!("{}: (id⊗ε)Δ = {}", w.render(g), p.render(&cr)));
            }
            let e = one.scale(&self.counit_word(w)?);
            let sl = self.antipode_contraction(&x, true)?;
            if sl != e {
                fails[3].push(format!(
                    "{}: m(S⊗id)Δ = {} ≠ {}",
                    w.render(g),
                    p.render(&sl),
                    p.render(&e)
                ));
            }
            let sr = self.antipode_contraction(&x, false)?;
            if sr != e {
                fails[4].push(format!(
                    "{}: m(id⊗S)Δ = {} ≠ {}",
                    w.render(g),
                    p.render(&sr),
                    p.render(&e)
                ));
            }
            if let Some(si) = &self.s_inv {
                let a = self.antipode(&si.apply_word(w)?.to_element())?;
                let b = si.apply(&self.antipode(&x)?)?.to_element();
                if a != x || b != x {
                    fails[5].push(format!(
                        "{}: S∘S⁻¹ = {}, S⁻¹∘S = {}",
                        w.render(g),
                        p.render(&a),
                        p.render(&b)
                    ));
                }
            }
        }
        for (m, name) in [(&self.delta, "Δ"), (&self.eps, "ε"), (&self.s, "S")]
            .into_iter()
            .chain(self.s_inv.as_ref().map(|m| (m, "S⁻¹")))
        {
            for v in m.rule_violations(p)? {
                let r = &p.rules()[v.rule];
                fails[6].push(format!(
                    "{} breaks rule {} -> {}",
                    name,
                    r.lhs.render(g),
                    p.render(&r.rhs)
                ));
            }
        }

        let names = [
            ("hopf.coassociativity", "coassociativity"),
            ("hopf.counit.left", "counit law, left"),
            ("hopf.counit.right", "counit law, right"),
            ("hopf.antipode.left", "antipode law m(S⊗id)Δ = 1ε"),
            ("hopf.antipode.right", "antipode law m(id⊗S)Δ = 1ε"),
            ("hopf.antipode.inverse", "S∘S⁻¹ = S⁻¹∘S = id"),
            ("hopf.rules", "structure maps respect every relation"),
        ];
        for (k, (id, anchor)) in names.iter().enumerate() {
            if k == 5 && self.s_inv.is_none() {
                rep.info(*id, *anchor, degree, "no inverse antipode supplied");
                continue;
            }
            if fails[k].is_empty() {
                let what = if k == 6 {
                    format!("{} rules", p.rules().len())
                } else {
                    format!("{} basis words", basis.len())
                };
                rep.check(*id, *anchor, degree, true, format!("checked {}", what));
            } else {
                for f in &fails[k] {
                    rep.check(*id, *anchor, degree, false, f.clone());
                }
            }
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;

    fn suq2() -> (crate::dsl::Model, HopfStructure) {
        let m = presets::load("suq2").unwrap();
        let h = m.hopf("SUq2").unwrap().clone();
        (m, h)
    }

    fn el(h: &HopfStructure, s: &str) -> NCElement {
        let p = h.presentation();
        p.reduce(&parse_element(s, p.gens()).unwrap()).unwrap()
    }

    #[test]
    fn coproduct_of_generators() {
        let (_, h) = suq2();
        let g = h.presentation().gens().clone();
        assert_eq!(
            h.coproduct(&el(&h, "a")).unwrap().render_uniform(&g),
            "a(x)a + b(x)c"
        );
        assert_eq!(h.coproduct(&NCElement::one()).unwrap(), Tensor::unit(2));
    }

    #[test]
    fn counit_and_antipode_values() {
        let (_, h) = suq2();
        assert!(h.counit(&el(&h, "a")).unwrap().is_one());
        assert!(h.counit(&el(&h, "b")).unwrap().is_zero());
        assert!(h.counit(&el(&h, "a*d")).unwrap().is_one());
        assert_eq!(h.antipode(&el(&h, "b")).unwrap(), el(&h, "-q^-1*b"));
        assert_eq!(h.antipode(&el(&h, "a*b")).unwrap(), el(&h, "-q^-1*b*d"));
        assert_eq!(h.antipode(&NCElement::one()).unwrap(), NCElement::one());
    }

    #[test]
    fn matrix_antipode_identities() {
        let (_, h) = suq2();
        for (g, e) in [("a", 1), ("b", 0), ("c", 0), ("d", 1)] {
            let x = el(&h, g);
            let want = NCElement::scalar(QRat::from_int(e));
            assert_eq!(h.antipode_contraction(&x, true).unwrap(), want);
            assert_eq!(h.antipode_contraction(&x, false).unwrap(), want);
        }
    }

    #[test]
    fn axioms_suq2_degree_3() {
        let (_, h) = suq2();
        let r = h.check_hopf_axioms(3).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn axioms_laurent_degree_4() {
        let m = presets::load("u1").unwrap();
        let r = m.hopf("H").unwrap().check_hopf_axioms(4).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn sign_flipped_antipode_fails_on_b() {
        let (_, h) = suq2();
        let p = h.presentation().clone();
        let g = |s: &str| Some(el(&h, s));
        let delta = (0..4)
            .map(|i| h.delta.generator_value(i).cloned())
            .collect();
        let eps = vec![
            Some(QRat::one()),
            Some(QRat::zero()),
            Some(QRat::zero()),
            Some(QRat::one()),
        ];
        let s = vec![g("d"), g("q^-1*b"), g("-q*c"), g("a")];
        let broken = HopfStructure::new(p, delta, eps, s, None).unwrap();
        let r = broken.check_hopf_axioms(1).unwrap();
        assert!(!r.passed());
        assert!(r
            .failures()
            .any(|f| f.id == "hopf.antipode.left" && f.witness.starts_with("b:")));
    }

    #[test]
    fn adjoint_coaction_of_a() {
        let (_, h) = suq2();
        let g = h.presentation().gens().clone();
        let ad = h.adjoint_coaction(&el(&h, "a")).unwrap();
        assert_eq!(
            ad.render_uniform(&g),
            "a(x)1 + (q^-1)*a(x)b*c + (-q^-1)*d(x)b*c + b(x)d*c + (-q^-2)*c(x)a*b"
        );
        // counit on the second leg gives back a
        assert_eq!(h.counit_on_leg(&ad, 1).unwrap().to_element(), el(&h, "a"));
        let m = presets::load("u1").unwrap();
        let hu = m.hopf("H").unwrap();
        let z3 = hu
            .presentation()
            .reduce(&parse_element("Z^3", hu.presentation().gens()).unwrap())
            .unwrap();
        let adz = hu.adjoint_coaction(&z3).unwrap();
        assert_eq!(adz.render_uniform(hu.presentation().gens()), "Z^3(x)1");
    }
}
