//! Comodule algebras and quantum principal bundles: coinvariants, the
//! canonical map `χ`, translation maps, freeness and exactness at a
//! truncation degree, trivial bundles as crossed products, associated
//! bundles, and agreement with first-order calculi.

mod associated;
mod calculus;
mod translation;
mod trivial;

pub use associated::{AssociatedBundle, Fibre};
pub use calculus::{calculus_agreement_check, chi_n, three_d_ideal, universal_forms};
pub use translation::{TranslationTable, EXACT_SLACK};
pub use trivial::crossed_pair;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::diffcalc::CalculusIdeal;
use crate::dsl::{MapKind, Model};
use crate::error::{Error, Result};
use crate::hopf::{
    convolution_inverse, AlgebraMap, BasisLinearMap, HopfStructure, InverseStrategy, Tensor,
};
use crate::ncalg::linalg::{kernel, reduced_basis, span, SparseVec};
use crate::ncalg::{element_vec, NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

/// An algebra `P` with a right coaction `Δ_R : P → P⊗H` that is an
/// algebra map, given on generators.
#[derive(Debug, Clone)]
pub struct ComoduleAlgebra {
    p: Arc<Presentation>,
    h: HopfStructure,
    coact: AlgebraMap,
}

impl ComoduleAlgebra {
    /// Checks that `coact` respects every relation of `P` and that
    /// `(id⊗ε)Δ_R` is the identity on generators.
    pub fn new(p: Arc<Presentation>, h: HopfStructure, coact: AlgebraMap) -> Result<Self> {
        if coact.arity() != 2 {
            return Err(Error::Hypothesis("coaction must have legs P and H".into()));
        }
        if let Some(v) = coact.rule_violations(&p)?.first() {
            let r = &p.rules()[v.rule];
            return Err(Error::Hypothesis(format!(
                "coaction does not respect {} = {}",
                r.lhs.render(p.gens()),
                p.render(&r.rhs)
            )));
        }
        let ca = ComoduleAlgebra { p, h, coact };
        for g in 0..ca.p.gens().len() as u32 {
            let w = Word::gen(g);
            let back = ca.h.counit_on_leg(&ca.coaction_word(&w)?, 1)?;
            if back != Tensor::pure(vec![w.clone()], QRat::one()) {
                return Err(Error::Hypothesis(format!(
                    "(id⊗ε)Δ_R({}) ≠ {}",
                    w.render(ca.p.gens()),
                    w.render(ca.p.gens())
                )));
            }
        }
        Ok(ca)
    }

    /// `Δ_R = (id⊗π)∘Δ` for a Hopf algebra map `π : P → H`.
    pub fn from_projection(ph: &HopfStructure, h: &HopfStructure, pi: &AlgebraMap) -> Result<Self> {
        let p = ph.presentation().clone();
        let mut vals = Vec::new();
        for g in 0..p.gens().len() as u32 {
            let d = ph.coproduct_word(&Word::gen(g))?;
            vals.push(Some(pi.apply_on_leg(&d, 1)?));
        }
        let coact = AlgebraMap::new(
            "DR",
            p.gens().clone(),
            vec![p.clone(), h.presentation().clone()],
            vals,
            false,
        )?;
        Self::new(p, h.clone(), coact)
    }

    pub fn total(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn hopf(&self) -> &HopfStructure {
        &self.h
    }

    pub fn h_pres(&self) -> &Arc<Presentation> {
        self.h.presentation()
    }

    pub fn coaction(&self, u: &NCElement) -> Result<Tensor> {
        self.coact.apply(u)
    }

    pub fn coaction_word(&self, w: &Word) -> Result<Tensor> {
        self.coact.apply_word(w)
    }

    /// Applies `Δ_R` to leg `i`; the new `H` leg follows it.
    pub fn coaction_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        self.coact.apply_on_leg(t, i)
    }

    /// The diagonal coaction on `P^{⊗k}`,
    /// `u⊗v⊗… ↦ u₍₀₎⊗v₍₀₎⊗…⊗u₍₁₎v₍₁₎…`, with the `H` leg last.
    pub fn coaction_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let hp = self.h_pres();
        let k = t.arity();
        let mut out = Tensor::zero(k + 1);
        for (legs, c) in t.terms() {
            let mut acc = Tensor::pure(vec![Word::one()], c.clone());
            for (j, w) in legs.iter().enumerate() {
                let d = self.coaction_word(w)?;
                let mut next = Tensor::zero(j + 2);
                for (al, ac) in acc.terms() {
                    for (dl, dc) in d.terms() {
                        let prod = hp.mul_words(&al[j], &dl[1])?;
                        for (hw, hc) in prod.terms() {
                            let mut nl = al[..j].to_vec();
                            nl.push(dl[0].clone());
                            nl.push(hw.clone());
                            next.add_term(nl, &(&(ac * dc) * hc));
                        }
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, &QRat::one());
        }
        Ok(out)
    }

    pub fn is_coinvariant(&self, u: &NCElement) -> Result<bool> {
        let u = self.p.reduce(u)?;
        Ok(self.coaction(&u)? == Tensor::from_elements(&[&u, &NCElement::one()]))
    }

    /// `(Δ_R⊗id)Δ_R = (id⊗Δ)Δ_R` and `(id⊗ε)Δ_R = id` on the basis of
    /// degree `<= degree`.
    pub fn coaction_axioms(&self, degree: usize) -> Result<Report> {
        let mut rep = Report::new("comodule algebra");
        let basis = self.p.monomial_basis(degree);
        let (mut coass, mut counit) = (None, None);
        for w in &basis {
            let d = self.coaction_word(w)?;
            if coass.is_none() && self.coaction_on_leg(&d, 0)? != self.h.coproduct_on_leg(&d, 1)? {
                coass = Some(format!("word: {}", w.render(self.p.gens())));
            }
            if counit.is_none()
                && self.h.counit_on_leg(&d, 1)? != Tensor::pure(vec![w.clone()], QRat::one())
            {
                counit = Some(format!("word: {}", w.render(self.p.gens())));
            }
        }
        let n = format!("checked {} basis words", basis.len());
        rep.check(
            "comodule.coassociativity",
            "(Δ_R⊗id)Δ_R = (id⊗Δ)Δ_R",
            degree,
            coass.is_none(),
            coass.unwrap_or_else(|| n.clone()),
        );
        rep.check(
            "comodule.counit",
            "(id⊗ε)Δ_R = id",
            degree,
            counit.is_none(),
            counit.unwrap_or(n),
        );
        Ok(rep)
    }

    /// Basis of `P^{coH}` within degree `<= degree`, in reduced echelon
    /// form over normal words.
    pub fn coinvariants(&self, degree: usize) -> Result<Vec<NCElement>> {
        let basis = self.p.monomial_basis(degree);
        let mut images: Vec<SparseVec<Vec<Word>>> = Vec::new();
        for w in &basis {
            let t = self
                .coaction_word(w)?
                .sub(&Tensor::pure(vec![w.clone(), Word::one()], QRat::one()));
            images.push(t.as_map().clone());
        }
        let elems: Vec<SparseVec<Word>> = kernel(&images)
            .into_iter()
            .map(|rel| {
                rel.into_iter()
                    .map(|(j, c)| (basis[j].clone(), c))
                    .collect()
            })
            .collect();
        Ok(reduced_basis(&elems)
            .into_iter()
            .map(NCElement::from_terms)
            .collect())
    }

    /// First product `x·y` of basis elements with `deg x + deg y <= degree`
    /// that leaves the span, or `None` when the span is closed.
    pub fn closure_failure(&self, basis: &[NCElement], degree: usize) -> Result<Option<String>> {
        let ech = span(&basis.iter().map(element_vec).collect::<Vec<_>>());
        for x in basis {
            for y in basis {
                if x.max_degree() + y.max_degree() > degree {
                    continue;
                }
                let xy = self.p.multiply(x, y)?;
                if !ech.contains(&element_vec(&xy)) {
                    return Ok(Some(format!(
                        "({})·({}) = {}",
                        self.p.render(x),
                        self.p.render(y),
                        self.p.render(&xy)
                    )));
                }
            }
        }
        Ok(None)
    }

    /// `χ(u⊗v) = u v₍₀₎ ⊗ v₍₁₎`.
    pub fn chi(&self, x: &Tensor) -> Result<Tensor> {
        if x.arity() != 2 {
            return Err(Error::NotExpressible(format!(
                "χ needs 2 legs, got {}",
                x.arity()
            )));
        }
        self.coaction_on_leg(x, 1)?.merge_legs(0, &self.p)
    }
}

/// How a translation map can be produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Hopf algebra projection `π : P → H`.
    Projection,
    /// Trivialisation `Φ : H → P`.
    Trivialisation,
    /// Neither; preimages under `χ` are searched directly.
    Bare,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Projection => "π",
            Mode::Trivialisation => "Φ",
            Mode::Bare => "bare",
        }
    }
}

/// A convolution-invertible intertwiner `Φ : H → P` with its inverse.
#[derive(Debug, Clone)]
pub struct Trivialisation {
    pub phi: BasisLinearMap,
    pub phi_inv: BasisLinearMap,
    pub strategy: InverseStrategy,
}

/// A comodule algebra together with the data needed to certify it as a
/// principal bundle at a truncation degree.
#[derive(Debug)]
pub struct BundleSpec {
    ca: ComoduleAlgebra,
    p_hopf: Option<HopfStructure>,
    pi: Option<AlgebraMap>,
    triv: Option<Trivialisation>,
    ideal: Option<CalculusIdeal>,
    degree: usize,
    coinv: RwLock<BTreeMap<usize, Vec<NCElement>>>,
}

impl BundleSpec {
    pub fn bare(ca: ComoduleAlgebra, degree: usize) -> Self {
        BundleSpec {
            ca,
            p_hopf: None,
            pi: None,
            triv: None,
            ideal: None,
            degree,
            coinv: RwLock::new(BTreeMap::new()),
        }
    }

    /// Bundle over the quotient space of a Hopf algebra projection. Checks
    /// that `π` is a Hopf algebra map on generators.
    pub fn homogeneous(
        ph: HopfStructure,
        h: HopfStructure,
        pi: AlgebraMap,
        degree: usize,
    ) -> Result<Self> {
        let p = ph.presentation().clone();
        if let Some(v) = pi.rule_violations(&p)?.first() {
            return Err(Error::Hypothesis(format!(
                "π does not respect {}",
                p.rules()[v.rule].lhs.render(p.gens())
            )));
        }
        for g in 0..p.gens().len() as u32 {
            let w = Word::gen(g);
            let name = w.render(p.gens());
            let pg = pi.apply_word(&w)?;
            let lhs = pi.apply_on_leg(&pi.apply_on_leg(&ph.coproduct_word(&w)?, 0)?, 1)?;
            if lhs != h.coproduct(&pg.to_element())? {
                return Err(Error::Hypothesis(format!("(π⊗π)Δ({name}) ≠ Δπ({name})")));
            }
            if h.counit(&pg.to_element())? != ph.counit_word(&w)? {
                return Err(Error::Hypothesis(format!("επ({name}) ≠ ε({name})")));
            }
        }
        let ca = ComoduleAlgebra::from_projection(&ph, &h, &pi)?;
        let mut b = Self::bare(ca, degree);
        b.p_hopf = Some(ph);
        b.pi = Some(pi);
        Ok(b)
    }

    /// Trivial bundle. `phi` must be an intertwiner,
    /// `Δ_R∘Φ = (Φ⊗id)∘Δ`, and convolution-invertible.
    pub fn trivial(ca: ComoduleAlgebra, phi: BasisLinearMap) -> Result<Self> {
        let h = ca.hopf().clone();
        for (w, v) in phi.values() {
            let lhs = ca.coaction(&v.to_element())?;
            let rhs = phi.apply_on_leg(&h.coproduct_word(w)?, 0)?;
            if lhs != rhs {
                return Err(Error::NotIntertwiner(format!(
                    "Δ_R Φ({}) ≠ (Φ⊗id)Δ({})",
                    w.render(h.presentation().gens()),
                    w.render(h.presentation().gens())
                )));
            }
        }
        let (phi_inv, strategy) = convolution_inverse(&phi, &h)?;
        let degree = phi.degree();
        let mut b = Self::bare(ca, degree);
        b.triv = Some(Trivialisation {
            phi,
            phi_inv,
            strategy,
        });
        Ok(b)
    }

    /// Builds the bundle declared in a document: a projection between two
    /// Hopf algebras, or a coaction with an optional trivialisation.
    pub fn from_model(m: &Model, degree: usize) -> Result<Self> {
        if let Some(pd) = m.map_of_kind(MapKind::Projection) {
            let ph = m.hopf(&pd.source)?.clone();
            let h = m.hopf(&pd.target)?.clone();
            return Self::homogeneous(ph, h, m.algebra_map(&pd.name)?, degree);
        }
        let cd = m.map_of_kind(MapKind::Coaction).ok_or_else(|| {
            Error::Usage("document declares neither a projection nor a coaction".into())
        })?;
        let h = m.hopf(&cd.target)?.clone();
        let ca = ComoduleAlgebra::new(m.algebra(&cd.source)?, h.clone(), m.algebra_map(&cd.name)?)?;
        match m.map_of_kind(MapKind::Trivialisation) {
            Some(td) => {
                let f = m.algebra_map(&td.name)?;
                let phi = BasisLinearMap::from_fn(
                    h.presentation().clone(),
                    ca.total().clone(),
                    degree,
                    1,
                    |w| f.apply_word(w),
                )?;
                Self::trivial(ca, phi)
            }
            None => Ok(Self::bare(ca, degree)),
        }
    }

    pub fn with_ideal(mut self, ideal: CalculusIdeal) -> Self {
        self.ideal = Some(ideal);
        self
    }

    pub fn mode(&self) -> Mode {
        if self.pi.is_some() {
            Mode::Projection
        } else if self.triv.is_some() {
            Mode::Trivialisation
        } else {
            Mode::Bare
        }
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        &self.ca
    }

    pub fn total(&self) -> &Arc<Presentation> {
        self.ca.total()
    }

    pub fn hopf(&self) -> &HopfStructure {
        self.ca.hopf()
    }

    pub fn h_pres(&self) -> &Arc<Presentation> {
        self.ca.h_pres()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn total_hopf(&self) -> Option<&HopfStructure> {
        self.p_hopf.as_ref()
    }

    pub fn projection(&self) -> Option<&AlgebraMap> {
        self.pi.as_ref()
    }

    pub fn trivialisation(&self) -> Option<&Trivialisation> {
        self.triv.as_ref()
    }

    pub fn ideal(&self) -> Option<&CalculusIdeal> {
        self.ideal.as_ref()
    }

    /// Coinvariants of degree `<= degree`, cached.
    pub fn coinvariants(&self, degree: usize) -> Result<Vec<NCElement>> {
        if let Some(b) = self.coinv.read().unwrap().get(&degree) {
            return Ok(b.clone());
        }
        let b = self.ca.coinvariants(degree)?;
        self.coinv.write().unwrap().insert(degree, b.clone());
        Ok(b)
    }

    pub fn chi(&self, x: &Tensor) -> Result<Tensor> {
        self.ca.chi(x)
    }

    /// Coinvariant basis plus a closure certificate.
    pub fn coinvariant_report(&self, degree: usize) -> Result<(Vec<NCElement>, Report)> {
        let b = self.coinvariants(degree)?;
        let p = self.total();
        let mut rep = Report::new("coinvariants");
        let listing = b.iter().map(|x| p.render(x)).collect::<Vec<_>>().join(", ");
        rep.info(
            "bundle.coinvariants.basis",
            "P^coH",
            degree,
            format!("dim {}: {}", b.len(), listing),
        );
        let fail = self.ca.closure_failure(&b, degree)?;
        rep.check(
            "bundle.coinvariants.closed",
            "P^coH is a subalgebra",
            degree,
            fail.is_none(),
            fail.unwrap_or_else(|| "all products within degree lie in the span".into()),
        );
        Ok((b, rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;

    fn fibration(d: usize) -> BundleSpec {
        BundleSpec::from_model(&presets::load("suq2").unwrap(), d).unwrap()
    }

    fn el(b: &BundleSpec, s: &str) -> NCElement {
        let p = b.total();
        p.reduce(&parse_element(s, p.gens()).unwrap()).unwrap()
    }

    #[test]
    fn fibration_coaction() {
        let b = fibration(2);
        assert_eq!(b.mode(), Mode::Projection);
        let g = [b.total().gens(), b.h_pres().gens()];
        let ca = b.comodule();
        assert_eq!(ca.coaction(&el(&b, "a")).unwrap().render(&g), "a(x)Z");
        assert_eq!(ca.coaction(&NCElement::one()).unwrap().render(&g), "1(x)1");
        let ad = el(&b, "a*d");
        assert_eq!(
            ca.coaction(&ad).unwrap(),
            Tensor::from_elements(&[&ad, &NCElement::one()])
        );
        assert!(ca.coaction_axioms(3).unwrap().passed());
    }

    #[test]
    fn two_sphere_coinvariants() {
        let b = fibration(2);
        let (basis, rep) = b.coinvariant_report(2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        let expected: Vec<NCElement> = ["1", "a*b", "c*d", "a*d"]
            .iter()
            .map(|s| el(&b, s))
            .collect();
        assert_eq!(basis.len(), 4);
        let ech = span(&basis.iter().map(element_vec).collect::<Vec<_>>());
        for x in &expected {
            assert!(ech.contains(&element_vec(x)));
        }
        assert_eq!(
            span(&expected.iter().map(element_vec).collect::<Vec<_>>()).rank(),
            4
        );
        assert_eq!(b.coinvariants(0).unwrap(), vec![NCElement::one()]);
    }

    #[test]
    fn chi_examples() {
        let b = fibration(2);
        let g = [b.total().gens(), b.h_pres().gens()];
        let p = b.total();
        let t = crate::dsl::parse_tensor("d(x)a - q^-1*b(x)c", &[p.gens(), p.gens()]).unwrap();
        assert_eq!(b.chi(&t).unwrap().render(&g), "1(x)Z");
        let bm = el(&b, "a*b");
        let db = crate::diffcalc::d_universal(&bm);
        assert!(b.chi(db.tensor()).unwrap().is_zero());
    }

    #[test]
    fn trivial_coaction_has_everything_coinvariant() {
        let src = format!(
            "{}coaction T : H -> H {{ Z = Z(x)1; Zi = Zi(x)1 }}\n",
            presets::source("u1").unwrap()
        );
        let m = Model::from_source(&src).unwrap();
        let b = BundleSpec::from_model(&m, 2).unwrap();
        assert_eq!(b.coinvariants(2).unwrap().len(), 5);
    }
}
