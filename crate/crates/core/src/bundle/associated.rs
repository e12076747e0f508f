//! Associated bundles `E ⊂ P⊗V` for a fibre `V` with a right coaction of
//! `H` that is multiplicative into `V⊗H^op`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::BundleSpec;
use crate::error::{Error, Result};
use crate::hopf::{HopfStructure, Tensor};
use crate::ncalg::linalg::{kernel, reduced_basis, span, SparseVec};
use crate::ncalg::{GeneratorTable, NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

/// A fibre algebra `V` with `ρ_R : V → V⊗H` on its basis of degree
/// `<= degree`.
#[derive(Debug, Clone)]
pub struct Fibre {
    v: Arc<Presentation>,
    h: Arc<Presentation>,
    rho: BTreeMap<Word, Tensor>,
    degree: usize,
}

impl Fibre {
    pub fn new<F>(v: Arc<Presentation>, h: &HopfStructure, degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Tensor>,
    {
        let hp = h.presentation().clone();
        let mut rho = BTreeMap::new();
        for w in v.monomial_basis(degree) {
            let t = f(&w)?.reduce(&[&v, &hp])?;
            rho.insert(w, t);
        }
        Ok(Fibre {
            v,
            h: hp,
            rho,
            degree,
        })
    }

    /// The ground field with the trivial coaction.
    pub fn scalars(h: &HopfStructure) -> Result<Self> {
        let k = Arc::new(Presentation::free("k", GeneratorTable::new::<&str>(&[])?));
        Self::new(k, h, 0, |_| Ok(Tensor::unit(2)))
    }

    /// `V = H` with `ρ_R = (id⊗S)∘Δ'`, i.e. `a ↦ a₍₂₎⊗S(a₍₁₎)`.
    pub fn regular(h: &HopfStructure, degree: usize) -> Result<Self> {
        Self::new(h.presentation().clone(), h, degree, |w| {
            let d = h.coproduct_word(w)?;
            let s = h.antipode_on_leg(&d, 0)?;
            let mut out = Tensor::zero(2);
            for (legs, c) in s.terms() {
                out.add_term(vec![legs[1].clone(), legs[0].clone()], c);
            }
            Ok(out)
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rho_word(&self, w: &Word) -> Result<&Tensor> {
        self.rho.get(w).ok_or_else(|| {
            Error::TruncationTooSmall(format!("fibre coaction known up to degree {}", self.degree))
        })
    }

    pub fn rho(&self, x: &NCElement) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (w, c) in x.terms() {
            out.add_scaled(self.rho_word(w)?, c);
        }
        Ok(out)
    }

    /// Coaction axioms and `ρ(vw) = v₍₀₎w₍₀₎ ⊗ w₍₁₎v₍₁₎` on basis pairs.
    pub fn check(&self, h: &HopfStructure) -> Result<Report> {
        let mut rep = Report::new("fibre coaction");
        let (mut coass, mut counit, mut op) = (None, None, None);
        let vn = |w: &Word| w.render(self.v.gens());
        for (w, t) in &self.rho {
            let lhs = t.replace_leg(0, 2, |x| self.rho_word(x).cloned())?;
            if w.degree() <= self.degree && coass.is_none() && lhs != h.coproduct_on_leg(t, 1)? {
                coass = Some(vn(w));
            }
            if counit.is_none()
                && h.counit_on_leg(t, 1)? != Tensor::pure(vec![w.clone()], QRat::one())
            {
                counit = Some(vn(w));
            }
        }
        for u in self.rho.keys() {
            for v in self.rho.keys() {
                if u.degree() + v.degree() > self.degree || op.is_some() {
                    continue;
                }
                let uv = self.v.mul_words(u, v)?;
                let lhs = self.rho(&uv)?;
                let mut rhs = Tensor::zero(2);
                for (ul, uc) in self.rho_word(u)?.terms() {
                    for (vl, vc) in self.rho_word(v)?.terms() {
                        let a = self.v.mul_words(&ul[0], &vl[0])?;
                        let b = self.h.mul_words(&vl[1], &ul[1])?;
                        rhs.add_scaled(&Tensor::from_elements(&[&a, &b]), &(uc * vc));
                    }
                }
                if lhs != rhs {
                    op = Some(format!("{}, {}", vn(u), vn(v)));
                }
            }
        }
        let d = self.degree;
        rep.check(
            "fibre.coassociativity",
            "(ρ⊗id)ρ = (id⊗Δ)ρ",
            d,
            coass.is_none(),
            coass.unwrap_or_default(),
        );
        rep.check(
            "fibre.counit",
            "(id⊗ε)ρ = id",
            d,
            counit.is_none(),
            counit.unwrap_or_default(),
        );
        rep.check(
            "fibre.op_algebra_map",
            "ρ(vw) = v₍₀₎w₍₀₎⊗w₍₁₎v₍₁₎",
            d,
            op.is_none(),
            op.unwrap_or_default(),
        );
        Ok(rep)
    }
}

/// `E(B, V, H)`: the coinvariants of `P⊗V` under
/// `Δ_E(u⊗v) = u₍₀₎⊗v₍₀₎⊗u₍₁₎v₍₁₎`.
#[derive(Debug, Clone)]
pub struct AssociatedBundle {
    pub bundle: Arc<BundleSpec>,
    pub fibre: Fibre,
}

impl AssociatedBundle {
    pub fn new(bundle: Arc<BundleSpec>, fibre: Fibre) -> Self {
        AssociatedBundle { bundle, fibre }
    }

    pub fn total(&self) -> &Arc<Presentation> {
        self.bundle.total()
    }

    pub fn fibre_pres(&self) -> &Arc<Presentation> {
        self.fibre.presentation()
    }

    pub fn gens(&self) -> [&GeneratorTable; 2] {
        [self.total().gens(), self.fibre_pres().gens()]
    }

    pub fn delta_e(&self, x: &Tensor) -> Result<Tensor> {
        let hp = self.bundle.h_pres();
        let mut out = Tensor::zero(3);
        for (legs, c) in x.terms() {
            let du = self.bundle.comodule().coaction_word(&legs[0])?;
            let dv = self.fibre.rho_word(&legs[1])?;
            for (ul, uc) in du.terms() {
                for (vl, vc) in dv.terms() {
                    let hprod = hp.mul_words(&ul[1], &vl[1])?;
                    let k = &(c * uc) * vc;
                    for (hw, hc) in hprod.terms() {
                        out.add_term(vec![ul[0].clone(), vl[0].clone(), hw.clone()], &(&k * hc));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_in_e(&self, x: &Tensor) -> Result<bool> {
        Ok(self.delta_e(x)? == x.tensor(&Tensor::unit(1)))
    }

    /// `j_E(b) = b⊗1`.
    pub fn j_e(&self, b: &NCElement) -> Tensor {
        Tensor::from_elements(&[b, &NCElement::one()])
    }

    /// `(b⊗1)·x`.
    pub fn left_b_action(&self, b: &NCElement, x: &Tensor) -> Result<Tensor> {
        x.replace_leg(0, 1, |w| {
            Ok(Tensor::from_element(
                &self.total().multiply(b, &NCElement::word(w.clone()))?,
            ))
        })
    }

    /// Basis of `E` inside the span of `u⊗v` with `deg u + deg v <= degree`.
    pub fn coinvariants(&self, degree: usize) -> Result<Vec<Tensor>> {
        let pb = self.total().monomial_basis(degree);
        let vb = self
            .fibre_pres()
            .monomial_basis(degree.min(self.fibre.degree()));
        let mut pairs = Vec::new();
        let mut images: Vec<SparseVec<Vec<Word>>> = Vec::new();
        for u in &pb {
            for v in &vb {
                if u.degree() + v.degree() > degree {
                    continue;
                }
                let x = Tensor::pure(vec![u.clone(), v.clone()], QRat::one());
                images.push(
                    self.delta_e(&x)?
                        .sub(&x.tensor(&Tensor::unit(1)))
                        .as_map()
                        .clone(),
                );
                pairs.push(vec![u.clone(), v.clone()]);
            }
        }
        let elems: Vec<SparseVec<Vec<Word>>> = kernel(&images)
            .into_iter()
            .map(|rel| {
                rel.into_iter()
                    .map(|(j, c)| (pairs[j].clone(), c))
                    .collect()
            })
            .collect();
        Ok(reduced_basis(&elems)
            .into_iter()
            .map(|m| Tensor::from_map(2, m))
            .collect())
    }

    /// `B ⊂ E` through `j_E`, and the dimension of `E` at `degree`.
    pub fn embedding_report(&self, degree: usize) -> Result<Report> {
        let mut rep = Report::new("associated bundle");
        let e = self.coinvariants(degree)?;
        let espan = span(&e.iter().map(|t| t.as_map().clone()).collect::<Vec<_>>());
        let b = self.bundle.coinvariants(degree)?;
        let bad = b.iter().find(|x| !espan.contains(self.j_e(x).as_map()));
        rep.info(
            "associated.dim",
            "E ⊂ P⊗V",
            degree,
            format!("dim E = {}, dim B = {}", espan.rank(), b.len()),
        );
        rep.check(
            "associated.base_embeds",
            "j_E(B) ⊂ E",
            degree,
            bad.is_none(),
            bad.map(|x| self.total().render(x))
                .unwrap_or_else(|| format!("{} coinvariants", b.len())),
        );
        Ok(rep)
    }

    /// For the regular fibre, `u ↦ u₍₀₎⊗u₍₁₎` identifies `P` with `E`.
    pub fn principal_embedding(&self, u: &NCElement) -> Result<Tensor> {
        if self.fibre_pres().name() != self.bundle.h_pres().name() {
            return Err(Error::Hypothesis(
                "the principal embedding needs the regular fibre".into(),
            ));
        }
        self.bundle.comodule().coaction(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn regular_and_scalar_fibres() {
        let b = Arc::new(BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap());
        let h = b.hopf().clone();
        let reg = Fibre::regular(&h, 2).unwrap();
        assert!(reg.check(&h).unwrap().passed());
        let hg = h.presentation().gens();
        let z = hg.parse_word("Z").unwrap();
        assert_eq!(reg.rho_word(&z).unwrap().render(&[hg, hg]), "Z(x)Zi");

        let ab = AssociatedBundle::new(b.clone(), reg);
        for w in b.total().monomial_basis(2) {
            let x = ab.principal_embedding(&NCElement::word(w)).unwrap();
            assert!(ab.is_in_e(&x).unwrap());
        }
        assert!(ab.embedding_report(2).unwrap().passed());

        let k = AssociatedBundle::new(b.clone(), Fibre::scalars(&h).unwrap());
        let e = k.coinvariants(2).unwrap();
        assert_eq!(e.len(), b.coinvariants(2).unwrap().len());
    }
}
