use std::collections::BTreeMap;
use std::sync::Arc;

use super::tensor::Tensor;
use super::HopfStructure;
use crate::error::{Error, Result};
use crate::ncalg::linalg::{Echelon, SparseVec};
use crate::ncalg::{NCElement, Presentation, Word};
use crate::qscalar::QRat;

/// A linear map given by its values on the monomial basis of degree
/// `<= degree` of `domain`. Values are tensors of fixed arity over
/// `codomain` (arity 1 for ordinary element-valued maps, 2 for one-forms,
/// 3 for two-forms of the universal envelope).
#[derive(Clone, Debug)]
pub struct BasisLinearMap {
    domain: Arc<Presentation>,
    codomain: Arc<Presentation>,
    degree: usize,
    arity: usize,
    values: BTreeMap<Word, Tensor>,
}

impl PartialEq for BasisLinearMap {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.domain, &other.domain)
            && same_algebra(&self.codomain, &other.codomain)
            && self.degree == other.degree
            && self.arity == other.arity
            && self.values == other.values
    }
}

pub(crate) fn same_algebra(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || (a.name() == b.name() && a.gens() == b.gens())
}

impl BasisLinearMap {
    pub fn from_fn<F>(
        domain: Arc<Presentation>,
        codomain: Arc<Presentation>,
        degree: usize,
        arity: usize,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Tensor>,
    {
        let pres: Vec<&Presentation> = vec![codomain.as_ref(); arity];
        let mut values = BTreeMap::new();
        for w in domain.monomial_basis(degree) {
            let t = f(&w)?;
            assert_eq!(t.arity(), arity, "value arity");
            values.insert(w, t.reduce(&pres)?);
        }
        Ok(BasisLinearMap {
            domain,
            codomain,
            degree,
            arity,
            values,
        })
    }

    pub fn from_element_fn<F>(
        domain: Arc<Presentation>,
        codomain: Arc<Presentation>,
        degree: usize,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<NCElement>,
    {
        Self::from_fn(domain, codomain, degree, 1, |w| {
            Ok(Tensor::from_element(&f(w)?))
        })
    }

    pub fn identity(pres: Arc<Presentation>, degree: usize) -> Self {
        Self::from_element_fn(pres.clone(), pres, degree, |w| {
            Ok(NCElement::word(w.clone()))
        })
        .expect("identity on normal words")
    }

    pub fn zero(
        domain: Arc<Presentation>,
        codomain: Arc<Presentation>,
        degree: usize,
        arity: usize,
    ) -> Self {
        Self::from_fn(domain, codomain, degree, arity, |_| Ok(Tensor::zero(arity)))
            .expect("zero map")
    }

    pub fn domain(&self) -> &Arc<Presentation> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Presentation> {
        &self.codomain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> impl Iterator<Item = (&Word, &Tensor)> {
        self.values.iter()
    }

    pub fn value(&self, w: &Word) -> Option<&Tensor> {
        self.values.get(w)
    }

    pub fn apply_word(&self, w: &Word) -> Result<&Tensor> {
        self.values.get(w).ok_or_else(|| {
            Error::TruncationTooSmall(format!(
                "{} is outside the domain (degree <= {})",
                w.render(self.domain.gens()),
                self.degree
            ))
        })
    }

    pub fn apply(&self, x: &NCElement) -> Result<Tensor> {
        let mut out = Tensor::zero(self.arity);
        for (w, c) in x.terms() {
            out.add_scaled(self.apply_word(w)?, c);
        }
        Ok(out)
    }

    /// Element value of an arity-1 map.
    pub fn apply_element(&self, x: &NCElement) -> Result<NCElement> {
        assert_eq!(self.arity, 1);
        Ok(self.apply(x)?.to_element())
    }

    pub fn element_value(&self, w: &Word) -> Result<NCElement> {
        assert_eq!(self.arity, 1);
        Ok(self.apply_word(w)?.to_element())
    }

    /// Applies the map to leg `i` of a tensor whose leg `i` lives in the
    /// domain.
    pub fn apply_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        t.replace_leg(i, self.arity, |w| self.apply_word(w).cloned())
    }

    /// Restriction to a smaller truncation.
    pub fn restrict(&self, degree: usize) -> Self {
        assert!(degree <= self.degree);
        let values = self
            .values
            .iter()
            .filter(|(w, _)| w.degree() <= degree)
            .map(|(w, t)| (w.clone(), t.clone()))
            .collect();
        BasisLinearMap {
            values,
            degree,
            ..self.clone()
        }
    }

    /// Post-composes every value with `f`.
    pub fn map_values<F>(&self, arity: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word, &Tensor) -> Result<Tensor>,
    {
        let mut values = BTreeMap::new();
        for (w, t) in &self.values {
            let v = f(w, t)?;
            assert_eq!(v.arity(), arity);
            values.insert(w.clone(), v);
        }
        Ok(BasisLinearMap {
            values,
            arity,
            ..self.clone()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &QRat::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &QRat::from_int(-1))
    }

    fn combine(&self, other: &Self, c: &QRat) -> Self {
        assert_eq!(self.arity, other.arity);
        let degree = self.degree.min(other.degree);
        let mut out = self.restrict(degree);
        for (w, t) in out.values.iter_mut() {
            t.add_scaled(&other.values[w], c);
        }
        out
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = self.clone();
        for t in out.values.values_mut() {
            *t = t.scale(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Tensor::is_zero)
    }

    /// `word ↦ value` lines.
    pub fn render(&self) -> String {
        let g = self.codomain.gens();
        self.values
            .iter()
            .map(|(w, t)| format!("{} ↦ {}", w.render(self.domain.gens()), t.render_uniform(g)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Convolution `(f∗g)(a) = f(a₍₁₎)g(a₍₂₎)`, where values are multiplied by
/// the splice product (ordinary product for element-valued maps).
pub fn convolve(
    f: &BasisLinearMap,
    g: &BasisLinearMap,
    h: &HopfStructure,
) -> Result<BasisLinearMap> {
    let hp = h.presentation();
    if !same_algebra(&f.domain, hp) || !same_algebra(&g.domain, hp) {
        return Err(Error::Hypothesis(
            "convolution needs maps on the Hopf algebra".into(),
        ));
    }
    if !same_algebra(&f.codomain, &g.codomain) {
        return Err(Error::Hypothesis(
            "convolution needs a common codomain".into(),
        ));
    }
    let degree = f.degree.min(g.degree);
    let arity = f.arity + g.arity - 1;
    let cod = f.codomain.clone();
    BasisLinearMap::from_fn(hp.clone(), cod.clone(), degree, arity, |w| {
        let d = h.coproduct_word(w)?;
        let mut out = Tensor::zero(arity);
        for (legs, c) in d.terms() {
            let a = f.apply_word(&legs[0])?;
            let b = g.apply_word(&legs[1])?;
            out.add_scaled(&a.splice(b, &cod)?, c);
        }
        Ok(out)
    })
}

/// Inverse of `x` in `pres`, searched among elements of degree `<= deg x`
/// and then `<= 2 deg x`.
pub fn element_inverse(pres: &Presentation, x: &NCElement) -> Result<Option<NCElement>> {
    if x.is_zero() {
        return Ok(None);
    }
    if let Some(c) = x.as_scalar() {
        return Ok(Some(NCElement::scalar(c.inv()?)));
    }
    let d = x.max_degree().max(1);
    for k in [d, 2 * d] {
        let basis = pres.monomial_basis(k);
        let mut ech: Echelon<(u8, Word)> = Echelon::new();
        for b in &basis {
            let bw = NCElement::word(b.clone());
            let mut v: SparseVec<(u8, Word)> = SparseVec::new();
            for (w, c) in pres.multiply(x, &bw)?.terms() {
                v.insert((0, w.clone()), c.clone());
            }
            for (w, c) in pres.multiply(&bw, x)?.terms() {
                v.insert((1, w.clone()), c.clone());
            }
            ech.insert(&v);
        }
        let mut target = SparseVec::new();
        target.insert((0, Word::one()), QRat::one());
        target.insert((1, Word::one()), QRat::one());
        if let Some(coords) = ech.coordinates(&target) {
            let y = NCElement::from_terms(coords.into_iter().map(|(j, c)| (basis[j].clone(), c)));
            return Ok(Some(y));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseStrategy {
    /// Every basis word is group-like; values are inverted pointwise.
    GroupLike,
    /// `f` is a unital algebra map; the inverse is `f∘S`.
    AlgebraMap,
    /// Graded-connected coproduct; triangular solve by degree.
    GradedConnected,
}

/// Convolution inverse of an element-valued map, verified on both sides
/// before it is returned.
pub fn convolution_inverse(
    f: &BasisLinearMap,
    h: &HopfStructure,
) -> Result<(BasisLinearMap, InverseStrategy)> {
    if f.arity != 1 {
        return Err(Error::NotConvolutionInvertible(
            "only element-valued maps are inverted".into(),
        ));
    }
    let unit = h.unit_counit_map(f.codomain.clone(), f.degree)?;
    let verified = |g: &BasisLinearMap| -> Result<bool> {
        Ok(convolve(f, g, h)? == unit && convolve(g, f, h)? == unit)
    };
    let mut tried = Vec::new();

    if let Some(g) = inverse_group_like(f, h)? {
        if verified(&g)? {
            return Ok((g, InverseStrategy::GroupLike));
        }
        tried.push("group-like (verification failed)");
    } else {
        tried.push("group-like (not applicable)");
    }
    if is_unital_algebra_map(f)? {
        let g =
            BasisLinearMap::from_element_fn(f.domain.clone(), f.codomain.clone(), f.degree, |w| {
                f.apply_element(&h.antipode(&NCElement::word(w.clone()))?)
            });
        match g {
            Ok(g) if verified(&g)? => return Ok((g, InverseStrategy::AlgebraMap)),
            _ => tried.push("f∘S (verification failed)"),
        }
    } else {
        tried.push("f∘S (not an algebra map)");
    }
    if let Some(g) = inverse_graded_connected(f, h)? {
        if verified(&g)? {
            return Ok((g, InverseStrategy::GradedConnected));
        }
        tried.push("graded-connected (verification failed)");
    } else {
        tried.push("graded-connected (not applicable)");
    }
    Err(Error::NotConvolutionInvertible(tried.join(", ")))
}

fn inverse_group_like(f: &BasisLinearMap, h: &HopfStructure) -> Result<Option<BasisLinearMap>> {
    for w in f.values.keys() {
        if !h.is_group_like(w)? {
            return Ok(None);
        }
    }
    let mut values = BTreeMap::new();
    for (w, t) in &f.values {
        match element_inverse(&f.codomain, &t.to_element())? {
            Some(y) => {
                values.insert(w.clone(), Tensor::from_element(&y));
            }
            None => return Ok(None),
        }
    }
    Ok(Some(BasisLinearMap {
        values,
        ..f.clone()
    }))
}

/// `f(1) = 1` and `f(uv) = f(u)f(v)` for basis pairs within the truncation.
pub(crate) fn is_unital_algebra_map(f: &BasisLinearMap) -> Result<bool> {
    if f.element_value(&Word::one())? != NCElement::one() {
        return Ok(false);
    }
    let basis: Vec<&Word> = f.values.keys().collect();
    for u in &basis {
        for v in &basis {
            if u.degree() + v.degree() > f.degree {
                continue;
            }
            let uv = f.domain.mul_words(u, v)?;
            let lhs = f.apply_element(&uv)?;
            let rhs = f
                .codomain
                .multiply(&f.element_value(u)?, &f.element_value(v)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn inverse_graded_connected(
    f: &BasisLinearMap,
    h: &HopfStructure,
) -> Result<Option<BasisLinearMap>> {
    let Some(f1) = f.element_value(&Word::one())?.as_scalar() else {
        return Ok(None);
    };
    if f1.is_zero() {
        return Ok(None);
    }
    let f1_inv = f1.inv()?;
    let cod = f.codomain.clone();
    let mut values: BTreeMap<Word, Tensor> = BTreeMap::new();
    // basis keys are in degree-lex order, so lower degrees come first
    for w in f.values.keys() {
        let d = h.coproduct_word(w)?;
        let mut acc = NCElement::scalar(h.counit_word(w)?);
        for (legs, c) in d.terms() {
            let (u, v) = (&legs[0], &legs[1]);
            if u.is_one() && v == w {
                if !c.is_one() {
                    return Ok(None);
                }
                continue;
            }
            if !w.is_one() && v.degree() >= w.degree() {
                return Ok(None);
            }
            if w.is_one() {
                return Ok(None);
            }
            let Some(gv) = values.get(v) else {
                return Ok(None);
            };
            let prod = cod.multiply(&f.element_value(u)?, &gv.to_element())?;
            acc = &acc - &prod.scale(c);
        }
        values.insert(w.clone(), Tensor::from_element(&acc.scale(&f1_inv)));
    }
    Ok(Some(BasisLinearMap {
        values,
        ..f.clone()
    }))
}
