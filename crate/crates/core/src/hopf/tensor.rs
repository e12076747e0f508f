use std::collections::BTreeMap;

use crate::error::Result;
use crate::ncalg::{render_terms, GeneratorTable, NCElement, Presentation, Word};
use crate::qscalar::QRat;

/// Finite sum of `k`-fold tensors of words. Which algebra each leg lives in
/// is tracked by the caller; operations that multiply take the leg
/// presentations explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<Word>, QRat>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn unit(arity: usize) -> Self {
        Tensor::pure(vec![Word::one(); arity], QRat::one())
    }

    pub fn scalar(c: QRat) -> Self {
        Tensor::pure(Vec::new(), c)
    }

    pub fn pure(legs: Vec<Word>, c: QRat) -> Self {
        let mut t = Tensor::zero(legs.len());
        t.add_term(legs, &c);
        t
    }

    /// From a sparse coefficient map; zero coefficients are dropped.
    pub fn from_map(arity: usize, map: BTreeMap<Vec<Word>, QRat>) -> Self {
        let mut t = Tensor::zero(arity);
        for (legs, c) in map {
            assert_eq!(legs.len(), arity);
            t.add_term(legs, &c);
        }
        t
    }

    /// Tensor product of elements, one per leg.
    pub fn from_elements(legs: &[&NCElement]) -> Self {
        let mut acc = Tensor::scalar(QRat::one());
        for e in legs {
            acc = acc.tensor(&Tensor::from_element(e));
        }
        acc
    }

    pub fn from_element(e: &NCElement) -> Self {
        let mut t = Tensor::zero(1);
        for (w, c) in e.terms() {
            t.add_term(vec![w.clone()], c);
        }
        t
    }

    /// Inverse of [`from_element`](Self::from_element) for arity 1.
    pub fn to_element(&self) -> NCElement {
        assert_eq!(self.arity, 1, "to_element on arity {}", self.arity);
        NCElement::from_terms(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }

    /// The value of an arity-0 tensor.
    pub fn to_scalar(&self) -> QRat {
        assert_eq!(self.arity, 0);
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(QRat::zero)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &QRat)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<Vec<Word>, QRat> {
        &self.terms
    }

    pub fn coeff(&self, legs: &[Word]) -> QRat {
        self.terms.get(legs).cloned().unwrap_or_else(QRat::zero)
    }

    /// Total word length of the longest term.
    pub fn max_total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().map(Word::degree).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: &QRat) {
        debug_assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Tensor, c: &QRat) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        if c.is_zero() {
            return;
        }
        for (k, d) in &other.terms {
            self.add_term(k.clone(), &(d * c));
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &QRat::one());
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &QRat::from_int(-1));
        out
    }

    pub fn scale(&self, c: &QRat) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    /// Outer tensor product (legs concatenated).
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.arity + other.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut legs = a.clone();
                legs.extend(b.iter().cloned());
                out.add_term(legs, &(c * d));
            }
        }
        out
    }

    /// Replaces leg `i` by the tensor `f(word)` of arity `leg_arity`,
    /// linearly.
    pub fn replace_leg<F>(&self, i: usize, leg_arity: usize, mut f: F) -> Result<Tensor>
    where
        F: FnMut(&Word) -> Result<Tensor>,
    {
        assert!(i < self.arity);
        let mut out = Tensor::zero(self.arity - 1 + leg_arity);
        let mut cache: BTreeMap<Word, Tensor> = BTreeMap::new();
        for (legs, c) in &self.terms {
            if !cache.contains_key(&legs[i]) {
                cache.insert(legs[i].clone(), f(&legs[i])?);
            }
            let img = &cache[&legs[i]];
            assert_eq!(img.arity, leg_arity, "leg map arity");
            for (sub, d) in &img.terms {
                let mut nl = Vec::with_capacity(out.arity);
                nl.extend(legs[..i].iter().cloned());
                nl.extend(sub.iter().cloned());
                nl.extend(legs[i + 1..].iter().cloned());
                out.add_term(nl, &(c * d));
            }
        }
        Ok(out)
    }

    /// Like [`replace_leg`](Self::replace_leg) with an element-valued map
    /// (arity preserved).
    pub fn map_leg<F>(&self, i: usize, mut f: F) -> Result<Tensor>
    where
        F: FnMut(&Word) -> Result<NCElement>,
    {
        self.replace_leg(i, 1, |w| Ok(Tensor::from_element(&f(w)?)))
    }

    /// Multiplies legs `i` and `i + 1` in `pres`.
    pub fn merge_legs(&self, i: usize, pres: &Presentation) -> Result<Tensor> {
        assert!(i + 1 < self.arity);
        let mut out = Tensor::zero(self.arity - 1);
        for (legs, c) in &self.terms {
            let prod = pres.mul_words(&legs[i], &legs[i + 1])?;
            for (w, d) in prod.terms() {
                let mut nl = Vec::with_capacity(self.arity - 1);
                nl.extend(legs[..i].iter().cloned());
                nl.push(w.clone());
                nl.extend(legs[i + 2..].iter().cloned());
                out.add_term(nl, &(c * d));
            }
        }
        Ok(out)
    }

    /// Reduces every leg to normal form in its presentation.
    pub fn reduce(&self, pres: &[&Presentation]) -> Result<Tensor> {
        assert_eq!(pres.len(), self.arity);
        let mut t = self.clone();
        for (i, p) in pres.iter().enumerate() {
            t = t.map_leg(i, |w| p.normal_form(w))?;
        }
        Ok(t)
    }

    /// Product in the tensor product algebra (legwise).
    pub fn mul(&self, other: &Tensor, pres: &[&Presentation]) -> Result<Tensor> {
        assert_eq!(self.arity, other.arity);
        assert_eq!(pres.len(), self.arity);
        let mut out = Tensor::zero(self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut partial = Tensor::scalar(c * d);
                for (k, p) in pres.iter().enumerate() {
                    let leg = p.mul_words(&a[k], &b[k])?;
                    partial = partial.tensor(&Tensor::from_element(&leg));
                }
                out.add_scaled(&partial, &QRat::one());
            }
        }
        Ok(out)
    }

    /// Splice product `(u_0⊗...⊗u_m)(v_0⊗...⊗v_n) = u_0⊗...⊗u_m v_0⊗...⊗v_n`,
    /// all legs in one algebra. This is the product of forms in the
    /// universal differential envelope, and with arity 1 on either side it
    /// is the bimodule action.
    pub fn splice(&self, other: &Tensor, pres: &Presentation) -> Result<Tensor> {
        assert!(self.arity >= 1 && other.arity >= 1);
        let arity = self.arity + other.arity - 1;
        let mut out = Tensor::zero(arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mid = pres.mul_words(a.last().unwrap(), &b[0])?;
                for (w, e) in mid.terms() {
                    let mut legs = Vec::with_capacity(arity);
                    legs.extend(a[..a.len() - 1].iter().cloned());
                    legs.push(w.clone());
                    legs.extend(b[1..].iter().cloned());
                    out.add_term(legs, &(&(c * d) * e));
                }
            }
        }
        Ok(out)
    }

    /// Left action of an element on the first leg.
    pub fn left_act(&self, p: &NCElement, pres: &Presentation) -> Result<Tensor> {
        Tensor::from_element(p).splice(self, pres)
    }

    /// Right action of an element on the last leg.
    pub fn right_act(&self, p: &NCElement, pres: &Presentation) -> Result<Tensor> {
        self.splice(&Tensor::from_element(p), pres)
    }

    /// Multiplies all legs together (the iterated multiplication map).
    pub fn multiply_out(&self, pres: &Presentation) -> Result<NCElement> {
        let mut t = self.clone();
        while t.arity > 1 {
            t = t.merge_legs(0, pres)?;
        }
        if t.arity == 0 {
            return Ok(NCElement::scalar(t.to_scalar()));
        }
        Ok(t.to_element())
    }

    /// Groups terms by the word on leg `i`, returning the remaining legs.
    pub fn split_on_leg(&self, i: usize) -> BTreeMap<Word, Tensor> {
        let mut out: BTreeMap<Word, Tensor> = BTreeMap::new();
        for (legs, c) in &self.terms {
            let mut rest = legs.clone();
            let w = rest.remove(i);
            out.entry(w)
                .or_insert_with(|| Tensor::zero(self.arity - 1))
                .add_term(rest, c);
        }
        out
    }

    /// Renders as `a(x)b + (q^-1)*c(x)d`.
    pub fn render(&self, gens: &[&GeneratorTable]) -> String {
        assert_eq!(gens.len(), self.arity);
        render_terms(self.terms.iter().map(|(legs, c)| {
            let s = legs
                .iter()
                .zip(gens)
                .map(|(w, g)| w.render(g))
                .collect::<Vec<_>>()
                .join("(x)");
            (s, c)
        }))
    }

    /// Renders with every leg in the same generator table.
    pub fn render_uniform(&self, gens: &GeneratorTable) -> String {
        let g: Vec<&GeneratorTable> = vec![gens; self.arity];
        self.render(&g)
    }
}
