use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::ncalg::{GeneratorTable, NCElement, Presentation, Word};
use crate::qscalar::QRat;

/// A map from a presented algebra into a tensor product of presented
/// algebras (possibly zero legs, i.e. the scalars), fixed by its values on
/// generators and extended multiplicatively, or anti-multiplicatively when
/// `anti` is set.
pub struct AlgebraMap {
    label: String,
    source: GeneratorTable,
    legs: Vec<Arc<Presentation>>,
    values: Vec<Option<Tensor>>,
    anti: bool,
    cache: RwLock<HashMap<Word, Tensor>>,
}

impl std::fmt::Debug for AlgebraMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraMap")
            .field("label", &self.label)
            .field("anti", &self.anti)
            .finish()
    }
}

impl Clone for AlgebraMap {
    fn clone(&self) -> Self {
        AlgebraMap {
            label: self.label.clone(),
            source: self.source.clone(),
            legs: self.legs.clone(),
            values: self.values.clone(),
            anti: self.anti,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

/// A rule `lhs -> rhs` whose two sides map to different tensors.
#[derive(Debug, Clone)]
pub struct RuleViolation {
    pub rule: usize,
    pub lhs_image: Tensor,
    pub rhs_image: Tensor,
}

impl AlgebraMap {
    /// `values[g]` is the image of generator `g` (arity `legs.len()`).
    pub fn new(
        label: impl Into<String>,
        source: GeneratorTable,
        legs: Vec<Arc<Presentation>>,
        values: Vec<Option<Tensor>>,
        anti: bool,
    ) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::Presentation(
                "map value table has wrong length".into(),
            ));
        }
        let k = legs.len();
        let mut reduced = Vec::with_capacity(values.len());
        for v in values {
            match v {
                Some(t) => {
                    if t.arity() != k {
                        return Err(Error::Presentation(format!(
                            "map value has arity {}, expected {}",
                            t.arity(),
                            k
                        )));
                    }
                    let p: Vec<&Presentation> = legs.iter().map(|p| p.as_ref()).collect();
                    reduced.push(Some(t.reduce(&p)?));
                }
                None => reduced.push(None),
            }
        }
        Ok(AlgebraMap {
            label: label.into(),
            source,
            legs,
            values: reduced,
            anti,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Element-valued map into a single algebra.
    pub fn from_elements(
        label: impl Into<String>,
        source: GeneratorTable,
        target: Arc<Presentation>,
        values: Vec<Option<NCElement>>,
        anti: bool,
    ) -> Result<Self> {
        let vals = values
            .into_iter()
            .map(|v| v.map(|e| Tensor::from_element(&e)))
            .collect();
        Self::new(label, source, vec![target], vals, anti)
    }

    /// Scalar-valued map (a character).
    pub fn from_scalars(
        label: impl Into<String>,
        source: GeneratorTable,
        values: Vec<Option<QRat>>,
    ) -> Result<Self> {
        let vals = values.into_iter().map(|v| v.map(Tensor::scalar)).collect();
        Self::new(label, source, Vec::new(), vals, false)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn legs(&self) -> &[Arc<Presentation>] {
        &self.legs
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn generator_value(&self, g: usize) -> Option<&Tensor> {
        self.values.get(g).and_then(|v| v.as_ref())
    }

    fn leg_refs(&self) -> Vec<&Presentation> {
        self.legs.iter().map(|p| p.as_ref()).collect()
    }

    /// Image of a word as the letterwise (anti-)product of generator images.
    pub fn apply_word(&self, w: &Word) -> Result<Tensor> {
        if w.is_one() {
            return Ok(Tensor::unit(self.arity()));
        }
        if let Some(t) = self.cache.read().unwrap().get(w) {
            return Ok(t.clone());
        }
        let letters = w.letters();
        let n = letters.len();
        let last = letters[n - 1] as usize;
        let gv = self.values[last].as_ref().ok_or_else(|| {
            Error::IncompleteHopf(format!(
                "{} has no value on generator {}",
                self.label,
                self.source.name(last as u32)
            ))
        })?;
        let head = self.apply_word(&w.slice(0, n - 1))?;
        let legs = self.leg_refs();
        let out = if self.anti {
            gv.mul(&head, &legs)?
        } else {
            head.mul(gv, &legs)?
        };
        self.cache.write().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&self, x: &NCElement) -> Result<Tensor> {
        let mut out = Tensor::zero(self.arity());
        for (w, c) in x.terms() {
            out.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(out)
    }

    /// Applies the map to leg `i` of a tensor.
    pub fn apply_on_leg(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        t.replace_leg(i, self.arity(), |w| self.apply_word(w))
    }

    /// Rules of `source` whose two sides have different images; empty means
    /// the extension is well defined on the quotient.
    pub fn rule_violations(&self, source: &Presentation) -> Result<Vec<RuleViolation>> {
        let mut out = Vec::new();
        for (i, r) in source.rules().iter().enumerate() {
            let l = self.apply_word(&r.lhs)?;
            let rr = self.apply(&r.rhs)?;
            if l != rr {
                out.push(RuleViolation {
                    rule: i,
                    lhs_image: l,
                    rhs_image: rr,
                });
            }
        }
        Ok(out)
    }
}
