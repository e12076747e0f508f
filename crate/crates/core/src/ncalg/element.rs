use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::word::{GeneratorTable, Word};
use crate::qscalar::QRat;

/// Finite `QRat`-weighted sum of words. Zero coefficients are never stored.
///
/// Elements are plain data; reduction to normal form happens through a
/// [`Presentation`](super::Presentation).
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct NCElement {
    terms: BTreeMap<Word, QRat>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NCElement::scalar(QRat::one())
    }

    pub fn scalar(c: QRat) -> Self {
        NCElement::term(Word::one(), c)
    }

    pub fn word(w: Word) -> Self {
        NCElement::term(w, QRat::one())
    }

    pub fn term(w: Word, c: QRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, QRat)>>(it: I) -> Self {
        let mut e = NCElement::zero();
        for (w, c) in it {
            e.add_term(w, &c);
        }
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QRat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, QRat> {
        self.terms
    }

    pub fn as_map(&self) -> &BTreeMap<Word, QRat> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> QRat {
        self.terms.get(w).cloned().unwrap_or_else(QRat::zero)
    }

    /// Highest word degree present; `0` for zero.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// The scalar value if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<QRat> {
        match self.terms.len() {
            0 => Some(QRat::zero()),
            1 => self.terms.get(&Word::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: &QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
    pub fn add_scaled(&mut self, other: &NCElement, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(d * c));
        }
    }

    pub fn scale(&self, c: &QRat) -> NCElement {
        if c.is_zero() {
            return NCElement::zero();
        }
        NCElement {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Deterministic rendering such as `1 + (q^-1)*b*c`.
    pub fn render(&self, gens: &GeneratorTable) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (w.render(gens), c)))
    }
}

/// Shared term renderer for elements and tensors. Integer coefficients are
/// written bare, all others parenthesised.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a QRat)>,
{
    let mut out = String::new();
    for (mono, c) in terms {
        let is_unit_word = mono == "1";
        let neg_int =
            c.is_rational_constant() && c.numerator().leading().is_some_and(|l| l < &0.into());
        let (sign, mag) = if neg_int { ("-", -c) } else { ("+", c.clone()) };
        let piece = if is_unit_word {
            if mag.is_rational_constant() {
                mag.to_string()
            } else {
                format!("({mag})")
            }
        } else if mag.is_one() {
            mono
        } else if mag.is_rational_constant() && mag.denominator().is_one() {
            format!("{mag}*{mono}")
        } else {
            format!("({mag})*{mono}")
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add<&NCElement> for &NCElement {
    type Output = NCElement;
    fn add(self, rhs: &NCElement) -> NCElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QRat::one());
        out
    }
}

impl Sub<&NCElement> for &NCElement {
    type Output = NCElement;
    fn sub(self, rhs: &NCElement) -> NCElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QRat::from_int(-1));
        out
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        self.scale(&QRat::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let t = GeneratorTable::new(&["a", "b", "c", "d"]).unwrap();
        let mut e = NCElement::one();
        e.add_term(Word(vec![1, 2]), &QRat::q_pow(-1));
        assert_eq!(e.render(&t), "1 + (q^-1)*b*c");
        let mut f = NCElement::term(Word(vec![0]), QRat::from_int(-2));
        f.add_term(Word(vec![1]), &QRat::from_int(1));
        assert_eq!(f.render(&t), "-2*a + b");
        assert_eq!(NCElement::zero().render(&t), "0");
    }

    #[test]
    fn cancellation_drops_terms() {
        let w = Word(vec![0]);
        let mut e = NCElement::word(w.clone());
        e.add_term(w, &QRat::from_int(-1));
        assert!(e.is_zero());
    }
}
