use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered generator alphabet. A generator's index is its position in the
/// term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl GeneratorTable {
    /// Names are listed in increasing term order.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(Error::Presentation(format!("duplicate generator `{n}`")));
            }
            out.push(n);
        }
        Ok(GeneratorTable { names: out, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, name: &str) -> Result<Word> {
        self.lookup(name)
            .map(Word::gen)
            .ok_or_else(|| Error::Undeclared(name.to_string()))
    }

    /// Parses `a*b^2*c` style monomials (no coefficients); `1` is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::one());
        }
        let mut letters = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (name, pow) = match part.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Presentation(format!("bad exponent in `{part}`")))?,
                ),
                None => (part, 1),
            };
            let g = self
                .lookup(name)
                .ok_or_else(|| Error::Undeclared(name.to_string()))?;
            letters.extend(std::iter::repeat_n(g, pow));
        }
        Ok(Word(letters))
    }
}

/// A monomial: a finite sequence of generator indices. Ordered
/// degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: u32) -> Self {
        Word(vec![g])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn render(&self, gens: &GeneratorTable) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let run = j - i;
            if run == 1 {
                parts.push(gens.name(g).to_string());
            } else {
                parts.push(format!("{}^{}", gens.name(g), run));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Term order used to orient rules: degree, then total weight, then
/// lexicographic in generator order. With no weights this is the
/// degree-lexicographic order of [`Word`]'s `Ord`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialOrder {
    weights: Vec<i64>,
}

impl MonomialOrder {
    pub fn deglex() -> Self {
        MonomialOrder::default()
    }

    /// `weights[g]` is the weight of generator `g`; missing entries are 0.
    pub fn weighted(weights: Vec<i64>) -> Self {
        MonomialOrder { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn is_deglex(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn weight(&self, w: &Word) -> i64 {
        w.0.iter()
            .map(|&g| self.weights.get(g as usize).copied().unwrap_or(0))
            .sum()
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| self.weight(a).cmp(&self.weight(b)))
            .then_with(|| a.0.cmp(&b.0))
    }
}

impl Borrow<[u32]> for Word {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let a = Word(vec![0]);
        let ab = Word(vec![0, 1]);
        let ba = Word(vec![1, 0]);
        let d = Word(vec![3]);
        assert!(Word::one() < a);
        assert!(d < ab);
        assert!(ab < ba);
    }

    #[test]
    fn weighted_order_puts_heavy_words_last() {
        let o = MonomialOrder::weighted(vec![1, 0, 0, 1]);
        let ad = Word(vec![0, 3]);
        let bc = Word(vec![1, 2]);
        assert_eq!(o.cmp(&bc, &ad), Ordering::Less);
        assert!(ad < bc);
    }

    #[test]
    fn render_and_parse() {
        let t = GeneratorTable::new(&["a", "b", "Z"]).unwrap();
        let w = t.parse_word("a*Z^3*b").unwrap();
        assert_eq!(w, Word(vec![0, 2, 2, 2, 1]));
        assert_eq!(w.render(&t), "a*Z^3*b");
        assert_eq!(t.parse_word("1").unwrap(), Word::one());
        assert!(matches!(t.parse_word("c"), Err(Error::Undeclared(_))));
    }
}
