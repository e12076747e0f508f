use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use super::element::NCElement;
use super::word::{GeneratorTable, MonomialOrder, Word};
use crate::error::{Error, Result};
use crate::qscalar::QRat;

pub const DEFAULT_BUDGET: usize = 1_000_000;

// nested rewrites along a single branch; bounds stack use
const MAX_DEPTH: usize = 4096;

/// Oriented rule `lhs -> rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCElement,
    /// Set when the rule mixes degrees (e.g. a determinant relation).
    pub inhomogeneous: bool,
}

impl RewriteRule {
    /// Oriented for the degree-lexicographic order.
    pub fn new(lhs: Word, rhs: NCElement) -> Result<Self> {
        Self::oriented(lhs, rhs, &MonomialOrder::deglex())
    }

    pub fn oriented(lhs: Word, rhs: NCElement, order: &MonomialOrder) -> Result<Self> {
        if lhs.degree() < 2 {
            return Err(Error::Presentation(format!(
                "rule lhs must have length >= 2, got {:?}",
                lhs
            )));
        }
        if let Some((w, _)) = rhs.terms().find(|(w, _)| order.cmp(w, &lhs).is_ge()) {
            return Err(Error::Presentation(format!(
                "rule rhs word {:?} is not smaller than lhs {:?}",
                w, lhs
            )));
        }
        let inhomogeneous = rhs.terms().any(|(w, _)| w.degree() != lhs.degree());
        Ok(RewriteRule {
            lhs,
            rhs,
            inhomogeneous,
        })
    }
}

/// A finitely presented algebra: generators, oriented rules, and the
/// normal-form engine built on them.
///
/// Normal forms of single words are memoised; the cache is the only
/// interior mutability and does not change observable behaviour.
pub struct Presentation {
    name: String,
    gens: GeneratorTable,
    rules: Vec<RewriteRule>,
    grading: Option<Vec<i64>>,
    order: MonomialOrder,
    budget: usize,
    lhs_index: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    cache: RwLock<HashMap<Word, NCElement>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("gens", &self.gens.names())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Presentation {
    /// Validating constructor: rule lhs's must be pairwise distinct and
    /// respect the grading if one is given (inhomogeneous rules excepted).
    pub fn new(
        name: impl Into<String>,
        gens: GeneratorTable,
        rules: Vec<RewriteRule>,
        grading: Option<Vec<i64>>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.lhs.clone()) {
                return Err(Error::Presentation(format!(
                    "duplicate rule lhs {}",
                    r.lhs.render(&gens)
                )));
            }
            if r.lhs.letters().iter().any(|&g| g as usize >= gens.len()) {
                return Err(Error::Presentation("rule uses unknown generator".into()));
            }
        }
        if let Some(gr) = &grading {
            if gr.len() != gens.len() {
                return Err(Error::Presentation("grading length mismatch".into()));
            }
            let deg = |w: &Word| w.letters().iter().map(|&g| gr[g as usize]).sum::<i64>();
            for r in &rules {
                if r.inhomogeneous {
                    continue;
                }
                if r.rhs.terms().any(|(w, _)| deg(w) != deg(&r.lhs)) {
                    return Err(Error::Presentation(format!(
                        "rule {} does not respect the grading",
                        r.lhs.render(&gens)
                    )));
                }
            }
        }
        Ok(Self::from_rules_unchecked(name, gens, rules, grading))
    }

    /// Skips validation; duplicate lhs's are allowed (the first one is used
    /// for rewriting). Intended for probing inconsistent rule sets.
    pub fn from_rules_unchecked(
        name: impl Into<String>,
        gens: GeneratorTable,
        rules: Vec<RewriteRule>,
        grading: Option<Vec<i64>>,
    ) -> Self {
        let mut lhs_index = HashMap::new();
        let mut lens = BTreeSet::new();
        for (i, r) in rules.iter().enumerate() {
            lhs_index.entry(r.lhs.clone()).or_insert(i);
            lens.insert(r.lhs.degree());
        }
        Presentation {
            name: name.into(),
            gens,
            rules,
            grading,
            order: MonomialOrder::deglex(),
            budget: DEFAULT_BUDGET,
            lhs_index,
            lhs_lengths: lens.into_iter().collect(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// The free algebra on `gens`.
    pub fn free(name: impl Into<String>, gens: GeneratorTable) -> Self {
        Self::from_rules_unchecked(name, gens, Vec::new(), None)
    }

    /// Records the term order the rules were oriented for; it also orders
    /// [`monomial_basis`](Self::monomial_basis).
    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &GeneratorTable {
        &self.gens
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn gen(&self, name: &str) -> Result<NCElement> {
        Ok(NCElement::word(self.gens.generator(name)?))
    }

    /// Position and rule of the leftmost lhs occurrence in `w`.
    fn leftmost_redex(&self, w: &[u32]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for &l in &self.lhs_lengths {
                if i + l > w.len() {
                    break;
                }
                if let Some(&r) = self.lhs_index.get(&w[i..i + l]) {
                    return Some((i, r));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.leftmost_redex(w.letters()).is_none()
    }

    /// Normal form of a single word.
    pub fn normal_form(&self, w: &Word) -> Result<NCElement> {
        let mut steps = 0usize;
        let mut trace = Vec::new();
        self.nf_rec(w, &mut steps, &mut trace, 0)
    }

    fn nf_rec(
        &self,
        w: &Word,
        steps: &mut usize,
        trace: &mut Vec<Word>,
        depth: usize,
    ) -> Result<NCElement> {
        if let Some(hit) = self.cache.read().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let Some((pos, r)) = self.leftmost_redex(w.letters()) else {
            return Ok(NCElement::word(w.clone()));
        };
        *steps += 1;
        if trace.len() >= 8 {
            trace.remove(0);
        }
        trace.push(w.clone());
        if *steps > self.budget || depth > MAX_DEPTH {
            let t: Vec<String> = trace.iter().map(|w| w.render(&self.gens)).collect();
            return Err(Error::RewritingBudget {
                steps: *steps,
                trace: t.join(" -> "),
            });
        }
        let rule = &self.rules[r];
        let prefix = w.slice(0, pos);
        let suffix = w.slice(pos + rule.lhs.degree(), w.degree());
        let mut out = NCElement::zero();
        for (v, c) in rule.rhs.terms() {
            let nw = prefix.concat(v).concat(&suffix);
            let nf = self.nf_rec(&nw, steps, trace, depth + 1)?;
            out.add_scaled(&nf, c);
        }
        self.cache.write().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Rewrites every term to normal form.
    pub fn reduce(&self, x: &NCElement) -> Result<NCElement> {
        let mut out = NCElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.normal_form(w)?, c);
        }
        Ok(out)
    }

    /// Product in the presented algebra, in normal form.
    pub fn multiply(&self, x: &NCElement, y: &NCElement) -> Result<NCElement> {
        let mut out = NCElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let nf = self.normal_form(&u.concat(v))?;
                out.add_scaled(&nf, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mul_words(&self, u: &Word, v: &Word) -> Result<NCElement> {
        self.normal_form(&u.concat(v))
    }

    pub fn product(&self, xs: &[&NCElement]) -> Result<NCElement> {
        let mut acc = NCElement::one();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &NCElement, n: usize) -> Result<NCElement> {
        let mut acc = NCElement::one();
        for _ in 0..n {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// All irreducible words of degree `<= max_degree`, in term order.
    pub fn monomial_basis(&self, max_degree: usize) -> Vec<Word> {
        let mut out = vec![Word::one()];
        let mut layer = vec![Word::one()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.gens.len() as u32 {
                    let mut letters = w.letters().to_vec();
                    letters.push(g);
                    // only suffixes can create a new redex
                    let n = letters.len();
                    let reducible = self
                        .lhs_lengths
                        .iter()
                        .any(|&l| l <= n && self.lhs_index.contains_key(&letters[n - l..]));
                    if !reducible {
                        next.push(Word(letters));
                    }
                }
            }
            next.sort_by(|a, b| self.order.cmp(a, b));
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Irreducible words of exactly `degree`.
    pub fn basis_of_degree(&self, degree: usize) -> Vec<Word> {
        self.monomial_basis(degree)
            .into_iter()
            .filter(|w| w.degree() == degree)
            .collect()
    }

    pub fn render(&self, x: &NCElement) -> String {
        x.render(&self.gens)
    }

    pub fn scalar_of(&self, c: QRat) -> NCElement {
        NCElement::scalar(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laurent_pres() -> Presentation {
        let g = GeneratorTable::new(&["Z", "Zi"]).unwrap();
        let rules = vec![
            RewriteRule::new(Word(vec![0, 1]), NCElement::one()).unwrap(),
            RewriteRule::new(Word(vec![1, 0]), NCElement::one()).unwrap(),
        ];
        Presentation::new("H", g, rules, None).unwrap()
    }

    #[test]
    fn laurent_basis() {
        let p = laurent_pres();
        let b = p.monomial_basis(3);
        assert_eq!(b.len(), 7);
        let zz = p.normal_form(&Word(vec![0, 0, 1, 1, 0])).unwrap();
        assert_eq!(zz, NCElement::word(Word(vec![0])));
    }

    #[test]
    fn budget_guards_nontermination() {
        // a*b -> b*a with b < a would loop only if misoriented; force it unchecked
        let g = GeneratorTable::new(&["a", "b"]).unwrap();
        let r1 = RewriteRule {
            lhs: Word(vec![0, 1]),
            rhs: NCElement::word(Word(vec![1, 0])),
            inhomogeneous: false,
        };
        let r2 = RewriteRule {
            lhs: Word(vec![1, 0]),
            rhs: NCElement::word(Word(vec![0, 1])),
            inhomogeneous: false,
        };
        let p = Presentation::from_rules_unchecked("loop", g, vec![r1, r2], None).with_budget(50);
        let e = p.normal_form(&Word(vec![0, 1])).unwrap_err();
        assert!(e.to_string().contains("rewriting budget exceeded"));
    }

    #[test]
    fn rejects_misoriented_rule() {
        assert!(RewriteRule::new(Word(vec![0, 1]), NCElement::word(Word(vec![1, 0]))).is_err());
    }
}
