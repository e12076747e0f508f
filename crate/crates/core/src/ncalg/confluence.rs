//! Bounded critical-pair checking for a rewriting system.

use super::element::NCElement;
use super::presentation::Presentation;
use super::word::Word;
use crate::error::Result;

/// A critical pair whose two resolutions reduce to different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPairFailure {
    pub word: Word,
    pub rules: (usize, usize),
    pub left: NCElement,
    pub right: NCElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub max_degree: usize,
    pub pairs_checked: usize,
    pub failures: Vec<CriticalPairFailure>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Resolves every overlap (proper or inclusion) of two rule lhs's whose
/// combined word has length `<= max_degree`.
pub fn confluence_check(pres: &Presentation, max_degree: usize) -> Result<ConfluenceReport> {
    let rules = pres.rules();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for (i, ri) in rules.iter().enumerate() {
        let li = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let lj = rj.lhs.letters();
            // proper overlaps: suffix of li == prefix of lj
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] != lj[..k] {
                    continue;
                }
                let total = li.len() + lj.len() - k;
                if total > max_degree {
                    continue;
                }
                let word = Word([li, &lj[k..]].concat());
                let tail = Word(lj[k..].to_vec());
                let head = Word(li[..li.len() - k].to_vec());
                let left = resolve(pres, &NCElement::word(Word::one()), &ri.rhs, &tail)?;
                let right = resolve(pres, &NCElement::word(head), &rj.rhs, &Word::one())?;
                pairs_checked += 1;
                if left != right {
                    failures.push(CriticalPairFailure {
                        word,
                        rules: (i, j),
                        left,
                        right,
                    });
                }
            }
            // inclusions: lj occurs inside li
            if i == j || lj.len() > li.len() || li.len() > max_degree {
                continue;
            }
            for p in 0..=li.len() - lj.len() {
                if li[p..p + lj.len()] != *lj {
                    continue;
                }
                let head = Word(li[..p].to_vec());
                let tail = Word(li[p + lj.len()..].to_vec());
                let left = pres.reduce(&ri.rhs)?;
                let right = resolve(pres, &NCElement::word(head), &rj.rhs, &tail)?;
                pairs_checked += 1;
                if left != right {
                    failures.push(CriticalPairFailure {
                        word: ri.lhs.clone(),
                        rules: (i, j),
                        left,
                        right,
                    });
                }
            }
        }
    }
    Ok(ConfluenceReport {
        max_degree,
        pairs_checked,
        failures,
    })
}

/// Normal form of `prefix * middle * suffix`.
fn resolve(
    pres: &Presentation,
    prefix: &NCElement,
    middle: &NCElement,
    suffix: &Word,
) -> Result<NCElement> {
    let mut out = NCElement::zero();
    for (p, a) in prefix.terms() {
        for (m, b) in middle.terms() {
            let w = p.concat(m).concat(suffix);
            out.add_scaled(&pres.normal_form(&w)?, &(a * b));
        }
    }
    Ok(out)
}
