//! Free noncommutative algebras with `QRat` coefficients, rewriting to
//! normal form, bounded confluence certification, and exact linear algebra
//! over enumerated monomial bases.

mod confluence;
mod element;
pub mod linalg;
mod presentation;
mod word;

pub use confluence::{confluence_check, ConfluenceReport, CriticalPairFailure};
pub(crate) use element::render_terms;
pub use element::NCElement;
pub use presentation::{Presentation, RewriteRule, DEFAULT_BUDGET};
pub use word::{GeneratorTable, MonomialOrder, Word};

use crate::qscalar::QRat;
use linalg::{Echelon, SparseVec};

pub fn element_vec(x: &NCElement) -> SparseVec<Word> {
    x.as_map().clone()
}

/// Exact coordinates of `target` in the span of `span`, or `None` when it
/// lies outside. Inputs must be reduced over the same presentation.
pub fn solve_membership(target: &NCElement, span: &[NCElement]) -> Option<Vec<QRat>> {
    let mut ech = Echelon::new();
    for s in span {
        ech.insert(&element_vec(s));
    }
    let coords = ech.coordinates(&element_vec(target))?;
    Some(
        (0..span.len())
            .map(|j| coords.get(&j).cloned().unwrap_or_else(QRat::zero))
            .collect(),
    )
}
