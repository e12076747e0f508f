//! Deterministic sampling of basis pairs for checks that would be too
//! expensive on every pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalg::Word;

pub const DEFAULT_SEED: u64 = 1996;

/// Number of pseudo-random pairs added on top of the exhaustive low-degree
/// pairs.
pub const EXTRA_PAIRS: usize = 20;

/// All pairs of words of degree `<= low`, followed by `extra` pairs drawn
/// from the whole of `basis` with a ChaCha generator seeded by `seed`.
pub fn sample_pairs(basis: &[Word], low: usize, extra: usize, seed: u64) -> Vec<(Word, Word)> {
    let small: Vec<&Word> = basis.iter().filter(|w| w.degree() <= low).collect();
    let mut out = Vec::new();
    for u in &small {
        for v in &small {
            out.push(((*u).clone(), (*v).clone()));
        }
    }
    if !basis.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra {
            let i = rng.gen_range(0..basis.len());
            let j = rng.gen_range(0..basis.len());
            out.push((basis[i].clone(), basis[j].clone()));
        }
    }
    out
}

/// `n` indices below `len`, drawn with the seeded generator.
pub fn sample_indices(len: usize, n: usize, seed: u64) -> Vec<usize> {
    if len == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let basis: Vec<Word> = (0..6).map(|k| Word(vec![0; k])).collect();
        let a = sample_pairs(&basis, 2, EXTRA_PAIRS, 7);
        let b = sample_pairs(&basis, 2, EXTRA_PAIRS, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 9 + EXTRA_PAIRS);
        assert_ne!(a, sample_pairs(&basis, 2, EXTRA_PAIRS, 8));
    }
}
