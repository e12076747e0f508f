//! Exact sparse linear algebra over `QRat`.
//!
//! Vectors are sparse maps from an ordered key type (words, tuples of
//! words, ...) to nonzero scalars. [`Echelon`] keeps an incrementally built
//! echelon basis that also records how each row was combined from the
//! original inputs, which gives membership coordinates and kernels.

use std::collections::BTreeMap;

use crate::qscalar::QRat;

pub type SparseVec<K> = BTreeMap<K, QRat>;

/// `v += c * w`.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &QRat, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let prod = c * x;
        match v.get_mut(k) {
            Some(y) => {
                let s = &*y + &prod;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                v.insert(k.clone(), prod);
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &SparseVec<K>, c: &QRat) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

#[derive(Debug, Clone)]
struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incremental echelon basis. Row `r` has coefficient 1 at its pivot and 0
/// at the pivots of all earlier rows.
#[derive(Debug, Clone)]
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of inserting a vector.
#[derive(Debug, Clone)]
pub enum Insert {
    /// The vector was independent and became a new row.
    NewRow,
    /// The vector was dependent; the map gives a linear relation
    /// `sum c_j * input_j = 0` among inserted vectors.
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (the next input id).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v`; returns the residual and the coordinates `x` with
    /// `v - residual = sum x_j * input_j`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut res = v.clone();
        let mut coords = SparseVec::new();
        for row in &self.rows {
            if let Some(c) = res.get(&row.pivot).cloned() {
                axpy(&mut res, &-&c, &row.vec);
                axpy(&mut coords, &c, &row.combo);
            }
        }
        (res, coords)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` in terms of inserted inputs, or `None` when `v` is
    /// outside the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (res, coords) = self.reduce(v);
        res.is_empty().then_some(coords)
    }

    /// Inserts the next input vector (its id is [`inserted`](Self::inserted)).
    pub fn insert(&mut self, v: &SparseVec<K>) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let (res, coords) = self.reduce(v);
        let mut combo = scale(&coords, &QRat::from_int(-1));
        combo.insert(id, QRat::one());
        if res.is_empty() {
            return Insert::Dependent(combo);
        }
        // simplest coefficient wins; ties go to the smallest key
        let (pivot, pc) = res
            .iter()
            .min_by(|(ka, a), (kb, b)| a.complexity().cmp(&b.complexity()).then_with(|| ka.cmp(kb)))
            .map(|(k, c)| (k.clone(), c.clone()))
            .unwrap();
        let inv = pc.inv().expect("pivot nonzero");
        self.rows.push(Row {
            pivot,
            vec: scale(&res, &inv),
            combo: scale(&combo, &inv),
        });
        Insert::NewRow
    }

    /// Current rows (a basis of the span).
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.iter().map(|r| &r.vec)
    }
}

/// Kernel of the linear map sending input `j` to `images[j]`, as
/// coefficient vectors over the inputs.
pub fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for img in images {
        if let Insert::Dependent(rel) = ech.insert(img) {
            out.push(rel);
        }
    }
    out
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v);
    }
    ech.rank()
}

/// Span of `vs` expressed through its echelon basis.
pub fn span<K: Ord + Clone>(vs: &[SparseVec<K>]) -> Echelon<K> {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v);
    }
    ech
}

/// Reduced row echelon basis of the span of `vs`. Each row has
/// coefficient 1 at its largest key, and no other row mentions that key.
/// Rows are sorted by pivot.
pub fn reduced_basis<K: Ord + Clone>(vs: &[SparseVec<K>]) -> Vec<SparseVec<K>> {
    let mut rows: BTreeMap<K, SparseVec<K>> = BTreeMap::new();
    for v in vs {
        let mut r = v.clone();
        for (p, row) in rows.iter() {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &-&c, row);
            }
        }
        let Some((pivot, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            continue;
        };
        let r = scale(&r, &c.inv().expect("pivot nonzero"));
        for row in rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-&c, &r);
            }
        }
        rows.insert(pivot, r);
    }
    rows.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries
            .iter()
            .map(|&(k, c)| (k, QRat::from_int(c)))
            .collect()
    }

    #[test]
    fn kernel_of_dependent_family() {
        let imgs = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 2), (1, 3)])];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 1);
        // 2*e0 + e1 - e2 = 0
        let rel = &k[0];
        let mut acc = SparseVec::new();
        for (j, c) in rel {
            axpy(&mut acc, c, &imgs[*j]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn coordinates_reconstruct() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (2, 1)]));
        e.insert(&v(&[(1, 1), (2, -1)]));
        let t = v(&[(0, 3), (1, 2), (2, 1)]);
        let c = e.coordinates(&t).unwrap();
        assert_eq!(c.get(&0), Some(&QRat::from_int(3)));
        assert_eq!(c.get(&1), Some(&QRat::from_int(2)));
        assert!(e.coordinates(&v(&[(2, 1)])).is_none());
    }
}
