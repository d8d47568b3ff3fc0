//! Sparse exact row reduction over ℚ, keyed by arbitrary ordered coordinates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::scalar::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let slot = y.entry(k.clone()).or_insert_with(Q::zero);
        *slot += a * v;
        if slot.is_zero() {
            y.remove(k);
        }
    }
}

struct Row<K> {
    vec: SparseVec<K>,
    /// Expresses this row in terms of the inserted vectors.
    combo: SparseVec<usize>,
}

/// Incremental echelon basis. Every inserted vector gets a sequential tag,
/// and reductions report the combination of tags they subtracted.
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

pub struct Reduction<K> {
    pub residual: SparseVec<K>,
    /// `input = residual + Σ combo[t] · inserted[t]`.
    pub combo: SparseVec<usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let mut residual = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => residual.iter().find(|(k, _)| self.pivots.contains_key(*k)),
                Some(c) => residual
                    .range((core::ops::Bound::Excluded(c.clone()), core::ops::Bound::Unbounded))
                    .find(|(k, _)| self.pivots.contains_key(*k)),
            };
            let Some((k, a)) = next.map(|(k, a)| (k.clone(), a.clone())) else {
                break;
            };
            let row = &self.rows[self.pivots[&k]];
            axpy(&mut residual, &-a.clone(), &row.vec);
            axpy(&mut combo, &a, &row.combo);
            cursor = Some(k);
        }
        Reduction { residual, combo }
    }

    /// Inserts `v`; returns `None` if it raised the rank, otherwise the
    /// combination of earlier tags equal to `v`.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let tag = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.residual.is_empty() {
            return Some(red.combo);
        }
        let (pk, pv) = red.residual.iter().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
        let inv = pv.recip();
        let mut vec = red.residual;
        for x in vec.values_mut() {
            *x *= &inv;
        }
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(tag, inv.clone());
        axpy(&mut combo, &-inv, &red.combo);
        self.pivots.insert(pk, self.rows.len());
        self.rows.push(Row { vec, combo });
        None
    }
}

/// Rank of a family of vectors plus a basis of its relation space, each
/// relation given as coefficients on the input indices.
pub fn rank_and_kernel<K: Ord + Clone>(cols: &[SparseVec<K>]) -> (usize, Vec<SparseVec<usize>>) {
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(combo) = ech.insert(c) {
            let mut rel: SparseVec<usize> = BTreeMap::new();
            rel.insert(j, Q::one());
            axpy(&mut rel, &-Q::one(), &combo);
            kernel.push(rel);
        }
    }
    (ech.rank(), kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|(k, v)| (*k, q(*v))).filter(|(_, v)| !v.is_zero()).collect()
    }

    fn combine(cols: &[SparseVec<u32>], c: &SparseVec<usize>) -> SparseVec<u32> {
        let mut out = BTreeMap::new();
        for (j, a) in c {
            axpy(&mut out, a, &cols[*j]);
        }
        out
    }

    #[test]
    fn kernel_relations_vanish() {
        let cols = [
            sv(&[(0, 1), (1, 2)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 1), (1, 3), (2, 1)]),
            sv(&[(0, 2), (1, 4)]),
            sv(&[(3, 5)]),
        ];
        let (rank, ker) = rank_and_kernel(&cols);
        assert_eq!(rank, 3);
        assert_eq!(ker.len(), 2);
        for rel in &ker {
            assert!(combine(&cols, rel).is_empty());
        }
    }

    #[test]
    fn reduction_certificate_reconstructs_input() {
        let cols = [sv(&[(0, 1), (2, 1)]), sv(&[(1, 3), (2, -1)])];
        let mut ech = Echelon::new();
        for c in &cols {
            assert!(ech.insert(c).is_none());
        }
        let target = sv(&[(0, 2), (1, 3), (2, 1), (5, 7)]);
        let red = ech.reduce(&target);
        let mut back = combine(&cols, &red.combo);
        axpy(&mut back, &q(1), &red.residual);
        assert_eq!(back, target);
        assert_eq!(red.residual, sv(&[(5, 7)]));
    }
}
