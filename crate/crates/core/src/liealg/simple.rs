//! Simply-laced simple Lie algebras in a Chevalley-type basis.
//!
//! Root vectors `E_α` satisfy `[E_α, E_β] = ε(α,β) E_{α+β}` with the
//! bimultiplicative sign `ε(α_i, α_j) = -1` iff `i = j` or (`i < j` and
//! `a_ij = -1`), `[E_α, E_{-α}] = -α` and `(E_α, E_{-α}) = -1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cartan::{build_cartan, CartanDatum, CartanType};
use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseVec};
use crate::scalar::{q, Q};

/// Element of ḡ in the basis `h_1..h_ℓ, E_α (α positive), E_α (α negative)`.
pub type GVec = SparseVec<usize>;

#[derive(Clone, Debug)]
pub struct SimpleLie {
    pub datum: CartanDatum,
    rank: usize,
    /// Roots as coefficient vectors, positive ones first.
    roots: Vec<Vec<i64>>,
    root_index: BTreeMap<Vec<i64>, usize>,
    /// Sparse bracket table on basis pairs.
    table: BTreeMap<(usize, usize), GVec>,
    theta: usize,
}

impl SimpleLie {
    pub fn dim(&self) -> usize {
        self.rank + self.roots.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * b[j] * self.datum.a(i + 1, j + 1);
            }
        }
        s
    }

    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i == j || (i < j && self.datum.a(i + 1, j + 1) == -1) {
                    e += a[i] * b[j];
                }
            }
        }
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Basis index of `E_α`.
    pub fn root_vector(&self, alpha: &[i64]) -> Option<usize> {
        self.root_index.get(alpha).map(|k| self.rank + k)
    }

    pub fn basis(&self, k: usize) -> GVec {
        [(k, Q::one())].into_iter().collect()
    }

    fn simple(&self, i: usize) -> Vec<i64> {
        let mut a = vec![0; self.rank];
        a[i - 1] = 1;
        a
    }

    /// `h_i = α_i^∨` for `i = 1..=ℓ`.
    pub fn h(&self, i: usize) -> GVec {
        self.basis(i - 1)
    }

    pub fn e(&self, i: usize) -> GVec {
        self.basis(self.root_vector(&self.simple(i)).unwrap())
    }

    pub fn f(&self, i: usize) -> GVec {
        let neg: Vec<i64> = self.simple(i).iter().map(|x| -x).collect();
        let mut v = self.basis(self.root_vector(&neg).unwrap());
        v.values_mut().for_each(|c| *c = -c.clone());
        v
    }

    pub fn theta(&self) -> &[i64] {
        &self.roots[self.theta]
    }

    /// `x_θ^+ = E_θ`.
    pub fn x_theta_plus(&self) -> GVec {
        self.basis(self.rank + self.theta)
    }

    /// `x_θ^- = -E_{-θ}`, so that `(x_θ^+, x_θ^-) = 1`.
    pub fn x_theta_minus(&self) -> GVec {
        let neg: Vec<i64> = self.theta().iter().map(|x| -x).collect();
        let mut v = self.basis(self.root_vector(&neg).unwrap());
        v.values_mut().for_each(|c| *c = -c.clone());
        v
    }

    /// `h_θ = [x_θ^+, x_θ^-]`, the coroot of the highest root.
    pub fn h_theta(&self) -> GVec {
        self.theta().iter().enumerate().filter(|(_, m)| **m != 0).map(|(i, m)| (i, q(*m))).collect()
    }

    fn bracket_basis(&self, a: usize, b: usize) -> Option<&GVec> {
        self.table.get(&(a, b))
    }

    pub fn bracket(&self, x: &GVec, y: &GVec) -> GVec {
        let mut out = GVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some(v) = self.bracket_basis(*a, *b) {
                    axpy(&mut out, &(ca * cb), v);
                }
            }
        }
        out
    }

    fn form_basis(&self, a: usize, b: usize) -> Q {
        let r = self.rank;
        if a < r && b < r {
            return q(self.datum.a(a + 1, b + 1));
        }
        if a >= r && b >= r {
            let (x, y) = (&self.roots[a - r], &self.roots[b - r]);
            if x.iter().zip(y).all(|(p, q)| p + q == 0) {
                return q(-1);
            }
        }
        Q::zero()
    }

    /// The invariant form normalized by `(α, α) = 2`.
    pub fn form(&self, x: &GVec, y: &GVec) -> Q {
        let mut s = Q::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                let f = self.form_basis(*a, *b);
                if !f.is_zero() {
                    s += ca * cb * f;
                }
            }
        }
        s
    }

    pub fn basis_label(&self, k: usize) -> String {
        if k < self.rank {
            return format!("h{}", k + 1);
        }
        let r = &self.roots[k - self.rank];
        let pos = r.iter().any(|x| *x > 0);
        let body: Vec<String> = r.iter().map(|x| format!("{}", x.abs())).collect();
        format!("{}[{}]", if pos { "e" } else { "f" }, body.join(","))
    }

    pub fn parse_label(&self, s: &str) -> Option<usize> {
        (0..self.dim()).find(|k| self.basis_label(*k) == s)
    }

    /// Matrix of `ad x` in the basis (column `b` is `[x, basis_b]`).
    pub fn ad_matrix(&self, x: &GVec) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for b in 0..n {
            for (row, c) in self.bracket(x, &self.basis(b)) {
                m[row][b] = c;
            }
        }
        m
    }
}

fn positive_roots(dat: &CartanDatum) -> Vec<Vec<i64>> {
    let n = dat.ty.rank;
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut a = vec![0; n];
            a[i] = 1;
            a
        })
        .collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            // simply laced: β + α_i is a root iff (β, α_i) = -1
            let p: i64 = (0..n).map(|j| beta[j] * dat.a(i + 1, j + 1)).sum();
            if p == -1 {
                let mut g = beta.clone();
                g[i] += 1;
                if !roots.contains(&g) {
                    roots.push(g);
                }
            }
        }
        k += 1;
    }
    roots
}

/// Builds ḡ for a finite simply-laced type (A, D, E).
pub fn build_simple(ty: CartanType) -> Result<SimpleLie> {
    if ty.affine || !ty.simply_laced() {
        return Err(Error::UnsupportedType(format!("{} (need finite A, D or E)", ty)));
    }
    let datum = build_cartan(ty)?;
    let rank = ty.rank;
    let pos = positive_roots(&datum);
    let mut roots = pos.clone();
    roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()));
    let root_index: BTreeMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
    let marks = datum.theta_marks().to_vec();
    let theta = root_index[&marks];
    let mut g = SimpleLie { datum, rank, roots, root_index, table: BTreeMap::new(), theta };
    let mut table = BTreeMap::new();
    let nroots = g.roots.len();
    for a in 0..nroots {
        let alpha = g.roots[a].clone();
        for i in 0..rank {
            let c = g.pair(&g.simple(i + 1), &alpha);
            if c != 0 {
                table.insert((i, rank + a), [(rank + a, q(c))].into_iter().collect::<GVec>());
                table.insert((rank + a, i), [(rank + a, q(-c))].into_iter().collect::<GVec>());
            }
        }
        for b in 0..nroots {
            let beta = &g.roots[b];
            let sum: Vec<i64> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if sum.iter().all(|x| *x == 0) {
                let v: GVec = alpha.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, q(-c))).collect();
                table.insert((rank + a, rank + b), v);
            } else if let Some(k) = g.root_index.get(&sum) {
                let e = g.eps(&alpha, beta);
                table.insert((rank + a, rank + b), [(rank + k, q(e))].into_iter().collect::<GVec>());
            }
        }
    }
    g.table = table;
    Ok(g)
}
