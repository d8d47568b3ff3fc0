//! Cartan data for finite types and their untwisted affinizations.
//!
//! Conventions: `a_ij = α_j(α_i^∨)`, symmetrizers `d_i` coprime positive
//! integers with `d_i a_ij = d_j a_ji`. Finite nodes are labelled `1..=ℓ`;
//! affine data add node `0` with `α_0 = δ - θ`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl CartanType {
    pub fn finite(family: Family, rank: usize) -> Self {
        CartanType { family, rank, affine: false }
    }

    pub fn affine(family: Family, rank: usize) -> Self {
        CartanType { family, rank, affine: true }
    }

    /// Parses labels such as `A2`, `E8`, `A2~`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedType(s.to_string());
        let (body, affine) = match s.strip_suffix('~') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let mut chars = body.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ty = CartanType { family, rank, affine };
        ty.validate()?;
        Ok(ty)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(self.to_string()))
        }
    }

    pub fn simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn finite_part(&self) -> CartanType {
        CartanType { affine: false, ..*self }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}{}", self.family, self.rank, if self.affine { "~" } else { "" })
    }
}

/// Basis of the Cartan subalgebra: simple coroots, plus the scaling element
/// `d` in the affine case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanBasis {
    Coroot(usize),
    Scaling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub ty: CartanType,
    first: usize,
    gcm: Vec<Vec<i64>>,
    d: Vec<i64>,
    /// Coefficients of `θ` in the simple roots of the finite part.
    marks: Vec<i64>,
}

fn finite_gcm(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    };
    match family {
        Family::A => (1..n).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 1, n, -1, -2);
        }
        Family::C => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 1, n, -2, -1);
        }
        Family::D => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n, -1, -1);
        }
        Family::E => {
            link(1, 3, -1, -1);
            link(2, 4, -1, -1);
            (3..n).for_each(|i| link(i, i + 1, -1, -1));
        }
        Family::F => {
            link(1, 2, -1, -1);
            link(2, 3, -1, -2);
            link(3, 4, -1, -1);
        }
        Family::G => link(1, 2, -3, -1),
    }
    a
}

fn highest_root_marks(family: Family, n: usize) -> Vec<i64> {
    match family {
        Family::A => vec![1; n],
        Family::B => (1..=n).map(|i| if i == 1 { 1 } else { 2 }).collect(),
        Family::C => (1..=n).map(|i| if i == n { 1 } else { 2 }).collect(),
        Family::D => (1..=n).map(|i| if i == 1 || i >= n - 1 { 1 } else { 2 }).collect(),
        Family::E => match n {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
        },
        Family::F => vec![2, 3, 4, 2],
        Family::G => vec![3, 2],
    }
}

/// Smallest positive integer vector with `d_i a_ij = d_j a_ji`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * qf(a[i][j], a[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let den = d.iter().fold(num_bigint::BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = d.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
    ints.iter().map(|x| i64::try_from(x / &g).expect("small symmetrizer")).collect()
}

pub fn build_cartan(ty: CartanType) -> Result<CartanDatum> {
    ty.validate()?;
    let n = ty.rank;
    let fin = finite_gcm(ty.family, n);
    let marks = highest_root_marks(ty.family, n);
    if !ty.affine {
        let d = symmetrizer(&fin);
        return Ok(CartanDatum { ty, first: 1, gcm: fin, d, marks });
    }
    let dfin = symmetrizer(&fin);
    let dmax = *dfin.iter().max().unwrap();
    let mut gcm = vec![vec![0i64; n + 1]; n + 1];
    gcm[0][0] = 2;
    for i in 0..n {
        for j in 0..n {
            gcm[i + 1][j + 1] = fin[i][j];
        }
    }
    for j in 0..n {
        // α_0(α_j^∨) = -θ(α_j^∨)
        gcm[j + 1][0] = -(0..n).map(|i| marks[i] * fin[j][i]).sum::<i64>();
        // α_j(α_0^∨) = -θ^∨-pairing, with comarks m_i d_i / d_max
        let s: i64 = (0..n).map(|i| marks[i] * dfin[i] * fin[i][j]).sum();
        debug_assert_eq!(s % dmax, 0);
        gcm[0][j + 1] = -s / dmax;
    }
    let d = symmetrizer(&gcm);
    Ok(CartanDatum { ty, first: 0, gcm, d, marks })
}

pub fn build_cartan_str(label: &str) -> Result<CartanDatum> {
    build_cartan(CartanType::parse(label)?)
}

impl CartanDatum {
    pub fn label(&self) -> String {
        self.ty.to_string()
    }

    pub fn is_affine(&self) -> bool {
        self.ty.affine
    }

    pub fn nodes(&self) -> core::ops::RangeInclusive<usize> {
        self.first..=self.ty.rank
    }

    /// Nodes of the finite part (`1..=ℓ`).
    pub fn finite_nodes(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.ty.rank
    }

    pub fn check(&self, i: usize) -> Result<()> {
        if self.nodes().contains(&i) {
            Ok(())
        } else {
            Err(Error::BadIndex(i))
        }
    }

    fn pos(&self, i: usize) -> usize {
        assert!(self.nodes().contains(&i), "node {} outside {}", i, self.label());
        i - self.first
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.gcm[self.pos(i)][self.pos(j)]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[self.pos(i)]
    }

    /// `d_ij = d_i a_ij / 2`.
    pub fn sym_pair(&self, i: usize, j: usize) -> Q {
        qf(self.d(i) * self.a(i, j), 2)
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// Coefficients `m_i` of the highest root of the finite part, `i = 1..=ℓ`.
    pub fn theta_marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn cartan_basis(&self) -> Vec<CartanBasis> {
        let mut b: Vec<CartanBasis> = self.nodes().map(CartanBasis::Coroot).collect();
        if self.is_affine() {
            b.push(CartanBasis::Scaling);
        }
        b
    }

    /// `α_j(h)` for a Cartan basis element `h`.
    pub fn alpha_on(&self, j: usize, h: CartanBasis) -> i64 {
        match h {
            CartanBasis::Coroot(i) => self.a(i, j),
            CartanBasis::Scaling => i64::from(j == 0),
        }
    }

    pub fn describe(&self) -> String {
        format!("{} gcm={:?} d={:?}", self.label(), self.gcm, self.d)
    }
}

/// Convenience wrapper panicking on bad labels; meant for tests and fixed data.
pub fn datum(label: &str) -> CartanDatum {
    build_cartan_str(label).unwrap_or_else(|e| panic!("{}: {}", label, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LABELS: &[&str] = &[
        "A1", "A2", "A5", "B2", "B4", "C3", "D4", "D6", "E6", "E7", "E8", "F4", "G2",
    ];

    #[test]
    fn small_examples() {
        let a2 = datum("A2");
        assert_eq!(a2.gcm(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.symmetrizers(), &[1, 1]);
        let b2 = datum("B2");
        assert_eq!(b2.sym_pair(1, 2), crate::scalar::q(-1));
        assert_eq!(b2.symmetrizers(), &[2, 1]);
        let a2a = datum("A2~");
        assert_eq!(a2a.gcm(), &[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let a1a = datum("A1~");
        assert_eq!(a1a.gcm(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(a2a.cartan_basis().len(), 4);
        assert!(build_cartan_str("D3").is_err());
        assert!(build_cartan_str("X2").is_err());
    }

    #[test]
    fn symmetrizable_everywhere() {
        for l in LABELS {
            for aff in ["", "~"] {
                let c = datum(&alloc::format!("{}{}", l, aff));
                for i in c.nodes() {
                    assert_eq!(c.a(i, i), 2);
                    for j in c.nodes() {
                        assert_eq!(c.d(i) * c.a(i, j), c.d(j) * c.a(j, i), "{} {} {}", l, i, j);
                        assert_eq!(c.sym_pair(i, j), c.sym_pair(j, i));
                        if i != j {
                            assert!(c.a(i, j) <= 0);
                            assert_eq!(c.a(i, j) == 0, c.a(j, i) == 0);
                        }
                    }
                }
                assert!(c.symmetrizers().iter().all(|d| *d > 0));
            }
        }
    }

    #[test]
    fn affine_marks_span_kernel() {
        for l in LABELS {
            let c = datum(&alloc::format!("{}~", l));
            let mut m = vec![1i64];
            m.extend_from_slice(c.theta_marks());
            for i in c.nodes() {
                let s: i64 = c.nodes().map(|j| c.a(i, j) * m[j]).sum();
                assert_eq!(s, 0, "{} row {}", l, i);
            }
            // θ is dominant for the finite part
            let fin = datum(l);
            for j in fin.nodes() {
                let s: i64 = fin.nodes().map(|i| fin.theta_marks()[i - 1] * fin.a(j, i)).sum();
                assert!(s >= 0, "{} node {}", l, j);
            }
        }
    }

    #[test]
    fn affine_corank_one() {
        for l in LABELS {
            let c = datum(&alloc::format!("{}~", l));
            let cols: Vec<crate::linalg::SparseVec<usize>> = c
                .gcm()
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, v)| **v != 0)
                        .map(|(k, v)| (k, crate::scalar::q(*v)))
                        .collect()
                })
                .collect();
            let (rank, ker) = crate::linalg::rank_and_kernel(&cols);
            assert_eq!(rank, c.ty.rank, "{}", l);
            assert_eq!(ker.len(), 1);
        }
    }

    #[test]
    fn labels_roundtrip() {
        for l in ["A2", "A2~", "E8~", "G2"] {
            assert_eq!(CartanType::parse(l).unwrap().to_string(), l);
        }
    }
}
