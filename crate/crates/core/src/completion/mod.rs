//! Completions of ℕ-graded ℚ[ħ]-algebras generated in degrees 0 and 1,
//! exercised on two concrete samples: `ℚ[ħ]⟨e, x⟩/(e² - e)` with
//! `deg e = 0, deg x = 1`, and the loop-type algebra `M_2(ℚ)[t, ħ]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::report::Report;
use crate::scalar::{qf, Q};

pub trait GradedSample {
    type Key: Ord + Clone + core::fmt::Debug;

    fn name(&self) -> String;
    fn degree(&self, k: &Self::Key) -> u32;
    /// A basis of the degree-`d` component.
    fn basis(&self, d: u32) -> Vec<Self::Key>;
    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> SparseVec<Self::Key>;
    fn one(&self) -> SparseVec<Self::Key>;
    fn hbar(&self) -> SparseVec<Self::Key>;
}

/// Product computed in `A / A_+^level`, i.e. with components of degree
/// `≥ level` discarded.
pub fn mul_trunc<S: GradedSample>(s: &S, a: &SparseVec<S::Key>, b: &SparseVec<S::Key>, level: u32) -> SparseVec<S::Key> {
    let mut out = SparseVec::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            if s.degree(ka) + s.degree(kb) < level {
                axpy(&mut out, &(ca * cb), &s.mul_keys(ka, kb));
            }
        }
    }
    out
}

pub fn project<S: GradedSample>(s: &S, a: &SparseVec<S::Key>, level: u32) -> SparseVec<S::Key> {
    a.iter().filter(|(k, _)| s.degree(k) < level).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Lowest degree present in `a`.
pub fn low_degree<S: GradedSample>(s: &S, a: &SparseVec<S::Key>) -> Option<u32> {
    a.keys().map(|k| s.degree(k)).min()
}

/// Random element supported in degrees `< level`.
pub fn random_elem<S: GradedSample, R: Rng>(s: &S, rng: &mut R, level: u32, terms: usize) -> SparseVec<S::Key> {
    let mut out = SparseVec::new();
    for _ in 0..terms {
        let d = rng.gen_range(0..level);
        let b = s.basis(d);
        if b.is_empty() {
            continue;
        }
        let k = b[rng.gen_range(0..b.len())].clone();
        let c = qf(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        axpy(&mut out, &c, &[(k, Q::one())].into_iter().collect());
    }
    out
}

/// `ℚ[ħ]⟨e, x⟩/(e² - e)`. Keys are `(ħ-power, word)` with the word in
/// normal form (no two adjacent `e`); letter `0` is `e`, letter `1` is `x`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeSample;

impl GradedSample for FreeSample {
    type Key = (u32, Vec<u8>);

    fn name(&self) -> String {
        "free<e,x>/(e^2-e)".into()
    }

    fn degree(&self, k: &Self::Key) -> u32 {
        k.0 + k.1.iter().filter(|l| **l == 1).count() as u32
    }

    fn basis(&self, d: u32) -> Vec<Self::Key> {
        let mut out = Vec::new();
        for h in 0..=d {
            let nx = (d - h) as usize;
            // an optional e in each of the nx + 1 gaps
            for mask in 0..(1u32 << (nx + 1)) {
                let mut w = Vec::new();
                for gap in 0..=nx {
                    if mask & (1 << gap) != 0 {
                        w.push(0);
                    }
                    if gap < nx {
                        w.push(1);
                    }
                }
                out.push((h, w));
            }
        }
        out
    }

    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> SparseVec<Self::Key> {
        let mut w = a.1.clone();
        let mut rest = b.1.as_slice();
        if w.last() == Some(&0) && rest.first() == Some(&0) {
            rest = &rest[1..];
        }
        w.extend_from_slice(rest);
        [((a.0 + b.0, w), Q::one())].into_iter().collect()
    }

    fn one(&self) -> SparseVec<Self::Key> {
        [((0, Vec::new()), Q::one())].into_iter().collect()
    }

    fn hbar(&self) -> SparseVec<Self::Key> {
        [((1, Vec::new()), Q::one())].into_iter().collect()
    }
}

/// `M_2(ℚ)[t, ħ]` with `deg t = deg ħ = 1`. Keys are
/// `(ħ-power, t-power, row, column)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoopSample;

impl GradedSample for LoopSample {
    type Key = (u32, u32, u8, u8);

    fn name(&self) -> String {
        "M2[t,hbar]".into()
    }

    fn degree(&self, k: &Self::Key) -> u32 {
        k.0 + k.1
    }

    fn basis(&self, d: u32) -> Vec<Self::Key> {
        let mut out = Vec::new();
        for h in 0..=d {
            for a in 0..2 {
                for b in 0..2 {
                    out.push((h, d - h, a, b));
                }
            }
        }
        out
    }

    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> SparseVec<Self::Key> {
        if a.3 != b.2 {
            return SparseVec::new();
        }
        [((a.0 + b.0, a.1 + b.1, a.2, b.3), Q::one())].into_iter().collect()
    }

    fn one(&self) -> SparseVec<Self::Key> {
        [((0, 0, 0, 0), Q::one()), ((0, 0, 1, 1), Q::one())].into_iter().collect()
    }

    fn hbar(&self) -> SparseVec<Self::Key> {
        [((1, 0, 0, 0), Q::one()), ((1, 0, 1, 1), Q::one())].into_iter().collect()
    }
}

/// Checks `A_+^n ∩ A_k = A_k` for all `n ≤ nmax` and `n ≤ k ≤ nmax + 1`,
/// building `A_+^n` in degree `k` as `Σ_{d ≥ 1} A_d · (A_+^{n-1})_{k-d}`.
pub fn aplus_power_check<S: GradedSample>(s: &S, nmax: u32) -> Report {
    let mut rep = Report::new(s.name());
    let top = nmax + 1;
    // powers[k] spans (A_+^{n})_k for the current n
    let mut powers: Vec<Vec<SparseVec<S::Key>>> = (0..=top)
        .map(|k| s.basis(k).into_iter().map(|b| [(b, Q::one())].into_iter().collect()).collect())
        .collect();
    for n in 0..=nmax {
        if n > 0 {
            let mut next: Vec<Vec<SparseVec<S::Key>>> = vec![Vec::new(); (top + 1) as usize];
            for k in n..=top {
                let mut ech: Echelon<S::Key> = Echelon::new();
                let dim = s.basis(k).len();
                'fill: for d in 1..=k {
                    for b in s.basis(d) {
                        let bv: SparseVec<S::Key> = [(b, Q::one())].into_iter().collect();
                        for p in &powers[(k - d) as usize] {
                            let v = mul_trunc(s, &bv, p, top + 1);
                            if ech.insert(&v).is_none() {
                                next[k as usize].push(v);
                                if ech.rank() == dim {
                                    break 'fill;
                                }
                            }
                        }
                    }
                }
            }
            powers = next;
        }
        for k in n..=top {
            let dim = s.basis(k).len();
            let got = powers[k as usize].len();
            rep.push_note("appendix.aplus", vec![n as i64, k as i64], got == dim, format!("rank {} of {}", got, dim));
        }
    }
    rep
}

/// Cone consistency of the inverse system `A/A_+^n`: projections are the
/// identity on low degrees, commute with truncated products, fix constants
/// and kill `ħ^n x` at level `n`.
pub fn inverse_limit_consistency<S: GradedSample>(s: &S, nmax: u32, seed: u64) -> Report {
    let mut rep = Report::new(s.name());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=nmax {
        let a = random_elem(s, &mut rng, n + 1, 6);
        let b = random_elem(s, &mut rng, n + 1, 6);
        let pa = project(s, &a, n);
        let low_ok = a.iter().all(|(k, c)| s.degree(k) >= n || pa.get(k) == Some(c));
        rep.push_note("appendix.limit.projection", vec![n as i64], low_ok, "");
        let lhs = project(s, &mul_trunc(s, &a, &b, n + 1), n);
        let rhs = mul_trunc(s, &pa, &project(s, &b, n), n);
        rep.push_note("appendix.limit.product", vec![n as i64], lhs == rhs, "");
        let one = s.one();
        rep.push_note("appendix.limit.constant", vec![n as i64], project(s, &one, n) == one, "");
        let mut hn = s.one();
        for _ in 0..n {
            hn = mul_trunc(s, &s.hbar(), &hn, n + 2);
        }
        let x = random_elem(s, &mut rng, n + 1, 4);
        let hx = mul_trunc(s, &hn, &x, 2 * n + 2);
        let sep = project(s, &hx, n).is_empty() && (x.is_empty() || !hx.is_empty());
        rep.push_note("appendix.limit.separated", vec![n as i64], sep, "");
    }
    rep
}

/// For random nonzero `x`, `ħx` is nonzero at every level retaining the
/// lowest component of `x`.
pub fn torsion_check<S: GradedSample>(s: &S, trials: usize, nmax: u32, seed: u64) -> Result<Report> {
    if nmax == 0 {
        return Err(Error::Malformed("torsion check needs n_max ≥ 1".into()));
    }
    let mut rep = Report::new(s.name());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let x = random_elem(s, &mut rng, nmax, 5);
        let Some(d) = low_degree(s, &x) else {
            rep.push_note("appendix.torsion", vec![t as i64], true, "vacuous");
            continue;
        };
        let ok = (d + 2..=nmax + 1).all(|level| !mul_trunc(s, &s.hbar(), &x, level).is_empty());
        rep.push_note("appendix.torsion", vec![t as i64], ok, format!("lowest degree {}", d));
    }
    Ok(rep)
}

/// The three appendix checks on both samples.
pub fn run_appendix_all(nmax: u32, trials: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("appendix");
    rep.extend(aplus_power_check(&FreeSample, nmax));
    rep.extend(inverse_limit_consistency(&FreeSample, nmax, seed));
    rep.extend(torsion_check(&FreeSample, trials, nmax, seed)?);
    rep.extend(aplus_power_check(&LoopSample, nmax));
    rep.extend(inverse_limit_consistency(&LoopSample, nmax, seed));
    rep.extend(torsion_check(&LoopSample, trials, nmax, seed)?);
    Ok(rep)
}
