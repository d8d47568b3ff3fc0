//! The formal shift operator `Φ_z` from the Yangian double into the
//! z-Laurent completion of the Yangian, and its specializations `Φ_c`.

mod checks;

pub use checks::{
    check_gr_tw, check_j_generators, check_phi_form, check_phi_gamma_identity, check_phi_relations,
    check_phi_serre, check_phi_xxh, check_vertex_consistency,
};

use num_traits::Zero;

use crate::cartan::CartanDatum;
use crate::dist::{DistElem, DistTerm, Var};
use crate::error::{Error, Result};
use crate::freealg::{FreeElem, Letter, Side, Sign};
use crate::morphisms::{eval_z, tau_z, zcoeffs_add, ZCoeffs};
use crate::scalar::{binom, Q};

/// A generating current `X_i^±(u)` or `H_i(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Current {
    X(Sign, usize),
    H(usize),
}

impl Current {
    pub fn letter(self, r: i64) -> Letter {
        match self {
            Current::X(s, i) => Letter::X(s, i, r),
            Current::H(i) => Letter::H(i, r),
        }
    }
}

/// `Φ_z` of a generator as a Laurent polynomial in `z` with Yangian
/// coefficients. Images of negative modes are infinite; `truncation = Some(M)`
/// records that only Yangian degrees `< M` were kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeImage {
    pub coeffs: ZCoeffs,
    pub truncation: Option<i64>,
}

fn with_mode(l: &Letter, p: i64) -> Letter {
    match *l {
        Letter::X(s, i, _) => Letter::X(s, i, p),
        Letter::H(i, _) => Letter::H(i, p),
        c => c,
    }
}

/// Mode form of `Φ_z`: `Φ_z(Y_ir) = Σ_p C(r,p) z^{r-p} y_ip` with the
/// generalized binomial; for `r = -n-1` this is
/// `Σ_p (-1)^p C(p+n,n) y_ip z^{-p-n-1}`, kept for `p < m`.
pub fn phi_z_gen(dat: &CartanDatum, l: &Letter, m: i64) -> Result<ModeImage> {
    FreeElem::gen(dat, Side::Double, *l)?;
    let r = l.degree();
    if matches!(l, Letter::Cartan(_)) || r >= 0 {
        return Ok(ModeImage { coeffs: tau_z(dat, l)?, truncation: None });
    }
    let mut coeffs = ZCoeffs::new();
    for p in 0..m.max(0) {
        let y = FreeElem::gen(dat, Side::Yangian, with_mode(l, p))?;
        zcoeffs_add(&mut coeffs, r - p, &y.scale(&binom(r, p as u32)));
    }
    Ok(ModeImage { coeffs, truncation: Some(m) })
}

/// `Φ_c` on a generator: `Φ_z` evaluated at `z = c`, negative modes
/// truncated to Yangian degree `< m`.
pub fn phi_c_gen(dat: &CartanDatum, l: &Letter, c: &Q, m: i64) -> Result<FreeElem> {
    let img = phi_z_gen(dat, l, m)?;
    if c.is_zero() && img.coeffs.keys().any(|k| *k < 0) {
        return Err(Error::ZeroScalar);
    }
    Ok(eval_z(&img.coeffs, c, Side::Yangian))
}

/// `Φ_c` on a double element, modulo Yangian degree `>= m`.
pub fn phi_c_elem(dat: &CartanDatum, e: &FreeElem, c: &Q, m: i64) -> Result<FreeElem> {
    Ok(e.substitute(Side::Yangian, |l| phi_c_gen(dat, l, c, m))?.truncate(m))
}

/// Series form `Φ_z(Y_i(u)) = Σ_{n <= nmax} y_in D1(n; u)`.
pub fn phi_series(dat: &CartanDatum, cur: Current, var: Var, nmax: u32) -> DistElem {
    let mut out = DistElem::zero(Side::Yangian);
    for n in 0..=nmax {
        let y = FreeElem::gen(dat, Side::Yangian, cur.letter(n as i64)).expect("valid current");
        out.add_term(DistTerm::d1(n, var), &y);
    }
    out
}

/// Coefficient of `var^{-r-1}` in a sum of `c_n D1(n; var)` terms, as a
/// polynomial in `z`. Terms of any other shape are rejected.
pub fn mode_of_series(series: &DistElem, var: Var, r: i64) -> Result<ZCoeffs> {
    let mut out = ZCoeffs::new();
    for (t, c) in series.terms() {
        let n = match (t.deltas.get(&var), t.deltas.len(), t.swap, t.mono.is_empty()) {
            (Some(n), 1, None, true) => *n,
            _ => return Err(Error::Malformed(alloc::format!("unexpected series term {}", t))),
        };
        zcoeffs_add(&mut out, r - n as i64, &c.scale(&binom(r, n)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::datum;
    use crate::morphisms::tau_c;
    use crate::scalar::{q, qf};

    fn xs(dat: &CartanDatum, p: i64) -> FreeElem {
        FreeElem::x(dat, Side::Yangian, Sign::Plus, 1, p)
    }

    #[test]
    fn negative_mode_examples() {
        let a1 = datum("A1");
        let one = q(1);
        let e = phi_c_gen(&a1, &Letter::X(Sign::Plus, 1, -1), &one, 4).unwrap();
        let expect = &(&(&xs(&a1, 0) - &xs(&a1, 1)) + &xs(&a1, 2)) - &xs(&a1, 3);
        assert_eq!(e, expect);
        let e = phi_c_gen(&a1, &Letter::X(Sign::Plus, 1, -2), &one, 3).unwrap();
        let expect = &(&xs(&a1, 0) - &xs(&a1, 1).scale(&q(2))) + &xs(&a1, 2).scale(&q(3));
        assert_eq!(e, expect);
    }

    #[test]
    fn nonnegative_modes_agree_with_tau() {
        let b2 = datum("B2");
        for r in 0..6 {
            for l in [Letter::X(Sign::Minus, 2, r), Letter::H(1, r)] {
                let c = qf(-3, 2);
                assert_eq!(phi_c_gen(&b2, &l, &c, 0).unwrap(), tau_c(&b2, &c, &l).unwrap());
            }
        }
    }

    #[test]
    fn zero_point_rejected_for_negative_modes() {
        let a1 = datum("A1");
        assert_eq!(phi_c_gen(&a1, &Letter::X(Sign::Plus, 1, -1), &q(0), 3), Err(Error::ZeroScalar));
        assert!(phi_c_gen(&a1, &Letter::X(Sign::Plus, 1, 2), &q(0), 3).is_ok());
    }

    #[test]
    fn series_modes_match_mode_form() {
        let a2 = datum("A2");
        let s = phi_series(&a2, Current::X(Sign::Minus, 2), Var::U(0), 5);
        for r in -6..=5 {
            let from_series = mode_of_series(&s, Var::U(0), r).unwrap();
            let direct = phi_z_gen(&a2, &Letter::X(Sign::Minus, 2, r), 6).unwrap().coeffs;
            assert_eq!(from_series, direct, "r={}", r);
        }
    }
}
