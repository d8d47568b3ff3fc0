//! Shift, grading, translation and inclusion maps on generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;

use num_traits::{One, Zero};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::freealg::{reduce_modulo_templates, t_i1, Family, FreeElem, Letter, Side, Sign};
use crate::report::Report;
use crate::scalar::{binom, qf, qpow, Q};

/// Coefficients of a polynomial (or Laurent polynomial) in a formal variable.
pub type ZCoeffs = BTreeMap<i64, FreeElem>;

pub fn zcoeffs_add(acc: &mut ZCoeffs, k: i64, e: &FreeElem) {
    if e.is_zero() {
        return;
    }
    let side = e.side();
    let slot = acc.entry(k).or_insert_with(|| FreeElem::zero(side));
    *slot += e;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

pub fn zcoeffs_mul(a: &ZCoeffs, b: &ZCoeffs) -> ZCoeffs {
    let mut out = ZCoeffs::new();
    for (i, x) in a {
        for (j, y) in b {
            zcoeffs_add(&mut out, i + j, &(x * y));
        }
    }
    out
}

fn mode_letter(l: &Letter, k: i64) -> Letter {
    match *l {
        Letter::X(s, i, _) => Letter::X(s, i, k),
        Letter::H(i, _) => Letter::H(i, k),
        c => c,
    }
}

/// `τ_z` on a Yangian generator, as coefficients of powers of `z`:
/// `τ_z(y_ir) = Σ_k C(r,k) z^{r-k} y_ik`.
pub fn tau_z(dat: &CartanDatum, l: &Letter) -> Result<ZCoeffs> {
    let mut out = ZCoeffs::new();
    match l {
        Letter::Cartan(_) => {
            out.insert(0, FreeElem::gen(dat, Side::Yangian, *l)?);
        }
        _ => {
            let r = l.degree();
            if r < 0 {
                return Err(Error::NegativeMode(r));
            }
            for k in 0..=r {
                let y = FreeElem::gen(dat, Side::Yangian, mode_letter(l, k))?;
                zcoeffs_add(&mut out, r - k, &y.scale(&binom(r, (r - k) as u32)));
            }
        }
    }
    Ok(out)
}

pub fn eval_z(coeffs: &ZCoeffs, c: &Q, side: Side) -> FreeElem {
    let mut out = FreeElem::zero(side);
    for (k, e) in coeffs {
        if c.is_zero() && *k != 0 {
            continue;
        }
        out += &e.scale(&qpow(c, *k));
    }
    out
}

/// `τ_c` on a Yangian generator.
pub fn tau_c(dat: &CartanDatum, c: &Q, l: &Letter) -> Result<FreeElem> {
    Ok(eval_z(&tau_z(dat, l)?, c, Side::Yangian))
}

pub fn tau_c_elem(dat: &CartanDatum, c: &Q, e: &FreeElem) -> Result<FreeElem> {
    e.substitute(Side::Yangian, |l| tau_c(dat, c, l))
}

/// `τ_z` applied to a whole element, as a polynomial in `z`.
pub fn tau_z_elem(dat: &CartanDatum, e: &FreeElem) -> Result<ZCoeffs> {
    let mut out = ZCoeffs::new();
    for (w, c) in e.terms() {
        let mut prod = ZCoeffs::new();
        prod.insert(0, FreeElem::scalar(Side::Yangian, c.clone()));
        for l in w {
            prod = zcoeffs_mul(&prod, &tau_z(dat, l)?);
        }
        for (k, x) in prod {
            zcoeffs_add(&mut out, k, &x);
        }
    }
    Ok(out)
}

/// `χ_a`: multiplies the degree-`k` component by `a^k`.
pub fn chi(a: &Q, e: &FreeElem) -> Result<FreeElem> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let mut out = FreeElem::zero(e.side());
    for (k, c) in e.grade() {
        out += &c.scale(&qpow(a, k));
    }
    Ok(out)
}

/// `t_i^n` on a double generator: `X_jr^± ↦ X_{j, r ± n δ_ij}^±`.
pub fn translate_ti(dat: &CartanDatum, i: usize, n: i64, l: &Letter) -> Result<Letter> {
    dat.check(i)?;
    Ok(match *l {
        Letter::X(s, j, r) if j == i => Letter::X(s, j, r + s.eps() * n),
        other => other,
    })
}

pub fn translate_elem(dat: &CartanDatum, i: usize, n: i64, e: &FreeElem) -> Result<FreeElem> {
    e.substitute(e.side(), |l| Ok(FreeElem::letter(e.side(), translate_ti(dat, i, n, l)?)))
}

/// `σ_i^±`: `x_ir^± ↦ x_{i,r+1}^±`, defined on the subalgebra generated by
/// the sign-matching root vectors at node `i`.
pub fn sigma(dat: &CartanDatum, i: usize, sign: Sign, l: &Letter) -> Result<Letter> {
    dat.check(i)?;
    match *l {
        Letter::X(s, j, r) if s == sign && j == i => Ok(Letter::X(s, j, r + 1)),
        other => Err(Error::OutOfDomain(format!("{} under sigma_{}^{}", other, i, sign.symbol()))),
    }
}

/// `Γ = ι ∘ τ_{-1}` on a Yangian generator.
pub fn gamma_gen(dat: &CartanDatum, l: &Letter) -> Result<FreeElem> {
    Ok(tau_c(dat, &-Q::one(), l)?.with_side(Side::Double))
}

pub fn gamma_elem(dat: &CartanDatum, e: &FreeElem) -> Result<FreeElem> {
    e.substitute(Side::Double, |l| gamma_gen(dat, l))
}

/// Checks `(id - t_i)(X_jr^± - X_js^±)` against the commutator expression in
/// `ι(t_i1 - h_i0) = Γ(t_i1)`, modulo the shift identity and `h0x` templates.
pub fn verify_ti_identities(dat: &CartanDatum, n: i64) -> Result<Report> {
    let side = Side::Double;
    let mut rep = Report::new(dat.label());
    for i in dat.nodes() {
        let g = gamma_elem(dat, &t_i1(dat, Side::Yangian, i))?;
        let inv2d = qf(1, 2 * dat.d(i));
        for j in dat.nodes() {
            for r in -n..=n {
                for s in -n..=n {
                    let mut residual = FreeElem::zero(side);
                    for sign in Sign::both() {
                        let x = |m: i64| FreeElem::x(dat, side, sign, j, m);
                        let diff = &x(r) - &x(s);
                        let lhs = &diff - &translate_elem(dat, i, 1, &diff)?;
                        let rhs = if i == j {
                            let (a, b) = match sign {
                                Sign::Plus => (s, r),
                                Sign::Minus => (s - 1, r - 1),
                            };
                            let xi = |m: i64| FreeElem::x(dat, side, sign, i, m);
                            g.bracket(&(&xi(a) - &xi(b)))?.scale(&inv2d)
                        } else {
                            FreeElem::zero(side)
                        };
                        let d = &lhs - &rhs;
                        let red = reduce_modulo_templates(&d, dat, &[Family::Ti, Family::H0x], n + 1)?;
                        residual += &red.residual;
                    }
                    rep.push_residual("morph.ti", vec![i as i64, j as i64, r, s], residual);
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{datum, CartanBasis};
    use crate::scalar::q;

    fn xy(dat: &CartanDatum, s: Sign, i: usize, r: i64) -> FreeElem {
        FreeElem::x(dat, Side::Yangian, s, i, r)
    }

    #[test]
    fn tau_examples() {
        let a1 = datum("A1");
        let img = tau_c(&a1, &q(2), &Letter::X(Sign::Plus, 1, 2)).unwrap();
        let expect = &(&xy(&a1, Sign::Plus, 1, 2) + &xy(&a1, Sign::Plus, 1, 1).scale(&q(4)))
            + &xy(&a1, Sign::Plus, 1, 0).scale(&q(4));
        assert_eq!(img, expect);
        let h = tau_c(&a1, &q(1), &Letter::H(1, 1)).unwrap();
        assert_eq!(h, &FreeElem::h(&a1, Side::Yangian, 1, 1) + &FreeElem::h(&a1, Side::Yangian, 1, 0));
        let c = Letter::Cartan(CartanBasis::Coroot(1));
        assert_eq!(tau_c(&a1, &q(5), &c).unwrap(), FreeElem::letter(Side::Yangian, c));
    }

    #[test]
    fn tau_group_law_on_generators() {
        let b2 = datum("B2");
        let (a, b) = (qf(3, 2), q(-2));
        for i in b2.nodes() {
            for r in 0..5 {
                for l in [Letter::X(Sign::Plus, i, r), Letter::X(Sign::Minus, i, r), Letter::H(i, r.max(1))] {
                    let inner = tau_c(&b2, &b, &l).unwrap();
                    let lhs = tau_c_elem(&b2, &a, &inner).unwrap();
                    assert_eq!(lhs, tau_c(&b2, &(&a + &b), &l).unwrap());
                }
            }
        }
    }

    #[test]
    fn tau_z_evaluates_to_tau_c() {
        let a2 = datum("A2");
        let e = &xy(&a2, Sign::Plus, 1, 3) * &FreeElem::h(&a2, Side::Yangian, 2, 2);
        let z = tau_z_elem(&a2, &e).unwrap();
        assert_eq!(eval_z(&z, &qf(-1, 3), Side::Yangian), tau_c_elem(&a2, &qf(-1, 3), &e).unwrap());
    }

    #[test]
    fn chi_is_multiplicative() {
        let a1 = datum("A1");
        let x = &xy(&a1, Sign::Plus, 1, 2) + &xy(&a1, Sign::Plus, 1, 0).hbar_pow(1);
        let y = &xy(&a1, Sign::Minus, 1, 1) + &FreeElem::h(&a1, Side::Yangian, 1, 3);
        let a = qf(2, 5);
        assert_eq!(chi(&a, &(&x * &y)).unwrap(), &chi(&a, &x).unwrap() * &chi(&a, &y).unwrap());
        assert_eq!(chi(&q(0), &x), Err(Error::ZeroScalar));
        assert_eq!(chi(&a, &chi(&a.recip(), &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn translations() {
        let a1 = datum("A1");
        assert_eq!(translate_ti(&a1, 1, -1, &Letter::X(Sign::Minus, 1, 5)).unwrap(), Letter::X(Sign::Minus, 1, 6));
        let a2 = datum("A2~");
        for l in [Letter::X(Sign::Plus, 0, 3), Letter::X(Sign::Minus, 2, -1), Letter::H(1, 4)] {
            let there = translate_ti(&a2, 0, 3, &l).unwrap();
            assert_eq!(translate_ti(&a2, 0, -3, &there).unwrap(), l);
            let one = translate_ti(&a2, 1, 1, &translate_ti(&a2, 0, 2, &l).unwrap()).unwrap();
            let other = translate_ti(&a2, 0, 2, &translate_ti(&a2, 1, 1, &l).unwrap()).unwrap();
            assert_eq!(one, other);
        }
    }

    #[test]
    fn sigma_domain() {
        let a1 = datum("A1");
        assert_eq!(sigma(&a1, 1, Sign::Plus, &Letter::X(Sign::Plus, 1, 2)).unwrap(), Letter::X(Sign::Plus, 1, 3));
        assert!(sigma(&a1, 1, Sign::Plus, &Letter::X(Sign::Minus, 1, 2)).is_err());
    }

    #[test]
    fn gamma_examples() {
        let a1 = datum("A1");
        let x0 = gamma_gen(&a1, &Letter::X(Sign::Plus, 1, 0)).unwrap();
        assert_eq!(x0, FreeElem::x(&a1, Side::Double, Sign::Plus, 1, 0));
        let h1 = gamma_gen(&a1, &Letter::H(1, 1)).unwrap();
        assert_eq!(h1, &FreeElem::h(&a1, Side::Double, 1, 1) - &FreeElem::h(&a1, Side::Double, 1, 0));
        // Γ(t_i1) coincides with ι(t_i1 - h_i0)
        let t = t_i1(&a1, Side::Yangian, 1);
        let iota = (&t - &FreeElem::h(&a1, Side::Yangian, 1, 0)).with_side(Side::Double);
        assert_eq!(gamma_elem(&a1, &t).unwrap(), iota);
    }

    #[test]
    fn ti_identities_small() {
        for l in ["A1", "B2", "A2~"] {
            let rep = verify_ti_identities(&datum(l), 2).unwrap();
            assert!(rep.passed(), "{}", l);
        }
    }
}
