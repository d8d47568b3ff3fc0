//! The dictionary ψ from the abstract generators `X_{ir}^±` into the
//! central extension of the double loop algebra, and the relation checks
//! for 𝔱 in the quotient by `c_t`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;

use super::simple::{build_simple, SimpleLie};
use super::uce::{uce_bracket, RingTag, UceElem};
use crate::cartan::{CartanDatum, Family};
use crate::error::{Error, Result};
use crate::freealg::Sign;
use crate::report::Report;
use crate::scalar::Q;

/// Bracket expression in the generators `X_{ir}^±`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieWord {
    Gen(Sign, usize, i64),
    Br(Box<LieWord>, Box<LieWord>),
}

impl LieWord {
    pub fn x(sign: Sign, i: usize, r: i64) -> Self {
        LieWord::Gen(sign, i, r)
    }

    pub fn br(a: LieWord, b: LieWord) -> Self {
        LieWord::Br(Box::new(a), Box::new(b))
    }

    /// `H_{ir} = [X_{ir}^+, X_{i0}^-]`.
    pub fn h(i: usize, r: i64) -> Self {
        LieWord::br(LieWord::x(Sign::Plus, i, r), LieWord::x(Sign::Minus, i, 0))
    }

    /// `ad(a)^m (b)`.
    pub fn ad_pow(a: &LieWord, m: usize, b: LieWord) -> Self {
        (0..m).fold(b, |acc, _| LieWord::br(a.clone(), acc))
    }
}

/// An untwisted simply-laced affine datum together with its ḡ.
#[derive(Clone, Debug)]
pub struct MryModel {
    pub datum: CartanDatum,
    pub g: SimpleLie,
}

impl MryModel {
    pub fn new(datum: &CartanDatum) -> Result<Self> {
        let ty = datum.ty;
        if !ty.affine || !ty.simply_laced() || (ty.family == Family::A && ty.rank < 2) {
            return Err(Error::UnsupportedType(format!("{} (need simply-laced affine, not A1~)", ty)));
        }
        let g = build_simple(ty.finite_part())?;
        Ok(MryModel { datum: datum.clone(), g })
    }

    /// `X_{ir}^± ↦ x_i^± ⊗ t^r` and `X_{0r}^± ↦ x_θ^∓ ⊗ v^{±1} t^r`.
    pub fn psi(&self, sign: Sign, i: usize, r: i64) -> Result<UceElem> {
        self.datum.check(i)?;
        let ring = RingTag::VtLaurent;
        let g = &self.g;
        if i == 0 {
            let (x, a) = match sign {
                Sign::Plus => (g.x_theta_minus(), 1),
                Sign::Minus => (g.x_theta_plus(), -1),
            };
            return UceElem::mono(ring, x, a, r);
        }
        let x = match sign {
            Sign::Plus => g.e(i),
            Sign::Minus => g.f(i),
        };
        UceElem::mono(ring, x, 0, r)
    }

    pub fn eval(&self, w: &LieWord) -> Result<UceElem> {
        match w {
            LieWord::Gen(s, i, r) => self.psi(*s, *i, *r),
            LieWord::Br(a, b) => uce_bracket(&self.g, &self.eval(a)?, &self.eval(b)?),
        }
    }
}

pub fn mry_psi(model: &MryModel, sign: Sign, i: usize, r: i64) -> Result<UceElem> {
    model.psi(sign, i, r)
}

pub fn eval_lie_word(model: &MryModel, w: &LieWord) -> Result<UceElem> {
    model.eval(w)
}

fn record(rep: &mut Report, model: &MryModel, suite: &str, cell: vec::Vec<i64>, e: UceElem) {
    let e = e.drop_ct();
    let ok = e.is_zero();
    rep.push_note(suite, cell, ok, e.render(&model.g));
}

/// Checks the defining relations of 𝔱 on all `|r|, |s| ≤ n` after applying
/// ψ and passing to the quotient by `c_t`.
pub fn verify_t_relations_in_uce(datum: &CartanDatum, n: i64) -> Result<Report> {
    let model = MryModel::new(datum)?;
    let mut rep = Report::new(datum.label());
    let nodes: vec::Vec<usize> = datum.nodes().collect();
    let modes = -n..=n;
    let x = |s: Sign, i: usize, r: i64| model.psi(s, i, r);
    let h = |i: usize, r: i64| model.eval(&LieWord::h(i, r));
    let br = |a: &UceElem, b: &UceElem| uce_bracket(&model.g, a, b);
    for &i in &nodes {
        for &j in &nodes {
            let c = |r: i64, s: i64, e: i64| vec![i as i64, j as i64, r, s, e];
            for r in modes.clone() {
                for s in modes.clone() {
                    let hh = br(&h(i, r)?, &h(j, s)?)?;
                    record(&mut rep, &model, "mry.hh", c(r, s, 0), hh);
                    let mut xpxm = br(&x(Sign::Plus, i, r)?, &x(Sign::Minus, j, s)?)?;
                    if i == j {
                        xpxm = xpxm.try_sub(&h(i, r + s)?)?;
                    }
                    record(&mut rep, &model, "mry.xpxm", c(r, s, 0), xpxm);
                    for sign in Sign::both() {
                        let eps = sign.eps();
                        let coef = datum.sym_pair(i, j) * Q::from_integer((2 * eps).into());
                        let hx = br(&h(i, r)?, &x(sign, j, s)?)?;
                        let hx = hx.try_sub(&x(sign, j, r + s)?.scale(&coef))?;
                        record(&mut rep, &model, "mry.hx", c(r, s, eps), hx);
                        let lhs = br(&x(sign, i, r + 1)?, &x(sign, j, s)?)?;
                        let rhs = br(&x(sign, i, r)?, &x(sign, j, s + 1)?)?;
                        record(&mut rep, &model, "mry.xx", c(r, s, eps), lhs.try_sub(&rhs)?);
                    }
                }
            }
            if i != j {
                let m = (1 - datum.a(i, j)) as usize;
                for s in modes.clone() {
                    for sign in Sign::both() {
                        let w = LieWord::ad_pow(&LieWord::x(sign, i, 0), m, LieWord::x(sign, j, s));
                        record(&mut rep, &model, "mry.serre", vec![i as i64, j as i64, s, sign.eps()], model.eval(&w)?);
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::datum;
    use crate::liealg::uce::Central;
    use crate::scalar::q;
    use num_traits::One;

    fn a2t() -> MryModel {
        MryModel::new(&datum("A2~")).unwrap()
    }

    #[test]
    fn generator_images() {
        let m = a2t();
        assert_eq!(m.psi(Sign::Plus, 1, 3).unwrap(), UceElem::mono(RingTag::VtLaurent, m.g.e(1), 0, 3).unwrap());
        assert_eq!(m.psi(Sign::Plus, 0, 2).unwrap(), UceElem::mono(RingTag::VtLaurent, m.g.x_theta_minus(), 1, 2).unwrap());
        for r in -3..=3 {
            for i in 0..=2 {
                for s in Sign::both() {
                    // t-degree of ψ(X_{ir}^±) is r
                    assert!(m.psi(s, i, r).unwrap().loop_part.terms.keys().all(|(_, t)| *t == r));
                }
            }
        }
        assert!(MryModel::new(&datum("A1~")).is_err());
        assert!(MryModel::new(&datum("A2")).is_err());
    }

    #[test]
    fn node_zero_bracket() {
        let m = a2t();
        for r in -3..=3 {
            for s in -3..=3 {
                let got = m.eval(&LieWord::br(LieWord::x(Sign::Plus, 0, r), LieWord::x(Sign::Minus, 0, s))).unwrap();
                let mut ht = m.g.h_theta();
                ht.values_mut().for_each(|c| *c = -c.clone());
                let mut want = UceElem::mono(RingTag::VtLaurent, ht, 0, r + s).unwrap();
                if r == -s {
                    want.central.cv += q(1);
                    want.central.ct += q(r);
                }
                want.central.axpy(&Q::one(), &Central::kk(0, r + s, q(r + s)));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn relations_hold_small() {
        let rep = verify_t_relations_in_uce(&datum("A2~"), 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().next());
        let rep = verify_t_relations_in_uce(&datum("D4~"), 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().next());
    }

    #[test]
    fn wrong_dictionary_is_caught() {
        // sending X_{0r}^+ to x_θ^+ instead of x_θ^- breaks the relations
        let m = a2t();
        let w = LieWord::br(LieWord::x(Sign::Plus, 0, 1), LieWord::x(Sign::Minus, 0, -1));
        let good = m.eval(&w).unwrap();
        let h0 = m.eval(&LieWord::h(0, 0)).unwrap();
        assert!(good.try_sub(&h0).unwrap().drop_ct().is_zero());
        let bad = uce_bracket(&m.g, &UceElem::mono(RingTag::VtLaurent, m.g.x_theta_plus(), 1, 1).unwrap(), &m.psi(Sign::Minus, 0, -1).unwrap()).unwrap();
        assert!(!bad.try_sub(&h0).unwrap().drop_ct().is_zero());
    }
}
