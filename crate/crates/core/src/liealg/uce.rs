//! Kassel's model `u(A) = ḡ⊗A ⊕ 𝔷(A)` of the universal central extension
//! for `A` a two-variable (Laurent) polynomial ring.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::simple::{GVec, SimpleLie};
use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseVec};
use crate::report::Report;
use crate::scalar::{q, qf, Q};

/// The coordinate ring `A`. The second variable is `t` or `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    /// ℂ[v^±1, t]
    VtPoly,
    /// ℂ[v^±1, t^±1]
    VtLaurent,
    /// ℂ[v^±1, w^±1]
    VwLaurent,
}

impl RingTag {
    pub fn name(self) -> &'static str {
        match self {
            RingTag::VtPoly => "v_t_poly",
            RingTag::VtLaurent => "v_t_laurent",
            RingTag::VwLaurent => "v_w_laurent",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [RingTag::VtPoly, RingTag::VtLaurent, RingTag::VwLaurent].into_iter().find(|r| r.name() == s)
    }

    pub fn all() -> [RingTag; 3] {
        [RingTag::VtPoly, RingTag::VtLaurent, RingTag::VwLaurent]
    }

    /// Name of the second variable.
    pub fn var(self) -> char {
        if self == RingTag::VwLaurent {
            'w'
        } else {
            't'
        }
    }

    pub fn admits(self, s: i64) -> bool {
        self != RingTag::VtPoly || s >= 0
    }

    fn check(self, s: i64) -> Result<()> {
        if self.admits(s) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(format!("{}^{} in {}", self.var(), s, self.name())))
        }
    }
}

/// Coordinates in 𝔷(A) with respect to `K_{r,s}`, `c_v` and `c_t` (or `c_w`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Central {
    pub k: BTreeMap<(i64, i64), Q>,
    pub cv: Q,
    pub ct: Q,
}

impl Central {
    pub fn zero() -> Self {
        Central::default()
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_empty() && self.cv.is_zero() && self.ct.is_zero()
    }

    pub fn cv(c: Q) -> Self {
        Central { cv: c, ..Central::default() }
    }

    pub fn ct(c: Q) -> Self {
        Central { ct: c, ..Central::default() }
    }

    /// `c·K_{r,s}`; `K_{0,0}` is zero.
    pub fn kk(r: i64, s: i64, c: Q) -> Self {
        let mut z = Central::zero();
        z.add_k(r, s, c);
        z
    }

    pub fn add_k(&mut self, r: i64, s: i64, c: Q) {
        if (r, s) == (0, 0) || c.is_zero() {
            return;
        }
        let slot = self.k.entry((r, s)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.k.remove(&(r, s));
        }
    }

    pub fn axpy(&mut self, a: &Q, other: &Central) {
        for ((r, s), c) in &other.k {
            self.add_k(*r, *s, a * c);
        }
        self.cv += a * &other.cv;
        self.ct += a * &other.ct;
    }

    pub fn scale(&self, a: &Q) -> Central {
        let mut z = Central::zero();
        z.axpy(a, self);
        z
    }
}

/// `v^k t^ℓ d(v^r t^s)` in 𝔷(A):
/// `δ_{r,-k} δ_{s,-ℓ} (r c_v + s c_t) + (rℓ - sk) K_{r+k, s+ℓ}`.
pub fn omega_reduce(ring: RingTag, a: (i64, i64), db: (i64, i64)) -> Result<Central> {
    let ((k, l), (r, s)) = (a, db);
    ring.check(l)?;
    ring.check(s)?;
    let mut z = Central::zero();
    if r + k == 0 && s + l == 0 {
        z.cv = q(r);
        z.ct = q(s);
    }
    z.add_k(r + k, s + l, q(r * l - s * k));
    if ring == RingTag::VtPoly {
        // no c_t and no K_{r,0} exist over the polynomial ring
        debug_assert!(z.ct.is_zero() && z.k.keys().all(|(_, s)| *s > 0));
    }
    Ok(z)
}

/// `v^{a-1} t^b d(v) = b·K_{a,b}` for `b ≠ 0`; `v^{-1} d(v) = c_v`; other
/// `v^{a-1} d(v)` are exact.
pub fn v_dv(a: i64, b: i64) -> Central {
    if b != 0 {
        Central::kk(a, b, q(b))
    } else if a == 0 {
        Central::cv(Q::one())
    } else {
        Central::zero()
    }
}

/// `v^a t^{-1} d(t) = -a·K_{a,0}` for `a ≠ 0` and `c_t` for `a = 0`.
pub fn v_t_dt(a: i64) -> Central {
    if a == 0 {
        Central::ct(Q::one())
    } else {
        Central::kk(a, 0, q(-a))
    }
}

/// Element of ḡ⊗A: exponents `(v, t)` mapped to ḡ-vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopElem {
    pub ring: RingTag,
    pub terms: BTreeMap<(i64, i64), GVec>,
}

impl LoopElem {
    pub fn zero(ring: RingTag) -> Self {
        LoopElem { ring, terms: BTreeMap::new() }
    }

    pub fn mono(ring: RingTag, x: GVec, v: i64, t: i64) -> Result<Self> {
        ring.check(t)?;
        let mut e = LoopElem::zero(ring);
        e.add(v, t, &Q::one(), &x);
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, v: i64, t: i64, a: &Q, x: &GVec) {
        let slot = self.terms.entry((v, t)).or_default();
        axpy(slot, a, x);
        if slot.is_empty() {
            self.terms.remove(&(v, t));
        }
    }

    pub fn axpy(&mut self, a: &Q, other: &LoopElem) {
        for ((v, t), x) in &other.terms {
            self.add(*v, *t, a, x);
        }
    }
}

/// Coordinate labels of u(A), used when assembling rank matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UceKey {
    Loop(i64, i64, usize),
    K(i64, i64),
    Cv,
    Ct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UceElem {
    pub loop_part: LoopElem,
    pub central: Central,
}

impl UceElem {
    pub fn zero(ring: RingTag) -> Self {
        UceElem { loop_part: LoopElem::zero(ring), central: Central::zero() }
    }

    pub fn ring(&self) -> RingTag {
        self.loop_part.ring
    }

    /// `x ⊗ v^a t^b`.
    pub fn mono(ring: RingTag, x: GVec, a: i64, b: i64) -> Result<Self> {
        Ok(UceElem { loop_part: LoopElem::mono(ring, x, a, b)?, central: Central::zero() })
    }

    pub fn central(ring: RingTag, z: Central) -> Self {
        UceElem { loop_part: LoopElem::zero(ring), central: z }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.central.is_zero()
    }

    pub fn try_axpy(&mut self, a: &Q, other: &UceElem) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        self.loop_part.axpy(a, &other.loop_part);
        self.central.axpy(a, &other.central);
        Ok(())
    }

    pub fn try_sub(&self, other: &UceElem) -> Result<UceElem> {
        let mut out = self.clone();
        out.try_axpy(&q(-1), other)?;
        Ok(out)
    }

    pub fn scale(&self, a: &Q) -> UceElem {
        let mut out = UceElem::zero(self.ring());
        out.try_axpy(a, self).expect("same ring");
        out
    }

    pub fn coords(&self) -> SparseVec<UceKey> {
        let mut out = SparseVec::new();
        for ((a, b), x) in &self.loop_part.terms {
            for (k, c) in x {
                out.insert(UceKey::Loop(*a, *b, *k), c.clone());
            }
        }
        for ((r, s), c) in &self.central.k {
            out.insert(UceKey::K(*r, *s), c.clone());
        }
        if !self.central.cv.is_zero() {
            out.insert(UceKey::Cv, self.central.cv.clone());
        }
        if !self.central.ct.is_zero() {
            out.insert(UceKey::Ct, self.central.ct.clone());
        }
        out
    }

    /// Same coordinates over another ring; fails if an exponent is not
    /// admitted there.
    pub fn retag(&self, ring: RingTag) -> Result<UceElem> {
        for (_, b) in self.loop_part.terms.keys() {
            ring.check(*b)?;
        }
        if ring == RingTag::VtPoly && (!self.central.ct.is_zero() || self.central.k.keys().any(|(_, s)| *s <= 0)) {
            return Err(Error::OutOfDomain(format!("central part outside 𝔷({})", ring.name())));
        }
        let mut out = self.clone();
        out.loop_part.ring = ring;
        Ok(out)
    }

    /// Image in the quotient by `ℂ c_t` (or `ℂ c_w`).
    pub fn drop_ct(&self) -> UceElem {
        let mut out = self.clone();
        out.central.ct = Q::zero();
        out
    }

    /// Plain-text rendering; `g` supplies basis labels.
    pub fn render(&self, g: &SimpleLie) -> String {
        let var = self.ring().var();
        let mut parts: Vec<String> = Vec::new();
        for ((a, b), x) in &self.loop_part.terms {
            for (k, c) in x {
                parts.push(format!("({})*{}⊗v^{}{}^{}", c, g.basis_label(*k), a, var, b));
            }
        }
        for ((r, s), c) in &self.central.k {
            parts.push(format!("({})*K_{{{},{}}}", c, r, s));
        }
        if !self.central.cv.is_zero() {
            parts.push(format!("({})*c_v", self.central.cv));
        }
        if !self.central.ct.is_zero() {
            parts.push(format!("({})*c_{}", self.central.ct, var));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }
}

/// `[x⊗a, y⊗b] = [x,y]⊗ab + (x,y)·b d(a)`; central inputs are annihilated.
pub fn uce_bracket(g: &SimpleLie, x: &UceElem, y: &UceElem) -> Result<UceElem> {
    let ring = x.ring();
    if ring != y.ring() {
        return Err(Error::RingMismatch);
    }
    let mut out = UceElem::zero(ring);
    for ((a1, a2), xv) in &x.loop_part.terms {
        for ((b1, b2), yv) in &y.loop_part.terms {
            let br = g.bracket(xv, yv);
            out.loop_part.add(a1 + b1, a2 + b2, &Q::one(), &br);
            let f = g.form(xv, yv);
            if !f.is_zero() {
                let z = omega_reduce(ring, (*b1, *b2), (*a1, *a2))?;
                out.central.axpy(&f, &z);
            }
        }
    }
    Ok(out)
}

/// `κ(f, g) = Res_t (∂_t f, g)` on ġ[t^±1], with ġ's form
/// `(x⊗v^a, y⊗v^b) = δ_{a+b,0}(x, y)`.
pub fn kappa(g: &SimpleLie, x: &LoopElem, y: &LoopElem) -> Q {
    let mut s = Q::zero();
    for ((a, r), xv) in &x.terms {
        for ((b, t), yv) in &y.terms {
            if a + b == 0 && r + t == 0 && *r != 0 {
                s += q(*r) * g.form(xv, yv);
            }
        }
    }
    s
}

/// Drops the central part.
pub fn pi_project(x: &UceElem) -> LoopElem {
    x.loop_part.clone()
}

/// Evaluation `t ↦ 1`: sums the coefficients over the second exponent.
pub fn ev_g(x: &LoopElem) -> LoopElem {
    let mut out = LoopElem::zero(x.ring);
    for ((a, _), xv) in &x.terms {
        out.add(*a, 0, &Q::one(), xv);
    }
    out
}

/// A random element with `terms` loop terms, exponents in `[-e, e]`
/// (`[0, e]` for the polynomial variable) and small rational coefficients.
pub fn random_uce<R: Rng>(g: &SimpleLie, ring: RingTag, rng: &mut R, terms: usize, e: i64) -> UceElem {
    let mut out = UceElem::zero(ring);
    for _ in 0..terms {
        let k = rng.gen_range(0..g.dim());
        let a = rng.gen_range(-e..=e);
        let b = if ring == RingTag::VtPoly { rng.gen_range(0..=e) } else { rng.gen_range(-e..=e) };
        let c = qf(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        out.loop_part.add(a, b, &c, &g.basis(k));
    }
    out
}

/// Antisymmetry and Jacobi on `trials` seeded random triples for every ring
/// tag, and the central term of `[x⊗vt, y⊗v^{-1}t^{-1}]` on basis pairs.
pub fn check_uce_jacobi(g: &SimpleLie, trials: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new(g.datum.label());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (ti, ring) in RingTag::all().into_iter().enumerate() {
        for t in 0..trials {
            let x = random_uce(g, ring, &mut rng, 3, 2);
            let y = random_uce(g, ring, &mut rng, 3, 2);
            let z = random_uce(g, ring, &mut rng, 3, 2);
            let mut anti = uce_bracket(g, &x, &y)?;
            anti.try_axpy(&Q::one(), &uce_bracket(g, &y, &x)?)?;
            rep.push_note("uce.antisymmetry", vec![ti as i64, t as i64], anti.is_zero(), anti.render(g));
            let mut jac = uce_bracket(g, &x, &uce_bracket(g, &y, &z)?)?;
            jac.try_axpy(&Q::one(), &uce_bracket(g, &y, &uce_bracket(g, &z, &x)?)?)?;
            jac.try_axpy(&Q::one(), &uce_bracket(g, &z, &uce_bracket(g, &x, &y)?)?)?;
            rep.push_note("uce.jacobi", vec![ti as i64, t as i64], jac.is_zero(), jac.render(g));
        }
    }
    let ring = RingTag::VtLaurent;
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let (x, y) = (g.basis(a), g.basis(b));
            let br = uce_bracket(g, &UceElem::mono(ring, x.clone(), 1, 1)?, &UceElem::mono(ring, y.clone(), -1, -1)?)?;
            let f = g.form(&x, &y);
            let mut want = Central::cv(f.clone());
            want.ct = f;
            let ok = br.central == want;
            rep.push_note("uce.central", vec![a as i64, b as i64], ok, UceElem::central(ring, br.central).render(g));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::liealg::build_simple;

    fn a2() -> SimpleLie {
        build_simple(CartanType::parse("A2").unwrap()).unwrap()
    }

    #[test]
    fn omega_examples() {
        let r = RingTag::VtLaurent;
        assert_eq!(omega_reduce(r, (0, 2), (1, 1)).unwrap(), Central::kk(1, 3, q(2)));
        let mut cvt = Central::cv(q(1));
        cvt.ct = q(1);
        assert_eq!(omega_reduce(r, (-1, -1), (1, 1)).unwrap(), cvt);
        assert_eq!(omega_reduce(r, (0, -3), (0, 3)).unwrap(), Central::ct(q(3)));
        assert_eq!(omega_reduce(r, (0, 2), (0, 5)).unwrap(), Central::zero());
        assert!(omega_reduce(RingTag::VtPoly, (0, -1), (1, 1)).is_err());
    }

    #[test]
    fn omega_respects_module_relation() {
        // s v^r t^{s-1} d(t) + r t^s v^{r-1} d(v) = d(v^r t^s) ≡ 0
        for ring in [RingTag::VtLaurent, RingTag::VwLaurent] {
            for r in -5..=5 {
                for s in -5..=5 {
                    let mut z = omega_reduce(ring, (r, s - 1), (0, 1)).unwrap().scale(&q(s));
                    z.axpy(&q(r), &omega_reduce(ring, (r - 1, s), (1, 0)).unwrap());
                    assert!(z.is_zero(), "({}, {})", r, s);
                }
            }
        }
        // the basis conversions agree with the reduction
        for a in -4..=4 {
            for b in -4..=4 {
                assert_eq!(v_dv(a, b), omega_reduce(RingTag::VtLaurent, (a - 1, b), (1, 0)).unwrap());
            }
            assert_eq!(v_t_dt(a), omega_reduce(RingTag::VtLaurent, (a, -1), (0, 1)).unwrap());
        }
    }

    #[test]
    fn bracket_examples() {
        let g = a2();
        let r = RingTag::VtLaurent;
        let (x, y) = (g.e(1), g.f(1));
        let lhs = uce_bracket(&g, &UceElem::mono(r, x.clone(), 1, 1).unwrap(), &UceElem::mono(r, y.clone(), -1, -1).unwrap()).unwrap();
        let mut z = Central::cv(q(1));
        z.ct = q(1);
        let mut expect = UceElem::mono(r, g.bracket(&x, &y), 0, 0).unwrap();
        expect.central = z;
        assert_eq!(lhs, expect);
        let c = UceElem::central(r, Central::cv(q(1)));
        assert!(uce_bracket(&g, &lhs, &c).unwrap().is_zero());
        let p = UceElem::mono(RingTag::VtPoly, x, 0, 0).unwrap();
        assert_eq!(uce_bracket(&g, &p, &c), Err(Error::RingMismatch));
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        let g = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in RingTag::all() {
            for _ in 0..20 {
                let x = random_uce(&g, ring, &mut rng, 3, 2);
                let y = random_uce(&g, ring, &mut rng, 3, 2);
                let z = random_uce(&g, ring, &mut rng, 3, 2);
                let mut s = uce_bracket(&g, &x, &y).unwrap();
                s.try_axpy(&Q::one(), &uce_bracket(&g, &y, &x).unwrap()).unwrap();
                assert!(s.is_zero());
                let mut j = uce_bracket(&g, &x, &uce_bracket(&g, &y, &z).unwrap()).unwrap();
                j.try_axpy(&Q::one(), &uce_bracket(&g, &y, &uce_bracket(&g, &z, &x).unwrap()).unwrap()).unwrap();
                j.try_axpy(&Q::one(), &uce_bracket(&g, &z, &uce_bracket(&g, &x, &y).unwrap()).unwrap()).unwrap();
                assert!(j.is_zero(), "{}", j.render(&g));
            }
        }
    }

    #[test]
    fn kappa_matches_ct_coordinate() {
        let g = a2();
        let r = RingTag::VtLaurent;
        let (x, y) = (g.e(2), g.f(2));
        assert_eq!(kappa(&g, &LoopElem::mono(r, x.clone(), 0, 1).unwrap(), &LoopElem::mono(r, y.clone(), 0, -1).unwrap()), q(1));
        assert_eq!(kappa(&g, &LoopElem::mono(r, x.clone(), 0, 2).unwrap(), &LoopElem::mono(r, y.clone(), 0, 3).unwrap()), q(0));
        for a in -2..=2 {
            for b in -2..=2 {
                for s in -3..=3 {
                    for t in -3..=3 {
                        let lx = UceElem::mono(r, x.clone(), a, s).unwrap();
                        let ly = UceElem::mono(r, y.clone(), b, t).unwrap();
                        let ct = uce_bracket(&g, &lx, &ly).unwrap().central.ct;
                        assert_eq!(ct, kappa(&g, &lx.loop_part, &ly.loop_part));
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_map() {
        let g = a2();
        let r = RingTag::VtLaurent;
        let mut e = LoopElem::mono(r, g.e(1), 1, 3).unwrap();
        e.axpy(&Q::one(), &LoopElem::mono(r, g.e(1), 1, 1).unwrap());
        let mut two = g.e(1);
        two.values_mut().for_each(|c| *c *= q(2));
        assert_eq!(ev_g(&e), LoopElem::mono(r, two, 1, 0).unwrap());
        assert!(pi_project(&UceElem::central(r, Central::cv(q(1)))).is_zero());
    }
}
