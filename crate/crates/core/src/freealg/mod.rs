//! Noncommutative free algebra over `ℚ[ħ]` on the Yangian / Yangian-double
//! generator alphabet, with relation templates and exact reduction.

mod templates;

pub use templates::{
    instances, reduce_modulo_templates, relation_template, t_i1, Family, Reducer, RelationTemplate, TemplateIndex,
    TemplateReduction,
};

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::One;

use crate::cartan::{CartanBasis, CartanDatum};
use crate::error::{Error, Result};
use crate::scalar::{HPoly, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Yangian,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn eps(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A generator letter. `H(i, 0)` never occurs as a letter: it is rewritten
/// as `d_i` times the coroot letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(Sign, usize, i64),
    H(usize, i64),
    Cartan(CartanBasis),
}

impl Letter {
    pub fn degree(&self) -> i64 {
        match self {
            Letter::X(_, _, r) | Letter::H(_, r) => *r,
            Letter::Cartan(_) => 0,
        }
    }

    fn weight_into(&self, w: &mut Weight) {
        if let Letter::X(s, i, _) = self {
            add_weight(w, *i, s.eps());
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(s, i, r) => write!(f, "X{}({},{})", s.symbol(), i, r),
            Letter::H(i, r) => write!(f, "H({},{})", i, r),
            Letter::Cartan(CartanBasis::Coroot(i)) => write!(f, "a{}^v", i),
            Letter::Cartan(CartanBasis::Scaling) => write!(f, "d"),
        }
    }
}

pub type Word = Vec<Letter>;

/// Root-lattice weight as sparse coefficients on simple roots.
pub type Weight = BTreeMap<usize, i64>;

pub fn add_weight(w: &mut Weight, i: usize, c: i64) {
    let slot = w.entry(i).or_insert(0);
    *slot += c;
    if *slot == 0 {
        w.remove(&i);
    }
}

pub fn word_weight(w: &[Letter]) -> Weight {
    let mut out = Weight::new();
    for l in w {
        l.weight_into(&mut out);
    }
    out
}

pub fn word_degree(w: &[Letter]) -> i64 {
    w.iter().map(Letter::degree).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeElem {
    side: Side,
    terms: BTreeMap<Word, HPoly>,
}

fn check_letter(dat: &CartanDatum, side: Side, l: &Letter) -> Result<()> {
    match l {
        Letter::X(_, i, r) => {
            dat.check(*i)?;
            if side == Side::Yangian && *r < 0 {
                return Err(Error::NegativeMode(*r));
            }
        }
        Letter::H(i, r) => {
            dat.check(*i)?;
            if side == Side::Yangian && *r < 0 {
                return Err(Error::NegativeMode(*r));
            }
        }
        Letter::Cartan(CartanBasis::Coroot(i)) => dat.check(*i)?,
        Letter::Cartan(CartanBasis::Scaling) => {
            if !dat.is_affine() {
                return Err(Error::Malformed("scaling element in a finite datum".into()));
            }
        }
    }
    Ok(())
}

impl FreeElem {
    pub fn zero(side: Side) -> Self {
        FreeElem { side, terms: BTreeMap::new() }
    }

    pub fn scalar(side: Side, c: HPoly) -> Self {
        let mut e = Self::zero(side);
        e.add_term(Vec::new(), &c);
        e
    }

    pub fn one(side: Side) -> Self {
        Self::scalar(side, HPoly::one())
    }

    pub fn hbar(side: Side) -> Self {
        Self::scalar(side, HPoly::monomial(1, Q::one()))
    }

    pub fn from_word(side: Side, w: Word, c: HPoly) -> Self {
        let mut e = Self::zero(side);
        e.add_term(w, &c);
        e
    }

    /// A single letter taken literally (no normalization, no validation).
    pub fn letter(side: Side, l: Letter) -> Self {
        Self::from_word(side, alloc::vec![l], HPoly::one())
    }

    /// The generator `l`, validated against the datum; `H(i,0)` becomes
    /// `d_i` times the coroot letter.
    pub fn gen(dat: &CartanDatum, side: Side, l: Letter) -> Result<Self> {
        check_letter(dat, side, &l)?;
        Ok(match l {
            Letter::H(i, 0) => Self::letter(side, Letter::Cartan(CartanBasis::Coroot(i)))
                .scale(&Q::from_integer(dat.d(i).into())),
            _ => Self::letter(side, l),
        })
    }

    pub fn x(dat: &CartanDatum, side: Side, s: Sign, i: usize, r: i64) -> Self {
        Self::gen(dat, side, Letter::X(s, i, r)).unwrap_or_else(|e| panic!("{}", e))
    }

    pub fn h(dat: &CartanDatum, side: Side, i: usize, r: i64) -> Self {
        Self::gen(dat, side, Letter::H(i, r)).unwrap_or_else(|e| panic!("{}", e))
    }

    pub fn cartan(side: Side, v: &[(CartanBasis, Q)]) -> Self {
        let mut e = Self::zero(side);
        for (b, c) in v {
            e.add_term(alloc::vec![Letter::Cartan(*b)], &HPoly::constant(c.clone()));
        }
        e
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Reinterprets the element on another side (the canonical inclusion
    /// when going from the Yangian to the double).
    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Letter]) -> HPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &HPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    fn same_side(&self, other: &FreeElem) -> Result<()> {
        if self.side == other.side {
            Ok(())
        } else {
            Err(Error::SideMismatch)
        }
    }

    pub fn try_add(&self, other: &FreeElem) -> Result<FreeElem> {
        self.same_side(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &FreeElem) -> Result<FreeElem> {
        self.same_side(other)?;
        let mut out = FreeElem::zero(self.side);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &FreeElem) -> Result<FreeElem> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    pub fn antibracket(&self, other: &FreeElem) -> Result<FreeElem> {
        Ok(&self.try_mul(other)? + &other.try_mul(self)?)
    }

    pub fn scale(&self, c: &Q) -> FreeElem {
        self.scale_h(&HPoly::constant(c.clone()))
    }

    pub fn scale_h(&self, c: &HPoly) -> FreeElem {
        let mut out = FreeElem::zero(self.side);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c));
        }
        out
    }

    /// Multiplies by `ħ^k`.
    pub fn hbar_pow(&self, k: u32) -> FreeElem {
        FreeElem { side: self.side, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(k))).collect() }
    }

    /// Splits into ℤ-degree components (`deg ħ = 1`, `deg X_ir = deg H_ir = r`).
    pub fn grade(&self) -> BTreeMap<i64, FreeElem> {
        let mut out: BTreeMap<i64, FreeElem> = BTreeMap::new();
        for (w, c) in &self.terms {
            let base = word_degree(w);
            for (e, x) in c.iter() {
                out.entry(base + e as i64)
                    .or_insert_with(|| FreeElem::zero(self.side))
                    .add_term(w.clone(), &HPoly::monomial(e, x.clone()));
            }
        }
        out
    }

    /// Drops all components of degree `>= m`.
    pub fn truncate(&self, m: i64) -> FreeElem {
        let mut out = FreeElem::zero(self.side);
        for (d, c) in self.grade() {
            if d < m {
                out = &out + &c;
            }
        }
        out
    }

    pub fn degree_component(&self, d: i64) -> FreeElem {
        self.grade().remove(&d).unwrap_or_else(|| FreeElem::zero(self.side))
    }

    /// Degree if homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let g = self.grade();
        match g.len() {
            1 => g.keys().next().copied(),
            _ => None,
        }
    }

    pub fn weight(&self) -> Result<Weight> {
        let mut found: Option<Weight> = None;
        for w in self.terms.keys() {
            let ww = word_weight(w);
            match &found {
                None => found = Some(ww),
                Some(f) if *f == ww => {}
                Some(_) => return Err(Error::Inhomogeneous),
            }
        }
        Ok(found.unwrap_or_default())
    }

    /// Applies the ℚ[ħ]-linear algebra map determined by `f` on letters.
    pub fn substitute<F>(&self, target: Side, mut f: F) -> Result<FreeElem>
    where
        F: FnMut(&Letter) -> Result<FreeElem>,
    {
        let mut cache: BTreeMap<Letter, FreeElem> = BTreeMap::new();
        let mut out = FreeElem::zero(target);
        for (w, c) in &self.terms {
            let mut prod = FreeElem::scalar(target, c.clone());
            for l in w {
                if !cache.contains_key(l) {
                    cache.insert(*l, f(l)?);
                }
                prod = prod.try_mul(&cache[l])?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Letters occurring anywhere in the element.
    pub fn letters(&self) -> alloc::collections::BTreeSet<Letter> {
        self.terms.keys().flat_map(|w| w.iter().copied()).collect()
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (w, c) in &self.terms {
            let word: Vec<String> = w.iter().map(|l| format!("{}", l)).collect();
            let body = if word.is_empty() { String::from("1") } else { word.join("·") };
            parts.push(format!("({})*{}", c, body));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &FreeElem {
    type Output = FreeElem;
    fn add(self, rhs: &FreeElem) -> FreeElem {
        self.try_add(rhs).expect("side mismatch in addition")
    }
}

impl Sub for &FreeElem {
    type Output = FreeElem;
    fn sub(self, rhs: &FreeElem) -> FreeElem {
        self.try_add(&-rhs).expect("side mismatch in subtraction")
    }
}

impl Neg for &FreeElem {
    type Output = FreeElem;
    fn neg(self) -> FreeElem {
        FreeElem { side: self.side, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }
}

impl Mul for &FreeElem {
    type Output = FreeElem;
    fn mul(self, rhs: &FreeElem) -> FreeElem {
        self.try_mul(rhs).expect("side mismatch in product")
    }
}

impl AddAssign<&FreeElem> for FreeElem {
    fn add_assign(&mut self, rhs: &FreeElem) {
        assert_eq!(self.side, rhs.side, "side mismatch in addition");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }
}

impl SubAssign<&FreeElem> for FreeElem {
    fn sub_assign(&mut self, rhs: &FreeElem) {
        assert_eq!(self.side, rhs.side, "side mismatch in subtraction");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), &c.neg());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::datum;
    use crate::scalar::q;
    use alloc::vec;

    #[test]
    fn bracket_of_letters() {
        let a1 = datum("A1");
        let h = FreeElem::h(&a1, Side::Yangian, 1, 1);
        let c = FreeElem::cartan(Side::Yangian, &[(CartanBasis::Coroot(1), q(1))]);
        let b = h.bracket(&c).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.coeff(&[Letter::H(1, 1), Letter::Cartan(CartanBasis::Coroot(1))]), HPoly::one());
        assert_eq!(b.coeff(&[Letter::Cartan(CartanBasis::Coroot(1)), Letter::H(1, 1)]), HPoly::one().neg());
    }

    #[test]
    fn h_zero_normalizes() {
        let b2 = datum("B2");
        let h = FreeElem::h(&b2, Side::Yangian, 1, 0);
        assert_eq!(h.coeff(&[Letter::Cartan(CartanBasis::Coroot(1))]), HPoly::constant(q(2)));
        assert!(FreeElem::gen(&b2, Side::Yangian, Letter::X(Sign::Plus, 1, -1)).is_err());
        assert!(FreeElem::gen(&b2, Side::Double, Letter::X(Sign::Plus, 1, -1)).is_ok());
        assert!(FreeElem::gen(&b2, Side::Double, Letter::X(Sign::Plus, 3, 0)).is_err());
    }

    #[test]
    fn side_mismatch_is_an_error() {
        let a1 = datum("A1");
        let y = FreeElem::x(&a1, Side::Yangian, Sign::Plus, 1, 0);
        let d = FreeElem::x(&a1, Side::Double, Sign::Plus, 1, 0);
        assert_eq!(y.try_mul(&d), Err(Error::SideMismatch));
    }

    #[test]
    fn grading_and_weight() {
        let a2 = datum("A2");
        let s = Side::Yangian;
        let e = &(&FreeElem::x(&a2, s, Sign::Plus, 1, 2) * &FreeElem::x(&a2, s, Sign::Minus, 2, 1)).hbar_pow(1)
            + &FreeElem::x(&a2, s, Sign::Plus, 1, 0);
        let g = e.grade();
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![0, 4]);
        assert_eq!(e.weight(), Err(Error::Inhomogeneous));
        let w = g[&4].weight().unwrap();
        assert_eq!(w, [(1, 1), (2, -1)].into_iter().collect());
        assert_eq!(e.truncate(4), g[&0]);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let a1 = datum("A1");
        let s = Side::Yangian;
        let x0 = FreeElem::x(&a1, s, Sign::Plus, 1, 0);
        let x1 = FreeElem::x(&a1, s, Sign::Plus, 1, 1);
        let e = &x0 * &x1;
        let shifted = e
            .substitute(s, |l| match l {
                Letter::X(sg, i, r) => Ok(FreeElem::letter(s, Letter::X(*sg, *i, r + 1))),
                _ => Ok(FreeElem::letter(s, *l)),
            })
            .unwrap();
        assert_eq!(shifted, &x1 * &FreeElem::x(&a1, s, Sign::Plus, 1, 2));
    }
}
