use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;


use super::{add_weight, word_degree, word_weight, FreeElem, Letter, Side, Sign, Weight, Word};
use crate::cartan::{CartanBasis, CartanDatum};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{q, qf, HPoly};

/// Relation families of the Yangian and its double. `Ti` is the derived
/// shift identity `[t_i1, x_is^±] = ±2d_i x_{i,s+1}^±` with
/// `t_i1 = h_i1 - (ħ/2) h_i0²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Hh,
    H0x,
    Xxh,
    Xh,
    Xx,
    Serre,
    Ti,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hh => "hh",
            Family::H0x => "h0x",
            Family::Xxh => "xxh",
            Family::Xh => "xh",
            Family::Xx => "xx",
            Family::Serre => "serre",
            Family::Ti => "ti",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        [Family::Hh, Family::H0x, Family::Xxh, Family::Xh, Family::Xx, Family::Serre, Family::Ti]
            .into_iter()
            .find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TemplateIndex {
    /// `[a, b]` for Cartan-type letters (`H(i,r)` or Cartan basis letters).
    Hh(Letter, Letter),
    H0x { h: CartanBasis, j: usize, s: i64, sign: Sign },
    Xxh { i: usize, j: usize, r: i64, s: i64 },
    Xh { i: usize, j: usize, r: i64, s: i64, sign: Sign },
    Xx { i: usize, j: usize, r: i64, s: i64, sign: Sign },
    Serre { i: usize, j: usize, modes: Vec<i64>, s: i64, sign: Sign },
    Ti { i: usize, s: i64, sign: Sign },
}

impl TemplateIndex {
    pub fn family(&self) -> Family {
        match self {
            TemplateIndex::Hh(..) => Family::Hh,
            TemplateIndex::H0x { .. } => Family::H0x,
            TemplateIndex::Xxh { .. } => Family::Xxh,
            TemplateIndex::Xh { .. } => Family::Xh,
            TemplateIndex::Xx { .. } => Family::Xx,
            TemplateIndex::Serre { .. } => Family::Serre,
            TemplateIndex::Ti { .. } => Family::Ti,
        }
    }

    fn degree(&self) -> i64 {
        match self {
            TemplateIndex::Hh(a, b) => a.degree() + b.degree(),
            TemplateIndex::H0x { s, .. } => *s,
            TemplateIndex::Xxh { r, s, .. } => r + s,
            TemplateIndex::Xh { r, s, .. } | TemplateIndex::Xx { r, s, .. } => r + s + 1,
            TemplateIndex::Serre { modes, s, .. } => modes.iter().sum::<i64>() + s,
            TemplateIndex::Ti { s, .. } => s + 1,
        }
    }

    fn weight(&self) -> Weight {
        let mut w = Weight::new();
        match self {
            TemplateIndex::Hh(..) => {}
            TemplateIndex::H0x { j, sign, .. } | TemplateIndex::Xh { j, sign, .. } => add_weight(&mut w, *j, sign.eps()),
            TemplateIndex::Xxh { i, j, .. } => {
                add_weight(&mut w, *i, 1);
                add_weight(&mut w, *j, -1);
            }
            TemplateIndex::Xx { i, j, sign, .. } => {
                add_weight(&mut w, *i, sign.eps());
                add_weight(&mut w, *j, sign.eps());
            }
            TemplateIndex::Serre { i, j, modes, sign, .. } => {
                add_weight(&mut w, *i, sign.eps() * modes.len() as i64);
                add_weight(&mut w, *j, sign.eps());
            }
            TemplateIndex::Ti { i, sign, .. } => add_weight(&mut w, *i, sign.eps()),
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTemplate {
    pub side: Side,
    pub index: TemplateIndex,
    pub element: FreeElem,
}

impl RelationTemplate {
    pub fn family(&self) -> Family {
        self.index.family()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `t_i1 = h_i1 - (ħ/2) h_i0²`.
pub fn t_i1(dat: &CartanDatum, side: Side, i: usize) -> FreeElem {
    let h0 = FreeElem::h(dat, side, i, 0);
    &FreeElem::h(dat, side, i, 1) - &(&h0 * &h0).hbar_pow(1).scale(&qf(1, 2))
}

pub fn relation_template(dat: &CartanDatum, side: Side, index: TemplateIndex) -> Result<RelationTemplate> {
    let x = |s: Sign, i: usize, r: i64| FreeElem::gen(dat, side, Letter::X(s, i, r));
    let h = |i: usize, r: i64| FreeElem::gen(dat, side, Letter::H(i, r));
    let hbar = FreeElem::hbar(side);
    let element = match &index {
        TemplateIndex::Hh(a, b) => {
            let ea = FreeElem::gen(dat, side, *a)?;
            let eb = FreeElem::gen(dat, side, *b)?;
            if matches!(a, Letter::X(..)) || matches!(b, Letter::X(..)) {
                return Err(Error::Malformed("hh template on a root letter".into()));
            }
            ea.bracket(&eb)?
        }
        TemplateIndex::H0x { h: hb, j, s, sign } => {
            let xe = x(*sign, *j, *s)?;
            let hc = FreeElem::gen(dat, side, Letter::Cartan(*hb))?;
            &hc.bracket(&xe)? - &xe.scale(&q(sign.eps() * dat.alpha_on(*j, *hb)))
        }
        TemplateIndex::Xxh { i, j, r, s } => {
            let b = x(Sign::Plus, *i, *r)?.bracket(&x(Sign::Minus, *j, *s)?)?;
            if i == j {
                &b - &h(*i, r + s)?
            } else {
                b
            }
        }
        TemplateIndex::Xh { i, j, r, s, sign } => {
            let (hr, xs) = (h(*i, *r)?, x(*sign, *j, *s)?);
            let lhs = &h(*i, r + 1)?.bracket(&xs)? - &hr.bracket(&x(*sign, *j, s + 1)?)?;
            let c = dat.sym_pair(*i, *j) * q(sign.eps());
            &lhs - &(&hbar * &hr.antibracket(&xs)?).scale(&c)
        }
        TemplateIndex::Xx { i, j, r, s, sign } => {
            let (xr, xs) = (x(*sign, *i, *r)?, x(*sign, *j, *s)?);
            let lhs = &x(*sign, *i, r + 1)?.bracket(&xs)? - &xr.bracket(&x(*sign, *j, s + 1)?)?;
            let c = dat.sym_pair(*i, *j) * q(sign.eps());
            &lhs - &(&hbar * &xr.antibracket(&xs)?).scale(&c)
        }
        TemplateIndex::Serre { i, j, modes, s, sign } => {
            if i == j || modes.len() as i64 != 1 - dat.a(*i, *j) {
                return Err(Error::Malformed("Serre template needs i != j and m = 1 - a_ij modes".into()));
            }
            let mut total = FreeElem::zero(side);
            let base = x(*sign, *j, *s)?;
            for p in permutations(modes.len()) {
                let mut acc = base.clone();
                for k in p.iter().rev() {
                    acc = x(*sign, *i, modes[*k])?.bracket(&acc)?;
                }
                total += &acc;
            }
            total
        }
        TemplateIndex::Ti { i, s, sign } => {
            dat.check(*i)?;
            let xs = x(*sign, *i, *s)?;
            &t_i1(dat, side, *i).bracket(&xs)? - &x(*sign, *i, s + 1)?.scale(&q(2 * sign.eps() * dat.d(*i)))
        }
    };
    Ok(RelationTemplate { side, index, element })
}

fn mode_range(side: Side, bound: i64) -> core::ops::RangeInclusive<i64> {
    match side {
        Side::Yangian => 0..=bound,
        Side::Double => -bound..=bound,
    }
}

fn sorted_tuples(range: &core::ops::RangeInclusive<i64>, m: usize) -> Vec<Vec<i64>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in sorted_tuples(range, m - 1) {
        let lo = t.last().copied().unwrap_or(*range.start());
        for r in lo..=*range.end() {
            let mut u = t.clone();
            u.push(r);
            out.push(u);
        }
    }
    out
}

/// Enumerates template indices of the given families with all modes in
/// `[-bound, bound]` (`[0, bound]` on the Yangian side), keeping those whose
/// `(degree, weight)` pass `accept`.
pub fn instances<F>(dat: &CartanDatum, side: Side, families: &[Family], bound: i64, mut accept: F) -> Vec<TemplateIndex>
where
    F: FnMut(i64, &Weight) -> bool,
{
    let modes = mode_range(side, bound);
    let nodes: Vec<usize> = dat.nodes().collect();
    let mut out = Vec::new();
    let mut push = |t: TemplateIndex, out: &mut Vec<TemplateIndex>| {
        if accept(t.degree(), &t.weight()) {
            out.push(t);
        }
    };
    for fam in families {
        match fam {
            Family::Hh => {
                let mut letters: Vec<Letter> = dat.cartan_basis().into_iter().map(Letter::Cartan).collect();
                for &i in &nodes {
                    for r in modes.clone().filter(|r| *r != 0) {
                        letters.push(Letter::H(i, r));
                    }
                }
                letters.sort();
                for (k, a) in letters.iter().enumerate() {
                    for b in &letters[k + 1..] {
                        push(TemplateIndex::Hh(*a, *b), &mut out);
                    }
                }
            }
            Family::H0x => {
                for hb in dat.cartan_basis() {
                    for &j in &nodes {
                        for s in modes.clone() {
                            for sign in Sign::both() {
                                push(TemplateIndex::H0x { h: hb, j, s, sign }, &mut out);
                            }
                        }
                    }
                }
            }
            Family::Xxh => {
                for &i in &nodes {
                    for &j in &nodes {
                        for r in modes.clone() {
                            for s in modes.clone() {
                                push(TemplateIndex::Xxh { i, j, r, s }, &mut out);
                            }
                        }
                    }
                }
            }
            Family::Xh | Family::Xx => {
                for &i in &nodes {
                    for &j in &nodes {
                        for r in modes.clone() {
                            for s in modes.clone() {
                                for sign in Sign::both() {
                                    let t = if *fam == Family::Xh {
                                        TemplateIndex::Xh { i, j, r, s, sign }
                                    } else {
                                        TemplateIndex::Xx { i, j, r, s, sign }
                                    };
                                    push(t, &mut out);
                                }
                            }
                        }
                    }
                }
            }
            Family::Serre => {
                for &i in &nodes {
                    for &j in &nodes {
                        if i == j {
                            continue;
                        }
                        let m = (1 - dat.a(i, j)) as usize;
                        for tuple in sorted_tuples(&modes, m) {
                            for s in modes.clone() {
                                for sign in Sign::both() {
                                    push(TemplateIndex::Serre { i, j, modes: tuple.clone(), s, sign }, &mut out);
                                }
                            }
                        }
                    }
                }
            }
            Family::Ti => {
                for &i in &nodes {
                    for s in modes.clone() {
                        for sign in Sign::both() {
                            push(TemplateIndex::Ti { i, s, sign }, &mut out);
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct TemplateReduction {
    pub residual: FreeElem,
    /// `input = residual + Σ scalar · template`.
    pub certificate: Vec<(RelationTemplate, HPoly)>,
}

type Coord = (Word, u32);

fn coords(e: &FreeElem, shift: u32) -> SparseVec<Coord> {
    let mut v = SparseVec::new();
    for (w, c) in e.terms() {
        for (k, x) in c.iter() {
            v.insert((w.clone(), k + shift), x.clone());
        }
    }
    v
}

/// Reduces elements modulo template instances, caching built templates
/// across calls with the same datum, families and bound.
pub struct Reducer<'a> {
    dat: &'a CartanDatum,
    families: Vec<Family>,
    bound: i64,
    cache: BTreeMap<(Side, TemplateIndex), RelationTemplate>,
}

impl<'a> Reducer<'a> {
    pub fn new(dat: &'a CartanDatum, families: &[Family], bound: i64) -> Self {
        Reducer { dat, families: families.to_vec(), bound, cache: BTreeMap::new() }
    }

    fn template(&mut self, side: Side, t: TemplateIndex) -> Result<RelationTemplate> {
        let key = (side, t);
        if let Some(r) = self.cache.get(&key) {
            return Ok(r.clone());
        }
        let r = relation_template(self.dat, side, key.1.clone())?;
        self.cache.insert(key, r.clone());
        Ok(r)
    }

    /// Subtracts the best exact `ℚ[ħ]`-combination of enumerated template
    /// instances from `e`. The residual is zero iff `e` lies in their span.
    pub fn reduce(&mut self, e: &FreeElem) -> Result<TemplateReduction> {
        let side = e.side();
        let mut targets: BTreeMap<Weight, BTreeSet<i64>> = BTreeMap::new();
        for (w, c) in e.terms() {
            let base = word_degree(w);
            let set = targets.entry(word_weight(w)).or_default();
            for (k, _) in c.iter() {
                set.insert(base + k as i64);
            }
        }
        let idx = instances(self.dat, side, &self.families, self.bound, |d, w| {
            targets.get(w).is_some_and(|ds| ds.iter().any(|dd| *dd >= d))
        });
        let mut columns: Vec<(usize, u32)> = Vec::new();
        let mut templates: Vec<RelationTemplate> = Vec::new();
        let mut ech: Echelon<Coord> = Echelon::new();
        for t in idx {
            let deg = t.degree();
            let degs: Vec<i64> = targets[&t.weight()].iter().copied().filter(|d| *d >= deg).collect();
            let tmpl = self.template(side, t)?;
            if tmpl.element.is_zero() {
                continue;
            }
            let ti = templates.len();
            for d in degs {
                let k = (d - deg) as u32;
                ech.insert(&coords(&tmpl.element, k));
                columns.push((ti, k));
            }
            templates.push(tmpl);
        }
        let red = ech.reduce(&coords(e, 0));
        let mut residual = FreeElem::zero(side);
        for ((w, k), x) in red.residual {
            residual.add_term(w, &HPoly::monomial(k, x));
        }
        let mut per: BTreeMap<usize, HPoly> = BTreeMap::new();
        for (tag, x) in red.combo {
            let (ti, k) = columns[tag];
            per.entry(ti).or_default().add_term(k, &x);
        }
        let certificate = per
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(ti, c)| (templates[ti].clone(), c))
            .collect();
        Ok(TemplateReduction { residual, certificate })
    }
}

/// One-shot form of [`Reducer::reduce`].
pub fn reduce_modulo_templates(
    e: &FreeElem,
    dat: &CartanDatum,
    families: &[Family],
    bound: i64,
) -> Result<TemplateReduction> {
    Reducer::new(dat, families, bound).reduce(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::datum;

    #[test]
    fn xxh_example() {
        let a1 = datum("A1");
        let t = relation_template(&a1, Side::Yangian, TemplateIndex::Xxh { i: 1, j: 1, r: 1, s: 0 }).unwrap();
        let x1 = FreeElem::x(&a1, Side::Yangian, Sign::Plus, 1, 1);
        let y0 = FreeElem::x(&a1, Side::Yangian, Sign::Minus, 1, 0);
        let expect = &(&(&x1 * &y0) - &(&y0 * &x1)) - &FreeElem::h(&a1, Side::Yangian, 1, 1);
        assert_eq!(t.element, expect);
    }

    #[test]
    fn h0x_example() {
        let a2 = datum("A2");
        let idx = TemplateIndex::H0x { h: CartanBasis::Coroot(1), j: 2, s: 0, sign: Sign::Plus };
        let t = relation_template(&a2, Side::Yangian, idx).unwrap();
        let c = FreeElem::cartan(Side::Yangian, &[(CartanBasis::Coroot(1), q(1))]);
        let x = FreeElem::x(&a2, Side::Yangian, Sign::Plus, 2, 0);
        let expect = &(&(&c * &x) - &(&x * &c)) - &x.scale(&q(a2.a(1, 2)));
        assert_eq!(t.element, expect);
    }

    #[test]
    fn templates_are_homogeneous() {
        let a2 = datum("A2~");
        let all = [Family::Hh, Family::H0x, Family::Xxh, Family::Xh, Family::Xx, Family::Serre, Family::Ti];
        for t in instances(&a2, Side::Double, &all, 1, |_, _| true) {
            let (d, w) = (t.degree(), t.weight());
            let el = relation_template(&a2, Side::Double, t.clone()).unwrap().element;
            if el.is_zero() {
                continue;
            }
            assert_eq!(el.degree(), Some(d), "{:?}", t);
            assert_eq!(el.weight().unwrap(), w, "{:?}", t);
        }
    }

    #[test]
    fn combination_reduces_to_zero_with_certificate() {
        let a2 = datum("A2");
        let s = Side::Yangian;
        let t1 = relation_template(&a2, s, TemplateIndex::Xx { i: 1, j: 2, r: 0, s: 1, sign: Sign::Plus }).unwrap();
        let t2 = relation_template(&a2, s, TemplateIndex::Xx { i: 1, j: 2, r: 1, s: 0, sign: Sign::Plus }).unwrap();
        let t3 = relation_template(&a2, s, TemplateIndex::Xx { i: 1, j: 2, r: 0, s: 0, sign: Sign::Plus }).unwrap();
        let e = &(&t1.element.scale(&qf(3, 2)) - &t2.element) + &t3.element.hbar_pow(1).scale(&q(5));
        let red = reduce_modulo_templates(&e, &a2, &[Family::Xx], 2).unwrap();
        assert!(red.residual.is_zero());
        let mut back = FreeElem::zero(s);
        for (t, c) in &red.certificate {
            back += &t.element.scale_h(c);
        }
        assert_eq!(back, e);
    }

    #[test]
    fn non_member_keeps_residual() {
        let a1 = datum("A1");
        let s = Side::Yangian;
        let x = FreeElem::x(&a1, s, Sign::Plus, 1, 0);
        let red = reduce_modulo_templates(&(&x * &x), &a1, &[Family::Xx], 2).unwrap();
        assert!(!red.residual.is_zero());
    }

    #[test]
    fn serre_needs_right_arity() {
        let a2 = datum("A2");
        let bad = TemplateIndex::Serre { i: 1, j: 2, modes: vec![0], s: 0, sign: Sign::Plus };
        assert!(relation_template(&a2, Side::Yangian, bad).is_err());
        let ok = TemplateIndex::Serre { i: 1, j: 2, modes: vec![0, 1], s: 0, sign: Sign::Plus };
        assert_eq!(relation_template(&a2, Side::Yangian, ok).unwrap().element.degree(), Some(1));
    }
}
