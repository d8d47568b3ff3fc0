//! The classical limit of Φ: `γ: w ↦ 1 + t`, the induced map φ_γ on
//! central extensions, kernel and injectivity certificates on finite
//! windows, and the finite-type translation Υ_c with its associated graded.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::freealg::Sign;
use crate::liealg::{omega_reduce, v_dv, uce_bracket, Central, LieWord, LoopElem, MryModel, RingTag, SimpleLie, UceElem, UceKey};
use crate::linalg::{rank_and_kernel, SparseVec};
use crate::report::Report;
use crate::scalar::{binom, q, qpow, Q};

/// Laurent polynomial in two variables, keyed by exponents.
pub type LPoly = BTreeMap<(i64, i64), Q>;

fn lp_add(p: &mut LPoly, key: (i64, i64), c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(key).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&key);
    }
}

/// An element of the completion of `u(ℂ[v^±1, t])` known modulo `t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub m: u32,
    pub elem: UceElem,
}

impl TruncSeries {
    pub fn zero(m: u32) -> Self {
        TruncSeries { m, elem: UceElem::zero(RingTag::VtPoly) }
    }

    /// Drops every component of t-degree `≥ m`.
    pub fn new(elem: UceElem, m: u32) -> Result<Self> {
        let mut elem = elem.retag(RingTag::VtPoly)?;
        elem.loop_part.terms.retain(|(_, t), _| *t < m as i64);
        elem.central.k.retain(|(_, s), _| *s < m as i64);
        Ok(TruncSeries { m, elem })
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    /// The t-degree `s` slice.
    pub fn slice(&self, s: i64) -> UceElem {
        let mut out = UceElem::zero(RingTag::VtPoly);
        for ((a, b), x) in &self.elem.loop_part.terms {
            if *b == s {
                out.loop_part.add(*a, *b, &Q::one(), x);
            }
        }
        for ((r, t), c) in &self.elem.central.k {
            if *t == s {
                out.central.add_k(*r, *t, c.clone());
            }
        }
        if s == 0 {
            out.central.cv = self.elem.central.cv.clone();
        }
        out
    }

    pub fn bracket(g: &SimpleLie, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        TruncSeries::new(uce_bracket(g, &a.elem, &b.elem)?, a.m.min(b.m))
    }
}

/// `γ(v) = v`, `γ(w) = 1 + t`, truncated below `t^m`.
pub fn gamma_ring(p: &LPoly, m: u32) -> LPoly {
    let mut out = LPoly::new();
    for ((a, b), c) in p {
        for k in 0..m {
            lp_add(&mut out, (*a, k as i64), c * binom(*b, k));
        }
    }
    out
}

/// φ_γ on `u(ℂ[v^±1, w^±1])`, using the closed forms
/// `v^{r-1} w^s d(v) ↦ v^{r-1}(1+t)^s d(v)` and
/// `v^r w^{-1} d(w) ↦ -r v^{r-1} log(1+t) d(v)`.
pub fn phi_gamma(x: &UceElem, m: u32) -> Result<TruncSeries> {
    if x.ring() != RingTag::VwLaurent {
        return Err(Error::RingMismatch);
    }
    let mut out = UceElem::zero(RingTag::VtPoly);
    for ((a, b), xv) in &x.loop_part.terms {
        for k in 0..m {
            out.loop_part.add(*a, k as i64, &binom(*b, k), xv);
        }
    }
    let z = &x.central;
    for ((r, s), c) in &z.k {
        if *s != 0 {
            // K^w_{r,s} = (1/s) v^{r-1} w^s d(v)
            let f = c / q(*s);
            for k in 0..m {
                let img = v_dv(*r, k as i64);
                out.central.axpy(&(&f * binom(*s, k)), &img);
            }
        } else {
            // K^w_{r,0} = -(1/r) v^r w^{-1} d(w) ↦ v^{r-1} log(1+t) d(v)
            for k in 1..m as i64 {
                let lg = qpow(&q(-1), k + 1) / q(k);
                out.central.axpy(&(c * lg), &v_dv(*r, k));
            }
        }
    }
    out.central.cv += &z.cv;
    TruncSeries::new(out, m)
}

/// φ_γ(b d(e)) = γ(b) d(γ(e)), computed directly in `𝔷(ℂ[v^±1, t])`.
pub fn phi_gamma_generic(b: &LPoly, e: &LPoly, m: u32) -> Result<Central> {
    let (gb, ge) = (gamma_ring(b, m), gamma_ring(e, m));
    let mut z = Central::zero();
    for ((k, l), cb) in &gb {
        for ((r, s), ce) in &ge {
            if l + s < m as i64 {
                let w = omega_reduce(RingTag::VtPoly, (*k, *l), (*r, *s))?;
                z.axpy(&(cb * ce), &w);
            }
        }
    }
    Ok(z)
}

/// φ on a generator of 𝔱: ψ into the w-ring model, then φ_γ.
pub fn phi_limit_gen(model: &MryModel, sign: Sign, i: usize, r: i64, m: u32) -> Result<TruncSeries> {
    phi_gamma(&model.psi(sign, i, r)?.retag(RingTag::VwLaurent)?, m)
}

pub fn phi_limit_word(model: &MryModel, w: &LieWord, m: u32) -> Result<TruncSeries> {
    phi_gamma(&model.eval(w)?.retag(RingTag::VwLaurent)?, m)
}

/// Columns of the kernel window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WindowCol {
    /// `v^r w^s d(v)`
    VdV(i64, i64),
    /// `v^r w^{-1} d(w)`
    VdW(i64),
    Cv,
    Cw,
    /// `x_k ⊗ v^r w^s`
    Loop(usize, i64, i64),
}

impl WindowCol {
    pub fn label(&self, g: Option<&SimpleLie>) -> String {
        match self {
            WindowCol::VdV(r, s) => format!("v^{} w^{} d(v)", r, s),
            WindowCol::VdW(r) => format!("v^{} w^-1 d(w)", r),
            WindowCol::Cv => "c_v".into(),
            WindowCol::Cw => "c_w".into(),
            WindowCol::Loop(k, r, s) => match g {
                Some(g) => format!("{}⊗v^{}w^{}", g.basis_label(*k), r, s),
                None => format!("x{}⊗v^{}w^{}", k, r, s),
            },
        }
    }

    pub fn to_uce(&self, g: Option<&SimpleLie>) -> Result<UceElem> {
        let ring = RingTag::VwLaurent;
        Ok(match self {
            WindowCol::VdV(r, s) => UceElem::central(ring, omega_reduce(ring, (*r, *s), (1, 0))?),
            WindowCol::VdW(r) => UceElem::central(ring, omega_reduce(ring, (*r, -1), (0, 1))?),
            WindowCol::Cv => UceElem::central(ring, Central::cv(Q::one())),
            WindowCol::Cw => UceElem::central(ring, Central::ct(Q::one())),
            WindowCol::Loop(k, r, s) => {
                let g = g.ok_or_else(|| Error::Malformed("loop columns need ḡ".into()))?;
                UceElem::mono(ring, g.basis(*k), *r, *s)?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub r: i64,
    pub s: i64,
    pub m: u32,
    pub domain_dim: usize,
    pub rank: usize,
    pub nullity: usize,
    pub kernel_basis: Vec<Vec<(String, Q)>>,
}

impl RankReport {
    /// Nullity one with kernel spanned by `c_w`.
    pub fn kernel_is_cw(&self) -> bool {
        self.nullity == 1
            && self.kernel_basis[0].len() == 1
            && self.kernel_basis[0][0].0 == "c_w"
    }
}

/// Kernel of φ_γ on the 𝔷-window `{v^r w^s d(v): |r| ≤ R, 1 ≤ |s| ≤ S}
/// ∪ {v^r w^{-1} d(w): 0 < |r| ≤ R} ∪ {c_v, c_w}`, optionally with the
/// loop vectors `x ⊗ v^r w^s` (`|r| ≤ R`, `|s| ≤ S`) added.
pub fn kernel_window(rr: i64, ss: i64, m: u32, loops: Option<&SimpleLie>) -> Result<RankReport> {
    if rr < 0 || ss < 0 {
        return Err(Error::Malformed(format!("window ({}, {})", rr, ss)));
    }
    // each v-slice receives 2S + 1 columns in t^1..t^{m-1}
    if (m as i64) < 2 * ss + 2 {
        return Err(Error::Malformed(format!("truncation M={} too small for S={} (need M ≥ 2S+2)", m, ss)));
    }
    let mut cols = Vec::new();
    for r in -rr..=rr {
        for s in -ss..=ss {
            if s != 0 {
                cols.push(WindowCol::VdV(r, s));
            }
        }
        if r != 0 && ss >= 1 {
            cols.push(WindowCol::VdW(r));
        }
    }
    cols.push(WindowCol::Cv);
    cols.push(WindowCol::Cw);
    if let Some(g) = loops {
        for k in 0..g.dim() {
            for r in -rr..=rr {
                for s in -ss..=ss {
                    cols.push(WindowCol::Loop(k, r, s));
                }
            }
        }
    }
    let mut images: Vec<SparseVec<UceKey>> = Vec::new();
    for c in &cols {
        images.push(phi_gamma(&c.to_uce(loops)?, m)?.elem.coords());
    }
    let (rank, kernel) = rank_and_kernel(&images);
    let kernel_basis = kernel
        .iter()
        .map(|v| v.iter().map(|(i, c)| (cols[*i].label(loops), c.clone())).collect())
        .collect();
    Ok(RankReport { r: rr, s: ss, m, domain_dim: cols.len(), rank, nullity: cols.len() - rank, kernel_basis })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub bound: i64,
    pub m: u32,
    pub columns: usize,
    pub domain_rank: usize,
    pub image_rank: usize,
}

impl InjectivityReport {
    pub fn full_column_rank(&self) -> bool {
        self.columns == self.domain_rank && self.domain_rank == self.image_rank
    }
}

/// Ranks of the window `{X_{ir}^±, H_{ir} : |r| ≤ bound}` of 𝔱, before
/// (ψ_𝔱, `c_t` dropped) and after applying φ = φ̄_γ ∘ ψ_𝔱 modulo `t^m`.
pub fn injectivity_window(datum: &CartanDatum, bound: i64, m: u32) -> Result<InjectivityReport> {
    let model = MryModel::new(datum)?;
    let mut words = Vec::new();
    for i in datum.nodes() {
        for r in -bound..=bound {
            words.push(LieWord::x(Sign::Plus, i, r));
            words.push(LieWord::x(Sign::Minus, i, r));
            words.push(LieWord::h(i, r));
        }
    }
    let mut dom = Vec::new();
    let mut img = Vec::new();
    for w in &words {
        let e = model.eval(w)?.drop_ct();
        img.push(phi_gamma(&e.retag(RingTag::VwLaurent)?, m)?.elem.coords());
        dom.push(e.coords());
    }
    Ok(InjectivityReport {
        bound,
        m,
        columns: words.len(),
        domain_rank: rank_and_kernel(&dom).0,
        image_rank: rank_and_kernel(&img).0,
    })
}

/// The kernel suite: φ_γ on `c_w` and `c_v`, the closed forms against the
/// generic route on `|r| ≤ R, |s| ≤ S`, the kernel on the central window
/// with and without loop columns, and injectivity of φ on the generator
/// window `|r| ≤ bound`.
pub fn check_kernel_suite(datum: &CartanDatum, rr: i64, ss: i64, m: u32, bound: i64) -> Result<Report> {
    let model = MryModel::new(datum)?;
    let mut rep = Report::new(datum.label());
    let ring = RingTag::VwLaurent;
    let cw = phi_gamma(&UceElem::central(ring, Central::ct(Q::one())), m)?;
    rep.push_note("limit.kernel.cw", vec![], cw.is_zero(), cw.elem.render(&model.g));
    let cv = phi_gamma(&UceElem::central(ring, Central::cv(Q::one())), m)?;
    rep.push_note("limit.kernel.cv", vec![], cv.elem.central == Central::cv(Q::one()), cv.elem.render(&model.g));
    for r in -rr..=rr {
        for s in -ss..=ss {
            let x = UceElem::central(ring, omega_reduce(ring, (r, s), (1, 0))?);
            let b: LPoly = [((r, s), Q::one())].into_iter().collect();
            let e: LPoly = [((1, 0), Q::one())].into_iter().collect();
            let ok = phi_gamma(&x, m)?.elem.central == phi_gamma_generic(&b, &e, m)?;
            rep.push_note("limit.kernel.closed_form", vec![r, s, 0], ok, "v^r w^s d(v)");
        }
        let x = UceElem::central(ring, omega_reduce(ring, (r, -1), (0, 1))?);
        let b: LPoly = [((r, -1), Q::one())].into_iter().collect();
        let e: LPoly = [((0, 1), Q::one())].into_iter().collect();
        let img = phi_gamma(&x, m)?.elem.central;
        let ok = img == phi_gamma_generic(&b, &e, m)?;
        rep.push_note("limit.kernel.closed_form", vec![r, -1, 1], ok, "v^r w^-1 d(w)");
        // -r v^{r-1} Σ_k (-1)^k t^{k+1}/(k+1) d(v)
        let mut series = Central::zero();
        for k in 0..m as i64 - 1 {
            let coef = q(-r) * qpow(&q(-1), k) / q(k + 1);
            series.axpy(&coef, &v_dv(r, k + 1));
        }
        rep.push_note("limit.kernel.log", vec![r], img == series, "v^r w^-1 d(w)");
    }
    for loops in [None, Some(&model.g)] {
        let k = kernel_window(rr, ss, m, loops)?;
        let suite = if loops.is_some() { "limit.kernel.loops" } else { "limit.kernel" };
        let note = format!("domain {} rank {} nullity {}", k.domain_dim, k.rank, k.nullity);
        rep.push_note(suite, vec![rr, ss, m as i64], k.kernel_is_cw(), note);
    }
    let inj = injectivity_window(datum, bound, m)?;
    let note = format!("columns {} domain rank {} image rank {}", inj.columns, inj.domain_rank, inj.image_rank);
    rep.push_note("limit.injective", vec![bound, m as i64], inj.full_column_rank(), note);
    Ok(rep)
}

/// Υ_c: `t ↦ t + c` on ḡ[t^±1], expanded in powers of `t` below `t^m`.
pub fn upsilon_c(f: &LoopElem, c: &Q, m: u32) -> Result<TruncSeries> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let mut out = UceElem::zero(RingTag::VtPoly);
    for ((a, k), x) in &f.terms {
        for j in 0..m {
            let coef = binom(*k, j) * qpow(c, k - j as i64);
            out.loop_part.add(*a, j as i64, &coef, x);
        }
    }
    TruncSeries::new(out, m)
}

/// Associated graded of Υ_c for the `(t - c)`-adic filtration: on each
/// `n ≤ nmax`, the images of `(t-c)^n x t^k` (`|k| ≤ window`) vanish below
/// `t^n` and their `t^n` slices span ḡ.
pub fn gr_check(g: &SimpleLie, c: &Q, nmax: u32, m: u32, window: i64) -> Result<Report> {
    if nmax >= m {
        return Err(Error::Malformed(format!("n_max={} must be below M={}", nmax, m)));
    }
    let mut rep = Report::new(g.datum.label());
    for n in 0..=nmax {
        let mut slice_vecs: Vec<SparseVec<usize>> = Vec::new();
        for k in -window..=window {
            for b in 0..g.dim() {
                let mut f = LoopElem::zero(RingTag::VtLaurent);
                for j in 0..=n {
                    let coef = binom(n as i64, j) * qpow(&-c.clone(), (n - j) as i64);
                    f.add(0, k + j as i64, &coef, &g.basis(b));
                }
                let img = upsilon_c(&f, c, m)?;
                let low = (0..n as i64).all(|s| img.slice(s).is_zero());
                rep.push_note("limit.grcheck.filtered", vec![n as i64, k, b as i64], low, if low { "0" } else { "nonzero below t^n" });
                let top = img.slice(n as i64);
                let v: SparseVec<usize> = top.loop_part.terms.values().flat_map(|x| x.clone()).collect();
                slice_vecs.push(v);
            }
        }
        let rank = rank_and_kernel(&slice_vecs).0;
        rep.push_note("limit.grcheck.rank", vec![n as i64], rank == g.dim(), format!("rank {} of {}", rank, g.dim()));
    }
    Ok(rep)
}
