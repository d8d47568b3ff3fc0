//! Mechanized verification that `Φ_z` respects the defining relations,
//! together with consistency checks on its closed forms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{mode_of_series, phi_c_elem, phi_c_gen, phi_series, phi_z_gen, Current};
use crate::cartan::CartanDatum;
use crate::dist::{
    dist_bracket, dist_mul, expand_window, leibniz_fold, mul_linear, window_equal, DistElem, DistTerm, Var,
    WindowBox,
};
use crate::error::{Error, Result};
use crate::freealg::{Family, FreeElem, Letter, Reducer, Side, Sign};
use crate::morphisms::{chi, gamma_gen, sigma, zcoeffs_add, ZCoeffs};
use crate::report::Report;
use crate::scalar::{q, qpow, HPoly, Q};

const U: Var = Var::U(0);

fn constant(e: FreeElem) -> DistElem {
    DistElem::from_term(DistTerm::one(), e)
}

fn nodes(dat: &CartanDatum) -> Vec<usize> {
    dat.nodes().collect()
}

/// Checks the `hh`, `h0x`, `xh` or `xx` family: the image of the relation
/// under `Φ_z` is expanded in the `D1` basis and every coefficient is
/// reduced modulo the corresponding Yangian templates.
pub fn check_phi_relations(dat: &CartanDatum, family: Family, n: u32) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let suite = alloc::format!("phi.{}", family.name());
    let mut red = Reducer::new(dat, &[family], n as i64);
    let ys = Side::Yangian;
    match family {
        Family::Hh => {
            for i in nodes(dat) {
                for j in nodes(dat) {
                    let a = phi_series(dat, Current::H(i), U, n);
                    let b = phi_series(dat, Current::H(j), Var::V, n);
                    let c = dist_bracket(&a, &b)?;
                    let mut with_cartan = Vec::new();
                    for h in dat.cartan_basis() {
                        let hc = constant(FreeElem::letter(ys, Letter::Cartan(h)));
                        with_cartan.push(dist_bracket(&hc, &b)?);
                    }
                    for k in 0..=n {
                        for l in 0..=n {
                            let coef = c.coeff(&DistTerm::f2(k, U, l, Var::V));
                            let mut residual = red.reduce(&coef)?.residual;
                            if k == 0 {
                                for wc in &with_cartan {
                                    residual += &red.reduce(&wc.coeff(&DistTerm::d1(l, Var::V)))?.residual;
                                }
                            }
                            rep.push_residual(&suite, vec![i as i64, j as i64, k as i64, l as i64], residual);
                        }
                    }
                }
            }
        }
        Family::H0x => {
            for j in nodes(dat) {
                let mut per_mode: BTreeMap<u32, FreeElem> = BTreeMap::new();
                for sign in Sign::both() {
                    let x = phi_series(dat, Current::X(sign, j), U, n);
                    for h in dat.cartan_basis() {
                        let hc = constant(FreeElem::letter(ys, Letter::Cartan(h)));
                        let shift = x.map_coeffs(|c| c.scale(&q(sign.eps() * dat.alpha_on(j, h))));
                        let img = dist_bracket(&hc, &x)?.sub(&shift);
                        for k in 0..=n {
                            let r = red.reduce(&img.coeff(&DistTerm::d1(k, U)))?.residual;
                            *per_mode.entry(k).or_insert_with(|| FreeElem::zero(ys)) += &r;
                        }
                    }
                }
                for (k, r) in per_mode {
                    rep.push_residual(&suite, vec![j as i64, j as i64, k as i64, 0], r);
                }
            }
        }
        Family::Xh | Family::Xx => {
            for i in nodes(dat) {
                for j in nodes(dat) {
                    let mut cells: BTreeMap<(u32, u32), FreeElem> = BTreeMap::new();
                    let mut stray = false;
                    for sign in Sign::both() {
                        let y_cur = if family == Family::Xh { Current::H(i) } else { Current::X(sign, i) };
                        let y = phi_series(dat, y_cur, U, n + 1);
                        let x = phi_series(dat, Current::X(sign, j), Var::V, n + 1);
                        let a = dist_mul(&y, &x)?;
                        let b = dist_mul(&x, &y)?;
                        let hd = HPoly::monomial(1, dat.sym_pair(i, j) * q(sign.eps()));
                        // (u - v ∓ ħd)YX - (u - v ± ħd)XY
                        let img = mul_linear(&a.sub(&b), U, Var::V).sub(&a.add(&b).map_coeffs(|c| c.scale_h(&hd)));
                        for (t, _) in img.terms() {
                            let plain = t.swap.is_none() && t.mono.is_empty() && t.deltas.len() == 2;
                            if !plain {
                                stray = true;
                            }
                        }
                        for k in 0..=n {
                            for l in 0..=n {
                                let coef = img.coeff(&DistTerm::f2(k, U, l, Var::V));
                                let r = red.reduce(&coef)?.residual;
                                *cells.entry((k, l)).or_insert_with(|| FreeElem::zero(ys)) += &r;
                            }
                        }
                    }
                    for ((k, l), r) in cells {
                        rep.push_residual(&suite, vec![i as i64, j as i64, k as i64, l as i64], r);
                    }
                    if stray {
                        rep.push_note(&suite, vec![i as i64, j as i64, -1, -1], false, "terms outside the D1 basis");
                    }
                }
            }
        }
        _ => return Err(Error::Malformed(alloc::format!("family {} is not checked here", family.name()))),
    }
    Ok(rep)
}

/// Checks `[Φ_z(X_i^+(u)), Φ_z(X_j^-(v))] = δ_ij DSWAP(u,v) Φ_z(H_i(v))`:
/// cellwise modulo the `xxh` templates, then by Leibniz folding with a
/// window comparison of both sides.
pub fn check_phi_xxh(dat: &CartanDatum, n: u32) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let mut red = Reducer::new(dat, &[Family::Xxh], n as i64);
    let ys = Side::Yangian;
    for i in nodes(dat) {
        for j in nodes(dat) {
            let xp = phi_series(dat, Current::X(Sign::Plus, i), U, n);
            let xm = phi_series(dat, Current::X(Sign::Minus, j), Var::V, n);
            let c = dist_bracket(&xp, &xm)?;
            let mut certified = DistElem::zero(ys);
            for k in 0..=n {
                for l in 0..=n {
                    let coef = c.coeff(&DistTerm::f2(k, U, l, Var::V));
                    let target = if i == j { FreeElem::h(dat, ys, i, (k + l) as i64) } else { FreeElem::zero(ys) };
                    let r = red.reduce(&(&coef - &target))?.residual;
                    rep.push_residual("phi.xxh", vec![i as i64, j as i64, k as i64, l as i64], r);
                    if k + l <= n {
                        certified.add_term(DistTerm::f2(k, U, l, Var::V), &target);
                    }
                }
            }
            if i != j {
                continue;
            }
            let folded = leibniz_fold(&certified, U, Var::V)?;
            let target = dist_mul(
                &DistElem::from_term(DistTerm::dswap(U, Var::V), FreeElem::one(ys)),
                &phi_series(dat, Current::H(i), Var::V, n),
            )?;
            let bx = WindowBox::cube(&[U, Var::V, Var::Z], n as i64);
            let ok = folded == target
                && window_equal(&expand_window(&certified, &bx)?, &expand_window(&target, &bx)?);
            rep.push_note("phi.xxh.fold", vec![i as i64, j as i64, n as i64, n as i64], ok, "Leibniz fold");
        }
    }
    Ok(rep)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

fn tuples(m: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| (0..=n).map(move |k| {
                let mut u = t.clone();
                u.push(k);
                u
            }))
            .collect();
    }
    out
}

/// Checks the Serre relations: every `D1` coefficient of the symmetrized
/// nested commutator of `Φ_z` images reduces modulo the Serre templates.
pub fn check_phi_serre(dat: &CartanDatum, n: u32) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let mut red = Reducer::new(dat, &[Family::Serre], n as i64);
    let ys = Side::Yangian;
    for i in nodes(dat) {
        for j in nodes(dat) {
            if i == j {
                continue;
            }
            let m = (1 - dat.a(i, j)) as usize;
            let mut cells: BTreeMap<Vec<u32>, FreeElem> = BTreeMap::new();
            for sign in Sign::both() {
                let xi: Vec<DistElem> =
                    (1..=m).map(|k| phi_series(dat, Current::X(sign, i), Var::U(k as u8), n)).collect();
                let xj = phi_series(dat, Current::X(sign, j), Var::V, n);
                let mut total = DistElem::zero(ys);
                for p in permutations(m) {
                    let mut acc = xj.clone();
                    for k in p.iter().rev() {
                        acc = dist_bracket(&xi[*k], &acc)?;
                    }
                    total = total.add(&acc);
                }
                for t in tuples(m + 1, n) {
                    let mut term = DistTerm::one();
                    for (k, nk) in t[..m].iter().enumerate() {
                        term.deltas.insert(Var::U(k as u8 + 1), *nk);
                    }
                    term.deltas.insert(Var::V, t[m]);
                    let r = red.reduce(&total.coeff(&term))?.residual;
                    *cells.entry(t).or_insert_with(|| FreeElem::zero(ys)) += &r;
                }
            }
            for (t, r) in cells {
                let mut cell = vec![i as i64, j as i64];
                cell.extend(t.iter().map(|x| *x as i64));
                rep.push_residual("phi.serre", cell, r);
            }
        }
    }
    Ok(rep)
}

/// `∂_z^{(n)} z^k` by repeated differentiation followed by division by `n!`.
fn divided_derivative(k: i64, n: u32) -> (i64, Q) {
    let mut c = Q::one();
    let mut e = k;
    for j in 1..=n as i64 {
        c *= q(e);
        c /= q(j);
        e -= 1;
    }
    (e, c)
}

/// Compares the mode form of `Φ_z(X_{i,-n-1})` with
/// `Σ_p (-1)^{n+p} x_ip ∂_z^{(n)} z^{-p-1}`, and checks that
/// `(z + σ_i)^{n+1}` sends it back to `x_i0` up to the truncation.
pub fn check_vertex_consistency(dat: &CartanDatum, nmax: u32, m: i64) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let ys = Side::Yangian;
    for i in nodes(dat) {
        for sign in Sign::both() {
            for n in 0..=nmax {
                let r = -(n as i64) - 1;
                let img = phi_z_gen(dat, &Letter::X(sign, i, r), m)?.coeffs;
                let mut direct = ZCoeffs::new();
                for p in 0..m {
                    let (e, c) = divided_derivative(-p - 1, n);
                    let s = if (n as i64 + p) % 2 == 0 { c } else { -c };
                    zcoeffs_add(&mut direct, e, &FreeElem::x(dat, ys, sign, i, p).scale(&s));
                }
                let mut residual = FreeElem::zero(ys);
                for k in img.keys().chain(direct.keys()) {
                    let a = img.get(k).cloned().unwrap_or_else(|| FreeElem::zero(ys));
                    let b = direct.get(k).cloned().unwrap_or_else(|| FreeElem::zero(ys));
                    residual += &(&a - &b);
                }
                rep.push_residual("phi.vertex", vec![i as i64, sign.eps(), n as i64], residual);

                // (z + σ)^{n+1} applied termwise; σ raises the mode by one
                let mut acc = img.clone();
                for _ in 0..=n {
                    let mut next = ZCoeffs::new();
                    for (k, c) in &acc {
                        zcoeffs_add(&mut next, k + 1, c);
                        let shifted = c.substitute(ys, |l| Ok(FreeElem::letter(ys, sigma(dat, i, sign, l)?)))?;
                        zcoeffs_add(&mut next, *k, &shifted);
                    }
                    acc = next;
                }
                let mut residual = FreeElem::zero(ys);
                for (k, c) in &acc {
                    let low = c.truncate(m);
                    if *k == 0 {
                        residual += &(&low - &FreeElem::x(dat, ys, sign, i, 0));
                    } else {
                        residual += &low;
                    }
                }
                rep.push_residual("phi.vertex.invert", vec![i as i64, sign.eps(), n as i64], residual);
            }
        }
    }
    Ok(rep)
}

type OpPoly = BTreeMap<(i64, u32), Q>;

fn op_mul(a: &OpPoly, b: &OpPoly) -> OpPoly {
    let mut out = OpPoly::new();
    for ((za, sa), x) in a {
        for ((zb, sb), y) in b {
            let slot = out.entry((za + zb, sa + sb)).or_insert_with(Q::zero);
            *slot += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn op_pow(base: &OpPoly, k: u32) -> OpPoly {
    let mut acc: OpPoly = [((0, 0), Q::one())].into_iter().collect();
    for _ in 0..k {
        acc = op_mul(&acc, base);
    }
    acc
}

fn sigma_pow(dat: &CartanDatum, i: usize, sign: Sign, k: u32) -> Result<FreeElem> {
    let mut l = Letter::X(sign, i, 0);
    for _ in 0..k {
        l = sigma(dat, i, sign, &l)?;
    }
    Ok(FreeElem::letter(Side::Yangian, l))
}

fn zdiff(a: &ZCoeffs, b: &ZCoeffs) -> FreeElem {
    let mut out = FreeElem::zero(Side::Yangian);
    for k in a.keys().chain(b.keys()) {
        if let Some(x) = a.get(k) {
            out += x;
        }
        if let Some(y) = b.get(k) {
            out -= y;
        }
    }
    out
}

/// Checks the closed forms of `Φ_z(X_i^±(u))`: the σ-power series, the
/// geometric-series expansions of both halves, and mode extraction from the
/// series form.
pub fn check_phi_form(dat: &CartanDatum, nmax: u32, m: i64) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let ys = Side::Yangian;
    for i in nodes(dat) {
        for sign in Sign::both() {
            let cur = Current::X(sign, i);
            let series = phi_series(dat, cur, U, nmax);
            let mut via_sigma = DistElem::zero(ys);
            for k in 0..=nmax {
                via_sigma.add_term(DistTerm::d1(k, U), &sigma_pow(dat, i, sign, k)?);
            }
            rep.push_note("phi.form.series", vec![i as i64, sign.eps()], via_sigma == series, "sigma powers");

            // u^{-1}/(1 - u^{-1}(z + σ)): the u^{-r-1} coefficient is (z + σ)^r
            let z_plus_sigma: OpPoly = [((1, 0), Q::one()), ((0, 1), Q::one())].into_iter().collect();
            for r in 0..=nmax as i64 {
                let mut geo = ZCoeffs::new();
                for ((zp, sp), c) in op_pow(&z_plus_sigma, r as u32) {
                    zcoeffs_add(&mut geo, zp, &sigma_pow(dat, i, sign, sp)?.scale(&c));
                }
                let direct = phi_z_gen(dat, &cur.letter(r), m)?.coeffs;
                rep.push_residual("phi.form.plus", vec![i as i64, sign.eps(), r], zdiff(&geo, &direct));
            }
            // -z^{-1}/(1 - z^{-1}(u - σ)): the u^n coefficient is -Φ_z(X_{i,-n-1})
            let u_minus_sigma: OpPoly = [((1, 0), Q::one()), ((0, 1), -Q::one())].into_iter().collect();
            for n in 0..=nmax as i64 {
                let mut geo = ZCoeffs::new();
                for k in n..n + m {
                    for ((up, sp), c) in op_pow(&u_minus_sigma, k as u32) {
                        if up == n && (sp as i64) < m {
                            zcoeffs_add(&mut geo, -k - 1, &sigma_pow(dat, i, sign, sp)?.scale(&c));
                        }
                    }
                }
                let direct = phi_z_gen(dat, &cur.letter(-n - 1), m)?.coeffs;
                rep.push_residual("phi.form.minus", vec![i as i64, sign.eps(), n], zdiff(&geo, &direct));
            }
            for r in -(nmax as i64) - 1..=nmax as i64 {
                let from_series = mode_of_series(&series, U, r)?;
                let direct = phi_z_gen(dat, &cur.letter(r), nmax as i64 + 1)?.coeffs;
                rep.push_residual("phi.form.modes", vec![i as i64, sign.eps(), r], zdiff(&from_series, &direct));
            }
        }
    }
    Ok(rep)
}

fn generators(dat: &CartanDatum, bound: i64) -> Vec<Letter> {
    let mut out: Vec<Letter> = dat.cartan_basis().into_iter().map(Letter::Cartan).collect();
    for i in dat.nodes() {
        for r in -bound..=bound {
            out.push(Letter::X(Sign::Plus, i, r));
            out.push(Letter::X(Sign::Minus, i, r));
            if r != 0 {
                out.push(Letter::H(i, r));
            }
        }
    }
    out
}

fn letter_cell(l: &Letter) -> Vec<i64> {
    match *l {
        Letter::X(s, i, r) => vec![i as i64, s.eps(), r],
        Letter::H(i, r) => vec![i as i64, 0, r],
        Letter::Cartan(crate::cartan::CartanBasis::Coroot(i)) => vec![i as i64, 0, 0],
        Letter::Cartan(crate::cartan::CartanBasis::Scaling) => vec![-1, 0, 0],
    }
}

/// Checks `Φ_c = χ_{a/c} ∘ Φ_a ∘ χ_{c/a}` on generators with `|r| <= bound`,
/// modulo Yangian degree `>= m`.
pub fn check_gr_tw(dat: &CartanDatum, pairs: &[(Q, Q)], bound: i64, m: i64) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    for (pi, (a, c)) in pairs.iter().enumerate() {
        if a.is_zero() || c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let ratio = c / a;
        for l in generators(dat, bound) {
            let lhs = phi_c_gen(dat, &l, c, m)?;
            let inner = phi_c_gen(dat, &l, a, m)?.scale(&qpow(&ratio, l.degree()));
            let rhs = chi(&ratio.recip(), &inner)?;
            let mut cell = vec![pi as i64];
            cell.extend(letter_cell(&l));
            rep.push_residual("phi.grtw", cell, &lhs - &rhs);
        }
    }
    Ok(rep)
}

/// Checks `Φ_1 ∘ Γ = id` on the Cartan basis, `x_i0^±` and `h_i1`.
pub fn check_phi_gamma_identity(dat: &CartanDatum) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let mut gens: Vec<Letter> = dat.cartan_basis().into_iter().map(Letter::Cartan).collect();
    for i in dat.nodes() {
        gens.push(Letter::X(Sign::Plus, i, 0));
        gens.push(Letter::X(Sign::Minus, i, 0));
        gens.push(Letter::H(i, 1));
    }
    for l in gens {
        let back = phi_c_elem(dat, &gamma_gen(dat, &l)?, &Q::one(), 4)?;
        let orig = FreeElem::gen(dat, Side::Yangian, l)?;
        rep.push_residual("phi.gamma", letter_cell(&l), &back - &orig);
    }
    Ok(rep)
}

/// Checks that `Φ_1(X_ir^± - X_is^±)` has no degree-0 part for
/// `|r|, |s| <= bound`, truncating at degree `m`.
pub fn check_j_generators(dat: &CartanDatum, bound: i64, m: i64) -> Result<Report> {
    let mut rep = Report::new(dat.label());
    let one = Q::one();
    for i in dat.nodes() {
        for sign in Sign::both() {
            let imgs: Vec<FreeElem> = (-bound..=bound)
                .map(|r| phi_c_gen(dat, &Letter::X(sign, i, r), &one, m))
                .collect::<Result<_>>()?;
            for (a, r) in (-bound..=bound).enumerate() {
                for (b, s) in (-bound..=bound).enumerate() {
                    let d = &imgs[a] - &imgs[b];
                    rep.push_residual("phi.jgen", vec![i as i64, sign.eps(), r, s], d.degree_component(0));
                }
            }
        }
    }
    Ok(rep)
}
