//! Plain-text rendering in the notation `x_{i,r}`, `x^-_{i,r}`, `h_{i,r}`
//! (Yangian side) and `X_{i,r}`, `X^-_{i,r}`, `H_{i,r}` (double side).

use dyshift_core::cartan::{CartanBasis, CartanDatum};
use dyshift_core::freealg::{word_degree, FreeElem, Letter, Side, Sign};
use dyshift_core::morphisms::ZCoeffs;
use dyshift_core::scalar::{HPoly, Q};
use num_traits::{One, Signed};

fn letter_text(l: &Letter, side: Side) -> String {
    let (x, h) = match side {
        Side::Yangian => ("x", "h"),
        Side::Double => ("X", "H"),
    };
    match l {
        Letter::X(Sign::Plus, i, r) => format!("{}_{{{},{}}}", x, i, r),
        Letter::X(Sign::Minus, i, r) => format!("{}^-_{{{},{}}}", x, i, r),
        Letter::H(i, r) => format!("{}_{{{},{}}}", h, i, r),
        Letter::Cartan(CartanBasis::Coroot(i)) => format!("{}_{{{},0}}", h, i),
        Letter::Cartan(CartanBasis::Scaling) => "d".into(),
    }
}

fn coeff_text(c: &HPoly, first: bool, empty_word: bool) -> String {
    if let Some(q) = c.as_constant() {
        let sign = if q.is_negative() {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let a = q.abs();
        if a.is_one() && !empty_word {
            return sign.into();
        }
        return format!("{}{}", sign, a);
    }
    format!("{}({})", if first { "" } else { "+" }, c)
}

/// Terms are ordered by distance of their degree from `source_degree` when
/// given (nearest first), otherwise in canonical word order. A coroot letter
/// `α_i^∨` is printed as `h_{i,0}` with its coefficient divided by `d_i`.
pub fn render_free(dat: &CartanDatum, e: &FreeElem, source_degree: Option<i64>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(i64, String, HPoly, bool)> = Vec::new();
    for (w, c) in e.terms() {
        let mut scale = Q::one();
        for l in w {
            if let Letter::Cartan(CartanBasis::Coroot(i)) = l {
                scale /= Q::from_integer(dat.d(*i).into());
            }
        }
        let body: String = w.iter().map(|l| letter_text(l, e.side())).collect();
        let key = source_degree.map_or(0, |s| (word_degree(w) - s).abs());
        terms.push((key, body, c.scale(&scale), w.is_empty()));
    }
    terms.sort_by_key(|t| t.0);
    let mut out = String::new();
    for (k, (_, body, c, empty)) in terms.iter().enumerate() {
        out.push_str(&coeff_text(c, k == 0, *empty));
        out.push_str(body);
    }
    out
}

/// A polynomial in `z` with element coefficients, lowest power first.
pub fn render_zcoeffs(dat: &CartanDatum, z: &ZCoeffs, source_degree: Option<i64>) -> String {
    let parts: Vec<String> = z
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(k, e)| {
            let body = render_free(dat, e, source_degree);
            match k {
                0 => format!("({})", body),
                1 => format!("({})z", body),
                _ => format!("({})z^{}", body, k),
            }
        })
        .collect();
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

pub fn is_zero_z(z: &ZCoeffs) -> bool {
    z.values().all(|e| e.is_zero())
}
