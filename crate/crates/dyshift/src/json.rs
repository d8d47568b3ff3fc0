//! JSON encodings for elements, reports and rank certificates.

use dyshift_core::cartan::CartanBasis;
use dyshift_core::freealg::{FreeElem, Letter, Side, Sign};
use dyshift_core::liealg::{Central, RingTag, SimpleLie, UceElem};
use dyshift_core::limitphi::{InjectivityReport, RankReport, TruncSeries};
use dyshift_core::report::Report;
use dyshift_core::scalar::{HPoly, Q};
use dyshift_core::{Error, Result};
use serde_json::{json, Map, Value};

fn bad(what: &str) -> Error {
    Error::Malformed(format!("json: {}", what))
}

pub fn q_to_json(c: &Q) -> Value {
    Value::String(c.to_string())
}

pub fn q_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => s.parse::<Q>().map_err(|_| bad(s)),
        Value::Number(n) => n.as_i64().map(|n| Q::from_integer(n.into())).ok_or_else(|| bad("non-integer number")),
        _ => Err(bad("rational")),
    }
}

pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::Yangian => "Y",
        Side::Double => "DY",
    }
}

pub fn letter_to_json(l: &Letter) -> Value {
    match l {
        Letter::X(Sign::Plus, i, r) => json!(["X+", i, r]),
        Letter::X(Sign::Minus, i, r) => json!(["X-", i, r]),
        Letter::H(i, r) => json!(["H", i, r]),
        Letter::Cartan(CartanBasis::Coroot(i)) => json!(["h", i]),
        Letter::Cartan(CartanBasis::Scaling) => json!(["d"]),
    }
}

pub fn letter_from_json(v: &Value) -> Result<Letter> {
    let a = v.as_array().ok_or_else(|| bad("letter"))?;
    let tag = a.first().and_then(Value::as_str).ok_or_else(|| bad("letter tag"))?;
    let int = |k: usize| a.get(k).and_then(Value::as_i64).ok_or_else(|| bad("letter index"));
    let node = |k: usize| int(k).and_then(|i| usize::try_from(i).map_err(|_| bad("node")));
    Ok(match tag {
        "X+" => Letter::X(Sign::Plus, node(1)?, int(2)?),
        "X-" => Letter::X(Sign::Minus, node(1)?, int(2)?),
        "H" => Letter::H(node(1)?, int(2)?),
        "h" => Letter::Cartan(CartanBasis::Coroot(node(1)?)),
        "d" => Letter::Cartan(CartanBasis::Scaling),
        other => return Err(bad(other)),
    })
}

pub fn hpoly_to_json(c: &HPoly) -> Value {
    let mut m = Map::new();
    for (e, q) in c.iter() {
        m.insert(e.to_string(), q_to_json(q));
    }
    Value::Object(m)
}

pub fn hpoly_from_json(v: &Value) -> Result<HPoly> {
    let m = v.as_object().ok_or_else(|| bad("coeff"))?;
    let mut c = HPoly::zero();
    for (k, q) in m {
        let e: u32 = k.parse().map_err(|_| bad("ħ exponent"))?;
        c.add_term(e, &q_from_json(q)?);
    }
    Ok(c)
}

/// `{"side":"Y","terms":[{"word":[["X+",1,0],["H",1,2]],"coeff":{"0":"3/2"}}]}`
pub fn free_to_json(e: &FreeElem) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| json!({"word": w.iter().map(letter_to_json).collect::<Vec<_>>(), "coeff": hpoly_to_json(c)}))
        .collect();
    json!({"side": side_name(e.side()), "terms": terms})
}

pub fn free_from_json(v: &Value) -> Result<FreeElem> {
    let side = match v.get("side").and_then(Value::as_str) {
        None | Some("Y") => Side::Yangian,
        Some("DY") => Side::Double,
        Some(s) => return Err(bad(s)),
    };
    let mut out = FreeElem::zero(side);
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
        let word = t.get("word").and_then(Value::as_array).ok_or_else(|| bad("word"))?;
        let word = word.iter().map(letter_from_json).collect::<Result<Vec<_>>>()?;
        out.add_term(word, &hpoly_from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)?);
    }
    Ok(out)
}

fn central_to_json(z: &Central) -> Value {
    let k: Vec<Value> = z.k.iter().map(|((r, s), c)| json!([r, s, c.to_string()])).collect();
    json!({"K": k, "cv": q_to_json(&z.cv), "ct": q_to_json(&z.ct)})
}

fn central_from_json(v: &Value) -> Result<Central> {
    let mut z = Central::zero();
    for e in v.get("K").and_then(Value::as_array).ok_or_else(|| bad("K"))? {
        let a = e.as_array().ok_or_else(|| bad("K entry"))?;
        let r = a.first().and_then(Value::as_i64).ok_or_else(|| bad("K r"))?;
        let s = a.get(1).and_then(Value::as_i64).ok_or_else(|| bad("K s"))?;
        z.add_k(r, s, q_from_json(a.get(2).ok_or_else(|| bad("K coeff"))?)?);
    }
    z.cv = q_from_json(v.get("cv").ok_or_else(|| bad("cv"))?)?;
    z.ct = q_from_json(v.get("ct").ok_or_else(|| bad("ct"))?)?;
    Ok(z)
}

/// Loop part as `[{"i","basis","v","t","coeff"}]`, central part as
/// `{"K":[[r,s,"q"]],"cv":"q","ct":"q"}`.
pub fn uce_to_json(g: &SimpleLie, e: &UceElem) -> Value {
    let mut lp = Vec::new();
    for ((a, b), x) in &e.loop_part.terms {
        for (k, c) in x {
            lp.push(json!({"i": k, "basis": g.basis_label(*k), "v": a, "t": b, "coeff": q_to_json(c)}));
        }
    }
    json!({"ring": e.ring().name(), "loop": lp, "central": central_to_json(&e.central)})
}

pub fn uce_from_json(g: &SimpleLie, v: &Value) -> Result<UceElem> {
    let ring = v.get("ring").and_then(Value::as_str).and_then(RingTag::parse).ok_or_else(|| bad("ring"))?;
    let mut out = UceElem::zero(ring);
    for t in v.get("loop").and_then(Value::as_array).ok_or_else(|| bad("loop"))? {
        let k = match t.get("i").and_then(Value::as_u64) {
            Some(k) => k as usize,
            None => t.get("basis").and_then(Value::as_str).and_then(|s| g.parse_label(s)).ok_or_else(|| bad("basis"))?,
        };
        if k >= g.dim() {
            return Err(bad("basis index"));
        }
        let a = t.get("v").and_then(Value::as_i64).ok_or_else(|| bad("v"))?;
        let b = t.get("t").and_then(Value::as_i64).ok_or_else(|| bad("t"))?;
        if !ring.admits(b) {
            return Err(bad("exponent outside ring"));
        }
        out.loop_part.add(a, b, &q_from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)?, &g.basis(k));
    }
    out.central = central_from_json(v.get("central").ok_or_else(|| bad("central"))?)?;
    Ok(out)
}

pub fn trunc_to_json(g: &SimpleLie, t: &TruncSeries) -> Value {
    json!({"M": t.m, "element": uce_to_json(g, &t.elem)})
}

/// One object per report entry: `{"suite","datum","cell","status","residual"}`,
/// with `"note"` added when present.
pub fn report_lines(rep: &Report) -> Vec<Value> {
    rep.entries
        .iter()
        .map(|e| {
            let mut v = json!({
                "suite": e.suite,
                "datum": rep.datum,
                "cell": e.cell,
                "status": if e.passed { "pass" } else { "fail" },
                "residual": e.residual.as_ref().map(free_to_json).unwrap_or(Value::Null),
            });
            if let Some(n) = &e.note {
                v["note"] = Value::String(n.clone());
            }
            v
        })
        .collect()
}

pub fn rank_report_to_json(r: &RankReport) -> Value {
    let kernel: Vec<Value> = r
        .kernel_basis
        .iter()
        .map(|v| Value::Array(v.iter().map(|(l, c)| json!([l, q_to_json(c)])).collect()))
        .collect();
    json!({
        "window": {"R": r.r, "S": r.s, "M": r.m},
        "domain_dim": r.domain_dim,
        "rank": r.rank,
        "nullity": r.nullity,
        "kernel_basis": kernel,
    })
}

pub fn injectivity_to_json(r: &InjectivityReport) -> Value {
    json!({
        "window": {"bound": r.bound, "M": r.m},
        "columns": r.columns,
        "domain_rank": r.domain_rank,
        "image_rank": r.image_rank,
        "full_column_rank": r.full_column_rank(),
    })
}
