//! Parsers for generator specs such as `x(1,+,2)`, `H(1,1)` and bracket
//! words such as `[X(0,+,1),X(0,-,0)]`.

use dyshift_core::freealg::{Letter, Side, Sign};
use dyshift_core::liealg::LieWord;
use dyshift_core::scalar::Q;
use dyshift_core::{Error, Result};

fn bad(s: &str) -> Error {
    Error::Malformed(format!("generator spec `{}`", s))
}

pub fn parse_q(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| Error::Malformed(format!("rational `{}`", s)))
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

/// `x(i,±,r)` and `h(i,r)` live on the Yangian side, `X(i,±,r)` and
/// `H(i,r)` on the double side.
pub fn parse_generator(spec: &str) -> Result<(Side, Letter)> {
    let s = spec.trim();
    let open = s.find('(').ok_or_else(|| bad(s))?;
    if !s.ends_with(')') {
        return Err(bad(s));
    }
    let head = &s[..open];
    let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').map(str::trim).collect();
    let side = match head {
        "x" | "h" => Side::Yangian,
        "X" | "H" => Side::Double,
        _ => return Err(bad(s)),
    };
    let node = |a: &str| a.parse::<usize>().map_err(|_| bad(s));
    let mode = |a: &str| a.parse::<i64>().map_err(|_| bad(s));
    let letter = match (head, args.as_slice()) {
        ("x" | "X", [i, sg, r]) => Letter::X(parse_sign(sg).ok_or_else(|| bad(s))?, node(i)?, mode(r)?),
        ("h" | "H", [i, r]) => Letter::H(node(i)?, mode(r)?),
        _ => return Err(bad(s)),
    };
    Ok((side, letter))
}

/// A generator `X(i,±,r)` or a bracket `[a,b]` of words.
pub fn parse_lie_word(spec: &str) -> Result<LieWord> {
    let s = spec.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| bad(s))?;
        // split at the top-level comma
        let mut depth = 0i32;
        for (k, ch) in inner.char_indices() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ',' if depth == 0 => {
                    return Ok(LieWord::br(parse_lie_word(&inner[..k])?, parse_lie_word(&inner[k + 1..])?));
                }
                _ => {}
            }
        }
        return Err(bad(s));
    }
    match parse_generator(s)? {
        (_, Letter::X(sg, i, r)) => Ok(LieWord::x(sg, i, r)),
        (_, Letter::H(i, r)) => Ok(LieWord::h(i, r)),
        _ => Err(bad(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(parse_generator("x(1,+,2)").unwrap(), (Side::Yangian, Letter::X(Sign::Plus, 1, 2)));
        assert_eq!(parse_generator("X(1, -, -1)").unwrap(), (Side::Double, Letter::X(Sign::Minus, 1, -1)));
        assert_eq!(parse_generator("h(1,1)").unwrap(), (Side::Yangian, Letter::H(1, 1)));
        assert!(parse_generator("y(1,1)").is_err());
        assert!(parse_generator("x(1,*,1)").is_err());
        assert!(parse_generator("x(1,+)").is_err());
    }

    #[test]
    fn words() {
        let w = parse_lie_word("[X(0,+,1),[X(1,+,0),X(2,-,3)]]").unwrap();
        let want = LieWord::br(
            LieWord::x(Sign::Plus, 0, 1),
            LieWord::br(LieWord::x(Sign::Plus, 1, 0), LieWord::x(Sign::Minus, 2, 3)),
        );
        assert_eq!(w, want);
        assert_eq!(parse_lie_word("H(1,2)").unwrap(), LieWord::h(1, 2));
        assert!(parse_lie_word("[X(0,+,1)]").is_err());
        assert_eq!(parse_q("-3/2").unwrap(), Q::new((-3).into(), 2.into()));
    }
}
