//! Exact scalars: rationals, generalized binomials and polynomials in ħ.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `a^e` for an integer exponent, with `a` nonzero when `e < 0`.
pub fn qpow(a: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(a.clone(), e as usize)
    } else {
        num_traits::pow(a.recip(), (-e) as usize)
    }
}

/// Generalized binomial `r(r-1)...(r-k+1)/k!` for any integer `r`.
pub fn binom(r: i64, k: u32) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(r - j);
        den *= BigInt::from(j + 1);
    }
    Q::new(num, den)
}

pub fn sign_pow(e: i64) -> Q {
    if e.is_even() {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Polynomial in ħ with rational coefficients, stored sparsely by exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HPoly(BTreeMap<u32, Q>);

impl HPoly {
    pub fn zero() -> Self {
        HPoly(BTreeMap::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(e: u32, c: Q) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        HPoly(m)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: u32) -> Q {
        self.0.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: u32, c: &Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add_assign(&mut self, other: &HPoly) {
        for (e, c) in other.iter() {
            self.add_term(e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &HPoly) {
        for (e, c) in other.iter() {
            self.add_term(e, &-c.clone());
        }
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> HPoly {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly(self.0.iter().map(|(e, x)| (*e, x * c)).collect())
    }

    pub fn shift(&self, k: u32) -> HPoly {
        HPoly(self.0.iter().map(|(e, x)| (e + k, x.clone())).collect())
    }

    pub fn neg(&self) -> HPoly {
        self.scale(&-Q::one())
    }

    /// The lowest ħ-exponent present, if any.
    pub fn low(&self) -> Option<u32> {
        self.0.keys().next().copied()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            let mut s = String::new();
            let neg = c.is_negative();
            let a = c.abs();
            if !first {
                s.push_str(if neg { "-" } else { "+" });
            } else if neg {
                s.push('-');
            }
            let unit = a.is_one() && e > 0;
            if !unit {
                s.push_str(&alloc::format!("{}", a));
            }
            match e {
                0 => {}
                1 => s.push('ħ'),
                _ => s.push_str(&alloc::format!("ħ^{}", e)),
            }
            f.write_str(&s)?;
            first = false;
        }
        Ok(())
    }
}
