//! Exact rational scalars and small vector helpers.
//!
//! All geometry in this crate is computed over arbitrary-precision rationals;
//! no floating point enters any decision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

pub type Rational = num_rational::BigRational;

/// `rat(p, q)` builds `p/q`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"` with optional leading sign. Any other shape
/// (decimal points, exponents, whitespace) is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        let body = t.strip_prefix(['+', '-']).unwrap_or(t);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let p = parse_int(num)?;
    let q = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact rational literal: {0:?} (expected \"p\" or \"p/q\")")]
pub struct ParseRationalError(pub String);

/// Renders `p/q` in lowest terms, or just `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let mut out = String::from("(");
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", fmt_rational(c));
    }
    out.push(')');
    out
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(t: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| t * x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Sum of absolute values. Dual norm of the max norm; used for ball margins.
pub fn l1_norm(a: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for x in a {
        acc += x.abs();
    }
    acc
}

/// Scales a vector by the positive rational that makes all entries integers
/// with content one. Preserves direction; canonical form for rays and row
/// normals.
pub fn normalize_content(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let mut lcm_den = BigInt::one();
    for x in v {
        lcm_den = lcm_den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm_den / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    ints.into_iter().map(Rational::from_integer).map(|x| x / Rational::from_integer(gcd.clone())).collect()
}

/// `true` when `b` is a strictly positive multiple of `a`.
pub fn same_direction(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    normalize_content(a) == normalize_content(b)
}
