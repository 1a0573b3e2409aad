//! Small helpers around `BigRational`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SpinError;

pub type Rational = BigRational;

/// `n/d` as a rational. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational, SpinError> {
    let bad = || SpinError::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Always `p/q` in lowest terms, including integers (`7/1`).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale down huge operands so the quotient stays finite.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let nf = big_to_f64(&(n >> shift));
    let df = big_to_f64(&(d >> shift));
    if df == 0.0 {
        return if nf.is_sign_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    nf / df
}

fn big_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::NAN)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(BigInt::from(binomial(n, k)))
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
