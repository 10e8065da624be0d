//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is stored as `0/1`.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Schema(format!("not an exact fraction: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical text: `"3"`, `"-1/2"`.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q^n` for any integer `n`; negative powers require `q != 0`.
pub fn pow(q: &Rational, n: i64) -> Result<Rational> {
    if n >= 0 {
        Ok(num::pow::pow(q.clone(), n as usize))
    } else if q.is_zero() {
        Err(Error::EvalAtZero)
    } else {
        Ok(num::pow::pow(q.recip(), n.unsigned_abs() as usize))
    }
}

pub fn sign(negative: bool) -> Rational {
    if negative {
        -one()
    } else {
        one()
    }
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert_eq!(format(&frac(-2, 4)), "-1/2");
        assert_eq!(format(&frac(0, 5)), "0");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = frac(0, -9);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        let q = frac(3, -6);
        assert!(q.denom() > &BigInt::from(0));
        assert_eq!(q, frac(-1, 2));
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&int(2), -2).unwrap(), frac(1, 4));
        assert_eq!(pow(&int(0), 0).unwrap(), int(1));
        assert_eq!(pow(&int(0), -1), Err(Error::EvalAtZero));
    }
}
