//! Laurent polynomials `Q[t, t^-1]` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Sparse exponent -> coefficient map. Zero coefficients are never stored, so
/// structural equality is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^n`
    pub fn monomial(c: Rational, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Self { terms }
    }

    /// `t^n`
    pub fn t_pow(n: i64) -> Self {
        Self::monomial(rational::one(), n)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (n, c) in terms {
            p.add_term(n, c);
        }
        p
    }

    pub fn add_term(&mut self, n: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn coeff(&self, n: i64) -> Rational {
        self.terms.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(n, a)| (*n, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m + n, a * b);
            }
        }
        out
    }

    /// Exact value at `c`. Fails when `c = 0` and a negative power is present.
    pub fn eval(&self, c: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (n, a) in &self.terms {
            acc += a * rational::pow(c, *n)?;
        }
        Ok(acc)
    }
}

/// Lagrange interpolation basis `p_i(t) = prod_{j != i} (t - d_j)/(d_i - d_j)`.
pub fn lagrange_basis(points: &[Rational]) -> Result<Vec<LaurentPoly>> {
    validate_points(points)?;
    let mut basis = Vec::with_capacity(points.len());
    for (i, di) in points.iter().enumerate() {
        let mut p = LaurentPoly::one();
        for (j, dj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = (di - dj).recip();
            let factor = LaurentPoly::from_terms([(1, denom.clone()), (0, -(dj * &denom))]);
            p = p.mul(&factor);
        }
        basis.push(p);
    }
    Ok(basis)
}

/// `prod_j (t - d_j)`, the generator of the kernel ideal of evaluation.
pub fn vanishing_poly(points: &[Rational]) -> LaurentPoly {
    points.iter().fold(LaurentPoly::one(), |acc, d| {
        acc.mul(&LaurentPoly::from_terms([(1, rational::one()), (0, -d.clone())]))
    })
}

/// Evaluation points must be nonzero and pairwise distinct.
pub fn validate_points(points: &[Rational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidPoints("no evaluation points".into()));
    }
    for (i, d) in points.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::InvalidPoints(format!("point {} is zero", i + 1)));
        }
        if let Some(j) = points[..i].iter().position(|e| e == d) {
            return Err(Error::InvalidPoints(format!(
                "points {} and {} coincide ({})",
                j + 1,
                i + 1,
                rational::format(d)
            )));
        }
    }
    Ok(())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-rational::one())
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `-t^3 + 1 + 2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (n, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let var = match *n {
                0 => None,
                1 => Some("t".to_string()),
                n => Some(format!("t^{n}")),
            };
            match var {
                None => write!(f, "{}", rational::format(&mag))?,
                Some(v) if mag.is_one() => write!(f, "{v}")?,
                Some(v) => write!(f, "{}*{v}", rational::format(&mag))?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse_laurent(s, &Default::default())
    }
}
