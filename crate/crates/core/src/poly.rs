//! Dense univariate polynomials over the integers and reduced rational
//! functions built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
}

/// Polynomial with ascending-degree coefficients. No trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `d`, which must divide all of them.
    pub fn div_exact(&self, d: &BigInt) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_exact(&c)
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k self = q d + r`, `deg r < deg d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            // r <- lead * r - rl z^(rd-dd) d
            let shifted = Poly::monomial(rl, rd - dd) * d.clone();
            r = r.scale(&lead) - shifted;
        }
        r
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self` over the integers.
    pub fn div_exact_poly(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let lead = d.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            r = r - Poly::monomial(c.clone(), rd - dd) * d.clone();
            q[rd - dd] = c;
        }
        Some(Poly::new(q))
    }

    /// Greatest common divisor over the integers (primitive, positive leading
    /// coefficient, times the gcd of the contents).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Product of the given factors.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(Poly::one(), |acc, f| acc * f.clone())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// A reduced quotient of integer polynomials.
///
/// Canonical form: numerator and denominator share no common factor, the
/// combined coefficient content is 1, and the denominator's constant term is
/// positive (or, when it is zero, its leading coefficient is). Equal rational
/// functions therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den).primitive_part();
        let mut num = num.div_exact_poly(&g).expect("gcd divides numerator");
        let mut den = den.div_exact_poly(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        num = num.div_exact(&c);
        den = den.div_exact(&c);
        let lead = if den.coeff(0).is_zero() { den.leading().unwrap().clone() } else { den.coeff(0) };
        if lead.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    /// Convenience constructor from small coefficients: `num / prod(den_factors)`.
    pub fn from_factors(num: &[i64], den_factors: &[&[i64]]) -> Self {
        let den = den_factors.iter().fold(Poly::one(), |acc, f| acc * Poly::from_i64(f));
        RationalFunction::new(Poly::from_i64(num), den).expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction::new(p, Poly::one()).expect("nonzero")
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: i64) -> Self {
        RationalFunction::from_poly(Poly::from_i64(&[c]))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RationalFunction::one(), |acc, _| acc * self.clone())
    }

    pub fn to_json(&self) -> RationalJson {
        RationalJson {
            num: self.num.coeffs().iter().map(|c| c.to_string()).collect(),
            den: self.den.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &RationalJson) -> Result<Self, RationalError> {
        let parse = |v: &[String]| -> Result<Poly, RationalError> {
            v.iter()
                .map(|s| s.parse::<BigInt>().map_err(|_| RationalError::BadInteger(s.clone())))
                .collect::<Result<Vec<_>, _>>()
                .map(Poly::new)
        };
        RationalFunction::new(parse(&j.num)?, parse(&j.den)?)
    }
}

/// `{"num": [...], "den": [...]}` with ascending-degree decimal coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// Structural equality after canonical reduction.
pub fn rat_eq(a: &RationalFunction, b: &RationalFunction) -> bool {
    a == b
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RationalFunction::new(num, self.den * rhs.den).expect("nonzero")
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        self + (-rhs)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num * rhs.num, self.den * rhs.den).expect("nonzero")
    }
}
