//! Truncated integer power series and the totient-weighted operators on them.
//!
//! [`rho`] turns the growth series of a rotation-closed, power-closed language
//! into the growth series of its lexicographically least rotation
//! representatives; [`neck`] counts cyclic sequences of blocks drawn from a
//! language. Both are exact and refuse to round: a coefficient that fails to
//! be an integer is reported as an error.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::RationalFunction;

/// Truncation degree used when none is given.
pub const DEFAULT_DEGREE: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("denominator has zero constant term")]
    SingularDenominator,
    #[error("expansion coefficient at degree {0} is not an integer")]
    NonIntegralExpansion(usize),
    #[error("series has nonzero constant term {0}")]
    NonzeroConstantTerm(BigInt),
    #[error("operator output at degree {degree} is not an integer ({value})")]
    NonIntegral { degree: usize, value: String },
    #[error("argument must be a positive integer")]
    NotPositive,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
}

/// Power series truncated at `max_degree`; `coeffs[n]` is the coefficient of `z^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(max_degree: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::zero(); max_degree + 1] }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Series from the given coefficients; `max_degree = coeffs.len() - 1`.
    /// An empty vector is the zero series of degree 0.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn truncate(&self, max_degree: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(max_degree + 1, BigInt::zero());
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> PowerSeries {
        let mut s = self.clone();
        s.coeffs[0] = BigInt::zero();
        s
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Parses a JSON array whose entries are integers or decimal strings.
    pub fn from_json(text: &str) -> Result<PowerSeries, SeriesError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| SeriesError::BadInteger(e.to_string()))?;
        let arr = value.as_array().ok_or_else(|| SeriesError::BadInteger(text.to_string()))?;
        let coeffs = arr
            .iter()
            .map(|v| {
                let s = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    other => other.to_string(),
                };
                s.parse::<BigInt>().map_err(|_| SeriesError::BadInteger(s))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::from_coeffs(coeffs))
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.max_degree().min(rhs.max_degree());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.max_degree().min(rhs.max_degree());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.max_degree().min(rhs.max_degree());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

pub fn series_add(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    a + b
}

pub fn series_mul(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    a * b
}

/// Taylor coefficients of `r` up to degree `n`, via the linear recurrence
/// given by the denominator.
pub fn expand(r: &RationalFunction, n: usize) -> Result<PowerSeries, SeriesError> {
    let num = r.numerator();
    let den = r.denominator();
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(SeriesError::SingularDenominator);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            acc -= den.coeff(j) * &out[k - j];
        }
        let (q, rem) = acc.div_rem(&d0);
        if !rem.is_zero() {
            return Err(SeriesError::NonIntegralExpansion(k));
        }
        out.push(q);
    }
    Ok(PowerSeries { coeffs: out })
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(k: u64) -> Result<u64, SeriesError> {
    if k == 0 {
        return Err(SeriesError::NotPositive);
    }
    let mut n = k;
    let mut phi = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// `f(z^k)`, truncated at the degree of `f`.
pub fn substitute_power(f: &PowerSeries, k: usize) -> Result<PowerSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::NotPositive);
    }
    let n = f.max_degree();
    let mut out = PowerSeries::zero(n);
    for m in 0..=n / k {
        out.coeffs[k * m] = f.coeffs[m].clone();
    }
    Ok(out)
}

fn require_zero_constant(f: &PowerSeries) -> Result<(), SeriesError> {
    if f.coeffs[0].is_zero() {
        Ok(())
    } else {
        Err(SeriesError::NonzeroConstantTerm(f.coeffs[0].clone()))
    }
}

/// `[z^n] rho(f) = (1/n) sum_{k | n} phi(k) [z^{n/k}] f` for `n >= 1`, zero constant term.
pub fn rho(f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    require_zero_constant(f)?;
    let n_max = f.max_degree();
    let mut out = PowerSeries::zero(n_max);
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in (1..=n).filter(|k| n % k == 0) {
            acc += &f.coeffs[n / k] * euler_phi(k as u64)?;
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(SeriesError::NonIntegral {
                degree: n,
                value: BigRational::new(acc, BigInt::from(n)).to_string(),
            });
        }
        out.coeffs[n] = q;
    }
    Ok(out)
}

/// `N(f) = sum_{k,l >= 1} phi(k)/(k l) f(z^k)^l`, evaluated as
/// `sum_k (phi(k)/k) * (-log(1 - f(z^k)))` with exact rational intermediates.
pub fn neck(f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    require_zero_constant(f)?;
    let n_max = f.max_degree();
    let mut total = vec![BigRational::zero(); n_max + 1];
    for k in 1..=n_max {
        let g = substitute_power(f, k)?;
        if g.coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let weight = BigRational::new(BigInt::from(euler_phi(k as u64)?), BigInt::from(k));
        // -log(1 - g) = sum_{l >= 1} g^l / l; g has valuation >= k, so l <= n_max / k.
        let mut power = g.clone();
        for l in 1..=n_max / k {
            if l > 1 {
                power = &power * &g;
            }
            let w = &weight / BigRational::from_integer(BigInt::from(l));
            for (n, c) in power.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    total[n] += &w * BigRational::from_integer(c.clone());
                }
            }
        }
    }
    let coeffs = total
        .into_iter()
        .enumerate()
        .map(|(degree, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(SeriesError::NonIntegral { degree, value: c.to_string() })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PowerSeries { coeffs })
}
