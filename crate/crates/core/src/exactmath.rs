//! Exact rationals, integer polynomials and the small number-theoretic
//! helpers used throughout the crate.
//!
//! Nothing here rounds. [`Rational`] wraps an arbitrary precision fraction in
//! lowest terms, [`IntPolynomial`] stores arbitrary precision coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator`.
    ///
    /// Panics if `denominator` is zero; use [`Rational::try_new`] for
    /// untrusted input.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Self::try_new(numerator, denominator).expect("zero denominator")
    }

    pub fn try_new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The fractional part `r - floor(r)`, in `[0, 1)`.
    pub fn frac(&self) -> Rational {
        Rational(&self.0 - BigRational::from_integer(self.floor()))
    }

    /// Representative of `r mod 1` in `(0, 1]`; integers map to 1.
    pub fn unit_interval(&self) -> Rational {
        let f = self.frac();
        if f.is_zero() {
            Rational::one()
        } else {
            f
        }
    }

    /// Denominator as a machine integer; the values handled by this crate
    /// (elements of hypergeometric data) always fit.
    pub fn denom_u64(&self) -> u64 {
        self.denom().to_u64().expect("denominator exceeds u64")
    }

    pub fn scale(&self, k: i64) -> Rational {
        Rational(&self.0 * BigInt::from(k))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// `{r} = r - floor(r)`.
pub fn frac(r: &Rational) -> Rational {
    r.frac()
}

fn frac_sum_holds(r: &Rational) -> bool {
    let lhs = r.frac() + (-r).frac();
    let expected = if r.is_integer() {
        Rational::zero()
    } else {
        Rational::one()
    };
    lhs == expected
}

fn multiplication_formula_holds(r: &Rational, m: i64) -> bool {
    // {rm} = sum_{i=1..m} {r + i/m} - (m-1)/2
    let lhs = r.scale(m).frac();
    let mut rhs = Rational::new(-(m - 1), 2);
    for i in 1..=m {
        rhs += (r + &Rational::new(i, m)).frac();
    }
    lhs == rhs
}

/// Checks `{r} + {-r} = [r not in Z]` and the fractional multiplication
/// formula `{rm} = sum_i {r + i/m} - (m-1)/2` for every `m` in `1..=12`.
pub fn frac_sum_identity_check(r: &Rational) -> bool {
    frac_sum_holds(r) && (1..=12).all(|m| multiplication_formula_holds(r, m))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `sum_{i=0..n} (-1)^i C(n,i) C(n-1+k-i, n-1)`, which is `[k = 0]`.
///
/// The second binomial is the number of weight `k - i` points of a unimodular
/// `n`-dimensional simplicial cone, so it vanishes when `k - i < 0`.
pub fn chu_vandermonde(n: u64, k: u64) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    let mut total = BigInt::zero();
    for i in 0..=n {
        let rest = k - i;
        if rest < 0 {
            continue;
        }
        let term = binomial(n, i) * simplex_count(n, rest);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Number of monomials of degree `k` in `n` variables, `C(n-1+k, n-1)`,
/// with the convention that the zero-dimensional count is `[k = 0]`.
fn simplex_count(n: i64, k: i64) -> BigInt {
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(n - 1 + k, n - 1)
}

/// The Möbius function.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                Rational::try_new(num, den)
            }
            None => Ok(Rational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Polynomial in one variable with arbitrary precision integer coefficients.
///
/// Coefficient `i` belongs to `x^i`. Trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `1 + x + ... + x^(m-1)`; zero when `m = 0`.
    pub fn geometric(m: usize) -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::one(); m])
    }

    /// `(1 - x)^m`.
    pub fn one_minus_x_pow(m: usize) -> Self {
        let coeffs = (0..=m)
            .map(|i| {
                let c = binomial(m as i64, i as i64);
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Coefficients as machine integers, padded with zeros to `len` entries.
    /// Returns `None` if a coefficient does not fit or the polynomial has
    /// degree `>= len`.
    pub fn to_i64_padded(&self, len: usize) -> Option<Vec<i64>> {
        if self.coeffs.len() > len {
            return None;
        }
        let mut out = vec![0i64; len];
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            *slot = c.to_i64()?;
        }
        Some(out)
    }

    /// Adds `c * x^k` in place.
    pub fn add_term(&mut self, k: usize, c: impl Into<BigInt>) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c.into();
        self.trim();
    }

    /// Exact division by `(1 - x)`. Fails if the remainder is nonzero.
    pub fn div_one_minus_x(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        // p(x) = (1 - x) q(x)  <=>  q_k = sum_{i<=k} p_i, with p(1) = 0.
        let mut quotient = Vec::with_capacity(self.coeffs.len());
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc += c;
            quotient.push(acc.clone());
        }
        let remainder = quotient.pop().unwrap_or_default();
        if !remainder.is_zero() {
            return Err(Error::InexactDivision(format!(
                "{self} is not divisible by (1 - x)"
            )));
        }
        Ok(IntPolynomial::from_coeffs(quotient))
    }

    /// Exact division by `(1 - x)^m`.
    pub fn div_one_minus_x_pow(&self, m: usize) -> Result<IntPolynomial> {
        let mut q = self.clone();
        for _ in 0..m {
            q = q.div_one_minus_x()?;
        }
        Ok(q)
    }

    /// First `terms` coefficients of the power series `self / (1 - x)^m`.
    pub fn series_over_one_minus_x_pow(&self, m: usize, terms: usize) -> Vec<BigInt> {
        let m = m as i64;
        (0..terms)
            .map(|k| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i <= k)
                    .map(|(i, c)| c * simplex_count(m, (k - i) as i64))
                    .sum()
            })
            .collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPolynomial {
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
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        *self = &*self + rhs;
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
