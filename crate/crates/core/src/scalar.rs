//! Exact scalars: canonical big rationals, binomial coefficients and 2×2
//! rational matrices.
//!
//! Every [`Rational`] is kept in lowest terms with a positive denominator, so
//! structural equality is numeric equality and the text form is unique.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

/// Builds `num/den` in lowest terms.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
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

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Rational> {
        let e = u32::try_from(exp.unsigned_abs()).map_err(|_| Error::Overflow(format!("exponent {exp}")))?;
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = num_traits::pow::Pow::pow(self.numer(), e);
        let den = num_traits::pow::Pow::pow(self.denom(), e);
        // Powers of coprime values stay coprime, so no reduction is needed.
        let r = if exp < 0 {
            BigRational::new_raw(den, num)
        } else {
            BigRational::new_raw(num, den)
        };
        Ok(Rational(normalize_sign(r)))
    }

    /// `(-1)^e`, evaluated by parity.
    pub fn sign_power(e: i64) -> Rational {
        if e.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Number of decimal digits in the numerator (sign excluded).
    pub fn numer_digits(&self) -> usize {
        let s = self.numer().abs().to_str_radix(10);
        s.len()
    }
}

fn normalize_sign(r: BigRational) -> BigRational {
    if r.denom().is_negative() {
        let (n, d) = r.into_raw();
        BigRational::new_raw(-n, -d)
    } else {
        r
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
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

    /// Accepts `n` or `n/d`; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let parse_int = |x: &str| -> Result<BigInt> {
            let x = x.trim();
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(t)?)),
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Rational::new(parse_int(n)?, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

// Integer operands skip the gcd reduction, which dominates grid sweeps.
fn int_or(
    a: &Rational,
    b: &Rational,
    int: fn(&BigInt, &BigInt) -> BigInt,
    rat: fn(&BigRational, &BigRational) -> BigRational,
) -> Rational {
    if a.0.is_integer() && b.0.is_integer() {
        Rational(BigRational::from_integer(int(a.0.numer(), b.0.numer())))
    } else {
        Rational(rat(&a.0, &b.0))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                int_or(self, rhs, |a, b| $tr::$method(a, b), |a, b| $tr::$method(a, b))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $tr::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
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

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Binomial coefficient `C(k, j)`; zero when `j` lies outside `[0, k]`.
pub fn binom(k: i64, j: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::NegativeBinomial(k));
    }
    if j < 0 || j > k {
        return Ok(Rational::zero());
    }
    let j = j.min(k - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= BigUint::from((k - i) as u64);
        acc = acc.div_floor(&BigUint::from((i + 1) as u64));
    }
    Ok(Rational::from_integer(BigInt::from(acc)))
}

/// `[C(k, 0), ..., C(k, k)]`.
pub fn binom_row(k: i64) -> Result<Vec<Rational>> {
    if k < 0 {
        return Err(Error::NegativeBinomial(k));
    }
    let mut row = Vec::with_capacity(k as usize + 1);
    let mut acc = BigUint::one();
    for j in 0..=k {
        row.push(Rational::from_integer(BigInt::from(acc.clone())));
        acc *= BigUint::from((k - j) as u64);
        acc = acc.div_floor(&BigUint::from((j + 1) as u64));
    }
    Ok(row)
}

/// 2×2 matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
}

impl Mat2 {
    pub fn new(a11: Rational, a12: Rational, a21: Rational, a22: Rational) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Mat2::new(Rational::one(), Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn determinant(&self) -> Rational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.determinant();
        let inv = det.recip().map_err(|_| Error::SingularMatrix)?;
        Ok(Mat2::new(
            &self.a22 * &inv,
            -(&self.a12 * &inv),
            -(&self.a21 * &inv),
            &self.a11 * &inv,
        ))
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a11 * &rhs.a11 + &self.a12 * &rhs.a21,
            &self.a11 * &rhs.a12 + &self.a12 * &rhs.a22,
            &self.a21 * &rhs.a11 + &self.a22 * &rhs.a21,
            &self.a21 * &rhs.a12 + &self.a22 * &rhs.a22,
        )
    }

    fn square(&self) -> Mat2 {
        // a12·a21 is shared by both diagonal entries.
        let cross = &self.a12 * &self.a21;
        let trace = &self.a11 + &self.a22;
        Mat2::new(
            &self.a11 * &self.a11 + &cross,
            &self.a12 * &trace,
            &self.a21 * &trace,
            &self.a22 * &self.a22 + &cross,
        )
    }
}

/// `m^n` by binary exponentiation; negative `n` goes through the inverse.
/// The entries' common denominator `D` is factored out first, so the
/// squarings run on the integer matrix `D·m` and only the final scaling by
/// `D^-n` touches fractions.
pub fn mat_pow(m: &Mat2, n: i64) -> Result<Mat2> {
    let base = if n < 0 { m.inverse()? } else { m.clone() };
    let e = n.unsigned_abs();
    if e == 0 {
        return Ok(Mat2::identity());
    }
    let entries = [&base.a11, &base.a12, &base.a21, &base.a22];
    let d = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rational::from_integer(d.clone());
    let base = if d.is_one() {
        base
    } else {
        Mat2::new(
            &base.a11 * &scale,
            &base.a12 * &scale,
            &base.a21 * &scale,
            &base.a22 * &scale,
        )
    };
    // Left-to-right so every step multiplies by the small base matrix.
    let top = 63 - e.leading_zeros();
    let mut acc = base.clone();
    for bit in (0..top).rev() {
        acc = acc.square();
        if (e >> bit) & 1 == 1 {
            acc = acc.mul(&base);
        }
    }
    if d.is_one() {
        return Ok(acc);
    }
    let undo = Rational(BigRational::new(BigInt::one(), num_traits::pow(d, e as usize)));
    Ok(Mat2::new(
        &acc.a11 * &undo,
        &acc.a12 * &undo,
        &acc.a21 * &undo,
        &acc.a22 * &undo,
    ))
}
