//! Coefficient fields.
//!
//! Two arithmetic modes are supported: exact Gaussian rationals and
//! double-precision complex numbers. Generic code is written against the
//! [`Field`] trait and the mode is fixed by the type parameter, so a single
//! computation can never mix the two. [`Scalar`] is the type-erased carrier
//! used at the edges (reports, file formats, bindings), where mixing is
//! reported as an error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;

pub type GaussianRational = Complex<BigRational>;
pub type Complex64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidArgument(format!(
                "unknown arithmetic mode `{other}` (expected `exact` or `float`)"
            ))),
        }
    }
}

/// A commutative field of complex coefficients with conjugation.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn from_gaussian(z: &GaussianRational) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Exact zero test. Storage drops exactly-zero coefficients only.
    fn is_zero(&self) -> bool;
    fn modulus(&self) -> f64;
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;
    /// Sign of the real part. In float mode `|re| <= 1e-12 * scale` counts as zero.
    fn re_sign(&self, scale: f64) -> Ordering;
    /// Zero in exact mode; below `1e-9 * scale` in float mode.
    fn is_negligible(&self, scale: f64) -> bool;
    /// Hermitian-symmetry comparison: exact equality, or `1e-12` relative in float mode.
    fn hermitian_eq(&self, other: &Self, scale: f64) -> bool;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Result<Self, Error>;

    fn from_int(k: i64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(k)))
    }

    fn is_real(&self, scale: f64) -> bool {
        (Self::imag_unit() * (self.clone() - self.conj())).is_negligible(scale)
    }
}

impl Field for GaussianRational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn from_gaussian(z: &GaussianRational) -> Self {
        z.clone()
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &norm, -(&self.im / &norm)))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn modulus(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64().unwrap_or(f64::NAN)
    }

    fn re_sign(&self, _scale: f64) -> Ordering {
        if self.re.is_zero() {
            Ordering::Equal
        } else if self.re.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        Field::is_zero(self)
    }

    fn hermitian_eq(&self, other: &Self, _scale: f64) -> bool {
        self == other
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Result<Self, Error> {
        match s {
            Scalar::Exact(z) => Ok(z.clone()),
            Scalar::Float(_) => Err(Error::ModeMismatch {
                expected: Mode::Exact,
                found: Mode::Float,
            }),
        }
    }
}

impl Field for Complex64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }

    fn imag_unit() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_gaussian(z: &GaussianRational) -> Self {
        Complex::new(
            z.re.to_f64().unwrap_or(f64::NAN),
            z.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Complex::inv(self))
        }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }

    fn re_sign(&self, scale: f64) -> Ordering {
        if self.re.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            Ordering::Equal
        } else if self.re > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
    }

    fn hermitian_eq(&self, other: &Self, scale: f64) -> bool {
        (self - other).norm() <= 1e-12 * scale.max(1.0)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }

    fn from_scalar(s: &Scalar) -> Result<Self, Error> {
        match s {
            Scalar::Float(z) => Ok(*z),
            Scalar::Exact(_) => Err(Error::ModeMismatch {
                expected: Mode::Float,
                found: Mode::Exact,
            }),
        }
    }
}

pub fn gaussian(re: i64, im: i64) -> GaussianRational {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"-1.5e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-shift) as usize))
    };
    Some(value)
}

/// A coefficient tagged with its arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(z) => Field::is_zero(z),
            Scalar::Float(z) => Field::is_zero(z),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(Field::conj(z)),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            Scalar::Exact(z) => (z.re_f64(), z.im_f64()),
            Scalar::Float(z) => (z.re, z.im),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&GaussianRational, &GaussianRational) -> GaussianRational,
        float: impl FnOnce(Complex64, Complex64) -> Complex64,
    ) -> Result<Scalar, Error> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(exact(a, b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            (a, b) => Err(Error::ModeMismatch {
                expected: a.mode(),
                found: b.mode(),
            }),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.binary(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.binary(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.binary(other, |a, b| a * b, |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(z) => {
                if z.im.is_zero() {
                    write!(f, "{}", z.re)
                } else if z.re.is_zero() {
                    write!(f, "{}i", z.im)
                } else if z.im.is_negative() {
                    write!(f, "{} - {}i", z.re, -z.im.clone())
                } else {
                    write!(f, "{} + {}i", z.re, z.im)
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{} {} {}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
                }
            }
        }
    }
}

/// `[re, im]`, with exact parts written as rational strings.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        match self {
            Scalar::Exact(z) => {
                tup.serialize_element(&z.re.to_string())?;
                tup.serialize_element(&z.im.to_string())?;
            }
            Scalar::Float(z) => {
                tup.serialize_element(&z.re)?;
                tup.serialize_element(&z.im)?;
            }
        }
        tup.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3"), Some(ratio(3, 1)));
        assert_eq!(parse_rational("-1/2"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5e-2"), Some(ratio(-3, 200)));
        assert_eq!(parse_rational("1e2"), Some(ratio(100, 1)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn cross_mode_arithmetic_is_an_error() {
        let a = Scalar::Exact(gaussian(1, 0));
        let b = Scalar::Float(Complex::new(1.0, 0.0));
        assert!(matches!(a.checked_add(&b), Err(Error::ModeMismatch { .. })));
        assert!(matches!(b.checked_mul(&a), Err(Error::ModeMismatch { .. })));
        assert_eq!(a.checked_add(&a).unwrap(), Scalar::Exact(gaussian(2, 0)));
    }

    #[test]
    fn gaussian_inverse() {
        let z = gaussian(1, 2);
        let w = Field::inv(&z).unwrap();
        assert_eq!(z * w, <GaussianRational as Field>::one());
        assert!(Field::inv(&<GaussianRational as Field>::zero()).is_none());
    }

    #[test]
    fn from_scalar_rejects_wrong_mode() {
        let s = Scalar::Float(Complex::new(0.5, 0.0));
        assert!(GaussianRational::from_scalar(&s).is_err());
        assert_eq!(Complex64::from_scalar(&s).unwrap(), Complex::new(0.5, 0.0));
    }

    #[test]
    fn scalar_serializes_as_pair() {
        let s = Scalar::Exact(Complex::new(ratio(3, 4), ratio(-1, 1)));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["3/4","-1"]"#);
        let f = Scalar::Float(Complex::new(0.5, 0.0));
        assert_eq!(serde_json::to_string(&f).unwrap(), "[0.5,0.0]");
    }
}
