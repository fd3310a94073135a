//! Dual-mode scalars.
//!
//! Algorithms are written once against [`Field`], which is implemented for
//! exact big rationals and for `f64`. [`Scalar`] is the dynamically tagged
//! value used at API boundaries; combining two scalars of different modes is
//! an error rather than a silent coercion.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which a float determinant counts as zero.
pub const FLOAT_ZERO_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

/// Arithmetic needed by the determinant, flag and Möbius code.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn to_f64(&self) -> f64;

    /// Zero test. Exact mode is literal; float mode compares against
    /// `FLOAT_ZERO_RTOL * scale`.
    fn is_negligible(&self, scale: f64) -> bool;

    /// Determinant of a square matrix given as rows.
    fn determinant(rows: &[Vec<Self>]) -> Self;

    fn into_scalar(self) -> Scalar;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn signum_i32(&self) -> i32 {
        let v = self.to_f64();
        if self.is_zero() {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    }
}

impl Field for BigRational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        // Large numerators and denominators overflow `f64` individually.
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn determinant(rows: &[Vec<Self>]) -> Self {
        super::matrix::bareiss_rational(rows)
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Exact(self)
    }

    fn signum_i32(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Field for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_ZERO_RTOL * scale
    }

    fn determinant(rows: &[Vec<Self>]) -> Self {
        super::matrix::lu_det(rows)
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Float(self)
    }
}

/// A real number that is either an exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn exact_int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_i64(v))
    }

    pub fn exact_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        Ok(Scalar::Exact(BigRational::new(num.into(), den.into())))
    }

    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(BigRational::zero()),
            ScalarMode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(BigRational::one()),
            ScalarMode::Float => Scalar::Float(1.0),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => Field::to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    /// Converts an exact value to float mode; floats are returned unchanged.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q.clone()),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> Result<BigRational>,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => exact(a, b).map(Scalar::Exact),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            _ => Err(Error::MixedModes(self.mode(), other.mode())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a + b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a - b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a * b), |a, b| a * b)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(
            other,
            |a, b| {
                if b.is_zero() {
                    Err(Error::Degenerate("division by zero".into()))
                } else {
                    Ok(a / b)
                }
            },
            |a, b| a / b,
        )
    }
}

impl fmt::Display for Scalar {
    /// Exact values print as `p/q` (or `p`), floats with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{}", format_f64(*x)),
        }
    }
}

/// Formats a double with 17 significant digits, which round-trips exactly.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{:.16e}", x)
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => s.serialize_str(&self.to_string()),
            Scalar::Float(x) => s.serialize_f64(*x),
        }
    }
}
