//! Exact-rational and floating-point scalars with tolerance-aware sign tests.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Default relative tolerance for float-mode sign tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Arithmetic regime of a value or of a whole polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
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

/// Relative tolerance used when classifying float-mode signs.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    /// Returns `None` for negative or non-finite values.
    pub fn new(tau: f64) -> Option<Self> {
        (tau.is_finite() && tau >= 0.0).then_some(Tolerance(tau))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

/// Outcome of a robust sign test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    Positive,
    Negative,
    ZeroOrUncertain,
}

impl Neg for SignClass {
    type Output = SignClass;

    fn neg(self) -> SignClass {
        match self {
            SignClass::Positive => SignClass::Negative,
            SignClass::Negative => SignClass::Positive,
            SignClass::ZeroOrUncertain => SignClass::ZeroOrUncertain,
        }
    }
}

/// A real number held either as a reduced big rational or as an `f64`.
///
/// Mixed arithmetic demotes to float. Equality is numeric, so `Exact(1/2)`
/// equals `Float(0.5)`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact `num / den`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Exact rational value; every finite float converts without loss.
    pub fn to_exact(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(q) => Some(q.clone()),
            Scalar::Float(x) => BigRational::from_float(*x),
        }
    }

    pub fn to_mode(&self, mode: Mode) -> Option<Scalar> {
        match mode {
            Mode::Exact => self.to_exact().map(Scalar::Exact),
            Mode::Float => Some(Scalar::Float(self.to_f64())),
        }
    }

    /// Exact sign in exact mode, sign of the stored float otherwise.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Exact(q) => q.cmp(&BigRational::zero()),
            Scalar::Float(x) => x.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }
}

/// Classifies `x` against the band `[-τ·scale, τ·scale]`.
///
/// In exact mode the band collapses to `{0}` and `scale` is ignored.
pub fn robust_sign(x: &Scalar, scale: f64, tol: Tolerance) -> SignClass {
    match x {
        Scalar::Exact(q) => {
            if q.is_positive() {
                SignClass::Positive
            } else if q.is_negative() {
                SignClass::Negative
            } else {
                SignClass::ZeroOrUncertain
            }
        }
        Scalar::Float(v) => float_sign(*v, scale, tol),
    }
}

pub(crate) fn float_sign(v: f64, scale: f64, tol: Tolerance) -> SignClass {
    let threshold = tol.value() * scale.max(0.0);
    // NaN falls through to uncertain
    if v > threshold {
        SignClass::Positive
    } else if v < -threshold {
        SignClass::Negative
    } else {
        SignClass::ZeroOrUncertain
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (a, b) => match (a.to_exact(), b.to_exact()) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            },
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Exact(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => fmt_float(*x, f),
        }
    }
}

fn fmt_float(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let a = x.abs();
    if a == 0.0 || (1e-6..1e16).contains(&a) || !a.is_finite() {
        write!(f, "{x}")
    } else {
        write!(f, "{x:e}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(q) => s.collect_str(q),
            Scalar::Float(x) => s.serialize_f64(*x),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
// Exact division by zero panics inside num-rational; callers check first.
scalar_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}
