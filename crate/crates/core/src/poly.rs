//! Monic complex polynomials `s^n + Σ (a_j + i b_j) s^(n-j)` and coefficient parsing.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// One complex coefficient `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCoefficient {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexCoefficient {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        let mut c = ComplexCoefficient { re, im };
        if c.re.mode() != c.im.mode() {
            c = c.to_mode(Mode::Float).expect("float conversion is total");
        }
        c
    }

    pub fn real(re: Scalar) -> Self {
        let im = match re.mode() {
            Mode::Exact => Scalar::zero(),
            Mode::Float => Scalar::Float(0.0),
        };
        ComplexCoefficient { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        ComplexCoefficient {
            re: Scalar::from_integer(re),
            im: Scalar::from_integer(im),
        }
    }

    pub fn from_complex64(z: Complex64) -> Self {
        ComplexCoefficient {
            re: Scalar::Float(z.re),
            im: Scalar::Float(z.im),
        }
    }

    pub fn zero() -> Self {
        Self::from_integers(0, 0)
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0)
    }

    pub fn mode(&self) -> Mode {
        if self.re.mode() == Mode::Float || self.im.mode() == Mode::Float {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    pub fn to_mode(&self, mode: Mode) -> Option<Self> {
        Some(ComplexCoefficient {
            re: self.re.to_mode(mode)?,
            im: self.im.to_mode(mode)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexCoefficient {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_f64(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &ComplexCoefficient) -> Option<ComplexCoefficient> {
        if rhs.is_zero() {
            return None;
        }
        let den = rhs.re.square() + rhs.im.square();
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        Some(ComplexCoefficient {
            re: re / &den,
            im: im / &den,
        })
    }

    pub fn scale(&self, k: &Scalar) -> ComplexCoefficient {
        ComplexCoefficient {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

impl<'a> Add<&'a ComplexCoefficient> for &'a ComplexCoefficient {
    type Output = ComplexCoefficient;

    fn add(self, rhs: &'a ComplexCoefficient) -> ComplexCoefficient {
        ComplexCoefficient {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ComplexCoefficient> for &'a ComplexCoefficient {
    type Output = ComplexCoefficient;

    fn sub(self, rhs: &'a ComplexCoefficient) -> ComplexCoefficient {
        ComplexCoefficient {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ComplexCoefficient> for &'a ComplexCoefficient {
    type Output = ComplexCoefficient;

    fn mul(self, rhs: &'a ComplexCoefficient) -> ComplexCoefficient {
        ComplexCoefficient {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &ComplexCoefficient {
    type Output = ComplexCoefficient;

    fn neg(self) -> ComplexCoefficient {
        ComplexCoefficient {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for ComplexCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_neg = self.im.signum().is_lt();
        let im_abs = if im_neg { -&self.im } else { self.im.clone() };
        if self.re.is_zero() {
            let sign = if im_neg { "-" } else { "" };
            write!(f, "{sign}{im_abs}i")
        } else {
            let sign = if im_neg { '-' } else { '+' };
            write!(f, "{}{sign}{im_abs}i", self.re)
        }
    }
}

impl Serialize for ComplexCoefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses a coefficient such as `1+2i`, `-3i`, `4`, `3/2-1/2i` or `0.5e-3-i`.
///
/// Integers, rational literals and decimals whose value is a dyadic rational
/// stay exact; any other decimal makes the coefficient float.
pub fn parse_complex(text: &str) -> Result<ComplexCoefficient> {
    parse_complex_in(text, None)
}

/// Like [`parse_complex`] but with the arithmetic mode forced when `mode` is set.
pub fn parse_complex_in(text: &str, mode: Option<Mode>) -> Result<ComplexCoefficient> {
    let parsed = Parser::new(text, 0).coefficient()?;
    let mode = mode.unwrap_or(if parsed.inexact { Mode::Float } else { Mode::Exact });
    let c = ComplexCoefficient {
        re: Scalar::Exact(parsed.re),
        im: Scalar::Exact(parsed.im),
    };
    Ok(c.to_mode(mode).expect("rationals convert to either mode"))
}

/// Parses a real literal (a coefficient whose imaginary part must be zero).
pub fn parse_real(text: &str, mode: Option<Mode>) -> Result<Scalar> {
    let c = parse_complex_in(text, mode)?;
    if !c.im.is_zero() {
        return Err(Error::Parse {
            position: 0,
            message: format!("expected a real number, got `{}`", text.trim()),
        });
    }
    Ok(c.re)
}

/// Splits a comma-separated coefficient list; positions in errors are
/// offsets into the whole list.
pub fn parse_coefficient_list(text: &str, mode: Option<Mode>) -> Result<Vec<ComplexCoefficient>> {
    let mut out = Vec::new();
    let mut offset = 0;
    let mut inexact = false;
    for part in text.split(',') {
        let parsed = Parser::new(part, offset).coefficient()?;
        inexact |= parsed.inexact;
        out.push(ComplexCoefficient {
            re: Scalar::Exact(parsed.re),
            im: Scalar::Exact(parsed.im),
        });
        offset += part.len() + 1;
    }
    let mode = mode.unwrap_or(if inexact { Mode::Float } else { Mode::Exact });
    Ok(out
        .into_iter()
        .map(|c| c.to_mode(mode).expect("rationals convert to either mode"))
        .collect())
}

struct ParsedCoefficient {
    re: BigRational,
    im: BigRational,
    inexact: bool,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.base + at,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.bytes[start..self.pos]
    }

    fn coefficient(mut self) -> Result<ParsedCoefficient> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.err(self.pos, "empty coefficient");
        }
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        let mut inexact = false;
        let mut first = true;
        while self.peek().is_some() {
            let term_start = self.pos;
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return self.err(self.pos, "expected `+` or `-` between terms"),
            };
            self.skip_ws();
            let number = match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => Some(self.number()?),
                _ => None,
            };
            self.skip_ws();
            let imaginary = self.peek() == Some(b'i');
            if imaginary {
                self.pos += 1;
            }
            let (mut value, term_inexact) = match number {
                Some(v) => v,
                None if imaginary => (BigRational::one(), false),
                None => return self.err(self.pos, "expected a number"),
            };
            if negative {
                value = -value;
            }
            inexact |= term_inexact;
            if !matches!(self.peek(), None | Some(b'+' | b'-') | Some(b' ' | b'\t')) {
                return self.err(self.pos, "unexpected character");
            }
            let misplaced = if imaginary { im.is_some() } else { re.is_some() || im.is_some() };
            if misplaced {
                return self.err(term_start, "duplicate or misplaced term");
            }
            if imaginary {
                im = Some(value);
            } else {
                re = Some(value);
            }
            first = false;
            self.skip_ws();
        }
        Ok(ParsedCoefficient {
            re: re.unwrap_or_else(BigRational::zero),
            im: im.unwrap_or_else(BigRational::zero),
            inexact,
        })
    }

    /// Unsigned decimal or `p/q` literal; the flag marks non-dyadic decimals.
    fn number(&mut self) -> Result<(BigRational, bool)> {
        let start = self.pos;
        let int_part = self.digits();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_at = self.pos;
            let den = self.digits();
            if int_part.is_empty() || den.is_empty() {
                return self.err(den_at, "malformed rational literal");
            }
            let den = to_bigint(den);
            if den.is_zero() {
                return self.err(den_at, "zero denominator");
            }
            return Ok((BigRational::new(to_bigint(int_part), den), false));
        }
        let mut frac: &[u8] = &[];
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int_part.is_empty() && frac.is_empty() {
            return self.err(start, "malformed number");
        }
        let mut exponent: i64 = 0;
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            let exp_negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let exp_at = self.pos;
            let exp_digits = self.digits();
            let parsed = std::str::from_utf8(exp_digits)
                .ok()
                .and_then(|s| s.parse::<i64>().ok())
                .filter(|e| *e <= 4000);
            exponent = match parsed {
                Some(e) if exp_negative => -e,
                Some(e) => e,
                None => return self.err(exp_at, "malformed exponent"),
            };
        }
        let mut mantissa = int_part.to_vec();
        mantissa.extend_from_slice(frac);
        let scale = exponent - frac.len() as i64;
        let ten = BigInt::from(10u32);
        let m = to_bigint(&mantissa);
        let value = if scale >= 0 {
            BigRational::from_integer(m * Pow::pow(&ten, scale as u64))
        } else {
            BigRational::new(m, Pow::pow(&ten, (-scale) as u64))
        };
        let dyadic = is_power_of_two(value.denom());
        Ok((value, !dyadic))
    }
}

fn to_bigint(digits: &[u8]) -> BigInt {
    if digits.is_empty() {
        return BigInt::zero();
    }
    BigInt::parse_bytes(digits, 10).expect("ascii digits")
}

fn is_power_of_two(n: &BigInt) -> bool {
    let mut n = n.clone();
    let two = BigInt::from(2u32);
    while n.is_even() && !n.is_zero() {
        n /= &two;
    }
    n.is_one()
}

/// Abscissa `ξ` of the open half-plane `Re(s) < ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPlaneBound {
    pub xi: Scalar,
}

impl HalfPlaneBound {
    pub fn new(xi: Scalar) -> Self {
        HalfPlaneBound { xi }
    }
}

/// `q(s) = s^n + Σ_{j=1}^{n} (a_j + i b_j) s^(n-j)` with `n ≥ 1`.
///
/// `coeffs[j - 1]` holds `a_j + i b_j`; the leading one is implicit. All
/// parts share one arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<ComplexCoefficient>,
}

impl ComplexPolynomial {
    pub fn from_monic(coeffs: Vec<ComplexCoefficient>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Degenerate(
                "a constant polynomial has no stability table (degree must be at least 1)".into(),
            ));
        }
        let mode = if coeffs.iter().any(|c| c.mode() == Mode::Float) {
            Mode::Float
        } else {
            Mode::Exact
        };
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.to_mode(mode).expect("float conversion is total"))
            .collect();
        Ok(ComplexPolynomial { coeffs })
    }

    /// Monic polynomial with integer parts, `(a_j, b_j)` pairs in order.
    pub fn from_integer_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::from_monic(
            pairs
                .iter()
                .map(|&(a, b)| ComplexCoefficient::from_integers(a, b))
                .collect(),
        )
    }

    /// Real monic polynomial from exact integers `a_1..a_n`.
    pub fn from_real_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_monic(
            coeffs
                .iter()
                .map(|&a| ComplexCoefficient::from_integers(a, 0))
                .collect(),
        )
    }

    /// Divides every trailing coefficient by `leading`.
    pub fn monicize(leading: &ComplexCoefficient, rest: &[ComplexCoefficient]) -> Result<Self> {
        if leading.is_zero() {
            return Err(Error::Degenerate("leading coefficient is zero".into()));
        }
        let coeffs = rest
            .iter()
            .map(|c| c.checked_div(leading).expect("nonzero divisor"))
            .collect();
        Self::from_monic(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ComplexCoefficient] {
        &self.coeffs
    }

    /// `a_j`, 1-based.
    pub fn a(&self, j: usize) -> &Scalar {
        &self.coeffs[j - 1].re
    }

    /// `b_j`, 1-based.
    pub fn b(&self, j: usize) -> &Scalar {
        &self.coeffs[j - 1].im
    }

    pub fn mode(&self) -> Mode {
        self.coeffs[0].mode()
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_mode(mode))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Degenerate("non-finite coefficient".into()))?;
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ComplexCoefficient::is_real)
    }

    /// `b_j → −b_j` for every `j`; the roots are conjugated.
    pub fn conjugate(&self) -> Self {
        ComplexPolynomial {
            coeffs: self.coeffs.iter().map(ComplexCoefficient::conj).collect(),
        }
    }

    /// Coefficients in descending powers including the leading one.
    pub fn to_complex64(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::new(1.0, 0.0))
            .chain(self.coeffs.iter().map(ComplexCoefficient::to_complex64))
            .collect()
    }

    /// Largest coefficient modulus, leading one excluded.
    pub fn max_coefficient_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(ComplexCoefficient::norm_f64)
            .fold(0.0, f64::max)
    }

    /// Horner evaluation in the polynomial's own arithmetic.
    pub fn evaluate(&self, s: &ComplexCoefficient) -> ComplexCoefficient {
        self.coeffs
            .iter()
            .fold(ComplexCoefficient::one(), |acc, c| &(&acc * s) + c)
    }

    pub fn evaluate_f64(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, c| acc * s + c.to_complex64())
    }

    /// `r(t) = q(t + ξ)` by repeated synthetic division.
    pub fn shift_argument(&self, bound: &HalfPlaneBound) -> Self {
        let n = self.degree();
        let xi = ComplexCoefficient::real(bound.xi.clone());
        let mut c: Vec<ComplexCoefficient> = std::iter::once(ComplexCoefficient::one())
            .chain(self.coeffs.iter().cloned())
            .collect();
        for i in 0..n {
            for j in 1..=n - i {
                let carry = &c[j - 1] * &xi;
                c[j] = &c[j] + &carry;
            }
        }
        c.remove(0);
        Self::from_monic(c).expect("degree preserved")
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
