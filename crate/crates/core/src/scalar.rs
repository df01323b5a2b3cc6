//! Scalar modes: binary64 floats for fuzzing, arbitrary-precision rationals
//! for exact identity checks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Rational,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Float => "float",
            Mode::Rational => "rational",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            other => Err(usage(format!("unknown mode `{other}` (expected float|rational)"))),
        }
    }
}

/// Field of coordinates and weights.
///
/// Every algebraic routine in the crate is generic over this trait; in
/// rational mode the same code produces residuals that are exactly zero.
pub trait Scalar: Clone + fmt::Debug + PartialOrd + Signed + Send + Sync + 'static {
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    /// `mantissa / 2^exponent`, exact in both modes for mantissas below 2⁵³.
    fn from_dyadic(mantissa: u64, exponent: u32) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// The exact value, when the mode has one.
    fn as_exact(&self) -> Option<&BigRational>;

    /// Token in the point-file syntax of this mode.
    fn to_token(&self) -> String;

    /// Finite (float) / well-formed (rational).
    fn is_valid(&self) -> bool;

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_dyadic(mantissa: u64, exponent: u32) -> Self {
        mantissa as f64 * 2f64.powi(-(exponent as i32))
    }

    fn from_rational(r: &BigRational) -> Self {
        num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_exact(&self) -> Option<&BigRational> {
        None
    }

    fn to_token(&self) -> String {
        let a = self.abs();
        if a != 0.0 && !(1e-5..1e16).contains(&a) {
            format!("{self:e}")
        } else {
            format!("{self}")
        }
    }

    fn is_valid(&self) -> bool {
        self.is_finite()
    }

    fn half(&self) -> Self {
        self * 0.5
    }
}

impl Scalar for BigRational {
    const MODE: Mode = Mode::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_dyadic(mantissa: u64, exponent: u32) -> Self {
        BigRational::new(BigInt::from(mantissa), BigInt::from(1u8) << exponent)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_exact(&self) -> Option<&BigRational> {
        Some(self)
    }

    fn to_token(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn is_valid(&self) -> bool {
        !self.denom().is_zero()
    }
}

/// Sign of `a + b·√5` decided over the rationals.
///
/// Same-signed terms decide immediately; otherwise the radical is isolated
/// and squares are compared, so no irrational value is ever approximated.
pub fn sign_plus_sqrt5(a: &BigRational, b: &BigRational) -> Ordering {
    let zero = BigRational::zero();
    let sa = a.cmp(&zero);
    let sb = b.cmp(&zero);
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        _ => {
            let a_sq = a * a;
            let five_b_sq = b * b * BigRational::from_i64(5);
            if sa == Ordering::Greater {
                a_sq.cmp(&five_b_sq)
            } else {
                five_b_sq.cmp(&a_sq)
            }
        }
    }
}

/// `|residual| / (1 + largest |term|)`, the scale-free comparison used for
/// every float check.
pub fn relative_residual(residual: f64, terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    residual.abs() / (1.0 + scale)
}

/// Threshold for identity and recurrence residuals.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Threshold for values computed directly from coordinates.
pub const VALUE_TOLERANCE: f64 = 1e-12;

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
