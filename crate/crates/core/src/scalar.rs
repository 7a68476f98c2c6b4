//! Backend-tagged scalar arithmetic.
//!
//! A computation runs entirely on one backend: exact rationals (arbitrary
//! precision, always in lowest terms with positive denominator) or `f64`.
//! Public entry points validate that their inputs share a backend and return
//! [`Error::BackendMismatch`] otherwise; once inside a computation the
//! arithmetic operators assume uniformity and panic on a mix, which would be
//! an internal bug.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Relative tolerance used by every zero test on the float backend.
pub const FLOAT_TOL: f64 = 1e-9;

/// Zero threshold for a float quantity living at magnitude `scale`.
pub fn scaled_tol(scale: f64) -> f64 {
    FLOAT_TOL * (1.0 + scale.abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => write!(f, "rational"),
            Backend::Float => write!(f, "float"),
        }
    }
}

impl Backend {
    pub fn parse(name: &str) -> Result<Backend> {
        match name {
            "rational" => Ok(Backend::Rational),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

/// A single scalar value on one of the two backends.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn zero(backend: Backend) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(BigRational::zero()),
            Backend::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(backend: Backend) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(BigRational::one()),
            Backend::Float => Scalar::Float(1.0),
        }
    }

    pub fn from_int(value: i64, backend: Backend) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(value))),
            Backend::Float => Scalar::Float(value as f64),
        }
    }

    /// `numer / denom` on the requested backend. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64, backend: Backend) -> Scalar {
        assert!(denom != 0, "zero denominator");
        match backend {
            Backend::Rational => {
                Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
            }
            Backend::Float => Scalar::Float(numer as f64 / denom as f64),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    /// Zero test honoring the backend policy: exact for rationals, scaled
    /// tolerance for floats.
    pub fn is_zero_within(&self, scale: f64) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => x.abs() <= scaled_tol(scale),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    /// Exact quotient. Panics on a zero divisor or mixed backends.
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Rational(a / b)
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => panic!("backend mismatch in scalar arithmetic"),
        }
    }

    /// Compares absolute values; both scalars must share a backend.
    pub fn abs_cmp(&self, rhs: &Scalar) -> Ordering {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.abs().cmp(&b.abs()),
            (Scalar::Float(a), Scalar::Float(b)) => {
                a.abs().partial_cmp(&b.abs()).unwrap_or(Ordering::Equal)
            }
            _ => panic!("backend mismatch in scalar comparison"),
        }
    }

    /// Parses a scalar. On the rational backend accepts `p`, `p/q` and plain
    /// integers; on the float backend accepts any decimal literal plus the
    /// same `p/q` form (evaluated in `f64`).
    pub fn parse(text: &str, backend: Backend) -> Result<Scalar> {
        let text = text.trim();
        match backend {
            Backend::Rational => BigRational::from_str(text)
                .map(Scalar::Rational)
                .map_err(|_| Error::Parse(format!("bad rational scalar {text:?}"))),
            Backend::Float => {
                if let Ok(x) = text.parse::<f64>() {
                    return Ok(Scalar::Float(x));
                }
                if let Some((p, q)) = text.split_once('/') {
                    let p: f64 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad float scalar {text:?}")))?;
                    let q: f64 = q
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad float scalar {text:?}")))?;
                    if q == 0.0 {
                        return Err(Error::Parse(format!("zero denominator in {text:?}")));
                    }
                    return Ok(Scalar::Float(p / q));
                }
                Err(Error::Parse(format!("bad float scalar {text:?}")))
            }
        }
    }

    /// Canonical text form: `p` or `p/q` for rationals, the shortest
    /// round-trip decimal for floats.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => format!("{x}"),
        }
    }

    pub fn to_float_backend(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => panic!("backend mismatch in scalar arithmetic"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Checks that all scalars produced by `iter` share `backend`.
pub fn check_backend<'a, I>(iter: I, backend: Backend, what: &'static str) -> Result<()>
where
    I: IntoIterator<Item = &'a Scalar>,
{
    for s in iter {
        if s.backend() != backend {
            return Err(Error::BackendMismatch(what));
        }
    }
    Ok(())
}

/// Largest absolute value in `iter` (as `f64`), used to scale float
/// tolerances. Returns 0 for an empty iterator.
pub fn max_abs_f64<'a, I>(iter: I) -> f64
where
    I: IntoIterator<Item = &'a Scalar>,
{
    iter.into_iter()
        .map(|s| s.to_f64().abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let s = Scalar::ratio(4, -6, Backend::Rational);
        assert_eq!(s.to_text(), "-2/3");
        let t = Scalar::ratio(0, 5, Backend::Rational);
        assert!(t.is_zero());
        assert_eq!(t.to_text(), "0");
    }

    #[test]
    fn parse_round_trips() {
        for text in ["0", "7", "-3", "1/2", "-22/7"] {
            let s = Scalar::parse(text, Backend::Rational).unwrap();
            assert_eq!(s.to_text(), text);
        }
        let f = Scalar::parse("1/4", Backend::Float).unwrap();
        assert_eq!(f, Scalar::Float(0.25));
        assert!(Scalar::parse("x", Backend::Rational).is_err());
        assert!(Scalar::parse("1/0", Backend::Float).is_err());
    }

    #[test]
    fn mixed_backends_are_rejected_at_the_boundary() {
        let scalars = [
            Scalar::from_int(1, Backend::Rational),
            Scalar::Float(2.0),
        ];
        assert!(check_backend(scalars.iter(), Backend::Rational, "test").is_err());
    }

    #[test]
    #[should_panic(expected = "backend mismatch")]
    fn mixed_arithmetic_panics() {
        let a = Scalar::from_int(1, Backend::Rational);
        let b = Scalar::Float(2.0);
        let _ = &a + &b;
    }

    #[test]
    fn arithmetic_is_exact_on_rationals() {
        let third = Scalar::ratio(1, 3, Backend::Rational);
        let sum = &(&third + &third) + &third;
        assert_eq!(sum, Scalar::one(Backend::Rational));
    }

    #[test]
    fn scaled_zero_test() {
        let tiny = Scalar::Float(1e-12);
        assert!(tiny.is_zero_within(1.0));
        let not_tiny = Scalar::Float(1e-6);
        assert!(!not_tiny.is_zero_within(1.0));
        // Exact zero only on the rational backend.
        let r = Scalar::ratio(1, 1_000_000_000_000, Backend::Rational);
        assert!(!r.is_zero_within(1.0));
    }
}
