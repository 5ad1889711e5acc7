//! Extended reals `[0, ∞]` and exponent values in `[1, ∞]`.
//!
//! Infinity is an explicit tag. The conventions `1/∞ = 0`, `λ^{1/∞} = 1` and
//! `1^∞ = 0` are case splits in the code that consumes these types, never
//! limits of large floats.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

/// A value in `ℝ ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinity,
}

impl Extended {
    pub const ZERO: Extended = Extended::Finite(0.0);

    /// Maps a float to an extended real; `+inf` becomes [`Extended::Infinity`].
    ///
    /// Used at the boundary where a finite computation overflowed.
    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            Extended::Infinity
        } else {
            Extended::Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinity)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    /// `true` when the value is `≤ bound`.
    pub fn le(self, bound: f64) -> bool {
        match self {
            Extended::Finite(x) => x <= bound,
            Extended::Infinity => false,
        }
    }

    pub fn max(self, other: Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.max(b)),
            _ => Extended::Infinity,
        }
    }
}

impl Add for Extended {
    type Output = Extended;

    fn add(self, rhs: Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::from_f64(a + b),
            _ => Extended::Infinity,
        }
    }
}

impl core::iter::Sum for Extended {
    fn sum<I: Iterator<Item = Extended>>(iter: I) -> Extended {
        let mut acc = 0.0;
        for v in iter {
            match v {
                Extended::Finite(x) => acc += x,
                Extended::Infinity => return Extended::Infinity,
            }
        }
        Extended::from_f64(acc)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.partial_cmp(b),
            (Extended::Finite(_), Extended::Infinity) => Some(Ordering::Less),
            (Extended::Infinity, Extended::Finite(_)) => Some(Ordering::Greater),
            (Extended::Infinity, Extended::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl From<f64> for Extended {
    fn from(x: f64) -> Self {
        Extended::Finite(x)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// An exponent value in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Reciprocal with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Inverse of [`Exponent::recip`]: `0 ↦ ∞`.
    pub fn from_recip(r: f64) -> Exponent {
        if r == 0.0 {
            Exponent::Infinity
        } else {
            Exponent::Finite(1.0 / r)
        }
    }

    /// The conjugate exponent, `1/p + 1/p′ = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(1.0 / (1.0 - 1.0 / p)),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    /// Orders exponents with `∞` above every finite value.
    pub fn max(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a.max(b)),
            _ => Exponent::Infinity,
        }
    }

    pub fn min(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a.min(b)),
            (Exponent::Finite(a), Exponent::Infinity)
            | (Exponent::Infinity, Exponent::Finite(a)) => Exponent::Finite(a),
            (Exponent::Infinity, Exponent::Infinity) => Exponent::Infinity,
        }
    }
}

impl From<Exponent> for Extended {
    fn from(p: Exponent) -> Extended {
        match p {
            Exponent::Finite(x) => Extended::Finite(x),
            Exponent::Infinity => Extended::Infinity,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(x) => write!(f, "{x}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}
