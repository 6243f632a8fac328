//! Extended nonnegative reals with an explicit infinity token.
//!
//! Interval endpoints and distances range over [0, ∞]. Infinity is a variant,
//! not a sentinel float, so matching on it is always explicit.

use std::fmt;

/// A value in [0, ∞]. Finite payloads are always nonnegative and non-NaN.
#[derive(Clone, Copy, Debug)]
pub enum ExtReal {
    Finite(f64),
    Inf,
}

impl ExtReal {
    /// Wraps a finite nonnegative value.
    ///
    /// # Panics
    /// Panics on NaN, infinite, or negative input; construction is the single
    /// checkpoint that keeps every downstream comparison total.
    pub fn finite(x: f64) -> Self {
        assert!(
            x.is_finite() && x >= 0.0,
            "ExtReal::finite requires a finite nonnegative value, got {x}"
        );
        // Fold -0.0 so bitwise hashing agrees with total_cmp equality.
        ExtReal::Finite(if x == 0.0 { 0.0 } else { x })
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Inf => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, ExtReal::Finite(x) if x == 0.0)
    }

    /// Half of the value, with ∞/2 = ∞.
    pub fn half(self) -> Self {
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(x / 2.0),
            ExtReal::Inf => ExtReal::Inf,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.total_cmp(b),
            (Finite(_), Inf) => std::cmp::Ordering::Less,
            (Inf, Finite(_)) => std::cmp::Ordering::Greater,
            (Inf, Inf) => std::cmp::Ordering::Equal,
        }
    }
}

impl std::hash::Hash for ExtReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            ExtReal::Finite(x) => x.to_bits().hash(state),
            ExtReal::Inf => u64::MAX.hash(state),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Rust's float Display is the shortest decimal that round-trips.
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Inf => write!(f, "inf"),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::finite(x)
    }
}
