use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default rounding slack, in units of `f64::EPSILON` relative to the
/// magnitude of each accumulated term.
pub const DEFAULT_SLACK_ULPS: u32 = 4;

/// Absolute slack of `ulps` relative units on a quantity of size `magnitude`.
#[inline]
pub fn ulp_slack(magnitude: f64, ulps: u32) -> f64 {
    f64::from(ulps) * f64::EPSILON * magnitude.abs()
}

/// Closed bracket `[lo, hi]` known to contain some real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(hi - lo).is_finite() {
            return Err(Error::NonFinite("interval endpoint"));
        }
        if lo > hi {
            return Err(Error::Invariant(format!("interval lo {lo} > hi {hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Bracket between `a` and `b` in either order, rounded outward by one ulp.
    pub fn hull(a: f64, b: f64) -> Self {
        Self {
            lo: a.min(b).next_down(),
            hi: a.max(b).next_up(),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Pushes both endpoints outward by `slack` (absolute) plus one ulp.
    pub fn widen(self, slack: f64) -> Interval {
        let slack = slack.abs();
        Interval {
            lo: (self.lo - slack).next_down(),
            hi: (self.hi + slack).next_up(),
        }
    }

    pub fn shift(self, x: f64) -> Interval {
        self + Interval::point(x)
    }

    /// Multiplies by a point value `c`.
    pub fn scale(self, c: f64) -> Interval {
        let (a, b) = (self.lo * c, self.hi * c);
        Interval {
            lo: a.min(b).next_down(),
            hi: a.max(b).next_up(),
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, other: Interval) -> Interval {
        Interval {
            lo: (self.lo + other.lo).next_down(),
            hi: (self.hi + other.hi).next_up(),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, other: Interval) -> Interval {
        Interval {
            lo: (self.lo - other.hi).next_down(),
            hi: (self.hi - other.lo).next_up(),
        }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}
