use std::fmt;

use serde::{Deserialize, Serialize};

use super::FisError;

/// Closed real interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FisError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(FisError::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Trapezoidal membership function with breakpoints `a <= b <= c <= d`.
///
/// The plateau `[b, c]` has degree 1, the ramps `[a, b]` and `[c, d]` are
/// linear, and everything outside `[a, d]` has degree 0. A zero-width ramp
/// (`a == b` or `c == d`) is a vertical shoulder whose edge point belongs to
/// the plateau.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapezoidMF {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TrapezoidMF {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FisError> {
        let finite = [a, b, c, d].iter().all(|v| v.is_finite());
        if !finite || !(a <= b && b <= c && c <= d) {
            return Err(FisError::InvalidTrapezoid { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    /// Breakpoints in order `[a, b, c, d]`.
    pub fn breakpoints(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Closed support `[a, d]`.
    pub fn support(&self) -> (f64, f64) {
        (self.a, self.d)
    }

    pub fn plateau(&self) -> (f64, f64) {
        (self.b, self.c)
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if self.b <= x && x <= self.c {
            1.0
        } else if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else {
            (self.d - x) / (self.d - self.c)
        }
    }

    /// True if `x` has nonzero degree.
    pub fn fires_at(&self, x: f64) -> bool {
        self.degree(x) > 0.0
    }
}

/// Free-function form of [`TrapezoidMF::degree`].
pub fn membership_degree(mf: &TrapezoidMF, x: f64) -> f64 {
    mf.degree(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(a: f64, b: f64, c: f64, d: f64) -> TrapezoidMF {
        TrapezoidMF::new(a, b, c, d).unwrap()
    }

    #[test]
    fn standard_trapezoid_points() {
        let m = mf(10.0, 20.0, 30.0, 40.0);
        assert_eq!(m.degree(25.0), 1.0);
        assert_eq!(m.degree(15.0), 0.5);
        assert_eq!(m.degree(5.0), 0.0);
        assert_eq!(m.degree(35.0), 0.5);
        assert_eq!(m.degree(10.0), 0.0);
        assert_eq!(m.degree(40.0), 0.0);
        assert_eq!(m.degree(20.0), 1.0);
        assert_eq!(m.degree(30.0), 1.0);
        assert_eq!(m.degree(45.0), 0.0);
    }

    #[test]
    fn shoulders_are_inclusive() {
        let left = mf(0.0, 0.0, 10.0, 20.0);
        assert_eq!(left.degree(0.0), 1.0);
        assert_eq!(left.degree(-0.1), 0.0);
        let right = mf(0.0, 10.0, 20.0, 20.0);
        assert_eq!(right.degree(20.0), 1.0);
        assert_eq!(right.degree(20.1), 0.0);
    }

    #[test]
    fn triangle() {
        let t = mf(0.0, 5.0, 5.0, 10.0);
        assert_eq!(t.degree(5.0), 1.0);
        assert_eq!(t.degree(2.5), 0.5);
        assert_eq!(t.degree(7.5), 0.5);
    }

    #[test]
    fn rejects_unordered_or_non_finite() {
        assert!(TrapezoidMF::new(1.0, 0.0, 2.0, 3.0).is_err());
        assert!(TrapezoidMF::new(0.0, 1.0, 3.0, 2.0).is_err());
        assert!(TrapezoidMF::new(0.0, f64::NAN, 1.0, 2.0).is_err());
        assert!(TrapezoidMF::new(f64::NEG_INFINITY, 0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn interval_rules() {
        assert!(Interval::new(0.0, 0.0).is_err());
        assert!(Interval::new(1.0, 0.0).is_err());
        let i = Interval::new(0.0, 80.0).unwrap();
        assert!(i.contains(0.0) && i.contains(80.0) && !i.contains(80.0001));
    }
}
