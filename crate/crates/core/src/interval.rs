//! Closed real intervals with outward-widened arithmetic.
//!
//! Hardware directed rounding is not portable, so every primitive computes its
//! result in round-to-nearest and then widens outward by `4 * epsilon` relative
//! plus an absolute floor. Operations that are exact in floating point (adding an
//! exact zero, multiplying by an exact zero or one) skip the widening.
//!
//! Arithmetic through `std::ops` never fails: overflow produces infinite
//! endpoints, which are still valid enclosures. The expression evaluator rejects
//! non-finite results, so every interval that leaves it is finite.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("cannot bisect degenerate interval [{0}, {0}]")]
    Degenerate(f64),
}

#[derive(Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T = f64> {
    lo: T,
    hi: T,
}

impl<T: Real> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[inline]
fn slack<T: Real>(x: T) -> T {
    x.abs() * T::epsilon() * T::lit(4.0) + T::widen_floor()
}

impl<T: Real> Interval<T> {
    /// Checked constructor: `lo <= hi`, both finite.
    pub fn new(lo: T, hi: T) -> Result<Self, IntervalError> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IntervalError::InvalidBounds {
                lo: lo.to_f64_lossy(),
                hi: hi.to_f64_lossy(),
            })
        }
    }

    #[inline]
    pub fn point(x: T) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Encloses `[lo, hi]` widened outward by the rounding policy.
    #[inline]
    pub fn widened(lo: T, hi: T) -> Self {
        Interval {
            lo: lo - slack(lo),
            hi: hi + slack(hi),
        }
    }

    /// Widens outward by a relative error bound plus an absolute one.
    #[inline]
    pub fn with_error(lo: T, hi: T, rel: T, abs: T) -> Self {
        Interval {
            lo: lo - (lo.abs() * rel + abs) - slack(lo),
            hi: hi + (hi.abs() * rel + abs) + slack(hi),
        }
    }

    /// Smallest widened interval containing every given value.
    pub fn hull_of(values: &[T]) -> Self {
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for &v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Self::widened(lo, hi)
    }

    #[inline]
    pub fn lo(&self) -> T {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> T {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    #[inline]
    pub fn mid(&self) -> T {
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }

    #[inline]
    pub fn mag(&self) -> T {
        self.lo.abs().max(self.hi.abs())
    }

    #[inline]
    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.contains(T::zero())
    }

    #[inline]
    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    #[inline]
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn is_exact_zero(&self) -> bool {
        self.lo == T::zero() && self.hi == T::zero()
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection, if non-empty.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Splits at the midpoint. The halves share exactly the midpoint.
    pub fn bisect(&self) -> Result<(Self, Self), IntervalError> {
        let m = self.mid();
        if !(self.lo < m && m < self.hi) {
            return Err(IntervalError::Degenerate(self.lo.to_f64_lossy()));
        }
        Ok((
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        ))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self::widened(T::one() / self.hi, T::one() / self.lo))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.contains_zero() {
            return None;
        }
        if rhs.is_point() && rhs.lo == T::one() {
            return Some(*self);
        }
        if self.is_exact_zero() {
            return Some(*self);
        }
        let c = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        Some(Self::hull_of(&c))
    }

    pub fn sqr(&self) -> Self {
        if self.is_exact_zero() {
            return *self;
        }
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.contains_zero() {
            Interval {
                lo: T::zero(),
                hi: a.max(b) + slack(a.max(b)),
            }
        } else {
            Self::widened(a.min(b), a.max(b))
        }
    }

    /// Integer power using monotonicity of `t^n` on each sign branch.
    pub fn powi(&self, n: i32) -> Option<Self> {
        if n == 0 {
            return Some(Interval::point(T::one()));
        }
        if n == 1 {
            return Some(*self);
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let k = T::lit(f64::from(n));
        let (a, b) = (self.lo.powi(n), self.hi.powi(n));
        let widen = |lo: T, hi: T| Interval {
            lo: lo - k * slack(lo),
            hi: hi + k * slack(hi),
        };
        Some(if n % 2 == 1 || self.lo >= T::zero() {
            widen(a, b)
        } else if self.hi <= T::zero() {
            widen(b, a)
        } else {
            let m = a.max(b);
            Interval {
                lo: T::zero(),
                hi: m + k * slack(m),
            }
        })
    }

    pub fn sqrt(&self) -> Option<Self> {
        if self.lo < T::zero() {
            return None;
        }
        Some(Interval {
            lo: (self.lo.sqrt() - slack(self.lo.sqrt())).max(T::zero()),
            hi: self.hi.sqrt() + slack(self.hi.sqrt()),
        })
    }

    pub fn exp(&self) -> Self {
        Interval {
            lo: (self.lo.exp() - slack(self.lo.exp())).max(T::zero()),
            hi: self.hi.exp() + slack(self.hi.exp()),
        }
    }

    pub fn ln(&self) -> Option<Self> {
        if self.lo <= T::zero() {
            return None;
        }
        Some(Self::widened(self.lo.ln(), self.hi.ln()))
    }

    pub fn log2(&self) -> Option<Self> {
        if self.lo <= T::zero() {
            return None;
        }
        Some(Self::widened(self.lo.log2(), self.hi.log2()))
    }

    pub fn atan(&self) -> Self {
        Self::widened(self.lo.atan(), self.hi.atan())
    }

    pub fn asin(&self) -> Option<Self> {
        if self.lo < -T::one() || self.hi > T::one() {
            return None;
        }
        Some(Self::widened(self.lo.asin(), self.hi.asin()))
    }

    pub fn sin(&self) -> Self {
        // sin(t) = cos(t - pi/2): maxima at pi/2 + 2k pi, minima at -pi/2 + 2k pi.
        self.periodic_range(T::FRAC_PI_2(), |t| t.sin())
    }

    pub fn cos(&self) -> Self {
        self.periodic_range(T::zero(), |t| t.cos())
    }

    /// Range of a shifted cosine wave with maxima at `phase + 2k pi`.
    fn periodic_range(&self, phase: T, f: impl Fn(T) -> T) -> Self {
        let two_pi = T::TAU();
        if self.width() >= two_pi || !self.is_finite() {
            return Interval {
                lo: -T::one(),
                hi: T::one(),
            };
        }
        let (fa, fb) = (f(self.lo), f(self.hi));
        let mut lo = fa.min(fb);
        let mut hi = fa.max(fb);
        // Extremum detection errs on the side of inclusion.
        let fuzz = T::lit(1e-12) * (T::one() + self.mag());
        let hits = |center: T| -> bool {
            let k = ((self.lo - fuzz - center) / two_pi).ceil();
            center + k * two_pi <= self.hi + fuzz
        };
        if hits(phase) {
            hi = T::one();
        }
        if hits(phase + T::PI()) {
            lo = -T::one();
        }
        let lo = (lo - slack(lo)).max(-T::one());
        let hi = (hi + slack(hi)).min(T::one());
        Interval { lo, hi }
    }

    /// Tangent; fails if the interval reaches a pole.
    pub fn tan(&self) -> Option<Self> {
        if !self.is_finite() {
            return None;
        }
        let pi = T::PI();
        let fuzz = T::lit(1e-12) * (T::one() + self.mag());
        let k = ((self.lo - fuzz - T::FRAC_PI_2()) / pi).ceil();
        let pole = T::FRAC_PI_2() + k * pi;
        if pole <= self.hi + fuzz {
            return None;
        }
        Some(Self::widened(self.lo.tan(), self.hi.tan()))
    }
}

impl<T: Real> Add for Interval<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        if self.is_exact_zero() {
            return rhs;
        }
        if rhs.is_exact_zero() {
            return self;
        }
        Self::widened(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl<T: Real> Sub for Interval<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Interval<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl<T: Real> Mul for Interval<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Interval::point(T::zero());
        }
        if self.is_point() && self.lo == T::one() {
            return rhs;
        }
        if rhs.is_point() && rhs.lo == T::one() {
            return self;
        }
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        // 0 * inf yields NaN; an infinite factor makes the product unbounded.
        if c.iter().any(|v| v.is_nan()) {
            return Interval {
                lo: T::neg_infinity(),
                hi: T::infinity(),
            };
        }
        Self::hull_of(&c)
    }
}

impl<T: Real> Mul<T> for Interval<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        self * Interval::point(rhs)
    }
}

impl<T: Real> Add<T> for Interval<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: T) -> Self {
        self + Interval::point(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn encloses(outer: Interval, lo: f64, hi: f64) -> bool {
        outer.lo() <= lo && hi <= outer.hi()
    }

    #[test]
    fn constructor_rejects_bad_bounds() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn basic_arithmetic_examples() {
        assert!(encloses(iv(1.0, 2.0) + iv(3.0, 4.0), 4.0, 6.0));
        assert!(encloses(iv(-1.0, 1.0) * iv(-1.0, 1.0), -1.0, 1.0));
        let s = iv(0.0, FRAC_PI_4).sin();
        assert!(encloses(s, 0.0, std::f64::consts::FRAC_1_SQRT_2));
        assert!(s.hi() < 0.7072 && s.lo() > -1e-15);
    }

    #[test]
    fn bisect_examples() {
        let (l, r) = iv(0.0, 1.0).bisect().unwrap();
        assert_eq!((l, r), (iv(0.0, 0.5), iv(0.5, 1.0)));
        let (l, r) = iv(1.0, 4.0).bisect().unwrap();
        assert_eq!((l, r), (iv(1.0, 2.5), iv(2.5, 4.0)));
        assert!(matches!(
            iv(3.0, 3.0).bisect(),
            Err(IntervalError::Degenerate(_))
        ));
    }

    #[test]
    fn division_requires_nonzero_divisor() {
        assert!(iv(1.0, 2.0).checked_div(&iv(-1.0, 1.0)).is_none());
        let q = iv(1.0, 2.0).checked_div(&iv(4.0, 8.0)).unwrap();
        assert!(encloses(q, 0.125, 0.5));
    }

    #[test]
    fn even_power_straddling_zero_is_tight() {
        let p = iv(-1.0, 2.0).powi(2).unwrap();
        assert_eq!(p.lo(), 0.0);
        assert!(p.hi() >= 4.0 && p.hi() < 4.0 + 1e-12);
        let p = iv(-3.0, -2.0).powi(3).unwrap();
        assert!(encloses(p, -27.0, -8.0));
        let p = iv(2.0, 4.0).powi(-1).unwrap();
        assert!(encloses(p, 0.25, 0.5));
    }

    #[test]
    fn periodic_extrema_are_detected() {
        let c = iv(-0.1, 0.1).cos();
        assert_eq!(c.hi(), 1.0);
        let c = iv(3.0, 3.3).cos();
        assert_eq!(c.lo(), -1.0);
        let s = iv(1.0, 2.0).sin();
        assert_eq!(s.hi(), 1.0);
        let s = iv(0.0, 7.0).sin();
        assert_eq!((s.lo(), s.hi()), (-1.0, 1.0));
    }

    #[test]
    fn tan_rejects_poles() {
        assert!(iv(1.0, 2.0).tan().is_none());
        assert!(iv(-1.0, 1.0).tan().is_some());
        assert!(iv(1.6, 3.0).tan().is_some());
    }

    #[test]
    fn ln_and_asin_domains() {
        assert!(iv(0.0, 1.0).ln().is_none());
        assert!(iv(-1.5, 0.0).asin().is_none());
        assert!(iv(-1.0, 1.0).asin().is_some());
    }

    #[test]
    fn exact_zero_and_one_shortcuts() {
        let z = Interval::point(0.0);
        let x = iv(0.3, 0.7);
        assert_eq!(z * x, z);
        assert_eq!(x + z, x);
        assert_eq!(Interval::point(1.0) * x, x);
    }

    #[test]
    fn f32_instantiation() {
        let a = Interval::<f32>::new(1.0, 2.0).unwrap();
        let b = a * a;
        assert!(b.lo() <= 1.0 && b.hi() >= 4.0);
    }
}
