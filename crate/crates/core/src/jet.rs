//! Second-order forward-mode jets.

use serde::Serialize;

use crate::algebra::{Algebra, Func, JetBase};
use crate::interval::Interval;

/// `(f, f', f'')` carried jointly through evaluation.
///
/// The component type is a scalar for point jets or an [`Interval`] for
/// enclosures of the three ranges over a box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2<S = f64> {
    pub v: S,
    pub d1: S,
    pub d2: S,
}

impl<S: JetBase> Jet2<S> {
    pub fn new(v: S, d1: S, d2: S) -> Self {
        Jet2 { v, d1, d2 }
    }

    /// The independent variable at `x`: `(x, 1, 0)`.
    pub fn variable(x: S) -> Self {
        Jet2 {
            v: x,
            d1: S::constant(one::<S>(), true),
            d2: S::constant(zero::<S>(), true),
        }
    }

    /// Chain rule for `phi(u)` given `(phi(u), phi'(u), phi''(u))`.
    fn chain(&self, (p0, p1, p2): (S, S, S)) -> Self {
        let d1 = p1.mul(&self.d1);
        let d2 = p2.mul(&self.d1.mul(&self.d1)).add(&p1.mul(&self.d2));
        Jet2 { v: p0, d1, d2 }
    }
}

impl<T: crate::real::Real> Jet2<Interval<T>> {
    /// Whether every component is a valid (finite) interval.
    pub fn is_valid(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

#[inline]
fn one<S: Algebra>() -> S::Scalar {
    num_traits::One::one()
}

#[inline]
fn zero<S: Algebra>() -> S::Scalar {
    num_traits::Zero::zero()
}

#[inline]
fn lit<S: Algebra>(x: f64) -> S {
    S::constant(crate::real::Real::lit(x), true)
}

/// `(phi(u), phi'(u), phi''(u))` for an elementary function.
fn derivatives<S: JetBase>(f: Func, u: &S) -> Option<(S, S, S)> {
    let two = lit::<S>(2.0);
    Some(match f {
        Func::Exp => {
            let e = u.func(Func::Exp)?;
            (e.clone(), e.clone(), e)
        }
        Func::Ln => {
            let r = u.recip()?;
            (u.func(Func::Ln)?, r.clone(), r.mul(&r).neg())
        }
        Func::Log2 => {
            let r = u.recip()?;
            let inv_ln2 = S::constant(crate::real::Real::lit(std::f64::consts::LOG2_E), false);
            (
                u.func(Func::Log2)?,
                r.mul(&inv_ln2),
                r.mul(&r).mul(&inv_ln2).neg(),
            )
        }
        Func::Sin => {
            let (s, c) = (u.func(Func::Sin)?, u.func(Func::Cos)?);
            (s.clone(), c, s.neg())
        }
        Func::Cos => {
            let (s, c) = (u.func(Func::Sin)?, u.func(Func::Cos)?);
            (c.clone(), s.neg(), c.neg())
        }
        Func::Tan => {
            let t = u.func(Func::Tan)?;
            let sec2 = lit::<S>(1.0).add(&t.mul(&t));
            let d2 = two.mul(&t).mul(&sec2);
            (t, sec2, d2)
        }
        Func::Arctan => {
            let r = lit::<S>(1.0).add(&u.mul(u)).recip()?;
            let d2 = two.mul(u).mul(&r.mul(&r)).neg();
            (u.func(Func::Arctan)?, r, d2)
        }
        Func::Arcsin => {
            let s = lit::<S>(1.0).sub(&u.mul(u)).sqrt()?;
            let r = s.recip()?;
            let d2 = u.mul(&r.mul(&r).mul(&r));
            (u.func(Func::Arcsin)?, r, d2)
        }
        Func::Gamma => {
            let g = u.func(Func::Gamma)?;
            let p = u.digamma()?;
            let t = u.trigamma()?;
            let d1 = g.mul(&p);
            let d2 = g.mul(&p.mul(&p).add(&t));
            (g, d1, d2)
        }
        Func::Lngamma => (u.func(Func::Lngamma)?, u.digamma()?, u.trigamma()?),
    })
}

impl<S: JetBase> Algebra for Jet2<S> {
    type Scalar = S::Scalar;

    fn constant(c: Self::Scalar, exact: bool) -> Self {
        Jet2 {
            v: S::constant(c, exact),
            d1: S::constant(zero::<S>(), true),
            d2: S::constant(zero::<S>(), true),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Jet2 {
            v: self.v.add(&rhs.v),
            d1: self.d1.add(&rhs.d1),
            d2: self.d2.add(&rhs.d2),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Jet2 {
            v: self.v.sub(&rhs.v),
            d1: self.d1.sub(&rhs.d1),
            d2: self.d2.sub(&rhs.d2),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let two = lit::<S>(2.0);
        Jet2 {
            v: self.v.mul(&rhs.v),
            d1: self.d1.mul(&rhs.v).add(&self.v.mul(&rhs.d1)),
            d2: self
                .d2
                .mul(&rhs.v)
                .add(&two.mul(&self.d1).mul(&rhs.d1))
                .add(&self.v.mul(&rhs.d2)),
        }
    }

    fn neg(&self) -> Self {
        Jet2 {
            v: self.v.neg(),
            d1: self.d1.neg(),
            d2: self.d2.neg(),
        }
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        let q = self.v.div(&rhs.v)?;
        let q1 = self.d1.sub(&q.mul(&rhs.d1)).div(&rhs.v)?;
        let two = lit::<S>(2.0);
        let q2 = self
            .d2
            .sub(&two.mul(&q1).mul(&rhs.d1))
            .sub(&q.mul(&rhs.d2))
            .div(&rhs.v)?;
        Some(Jet2 {
            v: q,
            d1: q1,
            d2: q2,
        })
    }

    fn powi(&self, n: i32) -> Option<Self> {
        match n {
            0 => Some(Self::constant(one::<S>(), true)),
            1 => Some(self.clone()),
            _ => {
                let u = &self.v;
                let nn = lit::<S>(f64::from(n));
                let nm1 = lit::<S>(f64::from(n - 1));
                let p0 = u.powi(n)?;
                let p1 = nn.mul(&u.powi(n - 1)?);
                let p2 = nn.mul(&nm1).mul(&u.powi(n - 2)?);
                Some(self.chain((p0, p1, p2)))
            }
        }
    }

    fn func(&self, f: Func) -> Option<Self> {
        Some(self.chain(derivatives(f, &self.v)?))
    }

    fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    fn describe(&self) -> String {
        self.v.describe()
    }
}
