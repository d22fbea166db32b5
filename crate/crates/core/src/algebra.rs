//! Number systems an [`Expression`](crate::expr::Expression) can be evaluated in.
//!
//! One evaluator serves four instantiations: plain scalars, intervals, and
//! second-order jets over either. Fallible operations return `None` on a domain
//! violation; the evaluator turns that into a `DomainError` naming the node.

use std::fmt::Debug;

use serde::Serialize;

use crate::interval::Interval;
use crate::real::Real;
use crate::special;

/// Elementary functions available in the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Func {
    Ln,
    Log2,
    Exp,
    Sin,
    Cos,
    Tan,
    Arctan,
    Arcsin,
    Gamma,
    Lngamma,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Ln,
        Func::Log2,
        Func::Exp,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Arctan,
        Func::Arcsin,
        Func::Gamma,
        Func::Lngamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Log2 => "log2",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Arctan => "arctan",
            Func::Arcsin => "arcsin",
            Func::Gamma => "gamma",
            Func::Lngamma => "lngamma",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

pub trait Algebra: Clone + Debug + Send + Sync {
    type Scalar: Real;

    /// Embeds a constant. `exact` says whether `c` is the intended value or a
    /// rounded representative of it (enclosing algebras widen the latter).
    fn constant(c: Self::Scalar, exact: bool) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn powi(&self, n: i32) -> Option<Self>;
    fn func(&self, f: Func) -> Option<Self>;

    fn is_finite(&self) -> bool;
    /// Human-readable value, used in error messages.
    fn describe(&self) -> String;
}

/// Extra primitives a jet needs from its component algebra.
pub trait JetBase: Algebra {
    fn recip(&self) -> Option<Self>;
    fn sqrt(&self) -> Option<Self>;
    fn digamma(&self) -> Option<Self>;
    fn trigamma(&self) -> Option<Self>;
}

macro_rules! impl_point_algebra {
    ($t:ty) => {
        impl Algebra for $t {
            type Scalar = $t;

            #[inline]
            fn constant(c: $t, _exact: bool) -> Self {
                c
            }
            #[inline]
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            #[inline]
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            #[inline]
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            #[inline]
            fn neg(&self) -> Self {
                -self
            }
            #[inline]
            fn div(&self, rhs: &Self) -> Option<Self> {
                (*rhs != 0.0).then(|| self / rhs)
            }
            #[inline]
            fn powi(&self, n: i32) -> Option<Self> {
                (n >= 0 || *self != 0.0).then(|| <$t>::powi(*self, n))
            }
            fn func(&self, f: Func) -> Option<Self> {
                let x = *self;
                match f {
                    Func::Ln => (x > 0.0).then(|| x.ln()),
                    Func::Log2 => (x > 0.0).then(|| x.log2()),
                    Func::Exp => Some(x.exp()),
                    Func::Sin => Some(x.sin()),
                    Func::Cos => Some(x.cos()),
                    Func::Tan => (x.cos() != 0.0).then(|| x.tan()),
                    Func::Arctan => Some(x.atan()),
                    Func::Arcsin => (x.abs() <= 1.0).then(|| x.asin()),
                    Func::Gamma => special::gamma(x).ok(),
                    Func::Lngamma => special::lngamma(x).ok(),
                }
            }
            #[inline]
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn describe(&self) -> String {
                format!("{self:e}")
            }
        }

        impl JetBase for $t {
            #[inline]
            fn recip(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / self)
            }
            #[inline]
            fn sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| <$t>::sqrt(*self))
            }
            fn digamma(&self) -> Option<Self> {
                special::digamma(*self).ok()
            }
            fn trigamma(&self) -> Option<Self> {
                special::trigamma(*self).ok()
            }
        }
    };
}

impl_point_algebra!(f64);
impl_point_algebra!(f32);

impl<T: Real> Algebra for Interval<T> {
    type Scalar = T;

    fn constant(c: T, exact: bool) -> Self {
        if exact {
            Interval::point(c)
        } else {
            Interval::widened(c, c)
        }
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    #[inline]
    fn neg(&self) -> Self {
        -*self
    }
    #[inline]
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    #[inline]
    fn powi(&self, n: i32) -> Option<Self> {
        Interval::powi(self, n)
    }
    fn func(&self, f: Func) -> Option<Self> {
        match f {
            Func::Ln => self.ln(),
            Func::Log2 => self.log2(),
            Func::Exp => Some(self.exp()),
            Func::Sin => Some(self.sin()),
            Func::Cos => Some(self.cos()),
            Func::Tan => self.tan(),
            Func::Arctan => Some(self.atan()),
            Func::Arcsin => self.asin(),
            Func::Gamma => special::gamma_interval(*self),
            Func::Lngamma => special::lngamma_interval(*self),
        }
    }
    #[inline]
    fn is_finite(&self) -> bool {
        Interval::is_finite(self)
    }
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

impl<T: Real> JetBase for Interval<T> {
    fn recip(&self) -> Option<Self> {
        Interval::recip(self)
    }
    fn sqrt(&self) -> Option<Self> {
        Interval::sqrt(self)
    }
    fn digamma(&self) -> Option<Self> {
        special::digamma_interval(*self)
    }
    fn trigamma(&self) -> Option<Self> {
        special::trigamma_interval(*self)
    }
}
