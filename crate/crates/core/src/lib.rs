//! Classification of one-variable functions as Weierstrass, l-/r-Weierstrass
//! or submultiplicative on `(0, 1]` or `[1, ∞)`.
//!
//! Every positive answer is backed by an interval branch-and-bound
//! certificate over an explicitly truncated box; every negative answer comes
//! with a witness pair that can be re-evaluated independently.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the analysis
//! layers above it run in `f64`, and the aliases below name those instances.

pub mod algebra;
pub mod catalog;
pub mod criteria;
pub mod expr;
pub mod inequalities;
pub mod interval;
pub mod jet;
pub mod real;
pub mod special;

pub use algebra::{Algebra, Func, JetBase};
pub use expr::{parse, DomainKind, DomainSpec, Expression};
pub use interval::Interval;
pub use jet::Jet2;
pub use real::Real;

pub type IntervalF64 = interval::Interval<f64>;
pub type IntervalF32 = interval::Interval<f32>;
pub type Jet2F64 = jet::Jet2<f64>;
pub type IntervalJet2 = jet::Jet2<interval::Interval<f64>>;
