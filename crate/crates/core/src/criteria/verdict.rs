use std::fmt;

use serde::Serialize;

use crate::expr::DomainSpec;
use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    #[serde(rename = "l_weierstrass")]
    LWeierstrass,
    #[serde(rename = "r_weierstrass")]
    RWeierstrass,
    #[serde(rename = "submultiplicative")]
    Submultiplicative,
    #[serde(rename = "weierstrass")]
    Weierstrass,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::LWeierstrass,
        Property::RWeierstrass,
        Property::Submultiplicative,
        Property::Weierstrass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::LWeierstrass => "l-Weierstrass",
            Property::RWeierstrass => "r-Weierstrass",
            Property::Submultiplicative => "submultiplicative",
            Property::Weierstrass => "Weierstrass",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which sufficient condition a certificate rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `H_f(x) = x f'(x)` monotone, certified through the sign of `G_f = f'/x + f''`.
    HMonotone,
    /// `f` log-convex with `f` and `x f(x)` strictly monotone in the same direction.
    LogConvexPair,
    /// Direct 2-D enclosure of `f(x) f(y) - f(xy)`.
    DirectEnclosure,
    /// Both halves of the double inequality certified.
    Conjunction,
    /// Product of H-monotone, non-decreasing, submultiplicative factors.
    ProductClosure,
    /// `g ∘ f` with `g`, `g'` non-decreasing.
    CompositionClosure,
    /// `f^alpha` with `alpha > 1`.
    PowerClosure,
}

impl Criterion {
    pub fn describe(self) -> &'static str {
        match self {
            Criterion::HMonotone => "H_f = x f'(x) monotone (sign of G_f = f'/x + f'')",
            Criterion::LogConvexPair => "f log-convex, f and x f(x) strictly monotone alike",
            Criterion::DirectEnclosure => "2-D interval enclosure of f(x)f(y) - f(xy)",
            Criterion::Conjunction => "l-Weierstrass and submultiplicative both certified",
            Criterion::ProductClosure => "product of H-monotone submultiplicative factors",
            Criterion::CompositionClosure => "composition with non-decreasing convex g",
            Criterion::PowerClosure => "power f^alpha with alpha > 1",
        }
    }
}

/// Closed real span, the serialisable face of an [`Interval`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
}

impl From<Interval> for Span {
    fn from(iv: Interval) -> Self {
        Span {
            lo: iv.lo(),
            hi: iv.hi(),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub criterion: Criterion,
    /// The inequality and the exact region it was certified on.
    pub claim: String,
    pub x_box: Span,
    pub y_box: Span,
    pub max_depth_used: u32,
    pub leaves: u64,
    /// Every leaf had a strictly positive lower bound.
    pub strict: bool,
    /// Leaves were accepted with lower bound `>= -tolerance`.
    pub tolerance: f64,
}

/// A pair at which an inequality `lhs >= rhs` fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub inequality: String,
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`, positive.
    pub margin: f64,
    /// Rigorous lower bound on the margin from interval re-evaluation.
    pub margin_lower_bound: f64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at x = {}, y = {}: lhs {:.12} < rhs {:.12} (margin {:.3e})",
            self.inequality, self.x, self.y, self.lhs, self.rhs, self.margin
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Undecided {
    pub reason: String,
    /// Deepest undecided sub-box, when there is one.
    pub x_box: Option<Span>,
    pub y_box: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Certified(Certificate),
    Refuted(Witness),
    Inconclusive(Undecided),
}

impl Outcome {
    pub fn inconclusive(
        reason: impl Into<String>,
        x_box: Option<Span>,
        y_box: Option<Span>,
    ) -> Self {
        Outcome::Inconclusive(Undecided {
            reason: reason.into(),
            x_box,
            y_box,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Certified(_) => "Certified",
            Outcome::Refuted(_) => "Refuted",
            Outcome::Inconclusive(_) => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub domain: DomainSpec,
    pub outcome: Outcome,
    /// Routes tried before the final outcome, in order.
    pub notes: Vec<String>,
}

impl PropertyVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Refuted(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate().is_some()
    }

    pub fn is_refuted(&self) -> bool {
        self.witness().is_some()
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<18} {}", self.property.name(), self.outcome.label())?;
        match &self.outcome {
            Outcome::Certified(c) => write!(
                f,
                " via {} ({}; depth {}, {} leaves, tol {:e}) on {}",
                c.criterion.describe(),
                if c.strict { "strict" } else { "weak" },
                c.max_depth_used,
                c.leaves,
                c.tolerance,
                c.claim
            ),
            Outcome::Refuted(w) => write!(f, ": {w}"),
            Outcome::Inconclusive(u) => {
                write!(f, ": {}", u.reason)?;
                if let Some(x) = u.x_box {
                    write!(f, " (x in {x}")?;
                    if let Some(y) = u.y_box {
                        write!(f, ", y in {y}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}
