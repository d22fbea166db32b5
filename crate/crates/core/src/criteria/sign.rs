//! One-dimensional sign certificates by interval bisection.

use std::time::Instant;

use serde::Serialize;

use super::CertifyConfig;
use crate::expr::DomainError;
use crate::interval::Interval;

/// Enclosure of a target over a box, optionally with an enclosure of its
/// derivative for a centred (mean-value) form.
#[derive(Debug, Clone, Copy)]
pub struct Enclosure {
    pub range: Interval,
    pub slope: Option<Interval>,
}

impl From<Interval> for Enclosure {
    fn from(range: Interval) -> Self {
        Enclosure { range, slope: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignGoal {
    /// Lower bound `>= -sign_tol` on every leaf.
    NonNegative,
    /// Lower bound `> 0` on every leaf.
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignCertificate {
    pub max_depth_used: u32,
    pub leaves: u64,
    pub strict: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignOutcome {
    Certified(SignCertificate),
    /// The target is provably negative on `subbox`.
    Failed {
        subbox: Interval,
        enclosure: Interval,
    },
    Inconclusive {
        reason: String,
        subbox: Interval,
    },
    /// The target is undefined at a point of `subbox`.
    Undefined {
        error: DomainError,
        subbox: Interval,
    },
}

impl SignOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, SignOutcome::Certified(_))
    }

    pub fn describe(&self) -> String {
        match self {
            SignOutcome::Certified(c) => format!(
                "certified ({} leaves, depth {})",
                c.leaves, c.max_depth_used
            ),
            SignOutcome::Failed { subbox, enclosure } => {
                format!("negative on {subbox} (enclosure {enclosure})")
            }
            SignOutcome::Inconclusive { reason, subbox } => format!("{reason} at {subbox}"),
            SignOutcome::Undefined { error, subbox } => format!("{error} near {subbox}"),
        }
    }

    pub fn subbox(&self) -> Option<Interval> {
        match self {
            SignOutcome::Certified(_) => None,
            SignOutcome::Failed { subbox, .. }
            | SignOutcome::Inconclusive { subbox, .. }
            | SignOutcome::Undefined { subbox, .. } => Some(*subbox),
        }
    }
}

fn bounds<F>(target: &F, b: Interval) -> Result<Interval, DomainError>
where
    F: Fn(Interval) -> Result<Enclosure, DomainError>,
{
    let enc = target(b)?;
    let mut out = enc.range;
    if let (Some(slope), false) = (enc.slope, b.is_point()) {
        let c = b.mid();
        let centred = target(Interval::point(c))?.range + slope * (b + (-c));
        if let Some(tighter) = out.intersect(&centred) {
            out = tighter;
        }
    }
    Ok(out)
}

/// Proves `target >= 0` (or `> 0`) on `bx` by bisection, or finds a sub-box
/// on which it is certainly negative.
///
/// Boxes are processed depth-first, left to right, so the result is
/// deterministic unless the time budget or box cap is hit.
pub fn certify_sign<F>(target: F, bx: Interval, goal: SignGoal, cfg: &CertifyConfig) -> SignOutcome
where
    F: Fn(Interval) -> Result<Enclosure, DomainError>,
{
    let tol = match goal {
        SignGoal::Positive => 0.0,
        SignGoal::NonNegative => cfg.sign_tol,
    };
    let start = Instant::now();
    let mut stack = vec![(bx, 0u32)];
    let (mut leaves, mut depth_used, mut strict) = (0u64, 0u32, true);
    let mut processed = 0usize;

    while let Some((b, depth)) = stack.pop() {
        processed += 1;
        if processed > cfg.max_boxes {
            return SignOutcome::Inconclusive {
                reason: format!("box limit of {} reached", cfg.max_boxes),
                subbox: b,
            };
        }
        if processed.is_multiple_of(256) && start.elapsed() > cfg.time_budget() {
            return SignOutcome::Inconclusive {
                reason: format!("time budget of {} ms exhausted", cfg.time_budget_ms),
                subbox: b,
            };
        }
        depth_used = depth_used.max(depth);
        match bounds(&target, b) {
            Ok(enc) => {
                if enc.lo() > 0.0 {
                    leaves += 1;
                    continue;
                }
                if goal == SignGoal::NonNegative && enc.lo() >= -tol {
                    leaves += 1;
                    strict = false;
                    continue;
                }
                if enc.hi() < 0.0 {
                    return SignOutcome::Failed {
                        subbox: b,
                        enclosure: enc,
                    };
                }
            }
            Err(error) => {
                // Enclosures may overshoot a singularity that the box does not
                // actually contain; only a failing point is conclusive.
                if let Err(error) = target(Interval::point(b.mid())) {
                    return SignOutcome::Undefined { error, subbox: b };
                }
                if depth >= cfg.max_depth {
                    return SignOutcome::Undefined { error, subbox: b };
                }
            }
        }
        if depth >= cfg.max_depth {
            return SignOutcome::Inconclusive {
                reason: format!("depth limit {} reached", cfg.max_depth),
                subbox: b,
            };
        }
        match b.bisect() {
            Ok((l, r)) => {
                stack.push((r, depth + 1));
                stack.push((l, depth + 1));
            }
            Err(_) => {
                return SignOutcome::Inconclusive {
                    reason: "box too narrow to bisect".into(),
                    subbox: b,
                }
            }
        }
    }
    SignOutcome::Certified(SignCertificate {
        max_depth_used: depth_used,
        leaves,
        strict,
        tolerance: tol,
    })
}
