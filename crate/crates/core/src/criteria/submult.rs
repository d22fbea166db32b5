//! Two-dimensional branch-and-bound for `F(x, y) = f(x) f(y) - f(xy) >= 0`.
//!
//! `F` vanishes identically on the lines `x = 1` and `y = 1`, so plain
//! enclosures can never certify boxes that touch them. Such boxes are closed
//! with derivative bounds instead:
//!
//! * edge: `F(x, y) = F(1, y) ± ∫ F_x`, so a one-signed `F_x` suffices;
//! * corner: `F(x, y) = F(1, y) + F(x, 1) - F(1, 1) + ∫∫ F_xy`.
//!
//! Both use `F(1, y) = (f(1) - 1) f(y) = 0`, i.e. they certify the normalised
//! function with `f(1) = 1` exactly; classification admits `f` only after
//! checking that numerically.
//!
//! Interior boxes use the better of the natural enclosure and a second-order
//! Taylor form around the centre.

use std::time::Instant;

use super::search::Inequality;
use super::{CertifyConfig, Witness};
use crate::expr::{
    eval_jet2_interval, eval_point, DomainError, DomainKind, DomainSpec, Expression,
};
use crate::interval::Interval;
use crate::jet::Jet2;

type IJet = Jet2<Interval>;

/// Boxes within this many widths of a line through 1 get the edge tests.
const EDGE_REACH: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SubmultOutcome {
    Certified {
        max_depth_used: u32,
        leaves: u64,
        skipped_by_symmetry: u64,
    },
    Refuted(Witness),
    Inconclusive {
        reason: String,
        x: Interval,
        y: Interval,
    },
}

struct Ctx<'a> {
    f: &'a Expression,
    tol: f64,
    unit: bool,
}

impl Ctx<'_> {
    fn jet(&self, x: Interval) -> Result<IJet, DomainError> {
        eval_jet2_interval(self.f, x)
    }

    /// `X` stretched to reach the line through 1, if it is already close.
    fn toward_one(&self, iv: Interval) -> Option<Interval> {
        let (lo, hi, gap) = if self.unit {
            (iv.lo(), 1.0, 1.0 - iv.hi())
        } else {
            (1.0, iv.hi(), iv.lo() - 1.0)
        };
        (gap <= EDGE_REACH * iv.width()).then(|| Interval::new(lo, hi).expect("ordered"))
    }

    /// `∫ d` over a strip of width `w` towards the line, bounded below.
    fn strip(&self, d: Interval, w: f64) -> f64 {
        if self.unit {
            -w * d.hi().max(0.0)
        } else {
            w * d.lo().min(0.0)
        }
    }

    fn edge_bound(&self, x: Interval, y: Interval, jx: &IJet, jy: &IJet) -> Option<f64> {
        let (xe, ye) = (self.toward_one(x), self.toward_one(y));
        let mut best = f64::NEG_INFINITY;
        if let Some(xe) = xe {
            let (jxe, jxey) = (self.jet(xe).ok()?, self.jet(xe * y).ok()?);
            let fx = jxe.d1 * jy.v - y * jxey.d1;
            best = best.max(self.strip(fx, xe.width()));
        }
        if let Some(ye) = ye {
            let (jye, jxye) = (self.jet(ye).ok()?, self.jet(x * ye).ok()?);
            let fy = jx.v * jye.d1 - x * jxye.d1;
            best = best.max(self.strip(fy, ye.width()));
        }
        if let (Some(xe), Some(ye)) = (xe, ye) {
            let xy = xe * ye;
            let (jxe, jye, jxy) = (self.jet(xe).ok()?, self.jet(ye).ok()?, self.jet(xy).ok()?);
            let fxy = jxe.d1 * jye.d1 - jxy.d1 - xy * jxy.d2;
            best = best.max(xe.width() * ye.width() * fxy.lo().min(0.0));
        }
        Some(best)
    }

    /// Lower bound of `F` on `X x Y`.
    fn lower_bound(&self, x: Interval, y: Interval) -> Result<f64, DomainError> {
        let xy = x * y;
        let (jx, jy, jxy) = (self.jet(x)?, self.jet(y)?, self.jet(xy)?);
        let natural = jx.v * jy.v - jxy.v;
        let mut best = natural.lo();

        // Second-order Taylor form around the centre.
        let (cx, cy) = (x.mid(), y.mid());
        let (px, py) = (Interval::point(cx), Interval::point(cy));
        let pxy = px * py;
        let (kx, ky, kxy) = (self.jet(px)?, self.jet(py)?, self.jet(pxy)?);
        let f_c = kx.v * ky.v - kxy.v;
        let fx_c = kx.d1 * ky.v - py * kxy.d1;
        let fy_c = kx.v * ky.d1 - px * kxy.d1;
        let fxx = jx.d2 * jy.v - y.sqr() * jxy.d2;
        let fyy = jx.v * jy.d2 - x.sqr() * jxy.d2;
        let fxy = jx.d1 * jy.d1 - jxy.d1 - xy * jxy.d2;
        let (dx, dy) = (x + (-cx), y + (-cy));
        let quad = (fxx * dx.sqr() + fxy * (dx * dy) * 2.0 + fyy * dy.sqr()) * 0.5;
        let taylor = f_c + fx_c * dx + fy_c * dy + quad;
        best = best.max(taylor.lo());
        if best >= -self.tol {
            return Ok(best);
        }

        // Boxes on or near the lines through 1: integrate the derivative
        // bound over the strip between the box and the line.
        if let Some(edge) = self.edge_bound(x, y, &jx, &jy) {
            best = best.max(edge);
        }
        Ok(best)
    }
}

/// Certifies `f(x) f(y) >= f(xy) - sign_tol` on the truncated square, or
/// returns a violating pair found at a box centre.
pub fn certify_submultiplicative(
    f: &Expression,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<SubmultOutcome, DomainError> {
    let bx = domain.box_interval();
    let ctx = Ctx {
        f,
        tol: cfg.sign_tol,
        unit: domain.kind == DomainKind::UnitInterval,
    };
    let max_depth = 2 * cfg.max_depth;
    let start = Instant::now();
    let mut stack = vec![(bx, bx, 0u32)];
    let (mut leaves, mut skipped, mut depth_used) = (0u64, 0u64, 0u32);
    let mut processed = 0usize;

    while let Some((x, y, depth)) = stack.pop() {
        // F is symmetric; boxes strictly below the diagonal mirror ones above.
        if x.hi() < y.lo() {
            skipped += 1;
            continue;
        }
        processed += 1;
        let undecided = |reason: String| SubmultOutcome::Inconclusive { reason, x, y };
        if processed > cfg.max_boxes {
            return Ok(undecided(format!("box limit of {} reached", cfg.max_boxes)));
        }
        if processed.is_multiple_of(256) && start.elapsed() > cfg.time_budget() {
            return Ok(undecided(format!(
                "time budget of {} ms exhausted",
                cfg.time_budget_ms
            )));
        }
        depth_used = depth_used.max(depth);

        let (cx, cy) = (x.mid(), y.mid());
        if let Some(w) = Inequality::Submultiplicative.evaluate(f, cx, cy) {
            if w.margin > cfg.report_tol && w.margin_lower_bound > cfg.report_tol {
                return Ok(SubmultOutcome::Refuted(w));
            }
        }
        match ctx.lower_bound(x, y) {
            Ok(lo) if lo >= -cfg.sign_tol => {
                leaves += 1;
                continue;
            }
            Ok(_) => {}
            Err(e) => {
                if eval_point(f, cx).is_err()
                    || eval_point(f, cy).is_err()
                    || eval_point(f, cx * cy).is_err()
                    || depth >= max_depth
                {
                    return Err(e);
                }
            }
        }
        if depth >= max_depth {
            return Ok(undecided(format!("depth limit {max_depth} reached")));
        }
        // Relative widths: near a small left cut only the small coordinate
        // needs resolving.
        let rel = |iv: Interval| iv.width() / iv.mag().max(f64::MIN_POSITIVE);
        let split = if rel(x) >= rel(y) {
            x.bisect().map(|(a, b)| [(a, y), (b, y)])
        } else {
            y.bisect().map(|(a, b)| [(x, a), (x, b)])
        };
        match split {
            Ok([first, second]) => {
                stack.push((second.0, second.1, depth + 1));
                stack.push((first.0, first.1, depth + 1));
            }
            Err(_) => return Ok(undecided("box too narrow to bisect".into())),
        }
    }
    Ok(SubmultOutcome::Certified {
        max_depth_used: depth_used,
        leaves,
        skipped_by_symmetry: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn run(src: &str, d: DomainSpec) -> SubmultOutcome {
        certify_submultiplicative(&parse(src).unwrap(), &d, &CertifyConfig::default()).unwrap()
    }

    #[test]
    fn identity_is_certified_immediately() {
        for d in [DomainSpec::unit(), DomainSpec::ray()] {
            match run("x", d) {
                SubmultOutcome::Certified { leaves, .. } => assert!(leaves <= 4),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn squares_and_logs() {
        assert!(matches!(
            run("x^2", DomainSpec::unit()),
            SubmultOutcome::Certified { .. }
        ));
        assert!(matches!(
            run("log2(1+x)", DomainSpec::unit()),
            SubmultOutcome::Certified { .. }
        ));
        assert!(matches!(
            run("log2(1+x)", DomainSpec::ray()),
            SubmultOutcome::Certified { .. }
        ));
    }

    #[test]
    fn supermultiplicative_function_is_refuted() {
        // (1+x)/2 falls below f(xy) near the origin.
        match run("(1+x)/2", DomainSpec::unit()) {
            SubmultOutcome::Refuted(w) => {
                let again = Inequality::Submultiplicative
                    .evaluate(&parse("(1+x)/2").unwrap(), w.x, w.y)
                    .unwrap();
                assert!(again.margin > 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }
}
