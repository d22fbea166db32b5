//! Grid search for pairs violating one of the defining inequalities.

use serde::Serialize;

use super::{CertifyConfig, Witness};
use crate::expr::{eval_interval, eval_point, DomainSpec, Expression};
use crate::interval::Interval;

/// One half of the double inequality, oriented as `lhs >= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `f(xy) >= f(x) + f(y) - 1`.
    LWeierstrass,
    /// `f(x) + f(y) - 1 >= f(xy)`.
    RWeierstrass,
    /// `f(x) f(y) >= f(xy)`.
    Submultiplicative,
}

impl Inequality {
    pub fn text(self) -> &'static str {
        match self {
            Inequality::LWeierstrass => "f(xy) >= f(x) + f(y) - 1",
            Inequality::RWeierstrass => "f(x) + f(y) - 1 >= f(xy)",
            Inequality::Submultiplicative => "f(x) f(y) >= f(xy)",
        }
    }

    /// `(lhs, rhs)` from `f(x)`, `f(y)`, `f(xy)`.
    pub fn sides(self, fx: f64, fy: f64, fxy: f64) -> (f64, f64) {
        match self {
            Inequality::LWeierstrass => (fxy, fx + fy - 1.0),
            Inequality::RWeierstrass => (fx + fy - 1.0, fxy),
            Inequality::Submultiplicative => (fx * fy, fxy),
        }
    }

    fn interval_sides(self, fx: Interval, fy: Interval, fxy: Interval) -> (Interval, Interval) {
        match self {
            Inequality::LWeierstrass => (fxy, fx + fy + (-1.0)),
            Inequality::RWeierstrass => (fx + fy + (-1.0), fxy),
            Inequality::Submultiplicative => (fx * fy, fxy),
        }
    }

    /// Re-evaluates the inequality at `(x, y)` from scratch. The margin's
    /// lower bound comes from an interval evaluation at the same pair, so a
    /// positive bound is a genuine violation rather than rounding noise.
    pub fn evaluate(self, f: &Expression, x: f64, y: f64) -> Option<Witness> {
        let fx = eval_point(f, x).ok()?;
        let fy = eval_point(f, y).ok()?;
        let fxy = eval_point(f, x * y).ok()?;
        let (lhs, rhs) = self.sides(fx, fy, fxy);
        let (px, py) = (Interval::point(x), Interval::point(y));
        let bound = (|| {
            let (l, r) = self.interval_sides(
                eval_interval(f, px).ok()?,
                eval_interval(f, py).ok()?,
                eval_interval(f, px * py).ok()?,
            );
            Some((r - l).lo())
        })();
        Some(Witness {
            inequality: self.text().into(),
            x,
            y,
            lhs,
            rhs,
            margin: rhs - lhs,
            margin_lower_bound: bound.unwrap_or(f64::NEG_INFINITY),
        })
    }

    /// Violation that survives the interval re-check and the reporting tolerance.
    pub fn confirmed(self, f: &Expression, x: f64, y: f64, report_tol: f64) -> Option<Witness> {
        self.evaluate(f, x, y)
            .filter(|w| w.margin > report_tol && w.margin_lower_bound > report_tol)
    }
}

/// `n` sample points over the truncated box: half uniform, half geometric, so
/// that both the bulk and the neighbourhood of a small left cut are seen.
pub fn sample_grid(domain: &DomainSpec, n: usize) -> Vec<f64> {
    let (lo, hi) = domain.bounds();
    let n = n.max(2);
    let half = n / 2;
    let mut pts = Vec::with_capacity(n);
    for i in 0..half {
        pts.push(lo + (hi - lo) * i as f64 / (half - 1).max(1) as f64);
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    for i in 0..(n - half) {
        let t = i as f64 / (n - half - 1).max(1) as f64;
        pts.push((llo + (lhi - llo) * t).exp().clamp(lo, hi));
    }
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn margin_at(f: &Expression, ineq: Inequality, x: f64, y: f64) -> f64 {
    ineq.evaluate(f, x, y)
        .map(|w| w.margin)
        .filter(|m| m.is_finite())
        .unwrap_or(f64::NEG_INFINITY)
}

/// Maximises the violation margin along one coordinate by ternary descent.
fn ternary(mut a: f64, mut b: f64, iters: usize, m: impl Fn(f64) -> f64) -> (f64, f64) {
    for _ in 0..iters {
        let l = a + (b - a) / 3.0;
        let r = b - (b - a) / 3.0;
        if m(l) < m(r) {
            a = l;
        } else {
            b = r;
        }
    }
    let x = 0.5 * (a + b);
    (x, m(x))
}

/// Scans a `grid_n x grid_n` grid over the truncated square, refines the
/// worst pair locally and returns it if it violates `ineq` by more than the
/// reporting tolerance.
pub fn search_counterexample(
    f: &Expression,
    domain: &DomainSpec,
    ineq: Inequality,
    cfg: &CertifyConfig,
) -> Option<Witness> {
    let (lo, hi) = domain.bounds();
    let grid = sample_grid(domain, cfg.grid_n);
    let fv: Vec<Option<f64>> = grid.iter().map(|&x| eval_point(f, x).ok()).collect();

    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for i in 0..grid.len() {
        let Some(fx) = fv[i] else { continue };
        for j in i..grid.len() {
            let Some(fy) = fv[j] else { continue };
            let Ok(fxy) = eval_point(f, grid[i] * grid[j]) else {
                continue;
            };
            let (lhs, rhs) = ineq.sides(fx, fy, fxy);
            let m = rhs - lhs;
            if m.is_finite() && m > best.0 {
                best = (m, i, j);
            }
        }
    }
    if !best.0.is_finite() {
        return None;
    }

    let (mut x, mut y) = (grid[best.1], grid[best.2]);
    let mut score = best.0;
    let window = |k: usize| {
        let a = grid[k.saturating_sub(1)];
        let b = grid[(k + 1).min(grid.len() - 1)];
        (b - a).max(f64::EPSILON)
    };
    let (mut hx, mut hy) = (window(best.1), window(best.2));
    for _ in 0..cfg.refine_rounds {
        let (nx, sx) = ternary((x - hx).max(lo), (x + hx).min(hi), 40, |t| {
            margin_at(f, ineq, t, y)
        });
        if sx > score {
            x = nx;
            score = sx;
        }
        let (ny, sy) = ternary((y - hy).max(lo), (y + hy).min(hi), 40, |t| {
            margin_at(f, ineq, x, t)
        });
        if sy > score {
            y = ny;
            score = sy;
        }
        hx *= 0.5;
        hy *= 0.5;
    }

    ineq.confirmed(f, x, y, cfg.report_tol)
        .or_else(|| ineq.confirmed(f, grid[best.1], grid[best.2], cfg.report_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn identity_has_no_left_violation() {
        let f = parse("x").unwrap();
        let cfg = CertifyConfig::default();
        for d in [DomainSpec::unit(), DomainSpec::ray()] {
            assert!(search_counterexample(&f, &d, Inequality::LWeierstrass, &cfg).is_none());
            assert!(search_counterexample(&f, &d, Inequality::Submultiplicative, &cfg).is_none());
        }
    }

    #[test]
    fn cosine_ratio_left_violation() {
        let f = parse("cos(x)/cos(1)").unwrap();
        let w = search_counterexample(
            &f,
            &DomainSpec::unit(),
            Inequality::LWeierstrass,
            &CertifyConfig::default(),
        )
        .unwrap();
        assert!(w.margin > 0.4, "{w}");
        let again = Inequality::LWeierstrass.evaluate(&f, w.x, w.y).unwrap();
        assert!(again.margin >= 0.5 * w.margin);
        // The pair quoted for this example.
        let at_half = Inequality::LWeierstrass.evaluate(&f, 0.5, 0.5).unwrap();
        assert!((at_half.lhs - 1.793_3).abs() < 1e-4);
        assert!((at_half.rhs - 2.248_5).abs() < 1e-4);
        assert!((at_half.margin - 0.455).abs() < 1e-3);
    }

    #[test]
    fn log2_is_submultiplicative_on_grids() {
        let f = parse("log2(1+x)").unwrap();
        let cfg = CertifyConfig::default();
        for d in [DomainSpec::unit(), DomainSpec::ray()] {
            assert!(search_counterexample(&f, &d, Inequality::Submultiplicative, &cfg).is_none());
        }
    }

    #[test]
    fn grid_covers_both_ends() {
        let g = sample_grid(&DomainSpec::unit(), 512);
        assert_eq!(g[0], 1e-6);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.iter().filter(|&&x| x < 1e-3).count() > 100);
    }
}
