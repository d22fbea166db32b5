//! Direct point checkers for the concrete inequalities, with seeded fuzz
//! harnesses. These are an oracle layer independent of the interval
//! certificates in [`crate::criteria`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{eval_point, DomainError, DomainKind, DomainSpec, Expression};
use crate::special::{self, SpecialError, X_MIN};

/// Default fuzz seed.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// A report `holds` when `slack >= -HOLD_TOL`.
pub const HOLD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IneqError {
    #[error("need at least 2 inputs, got {0}")]
    TooFewInputs(usize),
    #[error("{name} = {value} is outside {allowed}")]
    Domain {
        name: String,
        value: f64,
        allowed: String,
    },
    #[error("inputs straddle 1; (0, 1] and [1, inf) are separate claims")]
    MixedDomain,
    #[error("f is not strictly monotone on {0}")]
    NotMonotone(String),
    #[error("{y} is outside the range [{lo}, {hi}] of f on the box")]
    OutOfRange { y: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Eval(#[from] DomainError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn out_of(name: impl Into<String>, value: f64, allowed: &str) -> IneqError {
    IneqError::Domain {
        name: name.into(),
        value,
        allowed: allowed.into(),
    }
}

/// Outcome of one evaluation. `slack` is oriented so that non-negative means
/// the inequality holds; the first note states the orientation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IneqReport {
    pub name: String,
    pub inputs: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub notes: Vec<String>,
}

impl IneqReport {
    fn new(name: &str, inputs: Vec<f64>, lhs: f64, rhs: f64, slack: f64, relation: &str) -> Self {
        let holds = slack >= -HOLD_TOL;
        let mut notes = vec![format!("checks {relation}")];
        if holds && slack < 0.0 {
            notes.push(format!("holds within tolerance {HOLD_TOL:e}"));
        }
        IneqReport {
            name: name.into(),
            inputs,
            lhs,
            rhs,
            slack,
            holds,
            notes,
        }
    }

    /// Report for `lhs >= rhs`.
    fn geq(name: &str, inputs: Vec<f64>, lhs: f64, rhs: f64, relation: &str) -> Self {
        Self::new(name, inputs, lhs, rhs, lhs - rhs, relation)
    }

    /// Report for `lhs <= rhs`.
    fn leq(name: &str, inputs: Vec<f64>, lhs: f64, rhs: f64, relation: &str) -> Self {
        Self::new(name, inputs, lhs, rhs, rhs - lhs, relation)
    }
}

fn at_least_two(x: &[f64]) -> Result<(), IneqError> {
    if x.len() < 2 {
        Err(IneqError::TooFewInputs(x.len()))
    } else {
        Ok(())
    }
}

/// `∏(1 - a_i) >= 1 - Σ a_i` for `a_i` in `(0, 1)`.
pub fn check_classical(a: &[f64]) -> Result<IneqReport, IneqError> {
    at_least_two(a)?;
    for (i, &ai) in a.iter().enumerate() {
        if !(ai > 0.0 && ai < 1.0) {
            return Err(out_of(format!("a[{i}]"), ai, "(0, 1)"));
        }
    }
    let lhs: f64 = a.iter().map(|ai| 1.0 - ai).product();
    let rhs = 1.0 - a.iter().sum::<f64>();
    Ok(IneqReport::geq(
        "classical",
        a.to_vec(),
        lhs,
        rhs,
        "prod(1 - a_i) >= 1 - sum(a_i)",
    ))
}

/// Which of `(0, 1]` and `[1, ∞)` holds all of `x`. All-ones is reported as
/// the unit interval.
pub fn infer_domain(x: &[f64]) -> Result<DomainKind, IneqError> {
    for (i, &xi) in x.iter().enumerate() {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(out_of(format!("x[{i}]"), xi, "(0, 1] or [1, inf)"));
        }
    }
    let below = x.iter().any(|&xi| xi < 1.0);
    let above = x.iter().any(|&xi| xi > 1.0);
    match (below, above) {
        (true, true) => Err(IneqError::MixedDomain),
        (false, true) => Ok(DomainKind::RayFromOne),
        _ => Ok(DomainKind::UnitInterval),
    }
}

fn require_in(x: &[f64], kind: DomainKind) -> Result<(), IneqError> {
    let inferred = infer_domain(x)?;
    let all_ones = x.iter().all(|&xi| xi == 1.0);
    if inferred != kind && !all_ones {
        return Err(IneqError::MixedDomain);
    }
    Ok(())
}

/// `∏ x_i >= Σ x_i - (n - 1)`, separately on `(0, 1]` and `[1, ∞)`.
pub fn check_product_form(x: &[f64]) -> Result<IneqReport, IneqError> {
    at_least_two(x)?;
    let kind = infer_domain(x)?;
    let lhs: f64 = x.iter().product();
    let rhs = x.iter().sum::<f64>() - (x.len() as f64 - 1.0);
    let mut r = IneqReport::geq(
        "product",
        x.to_vec(),
        lhs,
        rhs,
        "prod(x_i) >= sum(x_i) - (n - 1)",
    );
    r.notes.push(format!("domain {kind:?}"));
    Ok(r)
}

/// The three-term expansion `x1(1+x2) + x2(1+x3) + x3(1+x1) <= 3(1 + x1 x2 x3)`.
pub fn expanded_three(x1: f64, x2: f64, x3: f64) -> (f64, f64) {
    (
        x1 * (1.0 + x2) + x2 * (1.0 + x3) + x3 * (1.0 + x1),
        3.0 * (1.0 + x1 * x2 * x3),
    )
}

/// `∏(1 + x_i) <= 2^(n-1) (1 + ∏ x_i)` with all `x_i` in the same `J`.
pub fn check_log_product(x: &[f64], kind: DomainKind) -> Result<IneqReport, IneqError> {
    at_least_two(x)?;
    require_in(x, kind)?;
    let lhs: f64 = x.iter().map(|xi| 1.0 + xi).product();
    let rhs = 2f64.powi(x.len() as i32 - 1) * (1.0 + x.iter().product::<f64>());
    let mut r = IneqReport::leq(
        "logprod",
        x.to_vec(),
        lhs,
        rhs,
        "prod(1 + x_i) <= 2^(n-1) (1 + prod(x_i))",
    );
    r.notes.push(format!("domain {kind:?}"));
    if let [x1, x2, x3] = *x {
        let (l3, r3) = expanded_three(x1, x2, x3);
        r.notes.push(format!(
            "expanded form x1(1+x2) + x2(1+x3) + x3(1+x1) <= 3(1 + x1 x2 x3): {l3} <= {r3}, slack {:e}",
            r3 - l3
        ));
    }
    Ok(r)
}

/// `Ψ(y)`, the inverse of `f` on the truncated box, by bisection to full
/// double precision.
pub fn invert_numeric(f: &Expression, domain: &DomainSpec, y: f64) -> Result<f64, IneqError> {
    const PROBES: usize = 256;
    let (lo, hi) = domain.bounds();
    let mut prev = eval_point(f, lo)?;
    let increasing = eval_point(f, hi)? > prev;
    for k in 1..=PROBES {
        let t = lo + (hi - lo) * k as f64 / PROBES as f64;
        let v = eval_point(f, t)?;
        if (v > prev) != increasing || v == prev {
            return Err(IneqError::NotMonotone(domain.to_string()));
        }
        prev = v;
    }
    let (flo, fhi) = (eval_point(f, lo)?, eval_point(f, hi)?);
    let (rlo, rhi) = (flo.min(fhi), flo.max(fhi));
    if !(rlo..=rhi).contains(&y) {
        return Err(IneqError::OutOfRange {
            y,
            lo: rlo,
            hi: rhi,
        });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2100 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (eval_point(f, m)? < y) == increasing {
            a = m;
        } else {
            b = m;
        }
    }
    // Pick the endpoint whose image is closer.
    let (fa, fb) = (eval_point(f, a)?, eval_point(f, b)?);
    Ok(if (fa - y).abs() <= (fb - y).abs() {
        a
    } else {
        b
    })
}

/// A three-term chain `lower <= middle <= upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    #[serde(flatten)]
    pub report: IneqReport,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// `middle - lower`.
    pub lower_slack: f64,
    /// `upper - middle`.
    pub upper_slack: f64,
}

fn chain(
    name: &str,
    inputs: Vec<f64>,
    lower: f64,
    middle: f64,
    upper: f64,
    relation: &str,
) -> ChainReport {
    let (lower_slack, upper_slack) = (middle - lower, upper - middle);
    let mut report = IneqReport::new(
        name,
        inputs,
        lower,
        upper,
        lower_slack.min(upper_slack),
        relation,
    );
    report.notes.push(format!(
        "middle term {middle}; lower slack {lower_slack:e}, upper slack {upper_slack:e}"
    ));
    ChainReport {
        report,
        lower,
        middle,
        upper,
        lower_slack,
        upper_slack,
    }
}

/// `x + y - 1 <= f(Ψ(x) Ψ(y)) <= xy` with `Ψ = f⁻¹`.
pub fn check_sandwich(
    f: &Expression,
    domain: &DomainSpec,
    x: f64,
    y: f64,
) -> Result<ChainReport, IneqError> {
    for (name, v) in [("x", x), ("y", y)] {
        if !domain.contains(v) {
            return Err(out_of(name, v, &domain.to_string()));
        }
    }
    let (px, py) = (invert_numeric(f, domain, x)?, invert_numeric(f, domain, y)?);
    let middle = eval_point(f, px * py)?;
    let mut r = chain(
        "sandwich",
        vec![x, y],
        x + y - 1.0,
        middle,
        x * y,
        "x + y - 1 <= f(Psi(x) Psi(y)) <= xy",
    );
    r.report
        .notes
        .push(format!("f = {f}; Psi(x) = {px}, Psi(y) = {py}"));
    Ok(r)
}

/// The sine chain exactly as displayed:
/// `x + y - 1 <= sin((4/π) arcsin(x) arcsin(y)) <= xy`.
///
/// The display does not hold: at `x = y = 1` the middle term is `sin π = 0`.
pub fn check_sin_display(x: f64, y: f64) -> Result<ChainReport, IneqError> {
    for (name, v) in [("x", x), ("y", y)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(out_of(name, v, "(0, 1]"));
        }
    }
    let middle = (4.0 / std::f64::consts::PI * x.asin() * y.asin()).sin();
    let mut r = chain(
        "sin",
        vec![x, y],
        x + y - 1.0,
        middle,
        x * y,
        "x + y - 1 <= sin((4/pi) arcsin(x) arcsin(y)) <= xy, as printed",
    );
    r.report.notes.push(
        "evaluated as printed; the associated f(x) = sin(pi x / 4) has f(1) = 0.7071..., not 1"
            .into(),
    );
    Ok(r)
}

/// `x_1 = x_min - 1`.
pub fn x1() -> f64 {
    X_MIN - 1.0
}

/// `Γ(axy) >= Γ(ax) + Γ(ay) - Γ(a)` for `0 < a <= x_1`, `x, y` in `(0, 1]`.
pub fn check_gamma_ineq(a: f64, x: f64, y: f64) -> Result<IneqReport, IneqError> {
    if !(a > 0.0 && a <= x1()) {
        return Err(out_of("a", a, "(0, x1]"));
    }
    for (name, v) in [("x", x), ("y", y)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(out_of(name, v, "(0, 1]"));
        }
    }
    let g = special::gamma::<f64>;
    let lhs = g(a * x * y)?;
    let rhs = g(a * x)? + g(a * y)? - g(a)?;
    Ok(IneqReport::geq(
        "gamma",
        vec![a, x, y],
        lhs,
        rhs,
        "Gamma(axy) >= Gamma(ax) + Gamma(ay) - Gamma(a)",
    ))
}

/// `Γ(uv/a) >= Γ(u) + Γ(v) - Γ(a)` for `0 < a < x_1`, `u, v` in `(0, a]`.
pub fn check_gamma_uv(a: f64, u: f64, v: f64) -> Result<IneqReport, IneqError> {
    if !(a > 0.0 && a < x1()) {
        return Err(out_of("a", a, "(0, x1)"));
    }
    for (name, t) in [("u", u), ("v", v)] {
        if !(t > 0.0 && t <= a) {
            return Err(out_of(name, t, "(0, a]"));
        }
    }
    let g = special::gamma::<f64>;
    let lhs = g(u * v / a)?;
    let rhs = g(u)? + g(v)? - g(a)?;
    let mut r = IneqReport::geq(
        "gamma-uv",
        vec![a, u, v],
        lhs,
        rhs,
        "Gamma(uv/a) >= Gamma(u) + Gamma(v) - Gamma(a)",
    );
    r.notes.push(
        "argument read as uv/a (the substitution u = ax, v = ay); the printed Gamma(xy/a) uses unbound names"
            .into(),
    );
    Ok(r)
}

/// Aggregate of a fuzz run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub name: String,
    pub seed: u64,
    pub samples: usize,
    pub violations: usize,
    pub min_slack: f64,
    pub worst_inputs: Vec<f64>,
}

impl FuzzSummary {
    fn empty(name: &str, seed: u64) -> Self {
        FuzzSummary {
            name: name.into(),
            seed,
            samples: 0,
            violations: 0,
            min_slack: f64::INFINITY,
            worst_inputs: Vec::new(),
        }
    }

    fn add(&mut self, r: &IneqReport) {
        self.samples += 1;
        if !r.holds {
            self.violations += 1;
        }
        if r.slack < self.min_slack {
            self.min_slack = r.slack;
            self.worst_inputs = r.inputs.clone();
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.violations += other.violations;
        if other.min_slack < self.min_slack {
            self.min_slack = other.min_slack;
            self.worst_inputs = other.worst_inputs;
        }
        self
    }
}

const CHUNK: usize = 4096;

/// Runs `samples` draws in parallel chunks. Chunk `k` uses ChaCha stream `k`
/// of `seed`, so the result is independent of thread count.
pub fn fuzz<F>(name: &str, samples: usize, seed: u64, draw: F) -> FuzzSummary
where
    F: Fn(&mut ChaCha8Rng) -> Option<IneqReport> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut s = FuzzSummary::empty(name, seed);
            for _ in 0..CHUNK.min(samples - k * CHUNK) {
                if let Some(r) = draw(&mut rng) {
                    s.add(&r);
                }
            }
            s
        })
        .reduce(|| FuzzSummary::empty(name, seed), FuzzSummary::merge)
}

/// Uniform on `(0, 1]`.
pub fn unit_sample(rng: &mut impl Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// A draw on `[1, ∞)`: `1/u` with `u` uniform on `(0, 1]`.
pub fn ray_sample(rng: &mut impl Rng) -> f64 {
    1.0 / unit_sample(rng)
}

pub fn fuzz_classical(samples: usize, seed: u64) -> FuzzSummary {
    fuzz("classical", samples, seed, |rng| {
        let n = rng.gen_range(2..=8);
        let a: Vec<f64> = (0..n)
            .map(|_| rng.gen::<f64>())
            .filter(|&v| v > 0.0)
            .collect();
        check_classical(&a).ok()
    })
}

pub fn fuzz_log_product(kind: DomainKind, samples: usize, seed: u64) -> FuzzSummary {
    fuzz("logprod", samples, seed, |rng| {
        let n = rng.gen_range(2..=8);
        let x: Vec<f64> = (0..n)
            .map(|_| match kind {
                DomainKind::UnitInterval => unit_sample(rng),
                DomainKind::RayFromOne => ray_sample(rng),
            })
            .collect();
        check_log_product(&x, kind).ok()
    })
}

pub fn fuzz_gamma(a: f64, samples: usize, seed: u64) -> FuzzSummary {
    fuzz("gamma", samples, seed, |rng| {
        check_gamma_ineq(a, unit_sample(rng), unit_sample(rng)).ok()
    })
}

pub fn fuzz_gamma_uv(a: f64, samples: usize, seed: u64) -> FuzzSummary {
    fuzz("gamma-uv", samples, seed, |rng| {
        check_gamma_uv(a, a * unit_sample(rng), a * unit_sample(rng)).ok()
    })
}

/// Sandwich chain at pairs uniform on `[lo, 1]²`.
pub fn fuzz_sandwich(
    f: &Expression,
    domain: &DomainSpec,
    lo: f64,
    samples: usize,
    seed: u64,
) -> FuzzSummary {
    fuzz("sandwich", samples, seed, |rng| {
        let x = rng.gen_range(lo..=1.0);
        let y = rng.gen_range(lo..=1.0);
        check_sandwich(f, domain, x, y).ok().map(|c| c.report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    const SEED: u64 = 0x5eed;

    #[test]
    fn classical_examples() {
        let r = check_classical(&[0.5, 0.5]).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.25, 0.0));
        assert!(r.holds);
        let r = check_classical(&[0.9, 0.9, 0.9]).unwrap();
        assert!((r.lhs - 0.001).abs() < 1e-15 && (r.rhs + 1.7).abs() < 1e-15);
        assert!(check_classical(&[0.5, 1.0]).is_err());
        assert!(matches!(
            check_classical(&[0.5]),
            Err(IneqError::TooFewInputs(1))
        ));
        let s = fuzz_classical(20_000, SEED);
        assert_eq!((s.samples, s.violations), (20_000, 0));
    }

    #[test]
    fn product_form_examples() {
        let r = check_product_form(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.slack, 0.0);
        let r = check_product_form(&[2.0, 3.0]).unwrap();
        assert_eq!((r.lhs, r.rhs), (6.0, 4.0));
        assert!(matches!(
            check_product_form(&[0.5, 1.5]),
            Err(IneqError::MixedDomain)
        ));
    }

    #[test]
    fn log_product_examples() {
        let r = check_log_product(&[1.0, 1.0], DomainKind::UnitInterval).unwrap();
        assert_eq!((r.lhs, r.rhs, r.slack), (4.0, 4.0, 0.0));
        let r = check_log_product(&[1.0, 1.0, 1.0], DomainKind::RayFromOne).unwrap();
        assert_eq!(r.slack, 0.0);
        assert_eq!(expanded_three(1.0, 1.0, 1.0), (6.0, 6.0));
        assert!(r.notes.iter().any(|n| n.contains("expanded form")));
        let r = check_log_product(&[0.3, 0.5, 0.9], DomainKind::UnitInterval).unwrap();
        assert!(r.holds && r.slack > 0.0);
        assert!(matches!(
            check_log_product(&[0.5, 2.0], DomainKind::UnitInterval),
            Err(IneqError::MixedDomain)
        ));
        assert!(check_log_product(&[2.0, 3.0], DomainKind::UnitInterval).is_err());
    }

    #[test]
    fn log_product_n2_is_the_pair_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..1000 {
            for kind in [DomainKind::UnitInterval, DomainKind::RayFromOne] {
                let (x, y) = match kind {
                    DomainKind::UnitInterval => (unit_sample(&mut rng), unit_sample(&mut rng)),
                    DomainKind::RayFromOne => (ray_sample(&mut rng), ray_sample(&mut rng)),
                };
                let r = check_log_product(&[x, y], kind).unwrap();
                // (1+x)(1+y) <= 2(1+xy)  <=>  x + y <= 1 + xy, same slack.
                let pair = 1.0 + x * y - x - y;
                assert!((r.slack - pair).abs() <= 1e-12 * (1.0 + r.rhs.abs()));
            }
        }
    }

    #[test]
    fn inversion_examples() {
        let d = DomainSpec::unit();
        assert!((invert_numeric(&parse("x").unwrap(), &d, 0.3).unwrap() - 0.3).abs() < 1e-12);
        let f = parse("(4/pi)*arctan(x)").unwrap();
        assert!((invert_numeric(&f, &d, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let psi = invert_numeric(&f, &d, 0.5).unwrap();
        assert!((psi - (std::f64::consts::PI / 8.0).tan()).abs() < 1e-12);
        assert!((eval_point(&f, psi).unwrap() - 0.5).abs() < 1e-10);
        assert!(matches!(
            invert_numeric(&f, &d, 1.5),
            Err(IneqError::OutOfRange { .. })
        ));
        let bump = parse("1 - (x - 0.5)^2 + 0.25").unwrap();
        assert!(matches!(
            invert_numeric(&bump, &d, 1.1),
            Err(IneqError::NotMonotone(_))
        ));
    }

    #[test]
    fn sandwich_examples() {
        let d = DomainSpec::unit();
        let id = parse("x").unwrap();
        let r = check_sandwich(&id, &d, 0.3, 0.6).unwrap();
        assert!((r.middle - 0.18).abs() < 1e-12 && (r.lower + 0.1).abs() < 1e-15);
        let f = parse("(4/pi)*arctan(x)").unwrap();
        let r = check_sandwich(&f, &d, 1.0, 1.0).unwrap();
        assert!(r.lower_slack.abs() < 1e-10 && r.upper_slack.abs() < 1e-10);
        let s = fuzz_sandwich(&f, &d, 1e-3, 2000, SEED);
        assert_eq!(s.violations, 0);
        assert!(s.min_slack >= -1e-10);
    }

    #[test]
    fn sandwich_middle_is_monotone() {
        let d = DomainSpec::unit();
        let f = parse("(4/pi)*arctan(x)").unwrap();
        let y = 0.7;
        let mids: Vec<f64> = (1..=20)
            .map(|k| check_sandwich(&f, &d, k as f64 / 20.0, y).unwrap().middle)
            .collect();
        assert!(mids.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn printed_sine_chain_fails_at_the_corner() {
        let r = check_sin_display(1.0, 1.0).unwrap();
        assert!(!r.report.holds);
        assert!((r.report.slack + 1.0).abs() < 1e-10);
        assert!(r.middle.abs() < 1e-15);
        let r = check_sin_display(0.1, 0.1).unwrap();
        // mpmath, 40 digits.
        assert!((r.middle - 0.012_774_717_100_998_456).abs() < 1e-16);
        let r = check_sin_display(1.0, 1e-9).unwrap();
        assert!(r.lower.abs() < 1e-8 && r.middle.abs() < 1e-8);
    }

    #[test]
    fn gamma_examples() {
        let r = check_gamma_ineq(0.4, 1.0, 1.0).unwrap();
        assert!(r.slack.abs() < 1e-12);
        let r = check_gamma_ineq(0.4616, 0.5, 0.5).unwrap();
        assert!(r.holds && r.slack > 0.0);
        assert!(check_gamma_ineq(0.5, 0.5, 0.5).is_err());
        let s = fuzz_gamma(0.2, 10_000, SEED);
        assert_eq!(s.violations, 0);
        let s = fuzz_gamma_uv(0.2, 10_000, SEED);
        assert_eq!(s.violations, 0);
        assert!(check_gamma_uv(0.2, 0.3, 0.1).is_err());
    }

    #[test]
    fn gamma_slack_has_no_violation_as_a_decreases() {
        let pts = [0.05, 0.2, 0.5, 0.8, 0.99];
        for &x in &pts {
            for &y in &pts {
                for a in [0.1, 0.2, 0.3, 0.4, 0.46] {
                    assert!(check_gamma_ineq(a, x, y).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn fuzz_is_reproducible() {
        let a = fuzz_log_product(DomainKind::RayFromOne, 10_000, 7);
        let b = fuzz_log_product(DomainKind::RayFromOne, 10_000, 7);
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
    }

    #[test]
    fn reports_serialize_with_the_stable_keys() {
        let r = check_classical(&[0.5, 0.5]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["holds", "inputs", "lhs", "name", "notes", "rhs", "slack"]
        );
    }
}
