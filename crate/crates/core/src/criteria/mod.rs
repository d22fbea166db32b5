//! Classification of a candidate `f` on `(0, 1]` or `[1, ∞)`.
//!
//! Each property is settled by the first route that succeeds:
//!
//! * l-/r-Weierstrass: sign of `G_f = f'/x + f''` (equivalently, monotonicity
//!   of `H_f = x f'`), then — for the left property — the log-convex monotone
//!   pair route, then a counterexample search;
//! * submultiplicativity: a direct 2-D branch-and-bound, which also reports
//!   any violating box centre it meets;
//! * Weierstrass: the conjunction of l-Weierstrass and submultiplicative.
//!
//! Certificates cover the truncated box of the [`DomainSpec`] and say so.

mod closure;
mod search;
mod sign;
mod submult;
mod verdict;

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

pub use closure::{closure_compose, closure_power, closure_product, ClosureError, Factor};
pub use search::{sample_grid, search_counterexample, Inequality};
pub use sign::{certify_sign, Enclosure, SignCertificate, SignGoal, SignOutcome};
pub use submult::{certify_submultiplicative, SubmultOutcome};
pub use verdict::{
    Certificate, Criterion, Outcome, Property, PropertyVerdict, Span, Undecided, Witness,
};

use crate::algebra::JetBase;
use crate::expr::{
    eval_interval, eval_jet2, eval_jet2_interval, eval_point, evaluate, DomainError, DomainSpec,
    DomainSpecError, Expression,
};
use crate::interval::Interval;
use crate::jet::Jet2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyConfig {
    /// Bisection depth limit per dimension.
    pub max_depth: u32,
    /// Weak certificates accept leaves with lower bound `>= -sign_tol`.
    pub sign_tol: f64,
    /// Witnesses must violate their inequality by more than this.
    pub report_tol: f64,
    /// Wall-clock budget per property.
    pub time_budget_ms: u64,
    /// Grid resolution of counterexample searches.
    pub grid_n: usize,
    pub refine_rounds: usize,
    /// Hard cap on processed boxes per certificate.
    pub max_boxes: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            max_depth: 40,
            sign_tol: 1e-9,
            report_tol: 1e-9,
            time_budget_ms: 5_000,
            grid_n: 512,
            refine_rounds: 30,
            max_boxes: 4_000_000,
        }
    }
}

impl CertifyConfig {
    pub fn time_budget(&self) -> Duration {
        Duration::from_millis(self.time_budget_ms)
    }
}

/// `f(1) = 1` and `f > 0` on the truncated box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizationCheck {
    pub f1: f64,
    pub positive_on_box: bool,
    pub detail: Option<String>,
}

impl NormalizationCheck {
    pub const F1_TOLERANCE: f64 = 1e-9;

    pub fn passes(&self) -> bool {
        (self.f1 - 1.0).abs() <= Self::F1_TOLERANCE && self.positive_on_box
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    InvalidDomain(#[from] DomainSpecError),
    #[error("f is not normalised: f(1) = {}, positive on box: {}", .0.f1, .0.positive_on_box)]
    NotNormalized(NormalizationCheck),
    #[error("{error} (sub-box {subbox})")]
    Domain { error: DomainError, subbox: Span },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub expression: String,
    pub domain: DomainSpec,
    pub normalization: NormalizationCheck,
    pub verdicts: Vec<PropertyVerdict>,
}

impl Classification {
    pub fn get(&self, property: Property) -> Option<&PropertyVerdict> {
        self.verdicts.iter().find(|v| v.property == property)
    }
}

/// `H_f(x) = x f'(x)`, at a point or over an interval.
pub fn h_of<A: JetBase>(f: &Expression, x: A) -> Result<A, DomainError> {
    let j: Jet2<A> = evaluate(f, &Jet2::variable(x.clone()))?;
    Ok(x.mul(&j.d1))
}

/// `G_f(x) = f'(x)/x + f''(x)`, the form that never divides by `f'`.
pub fn g_of<A: JetBase>(f: &Expression, x: A) -> Result<A, DomainError> {
    let j: Jet2<A> = evaluate(f, &Jet2::variable(x.clone()))?;
    let q = j.d1.div(&x).ok_or_else(|| DomainError {
        node: f.to_string(),
        argument: x.describe(),
        reason: "G_f needs x != 0".into(),
    })?;
    Ok(q.add(&j.d2))
}

fn claim(ineq: Inequality, domain: &DomainSpec) -> String {
    let (lo, hi) = domain.bounds();
    format!(
        "{} for x, y in [{lo:e}, {hi}] with xy in the same range",
        ineq.text()
    )
}

fn span(domain: &DomainSpec) -> Span {
    domain.box_interval().into()
}

pub fn normalization_check(
    f: &Expression,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<NormalizationCheck, ClassifyError> {
    domain.validate()?;
    let f1 = eval_point(f, 1.0_f64).map_err(|error| ClassifyError::Domain {
        error,
        subbox: Interval::point(1.0).into(),
    })?;
    let out = certify_sign(
        |x| eval_interval(f, x).map(Enclosure::from),
        domain.box_interval(),
        SignGoal::Positive,
        cfg,
    );
    let (positive_on_box, detail) = match out {
        SignOutcome::Certified(_) => (true, None),
        SignOutcome::Undefined { error, subbox } => {
            return Err(ClassifyError::Domain {
                error,
                subbox: subbox.into(),
            })
        }
        other => (
            false,
            Some(format!("positivity not certified: {}", other.describe())),
        ),
    };
    Ok(NormalizationCheck {
        f1,
        positive_on_box,
        detail,
    })
}

fn sign_route_note(side: &str, out: &SignOutcome) -> String {
    format!("G_f {side} 0: {}", out.describe())
}

/// l-Weierstrass (`left`) or r-Weierstrass verdict.
fn weierstrass_side(
    f: &Expression,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
    left: bool,
) -> PropertyVerdict {
    let (property, ineq, sign, side) = if left {
        (Property::LWeierstrass, Inequality::LWeierstrass, 1.0, ">=")
    } else {
        (Property::RWeierstrass, Inequality::RWeierstrass, -1.0, "<=")
    };
    let bx = domain.box_interval();
    let mut notes = Vec::new();
    let verdict = |outcome, notes| PropertyVerdict {
        property,
        domain: *domain,
        outcome,
        notes,
    };

    let g = certify_sign(
        |x| g_of(f, x).map(|g| (g * sign).into()),
        bx,
        SignGoal::NonNegative,
        cfg,
    );
    if let SignOutcome::Certified(c) = g {
        return verdict(
            Outcome::Certified(Certificate {
                criterion: Criterion::HMonotone,
                claim: claim(ineq, domain),
                x_box: span(domain),
                y_box: span(domain),
                max_depth_used: c.max_depth_used,
                leaves: c.leaves,
                strict: c.strict,
                tolerance: c.tolerance,
            }),
            notes,
        );
    }
    notes.push(sign_route_note(side, &g));
    let mut undecided = g.subbox().map(Span::from);

    if left {
        match certify_logconvex_pair(f, domain, cfg) {
            Outcome::Certified(c) => return verdict(Outcome::Certified(c), notes),
            Outcome::Inconclusive(u) => notes.push(format!("log-convex pair: {}", u.reason)),
            Outcome::Refuted(_) => unreachable!("the log-convex route never refutes"),
        }
    }

    match search_counterexample(f, domain, ineq, cfg) {
        Some(w) => verdict(Outcome::Refuted(w), notes),
        None => {
            notes.push(format!(
                "no violation above {:e} on a {} x {} grid",
                cfg.report_tol, cfg.grid_n, cfg.grid_n
            ));
            if undecided.is_none() {
                undecided = Some(span(domain));
            }
            verdict(
                Outcome::inconclusive("no certificate and no counterexample", undecided, None),
                notes,
            )
        }
    }
}

/// Log-convex route: `f` log-convex and both `f`, `x f(x)` strictly monotone in
/// the same direction on the box imply the l-Weierstrass property.
///
/// `(x f)'` suffers cancellation near 0 for functions like `Γ(ax)`, so its
/// certificate uses a centred form with `(x f)'' = 2 f' + x f''`.
pub fn certify_logconvex_pair(f: &Expression, domain: &DomainSpec, cfg: &CertifyConfig) -> Outcome {
    let bx = domain.box_interval();
    let fail = |what: &str, out: &SignOutcome| {
        Outcome::inconclusive(
            format!("{what}: {}", out.describe()),
            out.subbox().map(Span::from),
            None,
        )
    };

    let logc = certify_sign(
        |x| {
            let j = eval_jet2_interval(f, x)?;
            Ok((j.v * j.d2 - j.d1.sqr()).into())
        },
        bx,
        SignGoal::NonNegative,
        cfg,
    );
    let SignOutcome::Certified(c1) = logc else {
        return fail("f f'' - f'^2 >= 0 not certified", &logc);
    };

    let d1 = match eval_jet2(f, bx.mid()) {
        Ok(j) => j.d1,
        Err(e) => return Outcome::inconclusive(e.to_string(), Some(bx.into()), None),
    };
    let s = if d1 < 0.0 { -1.0 } else { 1.0 };
    let dir = if s < 0.0 { "decreasing" } else { "increasing" };

    let mono = certify_sign(
        |x| eval_jet2_interval(f, x).map(|j| (j.d1 * s).into()),
        bx,
        SignGoal::Positive,
        cfg,
    );
    let SignOutcome::Certified(c2) = mono else {
        return fail(&format!("f not certified strictly {dir}"), &mono);
    };

    let xf = certify_sign(
        |x| {
            let j = eval_jet2_interval(f, x)?;
            Ok(Enclosure {
                range: (j.v + x * j.d1) * s,
                slope: Some((j.d1 * 2.0 + x * j.d2) * s),
            })
        },
        bx,
        SignGoal::NonNegative,
        cfg,
    );
    let SignOutcome::Certified(c3) = xf else {
        return fail(&format!("x f(x) not certified {dir}"), &xf);
    };

    Outcome::Certified(Certificate {
        criterion: Criterion::LogConvexPair,
        claim: claim(Inequality::LWeierstrass, domain),
        x_box: span(domain),
        y_box: span(domain),
        max_depth_used: c1
            .max_depth_used
            .max(c2.max_depth_used)
            .max(c3.max_depth_used),
        leaves: c1.leaves + c2.leaves + c3.leaves,
        strict: false,
        tolerance: cfg.sign_tol,
    })
}

fn submultiplicative(f: &Expression, domain: &DomainSpec, cfg: &CertifyConfig) -> PropertyVerdict {
    let mut notes = Vec::new();
    let outcome = match certify_submultiplicative(f, domain, cfg) {
        Ok(SubmultOutcome::Certified {
            max_depth_used,
            leaves,
            skipped_by_symmetry,
        }) => {
            notes.push(format!("{skipped_by_symmetry} boxes covered by symmetry"));
            let (lo, hi) = domain.bounds();
            Outcome::Certified(Certificate {
                criterion: Criterion::DirectEnclosure,
                claim: format!(
                    "{} for all x, y in [{lo:e}, {hi}]",
                    Inequality::Submultiplicative.text()
                ),
                x_box: span(domain),
                y_box: span(domain),
                max_depth_used,
                leaves,
                strict: false,
                tolerance: cfg.sign_tol,
            })
        }
        Ok(SubmultOutcome::Refuted(w)) => Outcome::Refuted(w),
        Ok(SubmultOutcome::Inconclusive { reason, x, y }) => {
            notes.push(format!("branch-and-bound: {reason}"));
            match search_counterexample(f, domain, Inequality::Submultiplicative, cfg) {
                Some(w) => Outcome::Refuted(w),
                None => Outcome::inconclusive(reason, Some(x.into()), Some(y.into())),
            }
        }
        Err(e) => {
            notes.push(format!("branch-and-bound: {e}"));
            match search_counterexample(f, domain, Inequality::Submultiplicative, cfg) {
                Some(w) => Outcome::Refuted(w),
                None => Outcome::inconclusive(e.to_string(), Some(span(domain)), None),
            }
        }
    };
    PropertyVerdict {
        property: Property::Submultiplicative,
        domain: *domain,
        outcome,
        notes,
    }
}

/// Weierstrass = l-Weierstrass and submultiplicative.
pub fn conjunction(l: &PropertyVerdict, s: &PropertyVerdict) -> PropertyVerdict {
    let outcome = match (&l.outcome, &s.outcome) {
        (Outcome::Certified(a), Outcome::Certified(b)) => Outcome::Certified(Certificate {
            criterion: Criterion::Conjunction,
            claim: format!("{}; {}", a.claim, b.claim),
            x_box: a.x_box,
            y_box: a.y_box,
            max_depth_used: a.max_depth_used.max(b.max_depth_used),
            leaves: a.leaves + b.leaves,
            strict: a.strict,
            tolerance: a.tolerance.max(b.tolerance),
        }),
        (Outcome::Refuted(w), _) | (_, Outcome::Refuted(w)) => Outcome::Refuted(w.clone()),
        (Outcome::Inconclusive(u), _) | (_, Outcome::Inconclusive(u)) => {
            Outcome::Inconclusive(u.clone())
        }
    };
    PropertyVerdict {
        property: Property::Weierstrass,
        domain: l.domain,
        outcome,
        notes: vec![format!(
            "l-Weierstrass {}, submultiplicative {}",
            l.outcome.label(),
            s.outcome.label()
        )],
    }
}

/// Runs every property for `f` on `domain`. The three independent properties
/// are evaluated in parallel; the result does not depend on scheduling.
pub fn classify(
    f: &Expression,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<Classification, ClassifyError> {
    let normalization = normalization_check(f, domain, cfg)?;
    if !normalization.passes() {
        return Err(ClassifyError::NotNormalized(normalization));
    }
    let (l, (r, s)) = rayon::join(
        || weierstrass_side(f, domain, cfg, true),
        || {
            rayon::join(
                || weierstrass_side(f, domain, cfg, false),
                || submultiplicative(f, domain, cfg),
            )
        },
    );
    let w = conjunction(&l, &s);
    Ok(Classification {
        expression: f.to_string(),
        domain: *domain,
        normalization,
        verdicts: vec![l, r, s, w],
    })
}
