//! Derived verdicts from the product, composition and power closure rules.
//!
//! These rules only ever produce certificates. Side conditions the rules
//! rely on (monotone factors, `f` mapping `J` into itself) are certified here
//! rather than assumed.

use thiserror::Error;

use super::sign::{certify_sign, Enclosure, SignGoal, SignOutcome};
use super::{Certificate, CertifyConfig, Criterion, Outcome, Property, PropertyVerdict};
use crate::expr::{
    eval_interval, eval_jet2_interval, eval_point, DomainKind, DomainSpec, Expression,
};
use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosureError {
    #[error("precondition not certified: {0}")]
    PreconditionNotCertified(String),
}

fn missing(what: impl Into<String>) -> ClosureError {
    ClosureError::PreconditionNotCertified(what.into())
}

/// A function together with verdicts previously obtained for it.
#[derive(Debug, Clone, Copy)]
pub struct Factor<'a> {
    pub expr: &'a Expression,
    pub verdicts: &'a [PropertyVerdict],
}

impl<'a> Factor<'a> {
    pub fn new(expr: &'a Expression, verdicts: &'a [PropertyVerdict]) -> Self {
        Factor { expr, verdicts }
    }

    fn certified(
        &self,
        property: Property,
        criterion: Option<Criterion>,
        domain: &DomainSpec,
    ) -> Result<&'a Certificate, ClosureError> {
        self.verdicts
            .iter()
            .filter(|v| v.property == property && v.domain == *domain)
            .find_map(|v| v.certificate())
            .filter(|c| criterion.is_none_or(|k| c.criterion == k))
            .ok_or_else(|| {
                let how = criterion.map_or(String::new(), |k| format!(" via {}", k.describe()));
                missing(format!(
                    "{} of {} on {domain}{how}",
                    property.name(),
                    self.expr
                ))
            })
    }
}

fn sign(
    what: String,
    target: impl Fn(Interval) -> Result<Interval, crate::expr::DomainError>,
    bx: Interval,
    cfg: &CertifyConfig,
) -> Result<(), ClosureError> {
    match certify_sign(
        |x| target(x).map(Enclosure::from),
        bx,
        SignGoal::NonNegative,
        cfg,
    ) {
        SignOutcome::Certified(_) => Ok(()),
        other => Err(missing(format!("{what}: {}", other.describe()))),
    }
}

fn nondecreasing(f: &Expression, bx: Interval, cfg: &CertifyConfig) -> Result<(), ClosureError> {
    sign(
        format!("{f} non-decreasing on {bx}"),
        |x| eval_jet2_interval(f, x).map(|j| j.d1),
        bx,
        cfg,
    )
}

/// `f(bx)` lies in `J`: `f <= 1` on the unit interval, `f >= 1` on the ray.
fn maps_into_j(
    f: &Expression,
    bx: Interval,
    kind: DomainKind,
    cfg: &CertifyConfig,
) -> Result<(), ClosureError> {
    let unit = kind == DomainKind::UnitInterval;
    sign(
        format!("{f} maps {bx} into J"),
        |x| {
            let v = eval_interval(f, x)?;
            Ok(if unit { -(v + (-1.0)) } else { v + (-1.0) })
        },
        bx,
        cfg,
    )
}

fn derived(
    property: Property,
    criterion: Criterion,
    claim: String,
    domain: &DomainSpec,
    from: &[&Certificate],
    cfg: &CertifyConfig,
    notes: Vec<String>,
) -> PropertyVerdict {
    let bx = domain.box_interval().into();
    PropertyVerdict {
        property,
        domain: *domain,
        outcome: Outcome::Certified(Certificate {
            criterion,
            claim,
            x_box: bx,
            y_box: bx,
            max_depth_used: from.iter().map(|c| c.max_depth_used).max().unwrap_or(0),
            leaves: from.iter().map(|c| c.leaves).sum(),
            strict: !from.is_empty() && from.iter().all(|c| c.strict),
            tolerance: cfg.sign_tol,
        }),
        notes,
    }
}

/// `f_1 ⋯ f_k` is Weierstrass when every factor is submultiplicative,
/// H-monotone and non-decreasing on the same box.
///
/// Non-decrease is required in addition to the H-criterion: the product rule
/// `H_{fg} = H_f g + f H_g` only preserves monotonicity for non-negative,
/// non-decreasing factors.
pub fn closure_product(
    factors: &[Factor<'_>],
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<PropertyVerdict, ClosureError> {
    if factors.len() < 2 {
        return Err(missing("a product needs at least two factors"));
    }
    let bx = domain.box_interval();
    let mut used = Vec::new();
    for fac in factors {
        used.push(fac.certified(Property::LWeierstrass, Some(Criterion::HMonotone), domain)?);
        used.push(fac.certified(Property::Submultiplicative, None, domain)?);
        nondecreasing(fac.expr, bx, cfg)?;
    }
    let names: Vec<String> = factors.iter().map(|f| format!("({})", f.expr)).collect();
    let product = names.join(" * ");
    Ok(derived(
        Property::Weierstrass,
        Criterion::ProductClosure,
        format!("{product} is Weierstrass on {domain}"),
        domain,
        &used,
        cfg,
        vec![format!("factors: {}", names.join(", "))],
    ))
}

/// `g ∘ f` is l-Weierstrass when `f` is H-monotone and non-decreasing with
/// values in `J`, and `g(1) = 1` with `g`, `g'` non-decreasing on the range
/// of `f`. If both are also submultiplicative (and `f` maps the box into
/// itself, where `g`'s certificate lives) the result is Weierstrass.
pub fn closure_compose(
    f: Factor<'_>,
    g: Factor<'_>,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<PropertyVerdict, ClosureError> {
    let bx = domain.box_interval();
    let fl = f.certified(Property::LWeierstrass, Some(Criterion::HMonotone), domain)?;
    nondecreasing(f.expr, bx, cfg)?;
    maps_into_j(f.expr, bx, domain.kind, cfg)?;

    let g1 = eval_point(g.expr, 1.0_f64).map_err(|e| missing(format!("g(1): {e}")))?;
    if (g1 - 1.0).abs() > 1e-9 {
        return Err(missing(format!("g(1) = 1 (got {g1})")));
    }
    let range = eval_interval(f.expr, bx).map_err(|e| missing(format!("range of f: {e}")))?;
    let (lo, hi) = match domain.kind {
        DomainKind::UnitInterval => (range.lo().max(f64::MIN_POSITIVE), range.hi().min(1.0)),
        DomainKind::RayFromOne => (range.lo().max(1.0), range.hi()),
    };
    let r = Interval::new(lo, hi.max(lo)).expect("ordered");
    nondecreasing(g.expr, r, cfg)?;
    sign(
        format!("{} convex on {r}", g.expr),
        |x| eval_jet2_interval(g.expr, x).map(|j| j.d2),
        r,
        cfg,
    )?;
    maps_into_j(g.expr, r, domain.kind, cfg)?;

    let composed = g.expr.compose(f.expr);
    let mut used = vec![fl];
    let mut notes = vec![format!("range of f enclosed in {r}")];
    let full = (|| {
        let fs = f
            .certified(Property::Submultiplicative, None, domain)
            .ok()?;
        let gs = g
            .certified(Property::Submultiplicative, None, domain)
            .ok()?;
        r.subset_of(&bx).then_some((fs, gs))
    })();
    let property = match full {
        Some((fs, gs)) => {
            used.extend([fs, gs]);
            Property::Weierstrass
        }
        None => {
            notes.push("submultiplicativity of f and g on the range not both certified".into());
            Property::LWeierstrass
        }
    };
    Ok(derived(
        property,
        Criterion::CompositionClosure,
        format!("{composed} is {} on {domain}", property.name()),
        domain,
        &used,
        cfg,
        notes,
    ))
}

/// `f^alpha` is Weierstrass for `alpha > 1` when `f` is, provided `f` maps
/// the box into `J` (certified here). `alpha = 1` returns `f`'s own verdict.
pub fn closure_power(
    f: Factor<'_>,
    alpha: f64,
    domain: &DomainSpec,
    cfg: &CertifyConfig,
) -> Result<PropertyVerdict, ClosureError> {
    if !(alpha.is_finite() && alpha >= 1.0) {
        return Err(missing(format!("alpha > 1 (got {alpha})")));
    }
    let base = f.certified(Property::Weierstrass, None, domain)?;
    if alpha == 1.0 {
        return Ok(f
            .verdicts
            .iter()
            .find(|v| v.property == Property::Weierstrass && v.domain == *domain)
            .cloned()
            .expect("certified above"));
    }
    maps_into_j(f.expr, domain.box_interval(), domain.kind, cfg)?;
    Ok(derived(
        Property::Weierstrass,
        Criterion::PowerClosure,
        format!("({})^{alpha:?} is Weierstrass on {domain}", f.expr),
        domain,
        &[base],
        cfg,
        vec![],
    ))
}
