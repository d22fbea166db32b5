use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    /// `J = (0, 1]`.
    UnitInterval,
    /// `J = [1, ∞)`.
    RayFromOne,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("left cut must lie in (0, 1), got {0}")]
    BadLeftCut(f64),
    #[error("right cap must exceed 1, got {0}")]
    BadRightCap(f64),
}

/// The interval `J` of a claim, and the truncation that is actually searched.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub left_cut: f64,
    pub right_cap: f64,
}

impl DomainSpec {
    pub const DEFAULT_LEFT_CUT: f64 = 1e-6;
    pub const DEFAULT_RIGHT_CAP: f64 = 10.0;

    pub fn new(kind: DomainKind, left_cut: f64, right_cap: f64) -> Result<Self, DomainError> {
        let spec = DomainSpec {
            kind,
            left_cut,
            right_cap,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn unit() -> Self {
        DomainSpec {
            kind: DomainKind::UnitInterval,
            left_cut: Self::DEFAULT_LEFT_CUT,
            right_cap: Self::DEFAULT_RIGHT_CAP,
        }
    }

    pub fn ray() -> Self {
        DomainSpec {
            kind: DomainKind::RayFromOne,
            ..Self::unit()
        }
    }

    pub fn unit_with_cut(left_cut: f64) -> Result<Self, DomainError> {
        Self::new(DomainKind::UnitInterval, left_cut, Self::DEFAULT_RIGHT_CAP)
    }

    pub fn ray_with_cap(right_cap: f64) -> Result<Self, DomainError> {
        Self::new(DomainKind::RayFromOne, Self::DEFAULT_LEFT_CUT, right_cap)
    }

    /// Only the parameter relevant to `kind` is checked.
    pub fn validate(&self) -> Result<(), DomainError> {
        match self.kind {
            DomainKind::UnitInterval if !(self.left_cut > 0.0 && self.left_cut < 1.0) => {
                Err(DomainError::BadLeftCut(self.left_cut))
            }
            DomainKind::RayFromOne if !(self.right_cap > 1.0 && self.right_cap.is_finite()) => {
                Err(DomainError::BadRightCap(self.right_cap))
            }
            _ => Ok(()),
        }
    }

    /// `(lo, hi)` of the truncated box.
    pub fn bounds(&self) -> (f64, f64) {
        match self.kind {
            DomainKind::UnitInterval => (self.left_cut, 1.0),
            DomainKind::RayFromOne => (1.0, self.right_cap),
        }
    }

    pub fn box_interval(&self) -> Interval {
        let (lo, hi) = self.bounds();
        Interval::new(lo, hi).expect("validated domain")
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.bounds();
        (lo..=hi).contains(&x)
    }

    /// The untruncated interval, e.g. `(0, 1]`.
    pub fn label(&self) -> &'static str {
        match self.kind {
            DomainKind::UnitInterval => "(0, 1]",
            DomainKind::RayFromOne => "[1, inf)",
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.bounds();
        write!(f, "{} truncated to [{lo:e}, {hi}]", self.label())
    }
}
