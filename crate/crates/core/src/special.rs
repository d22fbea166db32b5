//! Gamma-family special functions and the constants derived from them.
//!
//! Point functions are generic over [`Real`]; for `f64` they meet a relative
//! accuracy of 1e-12 on `[1e-3, 50]` (gamma via a Lanczos sum, digamma and
//! trigamma via upward recurrence to `x >= 10` followed by the asymptotic series).
//! Interval versions are built from the point functions plus a relative error
//! bound of 1e-11, using monotonicity (gamma and lngamma split at `x_min`).

// Constants keep the digits of their sources.
#![allow(clippy::excessive_precision)]

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::interval::Interval;
use crate::real::Real;

/// Euler-Mascheroni constant to 20 digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Positive minimiser of gamma. Recomputed and checked by [`compute_x_min`].
pub const X_MIN: f64 = 1.461_632_144_968_362_3;

/// Default truncation of the series defining `xi`.
pub const XI_SERIES_TERMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{function}({x}) is outside the domain x > 0")]
    Domain { function: &'static str, x: f64 },
    #[error("{function}({x}) overflows")]
    Overflow { function: &'static str, x: f64 },
    #[error("convergence failure: {0}")]
    Convergence(String),
}

// Lanczos coefficients with r = 10.900511 (Pugh, 2004), as used by statrs.
const LANCZOS_R: f64 = 10.900_511;
const LANCZOS_D: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_056_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];
// 2 * sqrt(e / pi)
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_717_336_249_247_266_663_112;

fn check_domain<T: Real>(function: &'static str, x: T) -> Result<(), SpecialError> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(SpecialError::Domain {
            function,
            x: x.to_f64_lossy(),
        })
    }
}

fn lanczos_sum<T: Real>(x: T) -> T {
    LANCZOS_D
        .iter()
        .enumerate()
        .skip(1)
        .fold(T::lit(LANCZOS_D[0]), |s, (i, &d)| {
            s + T::lit(d) / (x + T::lit(i as f64) - T::one())
        })
}

/// Euler gamma function for `x > 0`.
pub fn gamma<T: Real>(x: T) -> Result<T, SpecialError> {
    check_domain("gamma", x)?;
    if x < T::lit(0.5) {
        return Ok(gamma(x + T::one())? / x);
    }
    let half = T::lit(0.5);
    let base = (x - half + T::lit(LANCZOS_R)) / T::E();
    // Split the power so that intermediate values stay finite near the overflow edge.
    let p = base.powf((x - half) / T::lit(2.0));
    let v = lanczos_sum(x) * T::lit(TWO_SQRT_E_OVER_PI) * p * p;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SpecialError::Overflow {
            function: "gamma",
            x: x.to_f64_lossy(),
        })
    }
}

/// Natural logarithm of gamma for `x > 0`.
pub fn lngamma<T: Real>(x: T) -> Result<T, SpecialError> {
    check_domain("lngamma", x)?;
    if x < T::lit(0.5) {
        return Ok(lngamma(x + T::one())? - x.ln());
    }
    let half = T::lit(0.5);
    Ok(lanczos_sum(x).ln()
        + T::lit(TWO_SQRT_E_OVER_PI).ln()
        + (x - half) * ((x - half + T::lit(LANCZOS_R)).ln() - T::one()))
}

/// Digamma (psi) function for `x > 0`.
pub fn digamma<T: Real>(x: T) -> Result<T, SpecialError> {
    check_domain("digamma", x)?;
    let mut x = x;
    let mut acc = T::zero();
    let ten = T::lit(10.0);
    while x < ten {
        acc -= x.recip();
        x += T::one();
    }
    let r = x.recip();
    let r2 = r * r;
    // ln x - 1/(2x) - sum B_2k / (2k x^2k)
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let series = C.iter().rev().fold(T::zero(), |s, &c| (s + T::lit(c)) * r2);
    Ok(acc + x.ln() - r / T::lit(2.0) - series)
}

/// Trigamma function (derivative of digamma) for `x > 0`.
pub fn trigamma<T: Real>(x: T) -> Result<T, SpecialError> {
    check_domain("trigamma", x)?;
    let mut x = x;
    let mut acc = T::zero();
    let ten = T::lit(10.0);
    while x < ten {
        acc += (x * x).recip();
        x += T::one();
    }
    let r = x.recip();
    let r2 = r * r;
    // 1/x + 1/(2x^2) + sum B_2k / x^(2k+1)
    const C: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let series = C.iter().rev().fold(T::zero(), |s, &c| (s + T::lit(c)) * r2);
    Ok(acc + r + r2 / T::lit(2.0) + series * r)
}

/// Normalised gamma slice `Gamma(a x) / Gamma(a)`.
pub fn gamma_a<T: Real>(a: T, x: T) -> Result<T, SpecialError> {
    check_domain("gamma_a(a, .)", a)?;
    check_domain("gamma_a(., x)", x)?;
    Ok(gamma(a * x)? / gamma(a)?)
}

#[inline]
fn rel_bound<T: Real>() -> T {
    T::lit(1e-11).max(T::epsilon() * T::lit(64.0))
}

#[inline]
fn abs_bound<T: Real>() -> T {
    T::lit(1e-14).max(T::epsilon() * T::lit(64.0))
}

/// Interval gamma via monotonicity on `(0, x_min]` and `[x_min, inf)`.
pub fn gamma_interval<T: Real>(x: Interval<T>) -> Option<Interval<T>> {
    if x.lo() <= T::zero() {
        return None;
    }
    let xm = T::lit(X_MIN);
    let (glo, ghi) = (gamma(x.lo()).ok()?, gamma(x.hi()).ok()?);
    let (lo, hi) = if x.hi() <= xm {
        (ghi, glo)
    } else if x.lo() >= xm {
        (glo, ghi)
    } else {
        (gamma(xm).ok()?, glo.max(ghi))
    };
    Some(Interval::with_error(lo, hi, rel_bound(), T::zero()))
}

/// Interval lngamma; same monotonicity split as [`gamma_interval`].
pub fn lngamma_interval<T: Real>(x: Interval<T>) -> Option<Interval<T>> {
    if x.lo() <= T::zero() {
        return None;
    }
    let xm = T::lit(X_MIN);
    let (glo, ghi) = (lngamma(x.lo()).ok()?, lngamma(x.hi()).ok()?);
    let (lo, hi) = if x.hi() <= xm {
        (ghi, glo)
    } else if x.lo() >= xm {
        (glo, ghi)
    } else {
        (lngamma(xm).ok()?, glo.max(ghi))
    };
    Some(Interval::with_error(lo, hi, rel_bound(), abs_bound()))
}

/// Interval digamma (increasing on `(0, inf)`).
pub fn digamma_interval<T: Real>(x: Interval<T>) -> Option<Interval<T>> {
    if x.lo() <= T::zero() {
        return None;
    }
    let lo = digamma(x.lo()).ok()?;
    let hi = digamma(x.hi()).ok()?;
    Some(Interval::with_error(lo, hi, rel_bound(), abs_bound()))
}

/// Interval trigamma (decreasing on `(0, inf)`).
pub fn trigamma_interval<T: Real>(x: Interval<T>) -> Option<Interval<T>> {
    if x.lo() <= T::zero() {
        return None;
    }
    let lo = trigamma(x.hi()).ok()?;
    let hi = trigamma(x.lo()).ok()?;
    Some(Interval::with_error(lo, hi, rel_bound(), abs_bound()))
}

/// Root of digamma on `[1, 2]` by bisection to width 1e-12.
///
/// Returns `(x_min, x1)` with `x1 = x_min - 1`.
pub fn compute_x_min() -> (f64, f64) {
    // psi(1) = -gamma < 0 < 1 - gamma = psi(2)
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        match digamma(mid) {
            Ok(v) if v < 0.0 => lo = mid,
            _ => hi = mid,
        }
    }
    let x_min = 0.5 * (lo + hi);
    (x_min, x_min - 1.0)
}

/// Truncated value of `S(x) = sum_{n>=1} (2nx + x^2) / (n (n+x)^2)` with a
/// two-sided enclosure of the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEnclosure {
    pub terms: usize,
    pub partial: f64,
    pub tail_lo: f64,
    pub tail_hi: f64,
}

impl SeriesEnclosure {
    pub fn lo(&self) -> f64 {
        self.partial + self.tail_lo
    }

    pub fn hi(&self) -> f64 {
        self.partial + self.tail_hi
    }

    pub fn value(&self) -> f64 {
        self.partial + 0.5 * (self.tail_lo + self.tail_hi)
    }
}

/// Sums the first `terms` terms of `S(x)` for `x > 0`.
///
/// Each term equals `1/n - 1/(n+x) + x/(n+x)^2` and decreases in `n`, so the tail
/// past `N` lies between the integrals of that expression over `[N+1, inf)` and
/// `[N, inf)`, i.e. between `ln(1 + x/(N+1)) + x/(N+1+x)` and `ln(1 + x/N) + x/(N+x)`.
pub fn xi_series(x: f64, terms: usize) -> SeriesEnclosure {
    assert!(terms > 0, "series needs at least one term");
    // Neumaier summation, smallest terms first.
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for n in (1..=terms).rev() {
        let n = n as f64;
        let t = (2.0 * n * x + x * x) / (n * (n + x) * (n + x));
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    let tail = |m: f64| (x / m).ln_1p() + x / (m + x);
    let nf = terms as f64;
    SeriesEnclosure {
        terms,
        partial: sum + comp,
        tail_lo: tail(nf + 1.0),
        tail_hi: tail(nf),
    }
}

/// Solution of `S(xi) = gamma` on `[0.1, 0.4]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiSolution {
    pub xi: f64,
    /// Half-width of the bracket containing the exact root (tail enclosure plus bisection).
    pub error_bound: f64,
    pub terms: usize,
    /// `S(xi) - gamma` with the midpoint tail estimate.
    pub residual: f64,
}

/// Bisection for `xi`, run separately on the lower and upper tail enclosures.
pub fn compute_xi(terms: usize) -> Result<XiSolution, SpecialError> {
    let (a, b) = (0.1, 0.4);
    let sa = xi_series(a, terms);
    let sb = xi_series(b, terms);
    if !(sa.hi() < EULER_GAMMA && EULER_GAMMA < sb.lo()) {
        return Err(SpecialError::Convergence(format!(
            "S does not straddle gamma on [{a}, {b}]: S({a}) in [{}, {}], S({b}) in [{}, {}]",
            sa.lo(),
            sa.hi(),
            sb.lo(),
            sb.hi()
        )));
    }
    let root = |eval: &dyn Fn(f64) -> f64| {
        let (mut lo, mut hi) = (a, b);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < EULER_GAMMA {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    };
    // Upper enclosure reaches gamma first: its root is a lower bound for xi.
    let (left, _) = root(&|x| xi_series(x, terms).hi());
    let (_, right) = root(&|x| xi_series(x, terms).lo());
    let xi = 0.5 * (left + right);
    Ok(XiSolution {
        xi,
        error_bound: 0.5 * (right - left),
        terms,
        residual: xi_series(xi, terms).value() - EULER_GAMMA,
    })
}

/// Numeric constants used by the gamma results, computed once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub x_min: f64,
    pub x1: f64,
    pub xi: f64,
    pub xi_error_bound: f64,
    pub xi_residual: f64,
    pub series_terms: usize,
    /// `digamma(x_min)`; zero up to bisection accuracy.
    pub digamma_at_x_min: f64,
    /// `|euler_gamma + digamma(1)|`.
    pub gamma_crosscheck: f64,
}

impl Constants {
    pub fn compute(terms: usize) -> Result<Self, SpecialError> {
        let crosscheck = (EULER_GAMMA + digamma(1.0_f64)?).abs();
        if crosscheck > 1e-10 {
            return Err(SpecialError::Convergence(format!(
                "digamma(1) disagrees with -euler_gamma by {crosscheck:e}"
            )));
        }
        let (x_min, x1) = compute_x_min();
        let xi = compute_xi(terms)?;
        Ok(Constants {
            euler_gamma: EULER_GAMMA,
            x_min,
            x1,
            xi: xi.xi,
            xi_error_bound: xi.error_bound,
            xi_residual: xi.residual,
            series_terms: terms,
            digamma_at_x_min: digamma(x_min)?,
            gamma_crosscheck: crosscheck,
        })
    }

    /// Cached constants at the default series truncation.
    pub fn get() -> &'static Constants {
        static CELL: OnceLock<Constants> = OnceLock::new();
        CELL.get_or_init(|| Constants::compute(XI_SERIES_TERMS).expect("constants are well posed"))
    }
}
