//! The steering inequality `max E(m, n) ≥ (2/3) Σ f(T_ij)`, state
//! classification, family sweeps and boundary location.

use std::fmt;

use num_complex::Complex64;

use crate::correlation::{correlation_tensor, max_correlation, CorrelationTensor};
use crate::state::{hermitian_eigenvalues, validate_density, DensityMatrix, Tolerance};
use crate::xstate::{
    gisin_parts, gisin_x_max, has_x_pattern, partner_amplitude, werner_parts, xstate_entangled,
    xstate_to_density, WernerParam, XState,
};
use crate::{Error, Result};

/// Slack in `lhs ≥ rhs - FULFILLED_EPS`, so exact equality counts as fulfilled.
pub const FULFILLED_EPS: f64 = 1e-12;

pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Which summand enters the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SteeringFunctional {
    /// `(2/3) Σ T_ij²`
    #[default]
    SumSquared,
    /// `(2/3) Σ T_ij`
    SumLiteral,
}

impl SteeringFunctional {
    pub fn name(self) -> &'static str {
        match self {
            SteeringFunctional::SumSquared => "sum_squared",
            SteeringFunctional::SumLiteral => "sum_literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Separable,
    EntangledFulfilled,
    EntangledViolating,
    /// Not a positive state.
    NotApplicable,
}

impl Classification {
    pub fn from_flags(psd: bool, entangled: bool, fulfilled: bool) -> Self {
        match (psd, entangled, fulfilled) {
            (false, _, _) => Classification::NotApplicable,
            (true, false, _) => Classification::Separable,
            (true, true, true) => Classification::EntangledFulfilled,
            (true, true, false) => Classification::EntangledViolating,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    pub lhs: f64,
    pub rhs: f64,
    pub fulfilled: bool,
    pub entangled: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub fulfilled: bool,
    pub entangled: bool,
    pub psd: bool,
}

impl SweepRecord {
    pub fn classification(&self) -> Classification {
        Classification::from_flags(self.psd, self.entangled, self.fulfilled)
    }
}

pub fn steering_rhs(t: &CorrelationTensor, f: SteeringFunctional) -> f64 {
    let sum = match f {
        SteeringFunctional::SumSquared => t.sum_of_squares(),
        SteeringFunctional::SumLiteral => t.sum(),
    };
    2.0 / 3.0 * sum
}

/// Partial-transpose test; X-shaped matrices use the closed-form conditions.
pub fn is_entangled(rho: &DensityMatrix, tol: Tolerance) -> Result<bool> {
    if has_x_pattern(rho, tol) {
        return Ok(xstate_entangled(&XState::from_density(rho, tol)?));
    }
    Ok(hermitian_eigenvalues(&rho.partial_transpose())?[0] < -tol.eps())
}

fn lhs_rhs(rho: &DensityMatrix, f: SteeringFunctional) -> Result<(f64, f64)> {
    let t = correlation_tensor(rho)?;
    Ok((max_correlation(&t).value, steering_rhs(&t, f)))
}

/// Evaluates the inequality on a valid state.
pub fn steering_check(
    rho: &DensityMatrix,
    f: SteeringFunctional,
    tol: Tolerance,
) -> Result<SteeringReport> {
    let validation = validate_density(rho, tol);
    if !validation.valid {
        return Err(Error::InvalidState(validation));
    }
    let (lhs, rhs) = lhs_rhs(rho, f)?;
    let fulfilled = lhs >= rhs - FULFILLED_EPS;
    let entangled = is_entangled(rho, tol)?;
    Ok(SteeringReport {
        lhs,
        rhs,
        fulfilled,
        entangled,
        classification: Classification::from_flags(true, entangled, fulfilled),
    })
}

fn record(param: f64, rho: &DensityMatrix, f: SteeringFunctional) -> Result<SweepRecord> {
    let tol = Tolerance::DEFAULT;
    let psd = validate_density(rho, tol).psd;
    let (lhs, rhs) = lhs_rhs(rho, f)?;
    Ok(SweepRecord {
        param,
        lhs,
        rhs,
        fulfilled: lhs >= rhs - FULFILLED_EPS,
        entangled: is_entangled(rho, tol)?,
        psd,
    })
}

/// `n` evenly spaced Werner states from `p_lo` to `p_hi` inclusive.
pub fn sweep_werner(
    p_lo: f64,
    p_hi: f64,
    n: usize,
    f: SteeringFunctional,
) -> Result<Vec<SweepRecord>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sweep needs n >= 2, got {n}")));
    }
    if !(p_lo < p_hi) {
        return Err(Error::Domain(format!("empty range [{p_lo}, {p_hi}]")));
    }
    WernerParam::new(p_lo)?;
    WernerParam::new(p_hi)?;
    let step = (p_hi - p_lo) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            let p = if k == n - 1 { p_hi } else { p_lo + step * k as f64 };
            record(p, &xstate_to_density(&werner_parts(p)), f)
        })
        .collect()
}

/// `n` Gisin states with `b = +sqrt(1 - |a|²)` at the interior points
/// `x_k = x_max·k/(n+1)`, `k = 1..=n`, of `(0, x_max)`.
pub fn sweep_gisin(a: Complex64, n: usize, f: SteeringFunctional) -> Result<Vec<SweepRecord>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sweep needs n >= 2, got {n}")));
    }
    let b = partner_amplitude(a)?;
    let x_max = gisin_x_max(a, b)?;
    (1..=n)
        .map(|k| {
            let x = x_max * k as f64 / (n + 1) as f64;
            record(x, &xstate_to_density(&gisin_parts(x, a, b)), f)
        })
        .collect()
}

/// A one-parameter family; the parameter is `p` for Werner and `x` for
/// Gisin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Werner,
    Gisin { a: Complex64, b: Complex64 },
}

impl Family {
    pub fn gisin(a: Complex64) -> Result<Self> {
        Ok(Family::Gisin {
            a,
            b: partner_amplitude(a)?,
        })
    }

    /// The family's matrix formula at `param`, without domain checks.
    pub fn state_at(&self, param: f64) -> DensityMatrix {
        match *self {
            Family::Werner => xstate_to_density(&werner_parts(param)),
            Family::Gisin { a, b } => xstate_to_density(&gisin_parts(param, a, b)),
        }
    }

    /// `max E - rhs` at `param`.
    pub fn margin(&self, param: f64, f: SteeringFunctional) -> Result<f64> {
        let (lhs, rhs) = lhs_rhs(&self.state_at(param), f)?;
        Ok(lhs - rhs)
    }
}

/// Bisection for the parameter where `lhs - rhs` changes sign inside
/// `[lo, hi]`. The family formula is evaluated as-is, so the bracket may
/// leave the family's physical domain.
pub fn boundary_bisection(
    family: Family,
    f: SteeringFunctional,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut g_lo = family.margin(lo, f)?;
    let g_hi = family.margin(hi, f)?;
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol.eps() || mid == lo || mid == hi {
            break;
        }
        let g_mid = family.margin(mid, f)?;
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
