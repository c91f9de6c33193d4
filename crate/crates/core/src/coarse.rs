//! Correlations between coarse-grained outcomes.
//!
//! Two coins: a joint distribution `w[i][j]` over sides `i, j ∈ {1, 2}`, with
//! side 1 scored `+1` and side 2 scored `-1`.
//!
//! One spin-3/2 qudit: the four projections `3/2, 1/2, -1/2, -3/2` are
//! regrouped into two binary outcomes,
//!
//! - grouping A, `+1` on `{3/2, 1/2}`: `p̃1 = p(3/2) + p(1/2)`, `p̃2 = p(-3/2) + p(-1/2)`
//! - grouping B, `+1` on `{3/2, -1/2}`: `p1 = p(3/2) + p(-1/2)`, `p2 = p(-3/2) + p(1/2)`
//!
//! and the correlation of A with B is `p(3/2) - p(1/2) - p(-1/2) + p(-3/2)`,
//! which is `T33` of the state.

use crate::state::{DensityMatrix, Tolerance};
use crate::{Error, Result};

fn check_distribution(p: &[f64], tol: Tolerance) -> Result<()> {
    let eps = tol.eps();
    if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x >= -eps)) {
        return Err(Error::Domain(format!("{x} is not a probability")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > eps {
        return Err(Error::Domain(format!("probabilities sum to {sum}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCoinDistribution([[f64; 2]; 2]);

impl JointCoinDistribution {
    pub fn new(w: [[f64; 2]; 2]) -> Result<Self> {
        Self::with_tolerance(w, Tolerance::DEFAULT)
    }

    pub fn with_tolerance(w: [[f64; 2]; 2], tol: Tolerance) -> Result<Self> {
        check_distribution(w.as_flattened(), tol)?;
        Ok(JointCoinDistribution(w))
    }

    pub fn probabilities(&self) -> &[[f64; 2]; 2] {
        &self.0
    }
}

/// `(ω1, ω2)`: the first coin's marginal sums over the second coin and vice versa.
pub fn coin_marginals(w: &JointCoinDistribution) -> ([f64; 2], [f64; 2]) {
    let w = w.0;
    (
        [w[0][0] + w[0][1], w[1][0] + w[1][1]],
        [w[0][0] + w[1][0], w[0][1] + w[1][1]],
    )
}

/// `⟨m1 m2⟩` with sides scored `+1` and `-1`.
pub fn coin_correlation(w: &JointCoinDistribution) -> f64 {
    let w = w.0;
    w[0][0] - w[0][1] - w[1][0] + w[1][1]
}

/// `⟨m1 m2⟩` with sides scored by their names, `1` and `2`.
pub fn coin_raw_moment(w: &JointCoinDistribution) -> f64 {
    let w = w.0;
    w[0][0] + 2.0 * (w[0][1] + w[1][0]) + 4.0 * w[1][1]
}

/// Spin-projection probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    pub p32: f64,
    pub p12: f64,
    pub pm12: f64,
    pub pm32: f64,
}

impl OutcomeDistribution {
    pub fn new(p32: f64, p12: f64, pm12: f64, pm32: f64) -> Result<Self> {
        Self::with_tolerance([p32, p12, pm12, pm32], Tolerance::DEFAULT)
    }

    pub fn with_tolerance(p: [f64; 4], tol: Tolerance) -> Result<Self> {
        check_distribution(&p, tol)?;
        let [p32, p12, pm12, pm32] = p;
        Ok(OutcomeDistribution {
            p32,
            p12,
            pm12,
            pm32,
        })
    }

    /// Populations of a state, rows read as `3/2, 1/2, -1/2, -3/2`.
    pub fn from_density(rho: &DensityMatrix, tol: Tolerance) -> Result<Self> {
        Self::with_tolerance(rho.diagonal(), tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoarsePair {
    /// grouping B
    pub p1: f64,
    pub p2: f64,
    /// grouping A
    pub pt1: f64,
    pub pt2: f64,
}

pub fn qudit_coarse(d: &OutcomeDistribution) -> CoarsePair {
    CoarsePair {
        p1: d.p32 + d.pm12,
        p2: d.pm32 + d.p12,
        pt1: d.p32 + d.p12,
        pt2: d.pm32 + d.pm12,
    }
}

pub fn coarse_correlation(d: &OutcomeDistribution) -> f64 {
    d.p32 - d.p12 - d.pm12 + d.pm32
}

/// Correlation minus the product of the two groupings' means.
pub fn coarse_covariance(d: &OutcomeDistribution) -> f64 {
    let c = qudit_coarse(d);
    coarse_correlation(d) - (c.pt1 - c.pt2) * (c.p1 - c.p2)
}
