//! Correlation tensor of a 4×4 state, the correlation function
//! `E(m, n) = Σ T_ij m_i n_j`, and its maximum over unit vectors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::{dot, top_singular_triplet};
use crate::state::{DensityMatrix, Tolerance};
use crate::{Error, Result};

/// Imaginary residual above which a tensor entry is treated as evidence of a
/// non-Hermitian input.
pub const IMAGINARY_RESIDUAL_LIMIT: f64 = 1e-9;

/// Deviation of `|m|²` from one accepted for a Bloch vector.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor([[f64; 3]; 3]);

impl CorrelationTensor {
    pub fn new(t: [[f64; 3]; 3]) -> Self {
        CorrelationTensor(t)
    }

    pub fn zero() -> Self {
        CorrelationTensor([[0.0; 3]; 3])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            t[i][i] = d[i];
        }
        CorrelationTensor(t)
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    /// 1-based, matching `T_ij`.
    pub fn t(&self, i: usize, j: usize) -> f64 {
        self.0[i - 1][j - 1]
    }

    pub fn transpose(&self) -> Self {
        CorrelationTensor(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().flatten().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.0.iter().flatten().map(|t| t * t).sum()
    }
}

/// A measurement direction on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(components: [f64; 3]) -> Result<Self> {
        let norm2 = dot(&components, &components);
        if !((norm2 - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::Domain(format!(
                "Bloch vector {components:?} has squared norm {norm2}"
            )));
        }
        Ok(BlochVector(components))
    }

    /// Direction of a nonzero vector.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let norm = dot(&v, &v).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain(format!("cannot normalize {v:?}")));
        }
        Ok(BlochVector(v.map(|x| x / norm)))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        BlochVector([st * cp, st * sp, ct])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn flipped(&self) -> Self {
        BlochVector(self.0.map(|x| -x))
    }
}

/// Maximum of the correlation function with vectors attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxCorrelation {
    pub value: f64,
    pub m_star: BlochVector,
    pub n_star: BlochVector,
}

/// The nine tensor entries as combinations of density-matrix elements:
///
/// ```text
/// T11 = ρ14 + ρ23 + ρ32 + ρ41          T12 = i(ρ14 - ρ23 + ρ32 - ρ41)
/// T13 = ρ13 - ρ24 + ρ31 - ρ42          T21 = i(ρ14 + ρ23 - ρ32 - ρ41)
/// T22 = ρ23 - ρ14 + ρ32 - ρ41          T23 = i(ρ13 - ρ24 - ρ31 + ρ42)
/// T31 = ρ12 + ρ21 - ρ34 - ρ43          T32 = i(ρ12 - ρ21 - ρ34 + ρ43)
/// T33 = ρ11 - ρ22 - ρ33 + ρ44
/// ```
///
/// For Hermitian input every combination is real; an imaginary residual
/// larger than [`IMAGINARY_RESIDUAL_LIMIT`] is an error.
pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    let raw = raw_tensor(rho);
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let residual = raw[i][j].im.abs();
            if residual > IMAGINARY_RESIDUAL_LIMIT {
                return Err(Error::Inconsistent {
                    row: i + 1,
                    col: j + 1,
                    residual,
                });
            }
            t[i][j] = raw[i][j].re;
        }
    }
    Ok(CorrelationTensor(t))
}

/// Largest imaginary part among the nine complex tensor combinations.
pub fn tensor_imaginary_residual(rho: &DensityMatrix) -> f64 {
    raw_tensor(rho)
        .iter()
        .flatten()
        .fold(0.0, |acc, z| acc.max(z.im.abs()))
}

fn raw_tensor(rho: &DensityMatrix) -> [[Complex64; 3]; 3] {
    let r = |i, j| rho.rho(i, j);
    let i_unit = Complex64::new(0.0, 1.0);
    [
        [
            r(1, 4) + r(2, 3) + r(3, 2) + r(4, 1),
            (r(1, 4) - r(2, 3) + r(3, 2) - r(4, 1)) * i_unit,
            r(1, 3) - r(2, 4) + r(3, 1) - r(4, 2),
        ],
        [
            (r(1, 4) + r(2, 3) - r(3, 2) - r(4, 1)) * i_unit,
            r(2, 3) - r(1, 4) + r(3, 2) - r(4, 1),
            (r(1, 3) - r(2, 4) - r(3, 1) + r(4, 2)) * i_unit,
        ],
        [
            r(1, 2) + r(2, 1) - r(3, 4) - r(4, 3),
            (r(1, 2) - r(2, 1) - r(3, 4) + r(4, 3)) * i_unit,
            r(1, 1) - r(2, 2) - r(3, 3) + r(4, 4),
        ],
    ]
}

pub fn correlation_value(t: &CorrelationTensor, m: &BlochVector, n: &BlochVector) -> f64 {
    let tn: [f64; 3] = std::array::from_fn(|i| dot(&t.0[i], &n.0));
    dot(&m.0, &tn)
}

/// `max_{m,n} E(m, n)` is the largest singular value of `T`; `m` and `n` are
/// the matching left and right singular vectors. The value is never
/// negative because flipping `m` flips the sign of `E`.
pub fn max_correlation(t: &CorrelationTensor) -> MaxCorrelation {
    let (value, left, right) = top_singular_triplet(&t.0);
    MaxCorrelation {
        value,
        m_star: BlochVector(left),
        n_star: BlochVector(right),
    }
}

/// Points `(θ_a, φ_b)` with `θ` uniform on `[0, π]` (endpoints included) and
/// `φ` uniform on `[0, 2π)`.
fn sphere_grid(n_steps: usize) -> Vec<[f64; 3]> {
    let mut points = Vec::with_capacity(n_steps * n_steps);
    for a in 0..n_steps {
        let theta = PI * a as f64 / (n_steps - 1) as f64;
        for b in 0..n_steps {
            let phi = 2.0 * PI * b as f64 / n_steps as f64;
            points.push(BlochVector::from_angles(theta, phi).0);
        }
    }
    points
}

/// Maximum of `E(m, n)` over all pairs drawn from a spherical-angle grid of
/// `n_steps²` directions each. Independent of the singular-value route and
/// never above the true maximum.
///
/// The result is the exact grid maximum. A direction `m` is skipped when the
/// Cauchy–Schwarz bound `‖Tᵀm‖` cannot beat the best value found so far,
/// since no grid `n` can then do better.
pub fn grid_max_oracle(t: &CorrelationTensor, n_steps: usize) -> Result<f64> {
    if n_steps < 8 {
        return Err(Error::InvalidInput(format!("n_steps = {n_steps} < 8")));
    }
    let grid = sphere_grid(n_steps);
    let tt = t.transpose();
    let mut best = f64::NEG_INFINITY;
    for m in &grid {
        let tm: [f64; 3] = std::array::from_fn(|j| dot(&tt.0[j], m));
        if dot(&tm, &tm).sqrt() < best {
            continue;
        }
        for n in &grid {
            best = best.max(dot(&tm, n));
        }
    }
    Ok(best)
}

/// `T13 = T23 = T31 = T32 = 0` within `tol`.
pub fn xstate_zero_pattern(t: &CorrelationTensor, tol: Tolerance) -> bool {
    [(1, 3), (2, 3), (3, 1), (3, 2)]
        .iter()
        .all(|&(i, j)| t.t(i, j).abs() <= tol.eps())
}
