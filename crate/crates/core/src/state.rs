//! Density matrices of the d = 4 system, their validation and spectrum, and
//! the two index conventions under which rows and columns are labelled.

use std::fmt;

use num_complex::Complex64;

use crate::linalg::{jacobi_hermitian, Eigen};
use crate::{Error, Result};

pub type ComplexScalar = Complex64;

/// Trace deviation that `normalize_trace` is willing to correct.
pub const MAX_NORMALIZE_DEVIATION: f64 = 1e-6;

/// Absolute tolerance for structural checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-10);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidInput(format!("tolerance must be positive, got {eps}")))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// How the basis indices 1..4 are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IndexConvention {
    /// `(1/2 1/2), (1/2 -1/2), (-1/2 1/2), (-1/2 -1/2)`: a pair of qubits.
    TwoQubit,
    /// `3/2, 1/2, -1/2, -3/2`: spin projections of a single spin-3/2 qudit.
    #[default]
    SpinProjection,
}

const TWO_QUBIT_LABELS: [&str; 4] = ["1/2 1/2", "1/2 -1/2", "-1/2 1/2", "-1/2 -1/2"];
const SPIN_LABELS: [&str; 4] = ["3/2", "1/2", "-1/2", "-3/2"];

impl IndexConvention {
    fn labels(self) -> &'static [&'static str; 4] {
        match self {
            IndexConvention::TwoQubit => &TWO_QUBIT_LABELS,
            IndexConvention::SpinProjection => &SPIN_LABELS,
        }
    }

    /// Label of the 1-based basis index `i`.
    pub fn label(self, i: usize) -> Result<&'static str> {
        if !(1..=4).contains(&i) {
            return Err(Error::InvalidInput(format!("basis index {i} outside 1..=4")));
        }
        Ok(self.labels()[i - 1])
    }

    /// Inverse of [`label`](Self::label). Accepts U+2212 as a minus sign and
    /// any run of whitespace between the two halves of a two-qubit label.
    pub fn index_of(self, label: &str) -> Result<usize> {
        let normalized = label
            .replace('\u{2212}', "-")
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        self.labels()
            .iter()
            .position(|l| *l == normalized)
            .map(|k| k + 1)
            .ok_or_else(|| Error::InvalidInput(format!("unknown {self} label {label:?}")))
    }

    pub fn json_tag(self) -> &'static str {
        match self {
            IndexConvention::TwoQubit => "two_qubit",
            IndexConvention::SpinProjection => "spin",
        }
    }

    pub fn from_json_tag(tag: &str) -> Option<Self> {
        match tag {
            "two_qubit" => Some(IndexConvention::TwoQubit),
            "spin" => Some(IndexConvention::SpinProjection),
            _ => None,
        }
    }
}

impl fmt::Display for IndexConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexConvention::TwoQubit => "two-qubit",
            IndexConvention::SpinProjection => "spin-projection",
        })
    }
}

/// A 4×4 complex matrix meant to be a density matrix, stored row-major.
///
/// Construction only guarantees finite entries; physical validity is what
/// [`validate_density`] reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: [[Complex64; 4]; 4],
    convention: IndexConvention,
}

impl DensityMatrix {
    pub fn new(entries: [[Complex64; 4]; 4], convention: IndexConvention) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "entry ({}, {}) is not finite",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(DensityMatrix {
            entries,
            convention,
        })
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        DensityMatrix {
            entries,
            convention: IndexConvention::SpinProjection,
        }
    }

    /// Diagonal matrix with the given populations.
    pub fn diagonal_state(p: [f64; 4]) -> Result<Self> {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Complex64::new(p[i], 0.0);
        }
        Self::new(entries, IndexConvention::SpinProjection)
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    /// 1-based element access, matching the ρ_{ij} notation.
    pub fn rho(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i - 1][j - 1]
    }

    pub fn convention(&self) -> IndexConvention {
        self.convention
    }

    /// Same numbers, different labels.
    pub fn with_convention(mut self, convention: IndexConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn diagonal(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.entries[i][i].re)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// Largest `|ρ_ij - conj(ρ_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                dev = dev.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        dev
    }

    /// Basis relabeling `ρ'_{ij} = ρ_{π(i) π(j)}`.
    pub fn permuted(&self, perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &k in &perm {
            if k >= 4 || seen[k] {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
            seen[k] = true;
        }
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| self.entries[perm[i]][perm[j]]));
        Ok(DensityMatrix {
            entries,
            convention: self.convention,
        })
    }

    /// Transpose on the second qubit of the two-qubit reading.
    pub fn partial_transpose(&self) -> Self {
        let mut out = self.entries;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        out[2 * a + b][2 * c + d] = self.entries[2 * a + d][2 * c + b];
                    }
                }
            }
        }
        DensityMatrix {
            entries: out,
            convention: self.convention,
        }
    }

    /// Divides by the trace when it is within [`MAX_NORMALIZE_DEVIATION`] of
    /// one. Returns the normalized matrix and the deviation that was removed.
    pub fn normalize_trace(&self) -> Result<(Self, f64)> {
        let tr = self.trace();
        let dev = (tr - Complex64::new(1.0, 0.0)).norm();
        if dev > MAX_NORMALIZE_DEVIATION {
            return Err(Error::InvalidInput(format!(
                "trace deviates from 1 by {dev:.3e}, more than {MAX_NORMALIZE_DEVIATION:e}"
            )));
        }
        let scale = 1.0 / tr.re;
        let entries = self.entries.map(|row| row.map(|z| z * scale));
        Ok((
            DensityMatrix {
                entries,
                convention: self.convention,
            },
            dev,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermitian: bool,
    pub trace_dev: f64,
    /// Smallest eigenvalue of the Hermitian part `(ρ + ρ†)/2`.
    pub min_eigenvalue: f64,
    pub psd: bool,
    pub valid: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermitian={} trace_dev={:.3e} min_eigenvalue={:.12} psd={} valid={}",
            self.hermitian, self.trace_dev, self.min_eigenvalue, self.psd, self.valid
        )
    }
}

pub fn validate_density(rho: &DensityMatrix, tol: Tolerance) -> ValidationReport {
    let eps = tol.eps();
    let hermitian = rho.hermitian_deviation() <= eps;
    let trace_dev = (rho.trace() - Complex64::new(1.0, 0.0)).norm();
    let min_eigenvalue = jacobi_hermitian(rho.entries()).values[0];
    let psd = hermitian && min_eigenvalue >= -eps;
    ValidationReport {
        hermitian,
        trace_dev,
        min_eigenvalue,
        psd,
        valid: hermitian && trace_dev <= eps && psd,
    }
}

pub type HermitianEigen = Eigen<4>;

/// Full eigendecomposition; eigenvalues ascending, eigenvectors as columns.
pub fn hermitian_eigen(rho: &DensityMatrix) -> Result<HermitianEigen> {
    let deviation = rho.hermitian_deviation();
    if deviation > Tolerance::DEFAULT.eps() {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(jacobi_hermitian(rho.entries()))
}

pub fn hermitian_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    hermitian_eigen(rho).map(|e| e.values)
}
