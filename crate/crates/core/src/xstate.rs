//! X-states: density matrices supported on the diagonal and anti-diagonal,
//!
//! ```text
//! ρ11   0     0     ρ14
//! 0     ρ22   ρ23   0
//! 0     ρ23*  ρ33   0
//! ρ14*  0     0     ρ44
//! ```
//!
//! plus the Werner and Gisin one-parameter families.

use num_complex::Complex64;

use crate::state::{DensityMatrix, IndexConvention, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    diagonal: [f64; 4],
    /// ρ14
    anti: Complex64,
    /// ρ23
    inner: Complex64,
}

impl XState {
    /// Checks that the diagonal is a probability vector. Positivity is not
    /// required here; see [`xstate_psd`].
    pub fn new(diagonal: [f64; 4], anti: Complex64, inner: Complex64, tol: Tolerance) -> Result<Self> {
        let eps = tol.eps();
        let finite = diagonal.iter().all(|d| d.is_finite())
            && [anti, inner].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::InvalidInput("X-state entries must be finite".into()));
        }
        if let Some(d) = diagonal.iter().find(|&&d| d < -eps) {
            return Err(Error::Domain(format!("negative population {d}")));
        }
        let sum: f64 = diagonal.iter().sum();
        if (sum - 1.0).abs() > eps {
            return Err(Error::Domain(format!("populations sum to {sum}, not 1")));
        }
        Ok(XState {
            diagonal,
            anti,
            inner,
        })
    }

    pub(crate) fn from_parts(diagonal: [f64; 4], anti: Complex64, inner: Complex64) -> Self {
        XState {
            diagonal,
            anti,
            inner,
        }
    }

    /// Reads the X pattern out of a dense matrix. Entries outside the pattern
    /// must vanish within `tol`, and the anti-diagonal must be Hermitian.
    pub fn from_density(rho: &DensityMatrix, tol: Tolerance) -> Result<Self> {
        if !has_x_pattern(rho, tol) {
            return Err(Error::InvalidInput("matrix is not X-shaped".into()));
        }
        let deviation = rho.hermitian_deviation();
        if deviation > tol.eps() {
            return Err(Error::NonHermitian { deviation });
        }
        XState::new(rho.diagonal(), rho.rho(1, 4), rho.rho(2, 3), tol)
    }

    pub fn diagonal(&self) -> [f64; 4] {
        self.diagonal
    }

    pub fn anti(&self) -> Complex64 {
        self.anti
    }

    pub fn inner(&self) -> Complex64 {
        self.inner
    }

    /// Multiplies ρ14 by `e^{iθ}` (and ρ41 by its conjugate).
    pub fn with_anti_phase(mut self, theta: f64) -> Self {
        self.anti *= Complex64::from_polar(1.0, theta);
        self
    }
}

pub(crate) fn has_x_pattern(rho: &DensityMatrix, tol: Tolerance) -> bool {
    let m = rho.entries();
    (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || m[i][j].norm() <= tol.eps()))
}

/// Werner mixing parameter, `-1/3 ≤ p ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub const MIN: f64 = -1.0 / 3.0;
    pub const MAX: f64 = 1.0;

    pub fn new(p: f64) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&p) {
            Ok(WernerParam(p))
        } else {
            Err(Error::Domain(format!("Werner p = {p} outside [-1/3, 1]")))
        }
    }

    pub fn p(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GisinParam {
    x: f64,
    a: Complex64,
    b: Complex64,
}

impl GisinParam {
    const NORM_TOL: f64 = 1e-10;

    pub fn new(x: f64, a: Complex64, b: Complex64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("Gisin x = {x} outside (0, 1)")));
        }
        check_normalized(a, b)?;
        Ok(GisinParam { x, a, b })
    }

    /// Fixes `b = +sqrt(1 - |a|²)`.
    pub fn from_a(x: f64, a: Complex64) -> Result<Self> {
        Self::new(x, a, partner_amplitude(a)?)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

pub(crate) fn partner_amplitude(a: Complex64) -> Result<Complex64> {
    let rest = 1.0 - a.norm_sqr();
    if !(rest >= -GisinParam::NORM_TOL) {
        return Err(Error::Domain(format!("|a|² = {} exceeds 1", a.norm_sqr())));
    }
    Ok(Complex64::new(rest.max(0.0).sqrt(), 0.0))
}

fn check_normalized(a: Complex64, b: Complex64) -> Result<()> {
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > GisinParam::NORM_TOL || !norm.is_finite() {
        return Err(Error::Domain(format!("|a|² + |b|² = {norm}, not 1")));
    }
    Ok(())
}

pub(crate) fn werner_parts(p: f64) -> XState {
    let outer = (1.0 + p) / 4.0;
    let middle = (1.0 - p) / 4.0;
    XState::from_parts(
        [outer, middle, middle, outer],
        Complex64::new(p / 2.0, 0.0),
        Complex64::new(0.0, 0.0),
    )
}

pub(crate) fn gisin_parts(x: f64, a: Complex64, b: Complex64) -> XState {
    let outer = (1.0 - x) / 2.0;
    XState::from_parts(
        [outer, x * a.norm_sqr(), x * b.norm_sqr(), outer],
        Complex64::new(0.0, 0.0),
        a * b.conj() * x,
    )
}

pub fn werner(p: WernerParam) -> XState {
    werner_parts(p.p())
}

pub fn gisin(g: GisinParam) -> XState {
    gisin_parts(g.x, g.a, g.b)
}

/// `1 / (1 + 2|ab|)`.
///
/// This is the largest `x` for which the partial transpose of the Gisin
/// matrix stays positive, i.e. the Gisin state is separable exactly for
/// `x ≤ x_max`. The Gisin matrix itself is positive for every `x` in `(0, 1)`.
pub fn gisin_x_max(a: Complex64, b: Complex64) -> Result<f64> {
    check_normalized(a, b)?;
    Ok(1.0 / (1.0 + 2.0 * (a * b).norm()))
}

/// `ρ22 ρ33 ≥ |ρ23|²` and `ρ11 ρ44 ≥ |ρ14|²`, each within `tol`. Together
/// with a nonnegative diagonal this is exactly positivity of the X matrix.
pub fn xstate_psd(s: &XState, tol: Tolerance) -> bool {
    let [d1, d2, d3, d4] = s.diagonal;
    let eps = tol.eps();
    s.diagonal.iter().all(|&d| d >= -eps)
        && d2 * d3 >= s.inner.norm_sqr() - eps
        && d1 * d4 >= s.anti.norm_sqr() - eps
}

/// Partial-transpose criterion for X-states: the transpose exchanges ρ14 and
/// ρ23, so the state is entangled iff `|ρ14|² > ρ22 ρ33` or `|ρ23|² > ρ11 ρ44`.
pub fn xstate_entangled(s: &XState) -> bool {
    let [d1, d2, d3, d4] = s.diagonal;
    s.anti.norm_sqr() > d2 * d3 || s.inner.norm_sqr() > d1 * d4
}

pub fn xstate_to_density(s: &XState) -> DensityMatrix {
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [[zero; 4]; 4];
    for (i, &d) in s.diagonal.iter().enumerate() {
        m[i][i] = Complex64::new(d, 0.0);
    }
    m[0][3] = s.anti;
    m[3][0] = s.anti.conj();
    m[1][2] = s.inner;
    m[2][1] = s.inner.conj();
    DensityMatrix::new(m, IndexConvention::SpinProjection).expect("X-state entries are finite")
}
