#![allow(dead_code)]

use qudit_steering::{Complex64, DensityMatrix, IndexConvention, Tolerance, XState};
use rand::Rng;

/// `G G† / tr(G G†)` for a matrix `G` with uniform entries in the unit square.
pub fn density_from_seed(g: &[f64; 32]) -> DensityMatrix {
    let gm: [[Complex64; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(g[8 * i + 2 * j], g[8 * i + 2 * j + 1])));
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| gm[i][k] * gm[j][k].conj()).sum();
        }
    }
    let tr: f64 = (0..4).map(|i| m[i][i].re).sum();
    let m = m.map(|row| row.map(|z| z / tr));
    DensityMatrix::new(m, IndexConvention::SpinProjection).unwrap()
}

pub fn random_density<R: Rng>(rng: &mut R) -> DensityMatrix {
    let g: [f64; 32] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    density_from_seed(&g)
}

/// A valid X-state: random populations, then off-diagonals inside the
/// positivity disks.
pub fn random_valid_xstate<R: Rng>(rng: &mut R) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
    let s: f64 = w.iter().sum();
    let d = w.map(|x| x / s);
    let anti = Complex64::from_polar(rng.gen_range(0.0..1.0) * (d[0] * d[3]).sqrt(), rng.gen_range(0.0..6.3));
    let inner = Complex64::from_polar(rng.gen_range(0.0..1.0) * (d[1] * d[2]).sqrt(), rng.gen_range(0.0..6.3));
    XState::new(d, anti, inner, Tolerance::DEFAULT).unwrap()
}

/// Like [`random_valid_xstate`] but the off-diagonal radii may exceed the
/// positivity bound by up to a factor of two.
pub fn random_xstate<R: Rng>(rng: &mut R) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
    let s: f64 = w.iter().sum();
    let d = w.map(|x| x / s);
    let anti = Complex64::from_polar(rng.gen_range(0.0..2.0) * (d[0] * d[3]).sqrt(), rng.gen_range(0.0..6.3));
    let inner = Complex64::from_polar(rng.gen_range(0.0..2.0) * (d[1] * d[2]).sqrt(), rng.gen_range(0.0..6.3));
    XState::new(d, anti, inner, Tolerance::DEFAULT).unwrap()
}

/// `Tr((σ_i ⊗ σ_j) ρ)` built from explicit Kronecker products.
pub fn pauli_tensor(rho: &DensityMatrix) -> [[f64; 3]; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let paulis = [[[z, one], [one, z]], [[z, -i], [i, z]], [[one, z], [z, -one]]];
    let r = rho.entries();
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut tr = z;
            for k in 0..4 {
                for l in 0..4 {
                    let op = paulis[a][k / 2][l / 2] * paulis[b][k % 2][l % 2];
                    tr += op * r[l][k];
                }
            }
            tr.re
        })
    })
}
