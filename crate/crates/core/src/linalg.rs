//! Small dense linear algebra: a cyclic Jacobi eigensolver for Hermitian
//! matrices of fixed size, and the 3×3 real singular triplet built on it.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[Complex64; N]; N],
}

impl<const N: usize> Eigen<N> {
    pub fn vector(&self, k: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.vectors[i][k])
    }
}

fn off_diagonal_norm<const N: usize>(a: &[[Complex64; N]; N]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                s += z.norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn frobenius<const N: usize>(a: &[[Complex64; N]; N]) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Cyclic Jacobi on a Hermitian matrix. Only the Hermitian part of `a` is
/// used; callers check hermiticity beforehand.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal unitary,
/// then applies the real Jacobi rotation that zeroes the now-real pivot.
pub fn jacobi_hermitian<const N: usize>(a: &[[Complex64; N]; N]) -> Eigen<N> {
    let mut h = *a;
    for i in 0..N {
        for j in i..N {
            let avg = (h[i][j] + h[j][i].conj()) * 0.5;
            h[i][j] = avg;
            h[j][i] = avg.conj();
        }
        h[i][i].im = 0.0;
    }
    let mut v = [[Complex64::new(0.0, 0.0); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }

    let scale = frobenius(&h).max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&h) <= f64::EPSILON * 1e-3 * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut h, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| h[i][i].re.total_cmp(&h[j][j].re));
    Eigen {
        values: std::array::from_fn(|k| h[order[k]][order[k]].re),
        vectors: std::array::from_fn(|i| std::array::from_fn(|k| v[i][order[k]])),
    }
}

fn rotate<const N: usize>(
    h: &mut [[Complex64; N]; N],
    v: &mut [[Complex64; N]; N],
    p: usize,
    q: usize,
) {
    let hpq = h[p][q];
    let g = hpq.norm();
    if g == 0.0 {
        return;
    }
    // conj(h)/|h| is exactly ±1 for real pivots, so real input stays real.
    let phase = hpq.conj() / g;
    let (a, b) = (h[p][p].re, h[q][q].re);
    let theta = (b - a) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U is the identity outside rows/cols p,q.
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = phase * (-s);
    let uqq = phase * c;

    // H <- H U
    for row in h.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * upp + xq * uqp;
        row[q] = xp * upq + xq * uqq;
    }
    // H <- U^† H
    for j in 0..N {
        let (xp, xq) = (h[p][j], h[q][j]);
        h[p][j] = upp.conj() * xp + uqp.conj() * xq;
        h[q][j] = upq.conj() * xp + uqq.conj() * xq;
    }
    for row in v.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * upp + xq * uqp;
        row[q] = xp * upq + xq * uqq;
    }

    h[p][q] = Complex64::new(0.0, 0.0);
    h[q][p] = Complex64::new(0.0, 0.0);
    h[p][p].im = 0.0;
    h[q][q].im = 0.0;
}

/// Largest singular value of a real 3×3 matrix with its left and right
/// singular vectors, from the eigendecomposition of `AᵀA`.
///
/// The value returned is `‖A v‖` for the top right singular vector `v`, and
/// the left vector is `A v / ‖A v‖`, so `uᵀ A v` reproduces the value to
/// rounding. For `A = 0` both vectors are `e₃`.
pub fn top_singular_triplet(a: &[[f64; 3]; 3]) -> (f64, [f64; 3], [f64; 3]) {
    let mut ata = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = (0..3).map(|k| a[k][i] * a[k][j]).sum();
            ata[i][j] = Complex64::new(s, 0.0);
        }
    }
    let eig = jacobi_hermitian(&ata);
    let top = eig.vector(2);
    let mut right = [top[0].re, top[1].re, top[2].re];
    let norm = dot(&right, &right).sqrt();
    if norm == 0.0 {
        right = [0.0, 0.0, 1.0];
    } else {
        right.iter_mut().for_each(|x| *x /= norm);
    }

    let av: [f64; 3] = std::array::from_fn(|i| dot(&a[i], &right));
    let sigma = dot(&av, &av).sqrt();
    if sigma == 0.0 {
        return (0.0, [0.0, 0.0, 1.0], right);
    }
    let left = av.map(|x| x / sigma);
    (sigma, left, right)
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
