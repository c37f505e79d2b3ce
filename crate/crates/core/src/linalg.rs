//! Small dense eigensolvers: cyclic Jacobi for real symmetric matrices,
//! one-sided Jacobi singular values, and Hermitian 4x4 spectra through the
//! real 8x8 embedding `[[A, -B], [B, A]]` of `A + iB`.

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a real symmetric matrix, eigenvalues descending.
/// Column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct SymEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: SMatrix<f64, N, N>,
}

fn max_asymmetry<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in (i + 1)..N {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<f64, N, N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in (i + 1)..N {
            s += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for a real symmetric `N x N` matrix.
pub fn eig_sym<const N: usize>(m: &SMatrix<f64, N, N>) -> Result<SymEigen<N>> {
    let asym = max_asymmetry(m);
    if !(asym <= SYMMETRY_TOL) {
        return Err(Error::Asymmetric(asym));
    }
    let mut a = (m + m.transpose()) * 0.5;
    let mut v = SMatrix::<f64, N, N>::identity();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]));
    let mut values = [0.0; N];
    let mut vectors = SMatrix::<f64, N, N>::zeros();
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = a[(src, src)];
        vectors.set_column(dst, &v.column(src));
    }
    Ok(SymEigen { values, vectors })
}

/// Singular values (descending) by one-sided Jacobi orthogonalisation of columns.
pub fn singular_values<const N: usize>(m: &SMatrix<f64, N, N>) -> [f64; N] {
    let mut u = *m;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..N {
            for j in (i + 1)..N {
                let alpha = u.column(i).norm_squared();
                let beta = u.column(j).norm_squared();
                let gamma = u.column(i).dot(&u.column(j));
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..N {
                    let uki = u[(k, i)];
                    let ukj = u[(k, j)];
                    u[(k, i)] = c * uki - s * ukj;
                    u[(k, j)] = s * uki + c * ukj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut out = [0.0; N];
    for (k, o) in out.iter_mut().enumerate() {
        *o = u.column(k).norm();
    }
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn hermitian_embedding(m: &Matrix4<Complex64>) -> Result<SMatrix<f64, 8, 8>> {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if !(worst <= SYMMETRY_TOL) {
        return Err(Error::Asymmetric(worst));
    }
    let mut e = SMatrix::<f64, 8, 8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let z = m[(i, j)];
            e[(i, j)] = z.re;
            e[(i + 4, j + 4)] = z.re;
            e[(i, j + 4)] = -z.im;
            e[(i + 4, j)] = z.im;
        }
    }
    Ok(e)
}

/// Real spectrum (descending) of a 4x4 Hermitian matrix.
pub fn eig_herm(m: &Matrix4<Complex64>) -> Result<[f64; 4]> {
    let eig = eig_sym(&hermitian_embedding(m)?)?;
    // every eigenvalue of the embedding appears twice
    Ok([eig.values[0], eig.values[2], eig.values[4], eig.values[6]])
}

/// Singular values (descending) of a complex 4x4 matrix from its real 8x8
/// embedding, where each value appears twice.
pub fn complex_singular_values(m: &Matrix4<Complex64>) -> [f64; 4] {
    let mut e = SMatrix::<f64, 8, 8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let z = m[(i, j)];
            e[(i, j)] = z.re;
            e[(i + 4, j + 4)] = z.re;
            e[(i, j + 4)] = -z.im;
            e[(i + 4, j)] = z.im;
        }
    }
    let s = singular_values(&e);
    [s[0], s[2], s[4], s[6]]
}

/// Applies a real function to the spectrum of a Hermitian 4x4 matrix.
pub fn herm_map(m: &Matrix4<Complex64>, f: impl Fn(f64) -> f64) -> Result<Matrix4<Complex64>> {
    let eig = eig_sym(&hermitian_embedding(m)?)?;
    let mut acc = SMatrix::<f64, 8, 8>::zeros();
    for k in 0..8 {
        let col = eig.vectors.column(k);
        acc += f(eig.values[k]) * col * col.transpose();
    }
    // each complex eigenvector is represented twice, (u; v) and (-v; u)
    Ok(Matrix4::from_fn(|i, j| Complex64::new(acc[(i, j)], acc[(i + 4, j)])))
}
