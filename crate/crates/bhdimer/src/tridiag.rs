//! Implicit-shift QL eigensolver for real symmetric tridiagonal matrices,
//! with eigenvector accumulation. O(n^2) per sweep; plenty for the Fock-space
//! dimensions used here (n <= a few hundred).

use crate::error::{Error, Result};

/// Sweep budget per eigenvalue before giving up.
pub const QL_SWEEP_BUDGET: usize = 50;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric
/// tridiagonal matrix. Eigenvectors are stored column-major: column `j`
/// occupies `vectors[j*n..(j+1)*n]` and belongs to `values[j]`.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

/// Diagonalize the symmetric tridiagonal matrix with diagonal `diag` and
/// sub/super-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
///
/// QL iteration with implicit Wilkinson shifts; an off-diagonal element is
/// treated as negligible once it is at machine precision relative to its
/// neighboring diagonal magnitudes. Fails with `ConvergenceFailure` if any
/// eigenvalue needs more than `budget` sweeps. Fully deterministic.
pub fn eigen_symmetric_tridiagonal(
    diag: &[f64],
    offdiag: &[f64],
    budget: usize,
) -> Result<TridiagEigen> {
    let n = diag.len();
    assert_eq!(
        offdiag.len(),
        n.saturating_sub(1),
        "offdiag length must be n-1"
    );
    if n == 0 {
        return Ok(TridiagEigen {
            values: vec![],
            vectors: vec![],
        });
    }

    let mut d = diag.to_vec();
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(offdiag);
    // identity, column-major
    let mut v = vec![0.0f64; n * n];
    for j in 0..n {
        v[j * n + j] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // look for a negligible subdiagonal element splitting the matrix
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > budget {
                return Err(Error::ConvergenceFailure { index: l, budget });
            }

            // implicit shift from the 2x2 block at (l, l+1)
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);

            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated early; deflate and rescan
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                // accumulate the rotation into eigenvector columns i, i+1
                let (left, right) = v.split_at_mut((i + 1) * n);
                let col_i = &mut left[i * n..];
                let col_i1 = &mut right[..n];
                for k in 0..n {
                    f = col_i1[k];
                    col_i1[k] = s * col_i[k] + c * f;
                    col_i[k] = c * col_i[k] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // ascending eigenvalues; stable order breaks ties deterministically
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("non-finite eigenvalue"));
    let values: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vectors = vec![0.0f64; n * n];
    for (jnew, &jold) in order.iter().enumerate() {
        vectors[jnew * n..(jnew + 1) * n].copy_from_slice(&v[jold * n..(jold + 1) * n]);
    }

    Ok(TridiagEigen { values, vectors })
}

impl TridiagEigen {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Eigenvector belonging to `values[j]`.
    pub fn vector(&self, j: usize) -> &[f64] {
        let n = self.size();
        &self.vectors[j * n..(j + 1) * n]
    }

    /// max |V^T V - I|.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.size();
        let mut worst = 0.0f64;
        for a in 0..n {
            let va = self.vector(a);
            for b in a..n {
                let dot: f64 = va.iter().zip(self.vector(b)).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// max |V diag(values) V^T - T| over all matrix entries, where T is the
    /// tridiagonal matrix the decomposition came from.
    pub fn reconstruction_residual(&self, diag: &[f64], offdiag: &[f64]) -> f64 {
        let n = self.size();
        let mut worst = 0.0f64;
        for row in 0..n {
            for col in row..n {
                let recon: f64 = (0..n)
                    .map(|j| self.values[j] * self.vector(j)[row] * self.vector(j)[col])
                    .sum();
                let target = if row == col {
                    diag[row]
                } else if col == row + 1 {
                    offdiag[row]
                } else {
                    0.0
                };
                worst = worst.max((recon - target).abs());
            }
        }
        worst
    }
}
