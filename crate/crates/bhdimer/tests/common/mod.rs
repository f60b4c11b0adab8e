//! Test-support: an independent brute-force route to the exact dynamics.
//!
//! Everything here is deliberately written against the dense matrix picture
//! with its own eigensolver (cyclic Jacobi), so it shares no numerical path
//! with the tridiagonal QL engine it is used to check.

#![allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra

use num_complex::Complex64;

use bhdimer::ModelParams;

/// Dense symmetric eigensolver by cyclic Jacobi rotations.
/// Returns ascending eigenvalues and the matching eigenvectors (rows of `vecs`).
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let norm: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-15 * norm {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).unwrap());
    let values: Vec<f64> = order.iter().map(|&j| a[j][j]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|k| v[k][j]).collect())
        .collect();
    (values, vectors)
}

/// Dense Bose-Hubbard Hamiltonian assembled from the operator definition.
pub fn dense_hamiltonian(params: &ModelParams) -> Vec<Vec<f64>> {
    let n = params.n();
    let (j, u) = (params.hopping(), params.interaction());
    let mut h = vec![vec![0.0f64; n + 1]; n + 1];
    for k in 0..=n {
        let (kf, rf) = (k as f64, (n - k) as f64);
        h[k][k] = u * (kf * (kf - 1.0) + rf * (rf - 1.0));
        if k < n {
            // hopping couples |k> and |k+1>
            let w = -j * (((k + 1) * (n - k)) as f64).sqrt();
            h[k][k + 1] = w;
            h[k + 1][k] = w;
        }
    }
    h
}

/// Dense complex matrix of `S~_+ = N (S_z - i S_y)` in the Fock basis.
pub fn dense_s_plus(n: usize) -> Vec<Vec<Complex64>> {
    let nf = n as f64;
    let mut m = vec![vec![Complex64::ZERO; n + 1]; n + 1];
    for k in 0..=n {
        // N S_z
        m[k][k] += Complex64::new(k as f64 - 0.5 * nf, 0.0);
    }
    // N S_y = (i/2)(a_R^dag a_L - a_L^dag a_R); S~_+ adds -i times it
    for k in 1..=n {
        let w = ((k * (n - k + 1)) as f64).sqrt();
        // a_R^dag a_L lowers the left occupation: |k> -> |k-1>
        m[k - 1][k] += Complex64::new(0.0, -1.0) * Complex64::new(0.0, 0.5) * w;
        // a_L^dag a_R raises it: |k-1> -> |k>
        m[k][k - 1] -= Complex64::new(0.0, -1.0) * Complex64::new(0.0, 0.5) * w;
    }
    m
}

/// Brute-force `Delta(t)` and envelope: dense diagonalization, dense
/// propagation, direct expectation in the Fock basis.
pub fn oracle_delta(params: &ModelParams, psi0: &[Complex64], t: f64) -> (f64, f64) {
    let n = params.n();
    let (values, vectors) = jacobi_eigen(dense_hamiltonian(params));
    let d: Vec<Complex64> = vectors
        .iter()
        .map(|vec| vec.iter().zip(psi0).map(|(v, a)| v * a).sum())
        .collect();
    let mut psi_t = vec![Complex64::ZERO; n + 1];
    for (jdx, dj) in d.iter().enumerate() {
        let phase = Complex64::new(0.0, -values[jdx] * t).exp();
        for (k, amp) in psi_t.iter_mut().enumerate() {
            *amp += vectors[jdx][k] * dj * phase;
        }
    }
    let m = dense_s_plus(n);
    let mut sp = Complex64::ZERO;
    for k in 0..=n {
        let mut row = Complex64::ZERO;
        for l in 0..=n {
            row += m[k][l] * psi_t[l];
        }
        sp += psi_t[k].conj() * row;
    }
    (sp.re / n as f64, sp.norm() / n as f64)
}
