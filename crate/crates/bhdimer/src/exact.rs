//! Exact engine: spectral decomposition of the tridiagonal Hamiltonian and
//! time series of the population imbalance and its complex envelope.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::TridiagonalHamiltonian;
use crate::params::ModelParams;
use crate::series::TimeSeries;
use crate::state::StateVector;
use crate::tridiag::{eigen_symmetric_tridiagonal, TridiagEigen, QL_SWEEP_BUDGET};

/// Eigenvalues (ascending) and orthonormal eigenvectors of the Hamiltonian in
/// the Fock basis. Column `j` of the eigenvector matrix belongs to
/// `eigenvalues[j]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigen: TridiagEigen,
}

/// Diagonalize the Hamiltonian. Deterministic across runs; ties in the
/// eigenvalue sort keep their QL output order.
pub fn eigendecompose(h: &TridiagonalHamiltonian) -> Result<Spectrum> {
    let eigen = eigen_symmetric_tridiagonal(h.diag(), h.offdiag(), QL_SWEEP_BUDGET)?;
    Ok(Spectrum { eigen })
}

impl Spectrum {
    pub fn size(&self) -> usize {
        self.eigen.size()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    /// Eigenvector belonging to `eigenvalues[j]`, in the Fock basis.
    pub fn eigenvector(&self, j: usize) -> &[f64] {
        self.eigen.vector(j)
    }

    pub fn orthonormality_residual(&self) -> f64 {
        self.eigen.orthonormality_residual()
    }

    pub fn reconstruction_residual(&self, h: &TridiagonalHamiltonian) -> f64 {
        self.eigen.reconstruction_residual(h.diag(), h.offdiag())
    }

    /// Expansion coefficients `d = V^T psi0` of a state in the eigenbasis.
    fn expand(&self, psi0: &StateVector) -> Result<Vec<Complex64>> {
        let n = self.size();
        if psi0.amps().len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: psi0.amps().len(),
            });
        }
        Ok((0..n)
            .map(|j| {
                self.eigenvector(j)
                    .iter()
                    .zip(psi0.amps())
                    .map(|(v, a)| v * a)
                    .sum()
            })
            .collect())
    }
}

/// Apply the raising combination `S~_+` (diagonal `k - N/2` plus the
/// antisymmetric hopping-structured part) to a real vector.
fn apply_s_plus(x: &[f64], out: &mut [f64]) {
    let n = x.len() - 1;
    let nf = n as f64;
    for k in 0..=n {
        let mut acc = (k as f64 - 0.5 * nf) * x[k];
        if k < n {
            acc += 0.5 * (((k + 1) * (n - k)) as f64).sqrt() * x[k + 1];
        }
        if k > 0 {
            acc -= 0.5 * ((k * (n - k + 1)) as f64).sqrt() * x[k - 1];
        }
        out[k] = acc;
    }
}

/// `S~_+` rotated into the eigenbasis: `M = V^T S~_+ V` (real, dense,
/// row-major). Precomputed once per evolution.
fn s_plus_eigenbasis(spec: &Spectrum) -> Vec<f64> {
    let n = spec.size();
    let mut w = vec![0.0f64; n * n]; // column-major like the eigenvectors
    let mut col = vec![0.0f64; n];
    for b in 0..n {
        apply_s_plus(spec.eigenvector(b), &mut col);
        w[b * n..(b + 1) * n].copy_from_slice(&col);
    }
    let mut m = vec![0.0f64; n * n]; // row-major
    for a in 0..n {
        let va = spec.eigenvector(a);
        for b in 0..n {
            let wb = &w[b * n..(b + 1) * n];
            m[a * n + b] = va.iter().zip(wb).map(|(x, y)| x * y).sum();
        }
    }
    m
}

/// Exact population imbalance `Delta(t)` and its envelope `|<S~_+>|/N` at the
/// requested times, by spectral decomposition:
/// `<S~_+>(t) = sum_{a,b} conj(c_a) M_ab c_b` with `c_j = d_j exp(-i E_j t)`.
///
/// Times are evaluated independently (and in parallel); the result is bitwise
/// independent of evaluation order. Degenerate or nearly degenerate
/// eigenvalues need no special casing: the double sum is well defined for any
/// level spacing.
pub fn evolve_expectations(
    spec: &Spectrum,
    psi0: &StateVector,
    params: &ModelParams,
    times: &[f64],
) -> Result<TimeSeries> {
    if spec.size() != params.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            got: spec.size(),
        });
    }
    let d = spec.expand(psi0)?;
    let m = s_plus_eigenbasis(spec);
    let n = spec.size();
    let nf = params.n() as f64;
    let energies = spec.eigenvalues();

    let points: Vec<(f64, f64)> = times
        .par_iter()
        .map(|&t| {
            let c: Vec<Complex64> = d
                .iter()
                .zip(energies)
                .map(|(dj, &ej)| {
                    let (sin, cos) = (ej * t).sin_cos();
                    dj * Complex64::new(cos, -sin)
                })
                .collect();
            let mut sp = Complex64::ZERO;
            for a in 0..n {
                let row = &m[a * n..(a + 1) * n];
                let mut re = 0.0f64;
                let mut im = 0.0f64;
                for (mab, cb) in row.iter().zip(&c) {
                    re += mab * cb.re;
                    im += mab * cb.im;
                }
                sp += c[a].conj() * Complex64::new(re, im);
            }
            (sp.re / nf, sp.norm() / nf)
        })
        .collect();

    let (values, envelope): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    TimeSeries::new(times.to_vec(), values, Some(envelope))
}

/// Reconstruct the evolved state in the Fock basis at a single time.
///
/// The returned state is re-validated against the unit-norm invariant, so a
/// loss of orthonormality in the spectrum surfaces as an error here.
pub fn evolve_state(spec: &Spectrum, psi0: &StateVector, t: f64) -> Result<StateVector> {
    let d = spec.expand(psi0)?;
    let n = spec.size();
    let mut amps = vec![Complex64::ZERO; n];
    for (j, dj) in d.iter().enumerate() {
        let (sin, cos) = (spec.eigenvalues()[j] * t).sin_cos();
        let cj = dj * Complex64::new(cos, -sin);
        for (a, v) in amps.iter_mut().zip(spec.eigenvector(j)) {
            *a += v * cj;
        }
    }
    StateVector::new(amps)
}

/// Energy expectation `sum_j |d_j|^2 E_j`; time independent by construction.
pub fn energy_expectation(spec: &Spectrum, psi0: &StateVector) -> Result<f64> {
    let d = spec.expand(psi0)?;
    Ok(d.iter()
        .zip(spec.eigenvalues())
        .map(|(dj, &ej)| dj.norm_sqr() * ej)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::build_hamiltonian;
    use crate::state::{initial_state_all_left, initial_state_all_right, s_z_expectation};

    fn params(j: f64, u: f64, n: usize) -> ModelParams {
        ModelParams::new(j, u, n).unwrap()
    }

    fn grid(t_max: f64, dt: f64) -> Vec<f64> {
        let count = (t_max / dt).floor() as usize + 1;
        (0..count).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn two_level_eigenvalues() {
        let p = params(1.0, 0.0, 1);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        assert!((spec.eigenvalues()[0] + 1.0).abs() <= 1e-14);
        assert!((spec.eigenvalues()[1] - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn free_hopping_spectrum_is_equally_spaced() {
        // U = 0: eigenvalues are -2J n for n = -N/2..N/2
        let p = params(1.0, 0.0, 100);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        for (j, &e) in spec.eigenvalues().iter().enumerate() {
            let expected = -100.0 + 2.0 * j as f64;
            assert!((e - expected).abs() <= 1e-9, "j={j}: {e} vs {expected}");
        }
    }

    #[test]
    fn three_level_eigenvalues_match_characteristic_polynomial() {
        // N=2, J=1, U=0.1: det(H - x) factors as (2U - x)(x^2 - 2U x - 4)/...
        // roots x = 2U and x = U +- sqrt(U^2 + 4)
        let u = 0.1;
        let p = params(1.0, u, 2);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let s = (u * u + 4.0).sqrt();
        let mut expected = [u - s, 2.0 * u, u + s];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in spec.eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn single_particle_rabi_oscillation_for_any_interaction() {
        // interaction is inert for one particle
        for u in [0.0, 0.3, 2.0] {
            let p = params(1.0, u, 1);
            let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
            let psi0 = initial_state_all_left(&p);
            let times = grid(20.0, 0.1);
            let ts = evolve_expectations(&spec, &psi0, &p, &times).unwrap();
            for (i, &t) in times.iter().enumerate() {
                assert!(
                    (ts.values[i] - 0.5 * (2.0 * t).cos()).abs() <= 1e-10,
                    "u={u} t={t}"
                );
                assert!((ts.envelope.as_ref().unwrap()[i] - 0.5).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn initial_point_is_one_half() {
        let p = params(1.0, 0.005, 100);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        let ts = evolve_expectations(&spec, &psi0, &p, &[0.0, 1.0]).unwrap();
        assert!((ts.values[0] - 0.5).abs() <= 1e-12);
        assert!((ts.envelope.as_ref().unwrap()[0] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn free_hopping_imbalance_is_pure_cosine_up_to_n_200() {
        for n in [10usize, 100, 200] {
            let p = params(1.0, 0.0, n);
            let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
            let psi0 = initial_state_all_left(&p);
            let times = grid(50.0, 0.25);
            let ts = evolve_expectations(&spec, &psi0, &p, &times).unwrap();
            for (i, &t) in times.iter().enumerate() {
                assert!(
                    (ts.values[i] - 0.5 * (2.0 * t).cos()).abs() <= 1e-9,
                    "N={n} t={t}: {:e}",
                    (ts.values[i] - 0.5 * (2.0 * t).cos()).abs()
                );
            }
        }
    }

    #[test]
    fn spectrum_invariants_on_the_fig1_hamiltonian() {
        let p = params(1.0, 0.005, 100);
        let h = build_hamiltonian(&p);
        let spec = eigendecompose(&h).unwrap();
        assert!(spec.orthonormality_residual() <= 1e-10);
        let rho = spec
            .eigenvalues()
            .iter()
            .fold(0.0f64, |m, e| m.max(e.abs()));
        assert!(spec.reconstruction_residual(&h) <= 1e-10 * rho);
    }

    #[test]
    fn single_particle_complex_envelope_rotates_clockwise() {
        // N=1 all-left under free hopping: psi(t) = (i sin Jt, cos Jt), so
        // <S~_+>/N = cos(2Jt)/2 - i sin(2Jt)/2 = exp(-2iJt)/2
        let p = params(1.0, 0.0, 1);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        for t in [0.0, 0.37, 1.9, 12.0] {
            let psi_t = evolve_state(&spec, &psi0, t).unwrap();
            let sp = crate::state::s_plus_expectation(&psi_t, &p);
            let expected = 0.5 * Complex64::new(0.0, -2.0 * t).exp();
            assert!((sp - expected).norm() <= 1e-12, "t={t}: {sp} vs {expected}");
        }
    }

    #[test]
    fn fig1_envelope_collapses_within_two_collapse_times() {
        let p = params(1.0, 0.005, 100);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        let t_c = 200.0f64.sqrt() / 0.5;
        let times = [2.0 * t_c, 2.5 * t_c, 3.0 * t_c];
        let ts = evolve_expectations(&spec, &psi0, &p, &times).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert!(ts.envelope.as_ref().unwrap()[i] < 0.05, "t={t}");
        }
    }

    #[test]
    fn all_right_start_negates_the_signal() {
        let p = params(1.0, 0.02, 40);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let left = initial_state_all_left(&p);
        let right = initial_state_all_right(&p);
        let times = grid(200.0, 0.5);
        let a = evolve_expectations(&spec, &left, &p, &times).unwrap();
        let b = evolve_expectations(&spec, &right, &p, &times).unwrap();
        for i in 0..times.len() {
            assert!((a.values[i] + b.values[i]).abs() <= 1e-12, "i={i}");
            let (ea, eb) = (
                a.envelope.as_ref().unwrap()[i],
                b.envelope.as_ref().unwrap()[i],
            );
            assert!((ea - eb).abs() <= 1e-12);
        }
    }

    #[test]
    fn envelope_dominates_signal() {
        let p = params(1.0, 0.005, 60);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        let times = grid(500.0, 0.3);
        let ts = evolve_expectations(&spec, &psi0, &p, &times).unwrap();
        let env = ts.envelope.as_ref().unwrap();
        for (v, e) in ts.values.iter().zip(env) {
            assert!(v.abs() <= e + 1e-12);
            assert!(v.abs() <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn norm_and_energy_conserved() {
        let p = params(1.0, 0.01, 30);
        let h = build_hamiltonian(&p);
        let spec = eigendecompose(&h).unwrap();
        let psi0 = initial_state_all_left(&p);
        let e0 = h.expectation(&psi0);
        assert!((energy_expectation(&spec, &psi0).unwrap() - e0).abs() <= 1e-12 * e0.abs());
        for t in [0.0, 1.7, 50.0, 431.0] {
            let psi_t = evolve_state(&spec, &psi0, t).unwrap();
            assert!((psi_t.norm_sqr() - 1.0).abs() <= 1e-12, "t={t}");
            let et = h.expectation(&psi_t);
            assert!((et - e0).abs() <= 1e-12 * e0.abs().max(1.0), "t={t}");
        }
    }

    #[test]
    fn energy_expectation_examples() {
        // equal weight on the +-J doublet
        let p = params(1.0, 0.0, 1);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        assert!(energy_expectation(&spec, &psi0).unwrap().abs() <= 1e-14);

        // symmetric spectrum, symmetric weights at U = 0
        let p = params(1.0, 0.0, 12);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        assert!(energy_expectation(&spec, &psi0).unwrap().abs() <= 1e-12);

        // expectation of H in a basis state is its diagonal element
        let p = params(1.0, 0.1, 2);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        assert!((energy_expectation(&spec, &psi0).unwrap() - 0.2).abs() <= 1e-13);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p2 = params(1.0, 0.0, 2);
        let p3 = params(1.0, 0.0, 3);
        let spec = eigendecompose(&build_hamiltonian(&p2)).unwrap();
        let psi0 = initial_state_all_left(&p3);
        assert!(matches!(
            evolve_expectations(&spec, &psi0, &p3, &[0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn s_plus_expectation_routes_agree() {
        // eigenbasis route vs direct Fock-basis evaluation on the evolved state
        let p = params(1.0, 0.02, 25);
        let spec = eigendecompose(&build_hamiltonian(&p)).unwrap();
        let psi0 = initial_state_all_left(&p);
        let times = [0.0, 3.3, 77.7];
        let ts = evolve_expectations(&spec, &psi0, &p, &times).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let psi_t = evolve_state(&spec, &psi0, t).unwrap();
            let sp = crate::state::s_plus_expectation(&psi_t, &p);
            assert!((sp.re / 25.0 - ts.values[i]).abs() <= 1e-12);
            assert!((sp.norm() / 25.0 - ts.envelope.as_ref().unwrap()[i]).abs() <= 1e-12);
            assert!((sp.re / 25.0 - s_z_expectation(&psi_t, &p)).abs() <= 1e-12);
        }
    }
}
