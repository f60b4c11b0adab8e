use num_complex::Complex64;

use crate::params::ModelParams;
use crate::state::StateVector;

/// The two-site Bose-Hubbard Hamiltonian in the left-occupation Fock basis.
///
/// Basis index `k` in `0..=N` labels the Fock state with `k` particles on the
/// left site and `N - k` on the right. In this basis the Hamiltonian is real
/// symmetric tridiagonal:
///
/// * `diag[k]  = U * (k (k-1) + (N-k)(N-k-1))` — the pair-interaction energy,
/// * `offdiag[k] = -J * sqrt((k+1)(N-k))`      — the hopping element coupling
///   `|k>` and `|k+1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalHamiltonian {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

/// Build the Hamiltonian matrix for the given parameters.
pub fn build_hamiltonian(params: &ModelParams) -> TridiagonalHamiltonian {
    let n = params.n();
    let j = params.hopping();
    let u = params.interaction();
    let diag = (0..=n)
        .map(|k| {
            let (k, nr) = (k as f64, (n - k) as f64);
            u * (k * (k - 1.0) + nr * (nr - 1.0))
        })
        .collect();
    let offdiag = (0..n)
        .map(|k| -j * (((k + 1) * (n - k)) as f64).sqrt())
        .collect();
    TridiagonalHamiltonian { diag, offdiag }
}

impl TridiagonalHamiltonian {
    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Apply the matrix to a complex amplitude vector.
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.size());
        let n = self.size();
        let mut out = vec![Complex64::ZERO; n];
        for k in 0..n {
            let mut acc = self.diag[k] * amps[k];
            if k > 0 {
                acc += self.offdiag[k - 1] * amps[k - 1];
            }
            if k + 1 < n {
                acc += self.offdiag[k] * amps[k + 1];
            }
            out[k] = acc;
        }
        out
    }

    /// Energy expectation `<psi|H|psi>` of a state, evaluated directly in the
    /// Fock basis. Used to cross-check spectral-decomposition propagators.
    pub fn expectation(&self, state: &StateVector) -> f64 {
        let amps = state.amps();
        assert_eq!(amps.len(), self.size());
        let h_psi = self.apply(amps);
        amps.iter()
            .zip(&h_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}
