use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Maximum allowed deviation of a state norm from 1.
pub const NORM_TOL: f64 = 1e-12;

/// A pure state over the `N + 1` left-occupation Fock states, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wrap an amplitude vector, enforcing unit norm to within [`NORM_TOL`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!(
                "state norm^2 deviates from 1 by {:e}",
                norm_sq - 1.0
            )));
        }
        Ok(Self { amps })
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Particle number `N` implied by the amplitude length.
    pub fn n(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// The state with all `N` particles on the left site: `amps[N] = 1`.
pub fn initial_state_all_left(params: &ModelParams) -> StateVector {
    let mut amps = vec![Complex64::ZERO; params.dim()];
    amps[params.n()] = Complex64::ONE;
    StateVector { amps }
}

/// The state with all `N` particles on the right site: `amps[0] = 1`.
pub fn initial_state_all_right(params: &ModelParams) -> StateVector {
    let mut amps = vec![Complex64::ZERO; params.dim()];
    amps[0] = Complex64::ONE;
    StateVector { amps }
}

/// Coherent product state with per-particle amplitude `cos(alpha)` on the left
/// site and `sin(alpha)` on the right, so the left occupation is `N cos^2(alpha)`.
///
/// The Fock amplitudes are binomial, `amps[k] = sqrt(C(N,k)) cos^k sin^(N-k)`,
/// evaluated in log space so they stay finite for N well beyond 170 where the
/// factorials overflow. The relative phase between the sites is fixed to zero.
pub fn initial_state_tilted(params: &ModelParams, alpha: f64) -> Result<StateVector> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in [0, pi/2], got {alpha}"
        )));
    }
    if alpha == 0.0 {
        return Ok(initial_state_all_left(params));
    }
    if alpha == std::f64::consts::FRAC_PI_2 {
        return Ok(initial_state_all_right(params));
    }
    let n = params.n();
    let (ln_cos, ln_sin) = (alpha.cos().ln(), alpha.sin().ln());
    let amps = (0..=n)
        .map(|k| {
            let ln_amp = 0.5 * ln_binomial(n, k) + k as f64 * ln_cos + (n - k) as f64 * ln_sin;
            Complex64::new(ln_amp.exp(), 0.0)
        })
        .collect();
    StateVector::new(amps)
}

/// `ln C(n, k)` as a sum of logs of exact ratios; O(min(k, n-k)) and stable
/// for any n representable as usize.
fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| (((n - k + i) as f64) / (i as f64)).ln())
        .sum()
}

/// Population imbalance `<S_z> = sum_k |amps[k]|^2 (2k - N) / (2N)`, in [-1/2, 1/2].
pub fn s_z_expectation(state: &StateVector, params: &ModelParams) -> f64 {
    let amps = state.amps();
    assert_eq!(amps.len(), params.dim());
    let n = params.n() as f64;
    amps.iter()
        .enumerate()
        .map(|(k, a)| a.norm_sqr() * (2.0 * k as f64 - n) / (2.0 * n))
        .sum()
}

/// Expectation of the raising combination `S~_+ = N (S_z - i S_y)`.
///
/// In the Fock basis this is the real matrix with diagonal `k - N/2` plus the
/// antisymmetric hopping-structured part `(a_R^dag a_L - a_L^dag a_R) / 2`.
/// Its real part over `N` recovers `<S_z>` identically, and its modulus over
/// `N` is the exact envelope of the population imbalance.
pub fn s_plus_expectation(state: &StateVector, params: &ModelParams) -> Complex64 {
    let amps = state.amps();
    assert_eq!(amps.len(), params.dim());
    let n = params.n();
    let nf = n as f64;
    let mut acc = Complex64::ZERO;
    for (k, a) in amps.iter().enumerate() {
        acc += a.norm_sqr() * (k as f64 - 0.5 * nf);
    }
    // <k-1| a_R^dag a_L |k> = sqrt(k (N-k+1)),  <k+1| a_L^dag a_R |k> = sqrt((k+1)(N-k))
    for k in 1..=n {
        let w = ((k * (n - k + 1)) as f64).sqrt();
        acc += 0.5 * w * (amps[k - 1].conj() * amps[k] - amps[k].conj() * amps[k - 1]);
    }
    acc
}
