//! Analytic engine: semiclassical perturbative spectra and the closed-form
//! collapse/revival model for the population imbalance.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::series::TimeSeries;

/// Gaussian peak factors below this are dropped from the closed-form sum.
pub const PEAK_TRUNCATION: f64 = 1e-12;

/// Perturbative order of the spectrum expansion in the coupling `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PerturbativeOrder {
    First,
    Second,
}

/// Quantum numbers `n = -N/2 .. N/2` in unit steps (half-integers for odd N).
pub fn quantum_numbers(params: &ModelParams) -> Vec<f64> {
    let half = params.n() as f64 / 2.0;
    (0..=params.n()).map(|i| i as f64 - half).collect()
}

/// Perturbative energy level of the Hamiltonian at quantum number `n`.
///
/// First order: `2J (-n + 3uN/8 - u/2 - u n^2 / (2N))`; second order adds
/// `2J (-u^2 n / 16 + u^2 n^3 / (4 N^2))`.
pub fn energy_perturbative(params: &ModelParams, n: f64, order: PerturbativeOrder) -> Result<f64> {
    let half = params.n() as f64 / 2.0;
    if n.abs() > half {
        return Err(Error::OutOfRange { n, half_n: half });
    }
    let j = params.hopping();
    let u = params.coupling();
    let nf = params.n() as f64;
    let mut level = -n + 0.375 * u * nf - 0.5 * u - u * n * n / (2.0 * nf);
    if order == PerturbativeOrder::Second {
        level += -u * u * n / 16.0 + u * u * n * n * n / (4.0 * nf * nf);
    }
    Ok(2.0 * j * level)
}

/// The whole perturbative spectrum, indexed by [`quantum_numbers`].
#[derive(Debug, Clone, Serialize)]
pub struct PerturbativeSpectrum {
    pub order: PerturbativeOrder,
    pub n_values: Vec<f64>,
    pub energies: Vec<f64>,
}

pub fn perturbative_spectrum(
    params: &ModelParams,
    order: PerturbativeOrder,
) -> PerturbativeSpectrum {
    let n_values = quantum_numbers(params);
    let energies = n_values
        .iter()
        .map(|&n| energy_perturbative(params, n, order).expect("n in range by construction"))
        .collect();
    PerturbativeSpectrum {
        order,
        n_values,
        energies,
    }
}

/// Expansion coefficient of the all-left initial state over the hopping
/// eigenstates, large-N form `(2/(pi N))^(1/4) exp(-n^2/N)`.
pub fn c_coefficient(params: &ModelParams, n: f64) -> Result<f64> {
    let half = params.n() as f64 / 2.0;
    if n.abs() > half {
        return Err(Error::OutOfRange { n, half_n: half });
    }
    let nf = params.n() as f64;
    Ok((2.0 / (PI * nf)).powf(0.25) * (-n * n / nf).exp())
}

/// One Gaussian revival peak of the closed-form model.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RevivalPeak {
    pub m: u32,
    /// `m T_R - 3 m pi / (2J)`.
    pub center: f64,
    /// `sqrt(2N (1 + 9 u^2 m^2 pi^2 / 16)) / (J u)`; equals `T_c` at m = 0.
    pub width: f64,
    /// Peak amplitude `A_m`; the envelope height is `A_m / 2`.
    pub amplitude: f64,
}

/// Derived timescales and per-peak data of the closed-form revival model.
#[derive(Debug, Clone, Serialize)]
pub struct RevivalStructure {
    /// Revival period `T_R = pi N / (u J)`.
    pub t_r: f64,
    /// Collapse time `T_c = sqrt(2N) / (J u)`.
    pub t_c: f64,
    /// Blurring time `T_B = m_max T_R` beyond which peaks overlap.
    pub t_b: f64,
    /// `m_max = sqrt(2 (pi^2 N - 8)) / (3 u pi)`, where the peak width
    /// reaches half the revival period.
    pub m_max: f64,
    /// Fast oscillation frequency `phi = J (2 + u^2/8 + u/N)`.
    pub phi: f64,
    /// Peaks for `0 <= m <= ceil(m_max)`.
    pub peaks: Vec<RevivalPeak>,
}

fn peak_width(params: &ModelParams, m: f64) -> f64 {
    let (j, u, nf) = (params.hopping(), params.coupling(), params.n() as f64);
    (2.0 * nf * (1.0 + 0.5625 * u * u * m * m * PI * PI)).sqrt() / (j * u)
}

fn peak_amplitude(params: &ModelParams, m: f64) -> f64 {
    let (u, nf) = (params.coupling(), params.n() as f64);
    let b = 1.0 + 0.5625 * u * u * m * m * PI * PI;
    (-u * u / 32.0).exp() / b.powf(0.25)
        * ((2.0 + 4.5 * u * u * m * m * PI * PI) / (4.0 * nf * b)).exp()
}

/// Fast oscillation frequency `phi` of the closed-form model.
pub fn phase_frequency(params: &ModelParams) -> f64 {
    let (j, u, nf) = (params.hopping(), params.coupling(), params.n() as f64);
    j * (2.0 + u * u / 8.0 + u / nf)
}

/// Slow phase `phi_1` inside revival window `m` at local time `tau = t - m T_R`.
pub fn phase_offset(params: &ModelParams, m: u32, tau: f64) -> f64 {
    let (j, u, nf) = (params.hopping(), params.coupling(), params.n() as f64);
    let mf = m as f64;
    u * u / 8.0 * (2.0 * j * tau + 1.5 * mf * PI)
        + u * (j * tau / nf + 0.375 * (mf * PI + j / nf * u * tau))
}

/// Compute the revival structure. Fails with [`Error::ZeroCoupling`] at
/// `u = 0`, where the revival period is infinite.
pub fn revival_structure(params: &ModelParams) -> Result<RevivalStructure> {
    let (j, u, nf) = (params.hopping(), params.coupling(), params.n() as f64);
    if u == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let t_r = PI * nf / (u * j);
    let t_c = (2.0 * nf).sqrt() / (j * u);
    let m_max = (2.0 * (PI * PI * nf - 8.0)).sqrt() / (3.0 * u * PI);
    let peaks = (0..=m_max.ceil() as u32)
        .map(|m| RevivalPeak {
            m,
            center: m as f64 * t_r - 3.0 * m as f64 * PI / (2.0 * j),
            width: peak_width(params, m as f64),
            amplitude: peak_amplitude(params, m as f64),
        })
        .collect();
    Ok(RevivalStructure {
        t_r,
        t_c,
        t_b: m_max * t_r,
        m_max,
        phi: phase_frequency(params),
        peaks,
    })
}

impl RevivalStructure {
    /// Envelope of the closed-form model: `sum_m (A_m/2) exp(-((t-c_m)/w_m)^2)`,
    /// truncating Gaussian factors below [`PEAK_TRUNCATION`].
    pub fn envelope_at(&self, t: f64) -> f64 {
        self.peaks
            .iter()
            .map(|p| {
                let z = (t - p.center) / p.width;
                let g = (-z * z).exp();
                if g > PEAK_TRUNCATION {
                    0.5 * p.amplitude * g
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Window index assigned to time `t`: `round(t / T_R)` clamped to
    /// `[0, ceil(m_max)]`.
    pub fn window_index(&self, t: f64) -> u32 {
        let top = self.m_max.ceil();
        (t / self.t_r).round().clamp(0.0, top) as u32
    }
}

/// Closed-form population imbalance: the Gaussian peak sum times the fast
/// oscillation `cos(phi_1 - phi t)`, with `phi_1` evaluated window-locally.
pub fn delta_closed_form(params: &ModelParams, times: &[f64]) -> Result<TimeSeries> {
    let structure = revival_structure(params)?;
    let phi = structure.phi;
    let mut values = Vec::with_capacity(times.len());
    let mut envelope = Vec::with_capacity(times.len());
    for &t in times {
        let env = structure.envelope_at(t);
        let m = structure.window_index(t);
        let tau = t - m as f64 * structure.t_r;
        values.push(env * (phase_offset(params, m, tau) - phi * t).cos());
        envelope.push(env);
    }
    TimeSeries::new(times.to_vec(), values, Some(envelope))
}

/// Short-time (m = 0) law: Gaussian collapse `exp(-J^2 u^2 t^2 / (2N))` of the
/// fast oscillation. Carries the same `A_0` amplitude as the m = 0 peak of the
/// closed-form sum, whose leading behavior it is.
pub fn delta_short_time(params: &ModelParams, times: &[f64]) -> Result<TimeSeries> {
    let (j, u, nf) = (params.hopping(), params.coupling(), params.n() as f64);
    if u == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let a0 = peak_amplitude(params, 0.0);
    let phi = phase_frequency(params);
    let mut values = Vec::with_capacity(times.len());
    let mut envelope = Vec::with_capacity(times.len());
    for &t in times {
        let env = 0.5 * a0 * (-j * j * u * u * t * t / (2.0 * nf)).exp();
        values.push(env * (phi * t - phase_offset(params, 0, t)).cos());
        envelope.push(env);
    }
    TimeSeries::new(times.to_vec(), values, Some(envelope))
}

/// Mid-fidelity model: the direct sum over hopping eigenstates,
/// `Delta(t) = (1/2) Re sum_n c_n c_{n+1} exp(-i (E_n - E_{n+1}) t)` with
/// second-order energies, summed exactly (no Gaussian-integral step).
pub fn delta_semianalytic(params: &ModelParams, times: &[f64]) -> TimeSeries {
    let count = params.n(); // pairs (n, n+1) with both in range
    let half = params.n() as f64 / 2.0;
    let mut weights = Vec::with_capacity(count);
    let mut freqs = Vec::with_capacity(count);
    for i in 0..count {
        let n = i as f64 - half;
        let cc = c_coefficient(params, n).expect("in range")
            * c_coefficient(params, n + 1.0).expect("in range");
        let de = energy_perturbative(params, n, PerturbativeOrder::Second).expect("in range")
            - energy_perturbative(params, n + 1.0, PerturbativeOrder::Second).expect("in range");
        weights.push(cc);
        freqs.push(de);
    }
    let mut values = Vec::with_capacity(times.len());
    let mut envelope = Vec::with_capacity(times.len());
    for &t in times {
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (w, de) in weights.iter().zip(&freqs) {
            let (sin, cos) = (de * t).sin_cos();
            re += w * cos;
            im -= w * sin;
        }
        values.push(0.5 * re);
        envelope.push(0.5 * re.hypot(im));
    }
    TimeSeries::new(times.to_vec(), values, Some(envelope)).expect("grid validated by caller")
}

/// Revival time of a tilted start with left occupation `cos^2(alpha)`:
/// `T_R / (1 - (3/4) u sin(2 alpha))`.
pub fn revival_time_tilted(params: &ModelParams, alpha: f64) -> Result<f64> {
    if params.coupling() == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in [0, pi/2], got {alpha}"
        )));
    }
    let t_r = PI * params.n() as f64 / (params.coupling() * params.hopping());
    let denominator = 1.0 - 0.75 * params.coupling() * (2.0 * alpha).sin();
    if denominator <= 0.0 {
        return Err(Error::DegenerateShift { denominator });
    }
    Ok(t_r / denominator)
}
