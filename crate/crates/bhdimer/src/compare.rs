//! Runs scenarios and quantifies how well the analytic model tracks the exact
//! dynamics: collapse-time fits, revival-peak location, mixing detection and
//! the phase of the fast oscillation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::analytic::{
    delta_closed_form, delta_semianalytic, phase_frequency, phase_offset, revival_structure,
    RevivalStructure,
};
use crate::error::{Error, Result};
use crate::exact::{eigendecompose, evolve_expectations};
use crate::hamiltonian::build_hamiltonian;
use crate::params::ModelParams;
use crate::scenario::Scenario;
use crate::series::TimeSeries;
use crate::state::{initial_state_all_left, initial_state_tilted};

/// The series a scenario produced, all on the same time grid.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSeries {
    pub times: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<TimeSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semianalytic: Option<TimeSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closedform: Option<TimeSeries>,
}

/// One revival peak: model prediction next to what the exact envelope shows.
#[derive(Debug, Clone, Serialize)]
pub struct PeakRecord {
    pub m: u32,
    pub predicted_center: f64,
    /// `A_m / 2`, the predicted envelope height.
    pub predicted_height: f64,
    pub exact_peak_time: Option<f64>,
    pub exact_peak_height: Option<f64>,
    /// Set when the valley floor before this peak no longer dips below half
    /// the peak height: the revivals have started to mix.
    pub mixed: Option<bool>,
}

/// Phase agreement of the fast oscillation inside one revival window,
/// measured at the zero crossings of the exact signal.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseWindowStats {
    pub m: u32,
    pub crossings: usize,
    /// Worst offset between an exact zero crossing and the predicted crossing
    /// of the same direction, in time units.
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    pub rms_error: f64,
    pub quarter_rabi_period: f64,
    pub within_quarter_period: bool,
}

/// Everything `run_scenario` measures.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub label: String,
    pub params: ModelParams,
    pub alpha: f64,
    pub rabi_regime: bool,
    pub has_revival_structure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revival: Option<RevivalStructure>,
    pub fitted_collapse_time: Option<f64>,
    pub predicted_collapse_time: Option<f64>,
    pub envelope_rmse: Option<f64>,
    pub envelope_max_abs_error: Option<f64>,
    pub peaks: Vec<PeakRecord>,
    pub phase_windows: Vec<PhaseWindowStats>,
    pub notes: Vec<String>,
}

/// Gaussian collapse-time fit on the initial decay of an envelope.
///
/// Least squares of `log(env/env[0]) = -t^2 / T^2` over the points with
/// `env/env[0]` in `[0.1, 0.9]`, scanning from t = 0 and stopping once the
/// ratio first drops below 0.1 so later revivals cannot contaminate the fit.
pub fn fit_collapse_time(series: &TimeSeries) -> Result<f64> {
    let env = series
        .envelope
        .as_ref()
        .ok_or_else(|| Error::Config("collapse fit needs an envelope".into()))?;
    if env.is_empty() || env[0].is_nan() || env[0] <= 0.0 {
        return Err(Error::Config("empty or non-positive envelope".into()));
    }
    let env0 = env[0];
    if !env.iter().any(|&e| e < 0.5 * env0) {
        return Err(Error::InsufficientDecay);
    }
    let mut sum_yt2 = 0.0f64;
    let mut sum_t4 = 0.0f64;
    let mut points = 0usize;
    for (&t, &e) in series.times.iter().zip(env) {
        let ratio = e / env0;
        if ratio < 0.1 {
            break;
        }
        if ratio <= 0.9 {
            let y = ratio.ln();
            sum_yt2 += y * t * t;
            sum_t4 += t * t * t * t;
            points += 1;
        }
    }
    if points < 2 || sum_t4 == 0.0 {
        return Err(Error::Config(
            "too few points in the [0.1, 0.9] decay band to fit".into(),
        ));
    }
    let beta = -sum_yt2 / sum_t4;
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::Config(
            "decay fit produced a non-positive rate".into(),
        ));
    }
    Ok(1.0 / beta.sqrt())
}

/// Index range of `times` with values in `[lo, hi]`.
fn window_indices(times: &[f64], lo: f64, hi: f64) -> std::ops::Range<usize> {
    let start = times.partition_point(|&t| t < lo);
    let end = times.partition_point(|&t| t <= hi);
    start..end
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Locate the exact envelope maximum near each predicted revival center
/// (within `center ± T_R/4`) and flag peaks whose preceding valley floor no
/// longer dips below half the peak height.
///
/// Peaks without a local maximum in their window are reported with empty
/// measurement fields and a note; this is not fatal.
pub fn locate_revival_peaks(
    series: &TimeSeries,
    structure: &RevivalStructure,
) -> (Vec<PeakRecord>, Vec<String>) {
    let mut records = Vec::new();
    let mut notes = Vec::new();
    let env = match &series.envelope {
        Some(env) => env,
        None => {
            notes.push("peak search needs an envelope".into());
            return (records, notes);
        }
    };
    let t_end = *series.times.last().unwrap();
    let quarter = structure.t_r / 4.0;

    for peak in structure.peaks.iter().filter(|p| p.m >= 1) {
        if peak.center >= t_end {
            break;
        }
        let range = window_indices(&series.times, peak.center - quarter, peak.center + quarter);
        let mut record = PeakRecord {
            m: peak.m,
            predicted_center: peak.center,
            predicted_height: 0.5 * peak.amplitude,
            exact_peak_time: None,
            exact_peak_height: None,
            mixed: None,
        };
        if range.len() >= 3 {
            let imax = range
                .clone()
                .max_by(|&a, &b| env[a].total_cmp(&env[b]))
                .unwrap();
            // a maximum at the window edge is not a local maximum
            if imax > range.start && imax + 1 < range.end {
                record.exact_peak_time = Some(series.times[imax]);
                record.exact_peak_height = Some(env[imax]);
            }
        }
        if record.exact_peak_time.is_none() {
            notes.push(Error::PeakNotFound { m: peak.m }.to_string());
        }
        records.push(record);
    }

    // mixing: median envelope over the middle half of the valley between
    // consecutive predicted centers, compared to half the located peak height
    for record in records.iter_mut() {
        let height = match record.exact_peak_height {
            Some(h) => h,
            None => continue,
        };
        let m = record.m as usize;
        let prev_center = structure.peaks[m - 1].center;
        let gap = structure.peaks[m].center - prev_center;
        let range = window_indices(
            &series.times,
            prev_center + 0.25 * gap,
            prev_center + 0.75 * gap,
        );
        if range.len() < 3 {
            continue;
        }
        let floor = median(range.map(|i| env[i]).collect());
        record.mixed = Some(floor > 0.5 * height);
    }

    (records, notes)
}

fn wrap_to_pi(x: f64) -> f64 {
    x - 2.0 * PI * (x / (2.0 * PI)).round()
}

/// Phase agreement per revival window `m = 0..=max_m`.
///
/// Inside `|t - center_m| <= width_m`, every zero crossing of the exact
/// signal is compared against the nearest same-direction crossing of the
/// predicted fast oscillation `cos(phi_1 - phi t)`; a descending crossing
/// should sit where the predicted phase passes `pi/2 (mod 2 pi)`, an
/// ascending one at `3 pi/2`. Errors are reported in time units, where a
/// quarter Rabi period is the largest offset still counted as agreement.
pub fn phase_window_stats(
    series: &TimeSeries,
    params: &ModelParams,
    structure: &RevivalStructure,
    max_m: u32,
) -> Vec<PhaseWindowStats> {
    let phi = phase_frequency(params);
    let quarter = 2.0 * PI / phi / 4.0;
    let t_end = *series.times.last().unwrap();
    let mut stats = Vec::new();

    for peak in structure.peaks.iter().take_while(|p| p.m <= max_m) {
        if peak.center >= t_end {
            break;
        }
        let lo = (peak.center - peak.width).max(0.0);
        let hi = (peak.center + peak.width).min(t_end);
        let range = window_indices(&series.times, lo, hi);
        let mut errors = Vec::new();
        for i in range.start..range.end.saturating_sub(1) {
            let (v0, v1) = (series.values[i], series.values[i + 1]);
            if v0 == 0.0 || v0 * v1 >= 0.0 {
                continue;
            }
            let (t0, t1) = (series.times[i], series.times[i + 1]);
            let t_z = t0 - v0 * (t1 - t0) / (v1 - v0);
            let m_z = structure.window_index(t_z);
            let tau = t_z - m_z as f64 * structure.t_r;
            let chi = phi * t_z - phase_offset(params, m_z, tau);
            let target = if v1 < v0 { PI / 2.0 } else { 1.5 * PI };
            errors.push(wrap_to_pi(chi - target).abs() / phi);
        }
        if errors.is_empty() {
            continue;
        }
        let max = errors.iter().cloned().fold(0.0f64, f64::max);
        let mean = errors.iter().sum::<f64>() / errors.len() as f64;
        let rms = (errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64).sqrt();
        stats.push(PhaseWindowStats {
            m: peak.m,
            crossings: errors.len(),
            max_abs_error: max,
            mean_abs_error: mean,
            rms_error: rms,
            quarter_rabi_period: quarter,
            within_quarter_period: max <= quarter,
        });
    }
    stats
}

/// Revival windows compared per report: collapse window plus revivals 1..=3,
/// where the analytic phase is meaningful for the scenarios at hand.
const PHASE_REPORT_MAX_M: u32 = 3;

/// Run a scenario end to end: compute the requested series on one shared
/// grid and quantify the exact-vs-analytic comparison.
pub fn run_scenario(scenario: &Scenario) -> Result<(ScenarioSeries, ComparisonReport)> {
    scenario.validate()?;
    let params = &scenario.params;
    let times = scenario.time_grid();
    let mut notes = Vec::new();

    let structure = match revival_structure(params) {
        Ok(s) => Some(s),
        Err(Error::ZeroCoupling) => {
            if scenario.outputs.closedform {
                return Err(Error::ZeroCoupling);
            }
            notes.push(Error::ZeroCoupling.to_string());
            None
        }
        Err(e) => return Err(e),
    };

    let exact = if scenario.outputs.exact {
        let h = build_hamiltonian(params);
        let spec = eigendecompose(&h)?;
        let psi0 = if scenario.alpha == 0.0 {
            initial_state_all_left(params)
        } else {
            initial_state_tilted(params, scenario.alpha)?
        };
        Some(evolve_expectations(&spec, &psi0, params, &times)?)
    } else {
        None
    };
    let semianalytic = scenario
        .outputs
        .semianalytic
        .then(|| delta_semianalytic(params, &times));
    let closedform = if scenario.outputs.closedform {
        Some(delta_closed_form(params, &times)?)
    } else {
        None
    };

    let fitted_collapse_time = match &exact {
        Some(series) => match fit_collapse_time(series) {
            Ok(t) => Some(t),
            Err(e) => {
                notes.push(format!("collapse fit: {e}"));
                None
            }
        },
        None => None,
    };

    let (peaks, phase_windows) = match (&exact, &structure) {
        (Some(series), Some(structure)) => {
            let (peaks, peak_notes) = locate_revival_peaks(series, structure);
            notes.extend(peak_notes);
            let phases = phase_window_stats(series, params, structure, PHASE_REPORT_MAX_M);
            (peaks, phases)
        }
        _ => (Vec::new(), Vec::new()),
    };

    let (envelope_rmse, envelope_max_abs_error) = match (&exact, &closedform) {
        (Some(e), Some(c)) => {
            let (ee, ec) = (e.envelope.as_ref().unwrap(), c.envelope.as_ref().unwrap());
            let mut sum_sq = 0.0f64;
            let mut max_abs = 0.0f64;
            for (a, b) in ee.iter().zip(ec) {
                let d = (a - b).abs();
                sum_sq += d * d;
                max_abs = max_abs.max(d);
            }
            (Some((sum_sq / ee.len() as f64).sqrt()), Some(max_abs))
        }
        _ => (None, None),
    };

    let report = ComparisonReport {
        label: scenario.label.clone(),
        params: *params,
        alpha: scenario.alpha,
        rabi_regime: params.is_rabi_regime(),
        has_revival_structure: structure.is_some(),
        predicted_collapse_time: structure.as_ref().map(|s| s.t_c),
        revival: structure,
        fitted_collapse_time,
        envelope_rmse,
        envelope_max_abs_error,
        peaks,
        phase_windows,
        notes,
    };
    let series = ScenarioSeries {
        times,
        exact,
        semianalytic,
        closedform,
    };
    Ok((series, report))
}
