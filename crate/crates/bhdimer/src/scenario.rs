//! Declarative run descriptions: which model, which time grid, which outputs.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analytic::{phase_frequency, revival_structure};
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Which series a scenario computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OutputSet {
    pub exact: bool,
    pub semianalytic: bool,
    pub closedform: bool,
}

impl OutputSet {
    pub const ALL: Self = Self {
        exact: true,
        semianalytic: true,
        closedform: true,
    };
    pub const EXACT_ONLY: Self = Self {
        exact: true,
        semianalytic: false,
        closedform: false,
    };
    pub const CLOSED_ONLY: Self = Self {
        exact: false,
        semianalytic: false,
        closedform: true,
    };

    pub fn any(&self) -> bool {
        self.exact || self.semianalytic || self.closedform
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Exact,
    Semianalytic,
    Closedform,
}

impl FromIterator<OutputKind> for OutputSet {
    fn from_iter<T: IntoIterator<Item = OutputKind>>(iter: T) -> Self {
        let mut set = Self {
            exact: false,
            semianalytic: false,
            closedform: false,
        };
        for kind in iter {
            match kind {
                OutputKind::Exact => set.exact = true,
                OutputKind::Semianalytic => set.semianalytic = true,
                OutputKind::Closedform => set.closedform = true,
            }
        }
        set
    }
}

/// A fully resolved run description.
#[derive(Debug, Clone, Serialize)]
pub struct Scenario {
    pub label: String,
    pub params: ModelParams,
    /// Tilt angle of the initial state; 0 starts all particles on the left.
    pub alpha: f64,
    pub t_max: f64,
    pub samples_per_rabi_period: u32,
    pub outputs: OutputSet,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(Error::Config(format!(
                "t_max must be > 0, got {}",
                self.t_max
            )));
        }
        if self.samples_per_rabi_period < 4 {
            return Err(Error::Config(format!(
                "samples_per_rabi_period must be >= 4, got {}",
                self.samples_per_rabi_period
            )));
        }
        if !(0.0..=FRAC_PI_2).contains(&self.alpha) {
            return Err(Error::Config(format!(
                "alpha must lie in [0, pi/2], got {}",
                self.alpha
            )));
        }
        if !self.outputs.any() {
            return Err(Error::Config("no outputs requested".into()));
        }
        if self.alpha != 0.0 && (self.outputs.semianalytic || self.outputs.closedform) {
            return Err(Error::Config(
                "semianalytic/closedform series describe the all-left start; \
                 only the exact output supports alpha != 0"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Fastest oscillation frequency of the signal; sets the grid spacing.
    /// `phi` for u > 0, the bare Rabi frequency `2J` for u = 0.
    pub fn fast_frequency(&self) -> f64 {
        if self.params.coupling() > 0.0 {
            phase_frequency(&self.params)
        } else {
            2.0 * self.params.hopping()
        }
    }

    pub fn time_step(&self) -> f64 {
        2.0 * PI / self.fast_frequency() / self.samples_per_rabi_period as f64
    }

    /// Uniform grid `0, dt, 2 dt, ..., <= t_max` with at least
    /// `samples_per_rabi_period` points per Rabi period.
    pub fn time_grid(&self) -> Vec<f64> {
        let dt = self.time_step();
        let count = (self.t_max / dt).floor() as usize + 1;
        (0..count).map(|i| i as f64 * dt).collect()
    }

    /// Builtin scenarios: `fig1`, `fig2`, `rabi-only`.
    pub fn builtin(name: &str) -> Result<Scenario> {
        match name {
            // u = 1/2: full collapse/revival sweep past the blurring time
            "fig1" => {
                let params = ModelParams::new(1.0, 0.005, 100)?;
                let structure = revival_structure(&params)?;
                Ok(Scenario {
                    label: "fig1".into(),
                    params,
                    alpha: 0.0,
                    t_max: 1.1 * structure.t_b,
                    samples_per_rabi_period: 20,
                    outputs: OutputSet::ALL,
                })
            }
            // u = 1/20: slower collapse, window covering revivals m <= 4
            "fig2" => {
                let params = ModelParams::new(1.0, 0.001, 50)?;
                let structure = revival_structure(&params)?;
                Ok(Scenario {
                    label: "fig2".into(),
                    params,
                    alpha: 0.0,
                    t_max: 4.5 * structure.t_r,
                    samples_per_rabi_period: 20,
                    outputs: OutputSet::ALL,
                })
            }
            // free hopping: pure Rabi oscillation, no revival structure
            "rabi-only" => Ok(Scenario {
                label: "rabi-only".into(),
                params: ModelParams::new(1.0, 0.0, 100)?,
                alpha: 0.0,
                t_max: 100.0,
                samples_per_rabi_period: 20,
                outputs: OutputSet::EXACT_ONLY,
            }),
            other => Err(Error::Config(format!(
                "unknown builtin scenario '{other}' (available: fig1, fig2, rabi-only)"
            ))),
        }
    }
}

/// Partial scenario description: a JSON scenario file or a set of CLI
/// overrides. Later layers win field by field.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOverrides {
    pub label: Option<String>,
    #[serde(rename = "J")]
    pub hopping: Option<f64>,
    #[serde(rename = "U")]
    pub interaction: Option<f64>,
    #[serde(rename = "u")]
    pub coupling: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub t_max: Option<f64>,
    pub samples_per_rabi_period: Option<u32>,
    pub outputs: Option<Vec<OutputKind>>,
}

impl ScenarioOverrides {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let parsed: Self = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if parsed.interaction.is_some() && parsed.coupling.is_some() {
            return Err(Error::Config(format!(
                "{}: set either U or u, not both",
                path.display()
            )));
        }
        Ok(parsed)
    }

    /// Apply these overrides on top of a base scenario.
    pub fn apply_to(&self, base: &Scenario) -> Result<Scenario> {
        let hopping = self.hopping.unwrap_or(base.params.hopping());
        let n = self.n.unwrap_or(base.params.n());
        let params = match (self.interaction, self.coupling) {
            (Some(_), Some(_)) => return Err(Error::Config("set either U or u, not both".into())),
            (Some(interaction), None) => ModelParams::new(hopping, interaction, n)?,
            (None, Some(coupling)) => ModelParams::from_coupling(hopping, coupling, n)?,
            (None, None) => ModelParams::new(hopping, base.params.interaction(), n)?,
        };
        Ok(Scenario {
            label: self.label.clone().unwrap_or_else(|| base.label.clone()),
            params,
            alpha: self.alpha.unwrap_or(base.alpha),
            t_max: self.t_max.unwrap_or(base.t_max),
            samples_per_rabi_period: self
                .samples_per_rabi_period
                .unwrap_or(base.samples_per_rabi_period),
            outputs: self
                .outputs
                .as_ref()
                .map(|kinds| kinds.iter().copied().collect())
                .unwrap_or(base.outputs),
        })
    }

    /// Build a scenario from these overrides alone, with CLI-level defaults:
    /// `J = 1`, `N = 100`, `alpha = 0`, 20 samples per Rabi period. The
    /// interaction (U or u) is required; `t_max` is required when
    /// `require_t_max` is set.
    pub fn into_scenario(
        self,
        default_outputs: OutputSet,
        require_t_max: bool,
    ) -> Result<Scenario> {
        let hopping = self.hopping.unwrap_or(1.0);
        let n = self.n.unwrap_or(100);
        let params = match (self.interaction, self.coupling) {
            (Some(_), Some(_)) => return Err(Error::Config("set either U or u, not both".into())),
            (Some(interaction), None) => ModelParams::new(hopping, interaction, n)?,
            (None, Some(coupling)) => ModelParams::from_coupling(hopping, coupling, n)?,
            (None, None) => {
                return Err(Error::Config(
                    "interaction not set: pass --U or --u, or use --scenario".into(),
                ))
            }
        };
        let t_max = match self.t_max {
            Some(t) => t,
            None if require_t_max => {
                return Err(Error::Config(
                    "t_max not set: pass --tmax or use a scenario with t_max".into(),
                ))
            }
            None => 1.0, // placeholder for commands that never touch the grid
        };
        Ok(Scenario {
            label: self.label.unwrap_or_else(|| "custom".into()),
            params,
            alpha: self.alpha.unwrap_or(0.0),
            t_max,
            samples_per_rabi_period: self.samples_per_rabi_period.unwrap_or(20),
            outputs: self
                .outputs
                .map(|kinds| kinds.into_iter().collect())
                .unwrap_or(default_outputs),
        })
    }
}
