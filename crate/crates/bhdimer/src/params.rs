use serde::Serialize;

use crate::error::{Error, Result};

/// Physical parameters of the two-site Bose-Hubbard model.
///
/// `J` is the hopping energy, `U` the on-site pair interaction energy and `N`
/// the conserved particle number. The dimensionless coupling `u = U N / J` is
/// always derived from the other three at construction and never stored
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    hopping: f64,
    interaction: f64,
    n: usize,
    coupling: f64,
}

impl ModelParams {
    /// Build from the physical energies `J` (hopping) and `U` (interaction).
    pub fn new(hopping: f64, interaction: f64, n: usize) -> Result<Self> {
        if !hopping.is_finite() || hopping <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "J must be > 0, got {hopping}"
            )));
        }
        if !interaction.is_finite() || interaction < 0.0 {
            return Err(Error::InvalidParams(format!(
                "U must be >= 0, got {interaction}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidParams("N must be >= 1".into()));
        }
        let coupling = interaction * n as f64 / hopping;
        Ok(Self {
            hopping,
            interaction,
            n,
            coupling,
        })
    }

    /// Build from the dimensionless coupling `u`, converting via `U = u J / N`.
    pub fn from_coupling(hopping: f64, coupling: f64, n: usize) -> Result<Self> {
        if !coupling.is_finite() || coupling < 0.0 {
            return Err(Error::InvalidParams(format!(
                "u must be >= 0, got {coupling}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidParams("N must be >= 1".into()));
        }
        Self::new(hopping, coupling * hopping / n as f64, n)
    }

    /// Hopping energy `J`.
    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    /// On-site interaction energy `U`.
    pub fn interaction(&self) -> f64 {
        self.interaction
    }

    /// Particle number `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimensionless coupling `u = U N / J`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Fock-space dimension `N + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// The closed-form revival model is derived for `u < 1`; outside that
    /// regime its predictions are advisory only.
    pub fn is_rabi_regime(&self) -> bool {
        self.coupling < 1.0
    }
}
