use serde::Serialize;

use crate::error::{Error, Result};

/// A sampled real-valued signal, optionally with its (nonnegative) envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope: Option<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, envelope: Option<Vec<f64>>) -> Result<Self> {
        if values.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: values.len(),
            });
        }
        if let Some(env) = &envelope {
            if env.len() != times.len() {
                return Err(Error::DimensionMismatch {
                    expected: times.len(),
                    got: env.len(),
                });
            }
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "times must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self {
            times,
            values,
            envelope,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}
