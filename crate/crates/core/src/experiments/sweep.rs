use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::connection_probability;
use crate::error::{Error, Result};
use crate::params::{AntennaRegime, ConnectivityBreakdown, NetworkParams, TopologyVariant};
use crate::simulator::{estimate, EstimateResult, SimulationConfig};

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    R,
    LambdaP,
    ThetaP,
    ThetaS,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::R => "r",
            SweepVariable::LambdaP => "lambda_p",
            SweepVariable::ThetaP => "theta_p",
            SweepVariable::ThetaS => "theta_s",
        }
    }

    /// `base` with this variable set to `value`.
    pub fn apply(self, base: &NetworkParams, value: f64) -> NetworkParams {
        let mut p = *base;
        match self {
            SweepVariable::R => p.r = value,
            SweepVariable::LambdaP => p.lambda_p = value,
            SweepVariable::ThetaP => p.theta_p = value,
            SweepVariable::ThetaS => p.theta_s = value,
        }
        p
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SweepVariable::R),
            "lambda_p" | "lambda-p" => Ok(SweepVariable::LambdaP),
            "theta_p" | "theta-p" => Ok(SweepVariable::ThetaP),
            "theta_s" | "theta-s" => Ok(SweepVariable::ThetaS),
            other => Err(Error::Config(format!(
                "unknown sweep variable `{other}` (expected r, lambda_p, theta_p or theta_s)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    #[serde(default)]
    pub base_params: NetworkParams,
    pub regimes: Vec<AntennaRegime>,
    /// Analytics only when absent.
    #[serde(default)]
    pub sim: Option<SimulationConfig>,
    #[serde(default)]
    pub variant: TopologyVariant,
}

impl SweepSpec {
    pub fn analytic(variable: SweepVariable, values: Vec<f64>, base_params: NetworkParams, regimes: Vec<AntennaRegime>) -> Self {
        Self {
            variable,
            values,
            base_params,
            regimes,
            sim: None,
            variant: TopologyVariant::default(),
        }
    }

    pub fn with_sim(mut self, sim: SimulationConfig) -> Self {
        self.sim = Some(sim);
        self
    }

    /// Checks the value list, the regime set and every resulting parameter
    /// point.
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Config("sweep has no values".into()));
        }
        if self.regimes.is_empty() {
            return Err(Error::Config("sweep has no regimes".into()));
        }
        for w in self.values.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Config(format!(
                    "sweep values must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for &v in &self.values {
            let p = self.variable.apply(&self.base_params, v);
            p.validate()
                .and_then(|_| p.require_interference_alpha())
                .map_err(|e| Error::Config(format!("{} = {v}: {e}", self.variable)))?;
        }
        if let Some(sim) = &self.sim {
            sim.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub regime: AntennaRegime,
    pub analytic: ConnectivityBreakdown,
    pub simulated: Option<EstimateResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub variable: SweepVariable,
    /// Realisations and seed of the simulation, when one ran.
    pub sim: Option<SimulationConfig>,
    /// One row per `(value, regime)`, values outermost, in spec order.
    pub rows: Vec<SweepRow>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let points: Vec<(f64, AntennaRegime)> = spec
        .values
        .iter()
        .flat_map(|&v| spec.regimes.iter().map(move |&r| (v, r)))
        .collect();
    let rows = points
        .into_par_iter()
        .map(|(value, regime)| {
            let params = spec.variable.apply(&spec.base_params, value);
            let analytic = connection_probability(&params, regime, spec.variant)
                .map_err(|e| Error::Config(format!("{} = {value}: {e}", spec.variable)))?;
            let simulated = spec.sim.as_ref().map(|c| estimate(&params, c, regime)).transpose()?;
            Ok(SweepRow {
                value,
                regime,
                analytic,
                simulated,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        variable: spec.variable,
        sim: spec.sim.clone(),
        rows,
    })
}

/// [`run_sweep`] on a dedicated pool of `workers` threads. The result does
/// not depend on the worker count.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: Option<usize>) -> Result<SweepResult> {
    match workers {
        None => run_sweep(spec),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start {w} workers: {e}")))?
            .install(|| run_sweep(spec)),
    }
}
