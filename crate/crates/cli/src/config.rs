use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use crnconn::experiments::{SweepSpec, QUICK_REALIZATIONS};
use crnconn::{NetworkParams, SimulationConfig};
use serde::Deserialize;

use crate::args::{ParamFlags, SimFlags};

/// On-disk configuration. Every section is optional and uses the library's
/// field names; unknown keys are rejected at every level.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub params: Option<NetworkParams>,
    pub sim: Option<SimulationConfig>,
    pub sweep: Option<SweepSpec>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn from_flags(flags: &ParamFlags) -> Result<Self> {
        match &flags.config {
            Some(path) => Self::load(path),
            None => Ok(Self::default()),
        }
    }
}

/// Applies the individual parameter flags on top of `base`.
pub fn apply_param_flags(mut p: NetworkParams, flags: &ParamFlags) -> NetworkParams {
    let pairs = [
        (&mut p.alpha, flags.alpha),
        (&mut p.lambda_p, flags.lambda_p),
        (&mut p.lambda_s, flags.lambda_s),
        (&mut p.r, flags.r),
        (&mut p.theta_p, flags.theta_p),
        (&mut p.theta_s, flags.theta_s),
    ];
    for (field, value) in pairs {
        if let Some(v) = value {
            *field = v;
        }
    }
    p
}

/// Applies `--quick`, then `--omega` and `--seed`, on top of `base`.
pub fn apply_sim_flags(mut c: SimulationConfig, flags: &SimFlags) -> SimulationConfig {
    if flags.quick {
        c.realizations = QUICK_REALIZATIONS;
    }
    if let Some(n) = flags.omega {
        c.realizations = n;
    }
    if let Some(s) = flags.seed {
        c.seed = s;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_only_what_they_name() {
        let flags = ParamFlags {
            alpha: Some(5.0),
            r: Some(2.0),
            ..Default::default()
        };
        let p = apply_param_flags(NetworkParams::reference(), &flags);
        assert_eq!((p.alpha, p.r), (5.0, 2.0));
        assert_eq!(p.lambda_p, NetworkParams::reference().lambda_p);
    }

    #[test]
    fn omega_beats_quick() {
        let flags = SimFlags {
            quick: true,
            omega: Some(42),
            seed: Some(9),
        };
        let c = apply_sim_flags(SimulationConfig::default(), &flags);
        assert_eq!((c.realizations, c.seed), (42, 9));
        let quick = SimFlags {
            quick: true,
            ..Default::default()
        };
        assert_eq!(apply_sim_flags(SimulationConfig::default(), &quick).realizations, QUICK_REALIZATIONS);
    }

    #[test]
    fn config_sections_reject_unknown_keys() {
        let ok: ConfigFile = serde_json::from_str(r#"{"params": {"alpha": 4}, "sim": {"realizations": 7}}"#).unwrap();
        assert_eq!(ok.params.unwrap().alpha, 4.0);
        assert_eq!(ok.params.unwrap().r, NetworkParams::reference().r);
        assert_eq!(ok.sim.unwrap().realizations, 7);
        assert!(serde_json::from_str::<ConfigFile>(r#"{"parms": {}}"#).is_err());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"params": {"alfa": 3}}"#).is_err());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"sim": {"omega": 3}}"#).is_err());
    }
}
