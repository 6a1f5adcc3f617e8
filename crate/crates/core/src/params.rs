//! Model parameters and antenna regimes.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar parameters of the network model. All quantities are dimensionless.
/// Fields missing from JSON take their [`reference`](Self::reference) values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkParams {
    /// Primary-user density per unit area.
    pub lambda_p: f64,
    /// Secondary-user density per unit area.
    pub lambda_s: f64,
    /// Detection preamble power of primary receivers.
    pub p_d: f64,
    /// Primary transmitter power.
    pub p_p: f64,
    /// Secondary transmitter power.
    pub p_s: f64,
    /// Detection threshold.
    pub eta: f64,
    /// Noise power.
    pub sigma2: f64,
    /// SINR threshold.
    pub delta: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Primary-user beamwidth in radians.
    pub theta_p: f64,
    /// Secondary-user beamwidth in radians.
    pub theta_s: f64,
    /// Distance between the two secondary users of the reference pair.
    pub r: f64,
}

impl NetworkParams {
    /// Reference operating point: `P_d = 10`, `P_p = 8`, `P_s = 6`,
    /// `η = 0.05`, `σ² = 0.01`, `δ = 5`, `λ_s = 0.0002`, with
    /// `λ_p = 0.02`, `α = 3`, `θ_p = θ_s = π/3` and `r = 3`.
    pub fn reference() -> Self {
        Self {
            lambda_p: 0.02,
            lambda_s: 0.0002,
            p_d: 10.0,
            p_p: 8.0,
            p_s: 6.0,
            eta: 0.05,
            sigma2: 0.01,
            delta: 5.0,
            alpha: 3.0,
            theta_p: PI / 3.0,
            theta_s: PI / 3.0,
            r: 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter { name, value, reason })
            }
        }
        check("lambda_p", self.lambda_p, self.lambda_p >= 0.0, "must be non-negative")?;
        check("lambda_s", self.lambda_s, self.lambda_s >= 0.0, "must be non-negative")?;
        check("p_d", self.p_d, self.p_d > 0.0, "must be positive")?;
        check("p_p", self.p_p, self.p_p > 0.0, "must be positive")?;
        check("p_s", self.p_s, self.p_s > 0.0, "must be positive")?;
        check("eta", self.eta, self.eta > 0.0, "must be positive")?;
        check("sigma2", self.sigma2, self.sigma2 >= 0.0, "must be non-negative")?;
        check("delta", self.delta, self.delta > 0.0, "must be positive")?;
        check("alpha", self.alpha, (2.0..=6.0).contains(&self.alpha), "must lie in [2, 6]")?;
        check("theta_p", self.theta_p, self.theta_p > 0.0 && self.theta_p <= TAU, "must lie in (0, 2π]")?;
        check("theta_s", self.theta_s, self.theta_s > 0.0 && self.theta_s <= TAU, "must lie in (0, 2π]")?;
        check("r", self.r, self.r > 0.0, "must be positive")?;
        Ok(())
    }

    /// Rejects `α ≤ 2`, where the interference closed forms diverge.
    pub fn require_interference_alpha(&self) -> Result<()> {
        if self.alpha > 2.0 {
            Ok(())
        } else {
            Err(Error::AlphaTooSmall(self.alpha))
        }
    }
}

impl Default for NetworkParams {
    fn default() -> Self {
        Self::reference()
    }
}

/// Which users carry sector antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntennaRegime {
    /// Omni-directional primary and secondary users.
    Omn,
    /// Omni-directional primary users, sector secondary users.
    OmnDir,
    /// Sector antennas everywhere.
    Dir,
}

impl AntennaRegime {
    pub const ALL: [AntennaRegime; 3] = [AntennaRegime::Omn, AntennaRegime::OmnDir, AntennaRegime::Dir];

    /// `(θ_p, θ_s)` actually in force under this regime.
    pub fn beamwidths(self, params: &NetworkParams) -> (f64, f64) {
        match self {
            AntennaRegime::Omn => (TAU, TAU),
            AntennaRegime::OmnDir => (TAU, params.theta_s),
            AntennaRegime::Dir => (params.theta_p, params.theta_s),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AntennaRegime::Omn => "omn",
            AntennaRegime::OmnDir => "omndir",
            AntennaRegime::Dir => "dir",
        }
    }
}

impl fmt::Display for AntennaRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for AntennaRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omn" => Ok(AntennaRegime::Omn),
            "omndir" | "omn-dir" => Ok(AntennaRegime::OmnDir),
            "dir" => Ok(AntennaRegime::Dir),
            other => Err(Error::Config(format!("unknown regime `{other}` (expected omn, omndir or dir)"))),
        }
    }
}

/// Which closed form to use for the fully omni-directional topological
/// connectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyVariant {
    /// The general sector formula with both beamwidths set to `2π`.
    #[default]
    Reduced,
    /// The standalone omni-directional expression, whose
    /// interference terms are smaller by a factor `2π²`.
    AsPrinted,
}

/// The three connectivity probabilities of a reference pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityBreakdown {
    pub p_spectrum: f64,
    pub p_topological: f64,
    /// Always `p_spectrum * p_topological`.
    pub p_connection: f64,
}

impl ConnectivityBreakdown {
    pub fn new(p_spectrum: f64, p_topological: f64) -> Self {
        Self {
            p_spectrum,
            p_topological,
            p_connection: p_spectrum * p_topological,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_is_valid() {
        NetworkParams::reference().validate().unwrap();
    }

    #[test]
    fn validation_names_the_field() {
        let mut p = NetworkParams::reference();
        p.theta_s = 0.0;
        let err = p.validate().unwrap_err().to_string();
        assert!(err.contains("theta_s"), "{err}");
        p = NetworkParams::reference();
        p.lambda_p = -1.0;
        assert!(p.validate().is_err());
        p = NetworkParams::reference();
        p.alpha = 2.0;
        p.validate().unwrap();
        assert!(matches!(p.require_interference_alpha(), Err(Error::AlphaTooSmall(_))));
    }

    #[test]
    fn regime_forcing() {
        let p = NetworkParams::reference();
        assert_eq!(AntennaRegime::Omn.beamwidths(&p), (TAU, TAU));
        assert_eq!(AntennaRegime::OmnDir.beamwidths(&p), (TAU, p.theta_s));
        assert_eq!(AntennaRegime::Dir.beamwidths(&p), (p.theta_p, p.theta_s));
    }

    #[test]
    fn regime_parsing() {
        for r in AntennaRegime::ALL {
            assert_eq!(r.as_str().parse::<AntennaRegime>().unwrap(), r);
        }
        assert!("sector".parse::<AntennaRegime>().is_err());
    }

    #[test]
    fn unknown_json_keys_rejected() {
        let mut v = serde_json::to_value(NetworkParams::reference()).unwrap();
        v["bogus"] = serde_json::json!(1.0);
        assert!(serde_json::from_value::<NetworkParams>(v).is_err());
    }
}
