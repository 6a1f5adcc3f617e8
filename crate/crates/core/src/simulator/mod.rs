//! Monte Carlo simulation of the underlay network.
//!
//! Every trial samples a fresh deployment, runs detect-and-avoid for the
//! reference pair and the interfering STs, and tests the SINR at the
//! reference receiver. Each trial is a pure function of `(seed, trial)`,
//! so estimates do not depend on how trials are scheduled.

mod config;
mod deployment;
mod detection;
mod estimate;
mod ppp;
mod trial;

pub use config::{LinkDirectionMode, PairDistanceMode, Rect, SimulationConfig, StActivityMode, Window};
pub use deployment::{build_deployment, reference_pair, Deployment, ReferencePair, SecondaryTransmitter, Station};
pub use detection::{check_spectrum_available, SpectrumCheck};
pub use estimate::{estimate, estimate_with_workers, EstimateResult, StandardErrors};
pub use ppp::{sample_poisson_count, sample_ppp, TILE_SIZE};
pub use trial::{compute_sinr, run_trial, TrialOutcome};

/// Seed of the generators owned by one trial.
pub(crate) fn trial_seed(seed: u64, trial: u64) -> u64 {
    ppp::derive_seed(&[seed, trial])
}

/// Path loss `d^(-α)`, by repeated multiplication for integer exponents.
#[derive(Clone, Copy)]
pub(crate) struct PathLoss {
    alpha: f64,
    integer: Option<i32>,
}

impl PathLoss {
    pub fn new(alpha: f64) -> Self {
        let integer = (alpha.fract() == 0.0 && alpha.abs() < 64.0).then_some(alpha as i32);
        Self { alpha, integer }
    }

    /// `d^(-α)`.
    #[inline]
    pub fn at(self, d: f64) -> f64 {
        1.0 / self.inverse_at(d)
    }

    /// `d^α`.
    #[inline]
    pub fn inverse_at(self, d: f64) -> f64 {
        let d2 = d * d;
        match self.integer {
            Some(2) => d2,
            Some(3) => d2 * d,
            Some(4) => d2 * d2,
            Some(5) => d2 * d2 * d,
            Some(6) => d2 * d2 * d2,
            Some(n) => d.powi(n),
            None => d.powf(self.alpha),
        }
    }
}

/// `⌊x⌋` as an integer, without a libm call.
#[inline]
pub(crate) fn floor_i64(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) > x {
        t - 1
    } else {
        t
    }
}
