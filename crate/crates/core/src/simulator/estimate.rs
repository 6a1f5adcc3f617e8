//! Monte Carlo estimates over many independent trials.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SimulationConfig;
use super::trial::run_trial;
use crate::error::{Error, Result};
use crate::params::{AntennaRegime, NetworkParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardErrors {
    pub spectrum: f64,
    pub topological: f64,
    pub connection: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub p_spectrum_hat: f64,
    pub p_topological_hat: f64,
    pub p_connection_hat: f64,
    pub standard_error: StandardErrors,
    pub realizations_used: u64,
}

impl EstimateResult {
    fn from_counts(counts: Counts, n: u64) -> Self {
        let frac = |k: u64| k as f64 / n as f64;
        let se = |p: f64| (p * (1.0 - p) / n as f64).sqrt();
        let (ps, pt, pc) = (frac(counts.spectrum), frac(counts.topological), frac(counts.connected));
        Self {
            p_spectrum_hat: ps,
            p_topological_hat: pt,
            p_connection_hat: pc,
            standard_error: StandardErrors {
                spectrum: se(ps),
                topological: se(pt),
                connection: se(pc),
            },
            realizations_used: n,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    spectrum: u64,
    topological: u64,
    connected: u64,
}

impl Counts {
    fn add(self, o: Counts) -> Counts {
        Counts {
            spectrum: self.spectrum + o.spectrum,
            topological: self.topological + o.topological,
            connected: self.connected + o.connected,
        }
    }
}

/// Estimates the three probabilities from `config.realizations` trials on
/// the global rayon pool.
pub fn estimate(params: &NetworkParams, config: &SimulationConfig, regime: AntennaRegime) -> Result<EstimateResult> {
    estimate_with_workers(params, config, regime, None)
}

/// Like [`estimate`], on a dedicated pool of `workers` threads when given.
/// The result is identical for every worker count.
pub fn estimate_with_workers(
    params: &NetworkParams,
    config: &SimulationConfig,
    regime: AntennaRegime,
    workers: Option<usize>,
) -> Result<EstimateResult> {
    params.validate()?;
    config.validate()?;
    let n = config.realizations;
    let run = || -> Result<Counts> {
        (0..n)
            .into_par_iter()
            .map(|t| {
                run_trial(params, config, regime, t).map(|o| Counts {
                    spectrum: o.spectrum_available as u64,
                    topological: o.topologically_connected as u64,
                    connected: o.connected as u64,
                })
            })
            .try_reduce(Counts::default, |a, b| Ok(a.add(b)))
    };
    let counts = match workers {
        None => run()?,
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start {w} workers: {e}")))?
            .install(run)?,
    };
    Ok(EstimateResult::from_counts(counts, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::config::Window;

    fn small_config(n: u64) -> SimulationConfig {
        SimulationConfig {
            outer_window: Window::new(400.0, 400.0),
            inner_window: Window::new(300.0, 300.0),
            realizations: n,
            ..Default::default()
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let p = NetworkParams::reference();
        let c = small_config(120).with_seed(42);
        let one = estimate_with_workers(&p, &c, AntennaRegime::Dir, Some(1)).unwrap();
        let four = estimate_with_workers(&p, &c, AntennaRegime::Dir, Some(4)).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, estimate(&p, &c, AntennaRegime::Dir).unwrap());
    }

    #[test]
    fn standard_errors_are_bounded() {
        let p = NetworkParams::reference();
        let n = 200;
        let r = estimate(&p, &small_config(n), AntennaRegime::OmnDir).unwrap();
        let bound = 0.5 / (n as f64).sqrt();
        for (est, se) in [
            (r.p_spectrum_hat, r.standard_error.spectrum),
            (r.p_topological_hat, r.standard_error.topological),
            (r.p_connection_hat, r.standard_error.connection),
        ] {
            assert!((0.0..=1.0).contains(&est));
            assert!(se <= bound + 1e-15);
        }
        assert!(r.p_connection_hat <= r.p_spectrum_hat.min(r.p_topological_hat));
        assert_eq!(r.realizations_used, n);
    }

    #[test]
    fn bernoulli_bound_at_default_count() {
        let r = EstimateResult::from_counts(
            Counts {
                spectrum: 1500,
                topological: 0,
                connected: 3000,
            },
            3000,
        );
        assert!((r.standard_error.spectrum - (0.25f64 / 3000.0).sqrt()).abs() < 1e-15);
        assert!(r.standard_error.spectrum <= 0.00913);
        assert_eq!(r.standard_error.topological, 0.0);
        assert_eq!(r.standard_error.connection, 0.0);
    }

    #[test]
    fn different_seeds_give_different_samples() {
        let p = NetworkParams::reference();
        let a = estimate(&p, &small_config(200).with_seed(1), AntennaRegime::Omn).unwrap();
        let b = estimate(&p, &small_config(200).with_seed(2), AntennaRegime::Omn).unwrap();
        assert_ne!(a, b);
    }
}
