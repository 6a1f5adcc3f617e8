//! One-command data sets for the standard figures.
//!
//! Every preset starts from [`NetworkParams::reference`] and overrides only
//! the parameters its figure fixes. Figures with several curves or panels
//! expand into one sweep per panel and beam setting.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::csv::emit_csv;
use super::sweep::{run_sweep_with_workers, SweepSpec, SweepVariable};
use crate::error::{Error, Result};
use crate::params::{AntennaRegime, NetworkParams};
use crate::simulator::SimulationConfig;

/// Realisations per point in quick mode.
pub const QUICK_REALIZATIONS: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Spectrum availability against `λ_p`.
    Fig4,
    /// Topological connectivity against `λ_p`.
    Fig6,
    /// Connection probability over the `(θ_p, θ_s)` plane.
    Fig7,
    /// Connection probability against `r`, with simulation.
    Fig8,
    /// Connection probability against `λ_p`, with simulation.
    Fig9,
    /// Connection probability against `θ_p`.
    Fig10,
    /// Connection probability against `θ_s`.
    Fig11,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Fig4,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
        Preset::Fig9,
        Preset::Fig10,
        Preset::Fig11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Fig9 => "fig9",
            Preset::Fig10 => "fig10",
            Preset::Fig11 => "fig11",
        }
    }

    /// The sweeps making up the figure, each with a file stem.
    pub fn sweeps(self, sim: &SimulationConfig) -> Vec<NamedSweep> {
        let base = NetworkParams::reference();
        let densities = || (1..=10).map(|i| 0.005 * i as f64).collect::<Vec<_>>();
        let alphas = [3.0, 5.0];
        let name = self.name();
        let mut out = Vec::new();
        match self {
            Preset::Fig4 | Preset::Fig6 => {
                let beams: &[(&str, f64, f64)] = match self {
                    Preset::Fig4 => &[("pi3_pi9", PI / 9.0, PI / 3.0), ("pi3_pi3", PI / 3.0, PI / 3.0)],
                    _ => &[
                        ("pi3_pi3", PI / 3.0, PI / 3.0),
                        ("pi9_pi3", PI / 9.0, PI / 3.0),
                        ("pi9_pi9", PI / 9.0, PI / 9.0),
                    ],
                };
                for alpha in alphas {
                    let p = NetworkParams { alpha, ..base };
                    out.push(NamedSweep::new(
                        format!("{name}_alpha{alpha}_omni"),
                        SweepSpec::analytic(
                            SweepVariable::LambdaP,
                            densities(),
                            p,
                            vec![AntennaRegime::Omn, AntennaRegime::OmnDir],
                        ),
                    ));
                    for &(tag, theta_p, theta_s) in beams {
                        out.push(NamedSweep::new(
                            format!("{name}_alpha{alpha}_dir_{tag}"),
                            SweepSpec::analytic(
                                SweepVariable::LambdaP,
                                densities(),
                                NetworkParams { theta_p, theta_s, ..p },
                                vec![AntennaRegime::Dir],
                            ),
                        ));
                    }
                }
            }
            Preset::Fig7 => {
                for (i, theta_s) in beam_grid().into_iter().enumerate() {
                    out.push(NamedSweep::new(
                        format!("{name}_theta_s{:02}", i + 1),
                        SweepSpec::analytic(
                            SweepVariable::ThetaP,
                            beam_grid(),
                            NetworkParams { theta_s, ..base },
                            vec![AntennaRegime::Dir],
                        ),
                    ));
                }
            }
            Preset::Fig8 | Preset::Fig9 => {
                let (variable, values) = match self {
                    Preset::Fig8 => (SweepVariable::R, (1..=5).map(f64::from).collect::<Vec<_>>()),
                    _ => (SweepVariable::LambdaP, vec![0.005, 0.01, 0.02, 0.03, 0.04, 0.05]),
                };
                for alpha in alphas {
                    out.push(NamedSweep::new(
                        format!("{name}_alpha{alpha}"),
                        SweepSpec::analytic(
                            variable,
                            values.clone(),
                            NetworkParams { alpha, ..base },
                            AntennaRegime::ALL.to_vec(),
                        )
                        .with_sim(sim.clone()),
                    ));
                }
            }
            Preset::Fig10 | Preset::Fig11 => {
                let variable = if self == Preset::Fig10 {
                    SweepVariable::ThetaP
                } else {
                    SweepVariable::ThetaS
                };
                out.push(NamedSweep::new(
                    name.to_string(),
                    SweepSpec::analytic(
                        variable,
                        beam_grid(),
                        NetworkParams { lambda_p: 0.01, ..base },
                        vec![AntennaRegime::Dir],
                    ),
                ));
            }
        }
        out
    }

    /// Runs every sweep of the preset and writes `<stem>.csv` files into
    /// `out_dir`, returning their paths in order.
    pub fn run(self, sim: &SimulationConfig, out_dir: &Path, workers: Option<usize>) -> Result<Vec<PathBuf>> {
        let mut paths = Vec::new();
        for s in self.sweeps(sim) {
            let result = run_sweep_with_workers(&s.spec, workers)?;
            let path = out_dir.join(format!("{}.csv", s.stem));
            emit_csv(&result, &path)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// Beamwidths `kπ/18`, `k = 1..=9`, covering `(0, π/2]`.
fn beam_grid() -> Vec<f64> {
    (1..=9).map(|k| FRAC_PI_2 * k as f64 / 9.0).collect()
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!("unknown preset `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSweep {
    pub stem: String,
    pub spec: SweepSpec,
}

impl NamedSweep {
    fn new(stem: String, spec: SweepSpec) -> Self {
        Self { stem, spec }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig5".parse::<Preset>().is_err());
    }

    #[test]
    fn every_preset_is_valid_and_uniquely_named() {
        let sim = SimulationConfig::default();
        for p in Preset::ALL {
            let sweeps = p.sweeps(&sim);
            assert!(!sweeps.is_empty());
            let mut stems: Vec<_> = sweeps.iter().map(|s| s.stem.clone()).collect();
            stems.sort();
            stems.dedup();
            assert_eq!(stems.len(), sweeps.len(), "{p}");
            for s in &sweeps {
                s.spec.validate().unwrap();
                assert!(s.stem.starts_with(p.name()));
            }
        }
    }

    #[test]
    fn only_the_simulation_figures_simulate() {
        let sim = SimulationConfig::default();
        for p in Preset::ALL {
            let simulated = p.sweeps(&sim).iter().any(|s| s.spec.sim.is_some());
            assert_eq!(simulated, matches!(p, Preset::Fig8 | Preset::Fig9), "{p}");
        }
    }

    #[test]
    fn figure_parameters_are_baked_in() {
        let sim = SimulationConfig::default();
        let fig10 = &Preset::Fig10.sweeps(&sim)[0].spec;
        assert_eq!(fig10.base_params.lambda_p, 0.01);
        assert_eq!(fig10.base_params.r, 3.0);
        assert_eq!(fig10.base_params.theta_s, PI / 3.0);
        assert_eq!(*fig10.values.last().unwrap(), FRAC_PI_2);
        let fig8 = Preset::Fig8.sweeps(&sim);
        assert_eq!(fig8.len(), 2);
        assert_eq!(fig8[1].spec.base_params.alpha, 5.0);
        assert_eq!(fig8[0].spec.base_params.lambda_p, 0.02);
        assert_eq!(Preset::Fig7.sweeps(&sim).len(), 9);
    }

    #[test]
    fn analytic_preset_writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let paths = Preset::Fig11.run(&SimulationConfig::default(), dir.path(), Some(1)).unwrap();
        assert_eq!(paths, vec![dir.path().join("fig11.csv")]);
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        assert_eq!(text.lines().count(), 10);
    }
}
