//! One realisation: deployment, detect-and-avoid and the SINR test.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{LinkDirectionMode, PairDistanceMode, SimulationConfig, StActivityMode};
use super::deployment::{build_deployment, Deployment, SecondaryTransmitter, Station};
use super::detection::{PrField, SpectrumCheck};
use super::ppp::derive_seed;
use super::PathLoss;
use crate::analytics::{spectrum_availability, FADING_TAIL_CUTOFF};
use crate::error::{Error, Result};
use crate::geometry::{sample_fading, Point2D};
use crate::params::{AntennaRegime, NetworkParams};

// Independent generator streams owned by a trial, one per purpose, so that
// adding or skipping draws for one purpose never shifts another.
const STREAM_PAIR_DETECTION: u64 = 10;
const STREAM_ST_DETECTION: u64 = 11;
const STREAM_ST_THINNING: u64 = 12;
const STREAM_PT_FADING: u64 = 13;
const STREAM_ST_FADING: u64 = 14;
const STREAM_SIGNAL: u64 = 15;

fn stream(trial_seed: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(&[trial_seed, purpose, index]))
}

fn unit_uniform(seed: u64) -> f64 {
    (seed >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub spectrum_available: bool,
    pub topologically_connected: bool,
    pub connected: bool,
    /// SINR at SU_j; the smaller of the two ends in bidirectional mode.
    pub sinr: f64,
    /// Detection events against the reference pair, summed over both SUs.
    pub detecting_pr_count: u64,
    pub nearest_detecting_pr: Option<f64>,
}

/// Fading for the three kinds of link seen at a receiver.
trait FadingSource {
    fn signal(&mut self) -> f64;
    fn primary(&mut self) -> f64;
    fn secondary(&mut self) -> f64;
}

struct SharedStream<'r, R: ?Sized>(&'r mut R);

impl<R: Rng + ?Sized> FadingSource for SharedStream<'_, R> {
    fn signal(&mut self) -> f64 {
        sample_fading(self.0).value()
    }
    fn primary(&mut self) -> f64 {
        sample_fading(self.0).value()
    }
    fn secondary(&mut self) -> f64 {
        sample_fading(self.0).value()
    }
}

struct TrialStreams {
    signal: ChaCha8Rng,
    primary: ChaCha8Rng,
    secondary: ChaCha8Rng,
}

impl TrialStreams {
    fn new(trial_seed: u64, end: u64) -> Self {
        Self {
            signal: stream(trial_seed, STREAM_SIGNAL, end),
            primary: stream(trial_seed, STREAM_PT_FADING, end),
            secondary: stream(trial_seed, STREAM_ST_FADING, end),
        }
    }
}

impl FadingSource for TrialStreams {
    fn signal(&mut self) -> f64 {
        sample_fading(&mut self.signal).value()
    }
    fn primary(&mut self) -> f64 {
        sample_fading(&mut self.primary).value()
    }
    fn secondary(&mut self) -> f64 {
        sample_fading(&mut self.secondary).value()
    }
}

/// Received-power geometry of the link `src → rx`: distance and gain product,
/// or `None` when it is truncated or the gain product is zero.
fn link_geometry(rx: &Station, src: &Station, truncation: Option<f64>) -> Result<Option<(f64, f64)>> {
    let dx = src.position.x - rx.position.x;
    let dy = src.position.y - rx.position.y;
    let d2 = dx * dx + dy * dy;
    if d2 == 0.0 {
        return Err(Error::SingularPathLoss);
    }
    let d = d2.sqrt();
    if truncation.is_some_and(|t| d > t) {
        return Ok(None);
    }
    let g = rx.beam.gain_toward(dx, dy, d) * src.beam.gain_toward(-dx, -dy, d);
    Ok((g > 0.0).then_some((d, g)))
}

#[allow(clippy::too_many_arguments)]
fn sinr_at<F: FadingSource, A: FnMut(usize) -> bool>(
    rx: &Station,
    tx: &Station,
    pts: &[Station],
    sts: &[SecondaryTransmitter],
    params: &NetworkParams,
    truncation: Option<f64>,
    fading: &mut F,
    mut is_active: A,
) -> Result<f64> {
    let loss = PathLoss::new(params.alpha);
    let signal = match link_geometry(rx, tx, None)? {
        Some((d, g)) => params.p_s * g * fading.signal() * loss.at(d),
        None => 0.0,
    };
    let mut i_p = 0.0;
    for pt in pts {
        if let Some((d, g)) = link_geometry(rx, pt, truncation)? {
            i_p += g * fading.primary() * loss.at(d);
        }
    }
    let mut i_s = 0.0;
    for (k, st) in sts.iter().enumerate() {
        if let Some((d, g)) = link_geometry(rx, &st.station, truncation)? {
            if is_active(k) {
                i_s += g * fading.secondary() * loss.at(d);
            }
        }
    }
    Ok(signal / (params.p_p * i_p + params.p_s * i_s + params.sigma2))
}

/// SINR at SU_j for the link from SU_i, drawing all fading from `rng`.
///
/// Every PT interferes; an ST interferes when its `active` flag is
/// `Some(true)`. Draw order is the signal link, then PTs, then active STs,
/// skipping links with a zero gain product.
pub fn compute_sinr<R: Rng + ?Sized>(deployment: &Deployment, params: &NetworkParams, rng: &mut R) -> Result<f64> {
    let pair = &deployment.reference_pair;
    let sts = &deployment.sts;
    sinr_at(
        &pair.su_j,
        &pair.su_i,
        &deployment.pts,
        sts,
        params,
        None,
        &mut SharedStream(rng),
        |k| sts[k].active == Some(true),
    )
}

/// Distance-averaged pair check in the omni regime: each PR draws one
/// fading value shared by both detection discs and its own pair distance
/// `l = R_o √U`, which has density `2l/R_o²` on `[0, R_o]`.
fn averaged_pair_check(
    field: &PrField<'_>,
    su_i: &Station,
    params: &NetworkParams,
    rng: &mut ChaCha8Rng,
) -> SpectrumCheck {
    let mut check = SpectrumCheck {
        available: true,
        detecting_count: 0,
        nearest_detecting: None,
    };
    let mut near = Vec::new();
    let origin = su_i.position;
    field.grid().query(origin.x, origin.y, 2.0 * field.reach(), &mut near);
    let a = params.alpha;
    for &idx in &near {
        let pr = field.grid().prs()[idx as usize].position;
        let d_i = origin.distance(&pr);
        // a PR can only reach the union when it lies within 2 R_o
        if params.eta * (0.5 * d_i).powf(a) / params.p_d > FADING_TAIL_CUTOFF {
            continue;
        }
        let h = sample_fading(rng).value();
        let u: f64 = rng.random();
        let r_o = (params.p_d * h / params.eta).powf(1.0 / a);
        let su_j = Point2D::new(origin.x + r_o * u.sqrt(), origin.y);
        let d_j = su_j.distance(&pr);
        if d_i < r_o || d_j < r_o {
            check.available = false;
            check.detecting_count += 1;
            let d = d_i.min(d_j);
            check.nearest_detecting = Some(check.nearest_detecting.map_or(d, |n: f64| n.min(d)));
        }
    }
    check
}

/// Runs realisation `trial` of the experiment described by `config`.
///
/// Spectrum is available when neither reference SU is silenced by a PR.
/// The SINR test is applied in every trial, so `topologically_connected`
/// is unconditional and `connected` is the conjunction of the two.
pub fn run_trial(
    params: &NetworkParams,
    config: &SimulationConfig,
    regime: AntennaRegime,
    trial: u64,
) -> Result<TrialOutcome> {
    if config.pair_distance_mode == PairDistanceMode::Averaged && regime != AntennaRegime::Omn {
        return Err(Error::Config(format!(
            "averaged pair distance applies to the omn regime only, not {regime}"
        )));
    }
    let deployment = build_deployment(params, config, regime, trial)?;
    let ts = super::trial_seed(config.seed, trial);
    let pair = deployment.reference_pair;
    let mut field = PrField::new(&deployment.prs, params, regime);

    let spectrum = match config.pair_distance_mode {
        PairDistanceMode::Fixed => {
            let ci = field.check(&pair.su_i, params, &mut stream(ts, STREAM_PAIR_DETECTION, 0));
            let cj = field.check(&pair.su_j, params, &mut stream(ts, STREAM_PAIR_DETECTION, 1));
            SpectrumCheck {
                available: ci.available && cj.available,
                detecting_count: ci.detecting_count + cj.detecting_count,
                nearest_detecting: match (ci.nearest_detecting, cj.nearest_detecting) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                },
            }
        }
        PairDistanceMode::Averaged => {
            averaged_pair_check(&field, &pair.su_i, params, &mut stream(ts, STREAM_PAIR_DETECTION, 0))
        }
    };

    // ST activity is resolved on demand: an ST whose link to the receiver
    // has zero gain never needs it. Each ST owns its stream, so the result
    // does not depend on which STs were resolved.
    let thinned_p = match config.st_activity_mode {
        StActivityMode::Thinned => spectrum_availability(params, regime),
        StActivityMode::Simulated => 0.0,
    };
    let sts = &deployment.sts;
    let mut activity: Vec<Option<bool>> = vec![None; sts.len()];
    let mut is_active = |k: usize| -> bool {
        *activity[k].get_or_insert_with(|| match config.st_activity_mode {
            StActivityMode::Simulated => {
                field.is_available(&sts[k].station, params, &mut stream(ts, STREAM_ST_DETECTION, k as u64))
            }
            StActivityMode::Thinned => unit_uniform(derive_seed(&[ts, STREAM_ST_THINNING, k as u64])) < thinned_p,
        })
    };

    let truncation = config.interference_truncation_radius;
    let sinr_j = sinr_at(
        &pair.su_j,
        &pair.su_i,
        &deployment.pts,
        sts,
        params,
        truncation,
        &mut TrialStreams::new(ts, 0),
        &mut is_active,
    )?;
    let (sinr, topologically_connected) = match config.link_direction_mode {
        LinkDirectionMode::OneWay => (sinr_j, sinr_j >= params.delta),
        LinkDirectionMode::Bidirectional => {
            let sinr_i = sinr_at(
                &pair.su_i,
                &pair.su_j,
                &deployment.pts,
                sts,
                params,
                truncation,
                &mut TrialStreams::new(ts, 1),
                &mut is_active,
            )?;
            (sinr_j.min(sinr_i), sinr_j >= params.delta && sinr_i >= params.delta)
        }
    };

    Ok(TrialOutcome {
        spectrum_available: spectrum.available,
        topologically_connected,
        connected: spectrum.available && topologically_connected,
        sinr,
        detecting_pr_count: spectrum.detecting_count,
        nearest_detecting_pr: spectrum.nearest_detecting,
    })
}
