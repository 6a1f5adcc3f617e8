//! One sampled network realisation.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::config::SimulationConfig;
use super::ppp::{expected_capacity, for_each_tiled, sample_tiled};
use crate::error::Result;
use crate::geometry::{Point2D, SectorBeam};
use crate::params::{AntennaRegime, NetworkParams};

pub(crate) const LAYER_PRIMARY: u64 = 1;
pub(crate) const LAYER_SECONDARY: u64 = 2;

/// A node position together with its antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Station {
    pub position: Point2D,
    pub beam: SectorBeam,
}

impl Station {
    pub fn new(position: Point2D, beam: SectorBeam) -> Self {
        Self { position, beam }
    }
}

/// An interfering secondary transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondaryTransmitter {
    pub station: Station,
    /// Whether the ST won spectrum access. `None` until resolved; in
    /// simulated mode only STs that can reach a reference receiver are
    /// resolved, since the others cannot affect the outcome.
    pub active: Option<bool>,
}

/// The two SUs whose link is tested. Their beams face each other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePair {
    /// SU_i, the transmitter.
    pub su_i: Station,
    /// SU_j, the receiver.
    pub su_j: Station,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub pts: Vec<Station>,
    /// `prs[k]` is the receiver served by `pts[k]`.
    pub prs: Vec<Station>,
    pub sts: Vec<SecondaryTransmitter>,
    pub reference_pair: ReferencePair,
}

/// Uniform point of the square `[-1, 1)²` at 32-bit resolution per axis,
/// from a single 64-bit draw.
fn square_point<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    const SCALE: f64 = 1.0 / (1u64 << 31) as f64;
    let bits = rng.next_u64();
    let u = (bits >> 32) as f64 * SCALE - 1.0;
    let v = (bits & 0xFFFF_FFFF) as f64 * SCALE - 1.0;
    (u, v)
}

/// Uniform point in the disc of radius `radius` around `center`.
fn uniform_in_disc<R: Rng + ?Sized>(center: Point2D, radius: f64, rng: &mut R) -> Point2D {
    let (u, v) = loop {
        let (u, v) = square_point(rng);
        if u * u + v * v < 1.0 {
            break (u, v);
        }
    };
    Point2D::new(center.x + radius * u, center.y + radius * v)
}

/// Copy of `template` with a uniform orientation. The draw is made for omni
/// beams too, so every regime consumes the same random numbers.
fn random_orientation<R: Rng + ?Sized>(template: &SectorBeam, rng: &mut R) -> SectorBeam {
    // uniform direction from a uniform point of the unit disc
    let (u, v, n2) = loop {
        let (u, v) = square_point(rng);
        let n2 = u * u + v * v;
        if n2 < 1.0 && n2 > 1e-12 {
            break (u, v, n2);
        }
    };
    if template.is_omni() {
        *template
    } else {
        let n = n2.sqrt();
        template.along(u / n, v / n)
    }
}

fn template_beam(beamwidth: f64) -> Result<SectorBeam> {
    if beamwidth >= TAU {
        Ok(SectorBeam::omni())
    } else {
        SectorBeam::new(0.0, beamwidth)
    }
}

/// Places the reference pair at the centre of the inner window, `params.r`
/// apart along the x-axis, beams locked onto each other.
pub fn reference_pair(params: &NetworkParams, regime: AntennaRegime) -> Result<ReferencePair> {
    let (_, theta_s) = regime.beamwidths(params);
    let half = 0.5 * params.r;
    Ok(ReferencePair {
        su_i: Station::new(Point2D::new(-half, 0.0), SectorBeam::new(0.0, theta_s)?),
        su_j: Station::new(Point2D::new(half, 0.0), SectorBeam::new(PI, theta_s)?),
    })
}

/// Samples the primary field over the outer window, each PR uniform in a
/// disc around its PT, and the secondary field over the inner window. All
/// orientations are i.i.d. uniform; regime beamwidths are applied here.
///
/// The deployment is a pure function of `(config.seed, trial)`.
pub fn build_deployment(
    params: &NetworkParams,
    config: &SimulationConfig,
    regime: AntennaRegime,
    trial: u64,
) -> Result<Deployment> {
    params.validate()?;
    config.validate()?;
    let (theta_p, theta_s) = regime.beamwidths(params);
    let primary_beam = template_beam(theta_p)?;
    let secondary_beam = template_beam(theta_s)?;
    let trial_seed = super::trial_seed(config.seed, trial);
    let link_radius = config.primary_link_radius;

    let outer = config.outer_window.rect();
    let mut pts = Vec::with_capacity(expected_capacity(params.lambda_p, &outer));
    let mut prs = Vec::with_capacity(pts.capacity());
    for_each_tiled(params.lambda_p, &outer, trial_seed, LAYER_PRIMARY, |pt, inside, rng| {
        let pt_beam = random_orientation(&primary_beam, rng);
        let pr = uniform_in_disc(pt, link_radius, rng);
        let pr_beam = random_orientation(&primary_beam, rng);
        if inside {
            pts.push(Station::new(pt, pt_beam));
            prs.push(Station::new(pr, pr_beam));
        }
    });

    let sts = sample_tiled(
        params.lambda_s,
        &config.inner_window.rect(),
        trial_seed,
        LAYER_SECONDARY,
        |p, rng| SecondaryTransmitter {
            station: Station::new(p, random_orientation(&secondary_beam, rng)),
            active: None,
        },
    );

    Ok(Deployment {
        pts,
        prs,
        sts,
        reference_pair: reference_pair(params, regime)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::config::Window;

    fn small_config() -> SimulationConfig {
        SimulationConfig {
            outer_window: Window::new(400.0, 400.0),
            inner_window: Window::new(300.0, 300.0),
            ..Default::default()
        }
    }

    #[test]
    fn omni_regime_forces_full_beams() {
        let d = build_deployment(&NetworkParams::reference(), &small_config(), AntennaRegime::Omn, 0).unwrap();
        assert!(!d.pts.is_empty());
        for s in d.pts.iter().chain(&d.prs).chain(d.sts.iter().map(|t| &t.station)) {
            assert_eq!(s.beam.beamwidth(), TAU);
        }
        assert!(d.reference_pair.su_i.beam.is_omni());
        assert!(d.reference_pair.su_j.beam.is_omni());
    }

    #[test]
    fn omn_dir_forces_primary_beams_only() {
        let p = NetworkParams::reference();
        let d = build_deployment(&p, &small_config(), AntennaRegime::OmnDir, 0).unwrap();
        assert!(d.pts.iter().all(|s| s.beam.is_omni()));
        assert!(d.sts.iter().all(|s| s.station.beam.beamwidth() == p.theta_s));
    }

    #[test]
    fn reference_pair_is_beam_locked() {
        let p = NetworkParams::reference();
        let pair = reference_pair(&p, AntennaRegime::Dir).unwrap();
        let (i, j) = (pair.su_i, pair.su_j);
        assert_eq!(i.position.distance(&j.position), p.r);
        assert_eq!(i.beam.orientation(), i.position.bearing_to(&j.position).unwrap());
        assert_eq!(j.beam.orientation(), j.position.bearing_to(&i.position).unwrap());
    }

    #[test]
    fn prs_stay_near_their_pts() {
        let c = small_config();
        let d = build_deployment(&NetworkParams::reference(), &c, AntennaRegime::Dir, 3).unwrap();
        assert_eq!(d.pts.len(), d.prs.len());
        for (t, r) in d.pts.iter().zip(&d.prs) {
            assert!(t.position.distance(&r.position) <= c.primary_link_radius);
        }
        let c0 = SimulationConfig {
            primary_link_radius: 0.0,
            ..small_config()
        };
        let d = build_deployment(&NetworkParams::reference(), &c0, AntennaRegime::Dir, 3).unwrap();
        assert!(d.pts.iter().zip(&d.prs).all(|(t, r)| t.position == r.position));
    }

    #[test]
    fn deployment_is_deterministic() {
        let c = small_config();
        let p = NetworkParams::reference();
        let a = build_deployment(&p, &c, AntennaRegime::Dir, 5).unwrap();
        let b = build_deployment(&p, &c, AntennaRegime::Dir, 5).unwrap();
        assert_eq!(a, b);
        let other = build_deployment(&p, &c, AntennaRegime::Dir, 6).unwrap();
        assert_ne!(a.pts, other.pts);
    }

    /// Displacement check: PR counts in the four quadrants of a central
    /// region, pooled over realisations, are consistent with a homogeneous
    /// PPP of intensity λ_p (chi-square with 4 degrees of freedom, each cell
    /// Poisson with known mean).
    #[test]
    fn displaced_receivers_are_homogeneous() {
        let p = NetworkParams::reference();
        let c = small_config();
        let half = 150.0;
        let trials = 200u64;
        let mut counts = [0f64; 4];
        for t in 0..trials {
            let d = build_deployment(&p, &c, AntennaRegime::Dir, t).unwrap();
            for pr in &d.prs {
                let (x, y) = (pr.position.x, pr.position.y);
                if x.abs() < half && y.abs() < half {
                    counts[(x >= 0.0) as usize + 2 * (y >= 0.0) as usize] += 1.0;
                }
            }
        }
        let expect = p.lambda_p * half * half * trials as f64;
        let chi2: f64 = counts.iter().map(|&o| (o - expect).powi(2) / expect).sum();
        // 99.9% quantile of chi-square with 4 dof
        assert!(chi2 < 18.47, "chi2 = {chi2}, counts = {counts:?}, expected {expect}");
    }
}
