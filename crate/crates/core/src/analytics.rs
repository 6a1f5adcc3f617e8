//! Closed-form connectivity of a secondary-user pair and the numerical
//! oracles that re-derive the same quantities from their integrals.
//!
//! Regimes are handled by substitution: `OmnDir` evaluates the sector
//! formulas with `θ_p = 2π`, and `Omn` with `θ_p = θ_s = 2π`, except for the
//! omni spectrum availability, which has its own union-of-discs form.

use std::f64::consts::{PI, TAU};

use crate::error::Result;
use crate::geometry::{angular_distance, normalize_angle, sector_gain, FadingSample, SectorBeam};
use crate::params::{AntennaRegime, ConnectivityBreakdown, NetworkParams, TopologyVariant};
use crate::quadrature::{integrate, integrate_with_breaks};
use crate::special::gamma;

/// Coefficient of `R_o²` in the distance-averaged union of two detection discs.
pub const OMN_UNION_COEFFICIENT: f64 = PI + 0.75 * 1.732_050_807_568_877_2;

/// Absolute tolerance used by the quadrature oracles.
pub const ORACLE_ABS_TOL: f64 = 1e-10;
/// Relative tolerance used by the quadrature oracles.
pub const ORACLE_REL_TOL: f64 = 1e-8;

/// Largest preamble/link distance at which fading can still matter: beyond
/// it the exponential tail `exp(-t)` is below `exp(-80)`.
pub(crate) const FADING_TAIL_CUTOFF: f64 = 80.0;

/// Maximum SU–PR distance at which a preamble with fading `h` still exceeds
/// the detection threshold.
pub fn detection_range(regime: AntennaRegime, params: &NetworkParams, h: FadingSample) -> f64 {
    match regime {
        AntennaRegime::Omn => (params.p_d * h.value() / params.eta).powf(1.0 / params.alpha),
        AntennaRegime::OmnDir | AntennaRegime::Dir => {
            let (theta_p, theta_s) = regime.beamwidths(params);
            (4.0 * PI * PI * params.p_d * h.value() / (theta_p * theta_s * params.eta)).powf(1.0 / params.alpha)
        }
    }
}

/// Fading-averaged detection area of a single SU for the sector regimes, and
/// the distance-averaged union area of the pair for `Omn`.
pub fn expected_detection_area(params: &NetworkParams, regime: AntennaRegime) -> f64 {
    let g = gamma(1.0 + 2.0 / params.alpha);
    match regime {
        AntennaRegime::Omn => OMN_UNION_COEFFICIENT * (params.p_d / params.eta).powf(2.0 / params.alpha) * g,
        AntennaRegime::OmnDir | AntennaRegime::Dir => {
            let (theta_p, theta_s) = regime.beamwidths(params);
            0.5 * theta_s * (4.0 * PI * PI * params.p_d / (theta_s * theta_p * params.eta)).powf(2.0 / params.alpha) * g
        }
    }
}

fn sector_spectrum_availability(params: &NetworkParams, theta_p: f64, theta_s: f64) -> f64 {
    let a = params.alpha;
    (-(params.lambda_p / TAU)
        * (4.0 * PI * PI * params.p_d / params.eta).powf(2.0 / a)
        * (theta_p * theta_s).powf(1.0 - 2.0 / a)
        * gamma(1.0 + 2.0 / a))
    .exp()
}

/// Probability that neither SU of the reference pair is silenced by a
/// primary receiver's detection preamble.
pub fn spectrum_availability(params: &NetworkParams, regime: AntennaRegime) -> f64 {
    match regime {
        AntennaRegime::Omn => {
            let a = params.alpha;
            (-OMN_UNION_COEFFICIENT * (params.p_d / params.eta).powf(2.0 / a) * params.lambda_p * gamma(1.0 + 2.0 / a))
                .exp()
        }
        AntennaRegime::OmnDir | AntennaRegime::Dir => {
            let (theta_p, theta_s) = regime.beamwidths(params);
            sector_spectrum_availability(params, theta_p, theta_s)
        }
    }
}

/// Density of secondary transmitters that win spectrum access.
pub fn thinned_su_density(params: &NetworkParams, regime: AntennaRegime) -> f64 {
    params.lambda_s * spectrum_availability(params, regime)
}

/// Laplace-transform argument scale `b = δ r^α / G_s²`.
pub fn interference_scale(params: &NetworkParams, regime: AntennaRegime) -> f64 {
    let (_, theta_s) = regime.beamwidths(params);
    params.delta * theta_s * theta_s * params.r.powf(params.alpha) / (4.0 * PI * PI)
}

fn laplace_denominator(alpha: f64) -> f64 {
    2.0 * alpha * (TAU / alpha).sin()
}

/// Closed-form Laplace transform of the primary-transmitter interference at
/// `b / P_s`.
pub fn laplace_pt_interference(params: &NetworkParams, regime: AntennaRegime) -> Result<f64> {
    params.require_interference_alpha()?;
    let a = params.alpha;
    let (theta_p, theta_s) = regime.beamwidths(params);
    let c = interference_scale(params, regime) * params.p_p / params.p_s;
    Ok((-params.lambda_p * TAU.powf(4.0 / a) * c.powf(2.0 / a) * (theta_s * theta_p).powf(1.0 - 2.0 / a)
        / laplace_denominator(a))
    .exp())
}

/// Closed-form Laplace transform of the active secondary-transmitter
/// interference at `b / P_s`.
pub fn laplace_st_interference(params: &NetworkParams, regime: AntennaRegime) -> Result<f64> {
    params.require_interference_alpha()?;
    let a = params.alpha;
    let (_, theta_s) = regime.beamwidths(params);
    let b = interference_scale(params, regime);
    Ok((-thinned_su_density(params, regime) * TAU.powf(4.0 / a) * b.powf(2.0 / a) * theta_s.powf(2.0 - 4.0 / a)
        / laplace_denominator(a))
    .exp())
}

fn sector_topological(params: &NetworkParams, p_ij: f64, theta_p: f64, theta_s: f64) -> f64 {
    let a = params.alpha;
    let noise = params.delta * params.sigma2 * params.r.powf(a) * theta_s * theta_s / (4.0 * PI * PI * params.p_s);
    let interference = params.delta.powf(2.0 / a)
        * params.r * params.r
        * (params.lambda_p
            * theta_s.powf(1.0 + 2.0 / a)
            * theta_p.powf(1.0 - 2.0 / a)
            * (params.p_p / params.p_s).powf(2.0 / a)
            + params.lambda_s * p_ij * theta_s * theta_s)
        / laplace_denominator(a);
    (-noise - interference).exp()
}

fn printed_omni_topological(params: &NetworkParams, p_ij: f64) -> f64 {
    let a = params.alpha;
    let noise = params.delta * params.sigma2 * params.r.powf(a) / params.p_s;
    let interference = params.delta.powf(2.0 / a)
        * params.r * params.r
        * (params.lambda_p * (params.p_p / params.p_s).powf(2.0 / a) + params.lambda_s * p_ij)
        / (a * (TAU / a).sin());
    (-noise - interference).exp()
}

/// Probability that the reference pair meets the SINR threshold given
/// spectrum access. Requires `α > 2`.
pub fn topological_connectivity(
    params: &NetworkParams,
    regime: AntennaRegime,
    variant: TopologyVariant,
) -> Result<f64> {
    params.require_interference_alpha()?;
    let p_ij = spectrum_availability(params, regime);
    if regime == AntennaRegime::Omn && variant == TopologyVariant::AsPrinted {
        return Ok(printed_omni_topological(params, p_ij));
    }
    let (theta_p, theta_s) = regime.beamwidths(params);
    Ok(sector_topological(params, p_ij, theta_p, theta_s))
}

pub fn connection_probability(
    params: &NetworkParams,
    regime: AntennaRegime,
    variant: TopologyVariant,
) -> Result<ConnectivityBreakdown> {
    let p_top = topological_connectivity(params, regime, variant)?;
    Ok(ConnectivityBreakdown::new(spectrum_availability(params, regime), p_top))
}

/// `∫₀^∞ r · k r^(-α) / (1 + k r^(-α)) dr`, the radial part of the
/// probability generating functional with Rayleigh fading.
///
/// The range is split at the knee `r = k^(1/α)`. Beyond it the substitution
/// `s = r^(2-α)` turns the slowly decaying tail into a bounded integrand on
/// a finite interval, so no truncation is involved.
fn radial_pgfl(k: f64, alpha: f64) -> Result<f64> {
    if k == 0.0 {
        return Ok(0.0);
    }
    let knee = k.powf(1.0 / alpha);
    let head = integrate(
        |r: f64| r * k / (k + r.powf(alpha)),
        0.0,
        knee,
        0.1 * ORACLE_ABS_TOL,
        0.1 * ORACLE_REL_TOL,
    )?;
    let q = alpha / (alpha - 2.0);
    let tail = integrate(
        |s: f64| 1.0 / (1.0 + k * s.powf(q)),
        0.0,
        knee.powf(2.0 - alpha),
        0.1 * ORACLE_ABS_TOL,
        0.1 * ORACLE_REL_TOL,
    )? * k
        / (alpha - 2.0);
    Ok(head + tail)
}

/// `exp(-(λ/2π) ∫∫ ∫ (1 - E_h[exp(-c r^-α h G_rx G_tx)]) r dr dθ dφ)` for a
/// Poisson field of interferers with uniformly random orientations.
///
/// `θ` is the bearing of the interferer seen from the receiver (whose beam
/// points along 0) and `φ` the interferer's own orientation; both angular
/// integrals run over the full circle with the sector edges as breakpoints.
fn laplace_numeric(density: f64, c: f64, rx_beamwidth: f64, tx_beamwidth: f64, alpha: f64) -> Result<f64> {
    if density == 0.0 || c == 0.0 {
        return Ok(1.0);
    }
    let rx = SectorBeam::new(0.0, rx_beamwidth)?;
    let rx_breaks = if rx.is_omni() {
        vec![]
    } else {
        vec![normalize_angle(-0.5 * rx_beamwidth), normalize_angle(0.5 * rx_beamwidth)]
    };
    let tx_omni = tx_beamwidth >= TAU;

    let over_orientation = |theta: f64| -> Result<f64> {
        let g_rx = sector_gain(&rx, theta);
        if g_rx == 0.0 {
            return Ok(0.0);
        }
        let back = theta + PI;
        let breaks = if tx_omni {
            vec![]
        } else {
            vec![normalize_angle(back - 0.5 * tx_beamwidth), normalize_angle(back + 0.5 * tx_beamwidth)]
        };
        let mut failure = None;
        let value = integrate_with_breaks(
            |phi: f64| {
                let tx = SectorBeam::new(phi, tx_beamwidth).expect("beamwidth checked by caller");
                let g = g_rx * sector_gain(&tx, back);
                match radial_pgfl(c * g, alpha) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            0.0,
            TAU,
            &breaks,
            ORACLE_ABS_TOL,
            ORACLE_REL_TOL,
        );
        match failure {
            Some(e) => Err(e),
            None => value,
        }
    };

    let mut failure = None;
    let angular = integrate_with_breaks(
        |theta: f64| match over_orientation(theta) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        TAU,
        &rx_breaks,
        ORACLE_ABS_TOL,
        ORACLE_REL_TOL,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((-density / TAU * angular?).exp())
}

/// Quadrature oracle for [`laplace_pt_interference`].
pub fn laplace_pt_interference_numeric(params: &NetworkParams, regime: AntennaRegime) -> Result<f64> {
    params.require_interference_alpha()?;
    let (theta_p, theta_s) = regime.beamwidths(params);
    let c = interference_scale(params, regime) * params.p_p / params.p_s;
    laplace_numeric(params.lambda_p, c, theta_s, theta_p, params.alpha)
}

/// Quadrature oracle for [`laplace_st_interference`].
pub fn laplace_st_interference_numeric(params: &NetworkParams, regime: AntennaRegime) -> Result<f64> {
    params.require_interference_alpha()?;
    let (_, theta_s) = regime.beamwidths(params);
    let c = interference_scale(params, regime);
    laplace_numeric(thinned_su_density(params, regime), c, theta_s, theta_s, params.alpha)
}

/// Area of the union of two discs of radius `r_o` whose centres are `l`
/// apart, `0 ≤ l ≤ 2 r_o`.
pub fn omn_union_area(l: f64, r_o: f64) -> f64 {
    let theta0 = 2.0 * (l / (2.0 * r_o)).clamp(-1.0, 1.0).acos();
    (TAU - theta0) * r_o * r_o + l * r_o * (0.5 * theta0).sin()
}

/// Union area averaged over a pair distance with density `2l / r_o²` on
/// `[0, r_o]`.
pub fn omn_union_area_numeric(r_o: f64) -> Result<f64> {
    integrate(
        |l| omn_union_area(l, r_o) * 2.0 * l / (r_o * r_o),
        0.0,
        r_o,
        ORACLE_ABS_TOL * r_o * r_o,
        ORACLE_REL_TOL,
    )
}

/// Spectrum availability of a pair at the fixed separation `params.r`,
/// with independent fading on every PR–SU link and uniformly oriented PRs.
///
/// Unlike the closed forms, this accounts for PRs that would silence both
/// SUs at once, so it is the exact void probability the simulator targets
/// when the pair distance is held fixed.
pub fn spectrum_availability_fixed_pair(params: &NetworkParams, regime: AntennaRegime) -> Result<f64> {
    let (theta_p, theta_s) = regime.beamwidths(params);
    let a = params.alpha;
    let g_p = if theta_p >= TAU { 1.0 } else { TAU / theta_p };
    let g_s = if theta_s >= TAU { 1.0 } else { TAU / theta_s };
    let reach = params.p_d * g_p * g_s / params.eta;
    let tail = |d: f64| (-d.powf(a) / reach).exp();

    // expected number of PRs blocking one SU
    let single = theta_p / TAU * 0.5 * theta_s * reach.powf(2.0 / a) * gamma(1.0 + 2.0 / a);

    // PRs blocking both: su_i at the origin facing +x, su_j at (r, 0) facing -x
    let rho_max = (FADING_TAIL_CUTOFF * reach).powf(1.0 / a);
    let half_s = 0.5 * theta_s;
    let both_orientations = |spread: f64| -> f64 {
        if theta_p >= TAU {
            TAU
        } else {
            (theta_p - spread).max(0.0) + (theta_p - (TAU - spread)).max(0.0)
        }
    };
    let r = params.r;
    let inner = |rho: f64| -> Result<f64> {
        let psi_range = if theta_s >= TAU { PI } else { half_s };
        integrate(
            |psi: f64| {
                let (s, c) = psi.sin_cos();
                let (x, y) = (rho * c, rho * s);
                let (dx, dy) = (x - r, y);
                let dj = dx.hypot(dy);
                if dj == 0.0 {
                    return 0.0;
                }
                let bearing_from_j = dy.atan2(dx);
                if theta_s < TAU && angular_distance(bearing_from_j, PI) >= half_s {
                    return 0.0;
                }
                // bearings from the PR towards each SU
                let to_i = (-y).atan2(-x);
                let to_j = (-dy).atan2(-dx);
                let spread = angular_distance(to_i, to_j);
                both_orientations(spread) / TAU * tail(rho) * tail(dj)
            },
            -psi_range,
            psi_range,
            1e-13,
            1e-10,
        )
    };
    let mut failure = None;
    let overlap = integrate(
        |rho: f64| match inner(rho) {
            Ok(v) => rho * v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        rho_max,
        1e-10,
        1e-9,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((-params.lambda_p * (2.0 * single - overlap?)).exp())
}
