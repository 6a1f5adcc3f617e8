//! Monte Carlo checks of the simulator against closed forms and its own
//! structural guarantees.

use std::f64::consts::PI;

use crnconn::analytics::spectrum_availability_fixed_pair;
use crnconn::simulator::{estimate, PairDistanceMode, SimulationConfig, StActivityMode, Window};
use crnconn::{connection_probability, spectrum_availability, AntennaRegime, NetworkParams, TopologyVariant};

fn sparse_primary_field() -> NetworkParams {
    NetworkParams {
        alpha: 2.0,
        lambda_p: 1e-4,
        lambda_s: 0.0,
        ..NetworkParams::reference()
    }
}

#[test]
fn dir_spectrum_matches_closed_form_at_alpha_two() {
    let p = sparse_primary_field();
    let expected = (-2.0 * PI * p.lambda_p * p.p_d / p.eta).exp();
    let config = SimulationConfig::default().with_realizations(100_000).with_seed(7);
    let est = estimate(&p, &config, AntennaRegime::Dir).unwrap();
    assert!(
        (est.p_spectrum_hat - expected).abs() <= 0.005,
        "{} vs {expected}",
        est.p_spectrum_hat
    );
    // at α = 2 the beamwidths drop out
    let narrow = NetworkParams {
        theta_p: PI / 9.0,
        theta_s: PI / 9.0,
        ..p
    };
    let est = estimate(&narrow, &config, AntennaRegime::Dir).unwrap();
    assert!((est.p_spectrum_hat - expected).abs() <= 0.005, "{}", est.p_spectrum_hat);
}

#[test]
fn averaged_omn_spectrum_matches_union_form() {
    let p = sparse_primary_field();
    let expected = spectrum_availability(&p, AntennaRegime::Omn);
    assert!((expected - 0.9150).abs() < 5e-5);
    let config = SimulationConfig {
        pair_distance_mode: PairDistanceMode::Averaged,
        ..SimulationConfig::default().with_realizations(100_000).with_seed(8)
    };
    let est = estimate(&p, &config, AntennaRegime::Omn).unwrap();
    assert!(
        (est.p_spectrum_hat - expected).abs() <= 0.005,
        "{} vs {expected}",
        est.p_spectrum_hat
    );
}

#[test]
fn fixed_pair_omn_spectrum_matches_its_oracle() {
    let p = NetworkParams {
        lambda_p: 1e-3,
        ..sparse_primary_field()
    };
    let expected = spectrum_availability_fixed_pair(&p, AntennaRegime::Omn).unwrap();
    let config = SimulationConfig::default().with_realizations(20_000).with_seed(9);
    let est = estimate(&p, &config, AntennaRegime::Omn).unwrap();
    let tol = 4.0 * est.standard_error.spectrum;
    assert!((est.p_spectrum_hat - expected).abs() <= tol, "{} vs {expected}", est.p_spectrum_hat);
}

#[test]
fn thinned_mode_without_primaries_always_has_spectrum() {
    let p = NetworkParams {
        lambda_p: 0.0,
        ..NetworkParams::reference()
    };
    let config = SimulationConfig {
        st_activity_mode: StActivityMode::Thinned,
        ..SimulationConfig::default().with_realizations(300)
    };
    for regime in AntennaRegime::ALL {
        assert_eq!(estimate(&p, &config, regime).unwrap().p_spectrum_hat, 1.0);
    }
}

#[test]
fn connection_estimate_at_reference_point() {
    let p = NetworkParams::reference();
    let config = SimulationConfig::default();
    let est = estimate(&p, &config, AntennaRegime::Dir).unwrap();
    let analytic = connection_probability(&p, AntennaRegime::Dir, TopologyVariant::Reduced).unwrap();
    let tol = 3.0 * est.standard_error.connection + 0.01;
    assert!(
        (est.p_connection_hat - analytic.p_connection).abs() <= tol,
        "{} vs {} (tol {tol})",
        est.p_connection_hat,
        analytic.p_connection
    );
}

#[test]
fn guard_margin_is_wide_enough() {
    let p = NetworkParams::reference();
    let base = SimulationConfig::default().with_seed(3);
    let wider = SimulationConfig {
        outer_window: Window::new(1400.0, 1400.0),
        ..base.clone()
    };
    let a = estimate(&p, &base, AntennaRegime::Dir).unwrap();
    let b = estimate(&p, &wider, AntennaRegime::Dir).unwrap();
    assert!(
        (a.p_connection_hat - b.p_connection_hat).abs() < a.standard_error.connection,
        "{} vs {}",
        a.p_connection_hat,
        b.p_connection_hat
    );
    // the inner content is shared, so spectrum outcomes are identical
    assert_eq!(a.p_spectrum_hat, b.p_spectrum_hat);
}

#[test]
fn estimates_fall_with_distance_and_density() {
    let config = SimulationConfig::default().with_realizations(1000).with_seed(5);
    let at = |r: f64, lambda_p: f64| {
        let p = NetworkParams {
            r,
            lambda_p,
            ..NetworkParams::reference()
        };
        estimate(&p, &config, AntennaRegime::Dir).unwrap()
    };
    let points = [at(1.0, 0.02), at(3.0, 0.02), at(5.0, 0.02), at(5.0, 0.04)];
    for w in points.windows(2) {
        let slack = 3.0 * (w[0].standard_error.connection.powi(2) + w[1].standard_error.connection.powi(2)).sqrt();
        assert!(w[1].p_connection_hat <= w[0].p_connection_hat + slack);
    }
}
