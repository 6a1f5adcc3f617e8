//! Connectivity of secondary-user pairs in underlay cognitive radio networks
//! where primary and secondary users may carry sector antennas.
//!
//! The crate has three layers:
//!
//! * [`geometry`]: sector gain model, Rayleigh fading and the link power law.
//! * [`analytics`]: closed-form spectrum availability, topological
//!   connectivity and connection probability for the `Omn`, `OmnDir` and
//!   `Dir` antenna regimes, together with quadrature oracles that re-derive
//!   the same quantities from their defining integrals.
//! * [`simulator`]: a Monte Carlo network simulator that samples full
//!   Poisson deployments, runs detect-and-avoid and the SINR test, and
//!   estimates the same probabilities.
//!
//! [`experiments`] ties these together into parameter sweeps, the
//! verification report and CSV output.

pub mod analytics;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod params;
pub mod quadrature;
pub mod simulator;
pub mod special;

pub use analytics::{connection_probability, spectrum_availability, topological_connectivity};
pub use error::{Error, Result};
pub use geometry::{FadingSample, Point2D, SectorBeam};
pub use params::{AntennaRegime, ConnectivityBreakdown, NetworkParams, TopologyVariant};
pub use simulator::{
    estimate, EstimateResult, LinkDirectionMode, PairDistanceMode, SimulationConfig, StActivityMode, TrialOutcome,
    Window,
};
