use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle centred on the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub width: f64,
    pub height: f64,
}

impl Window {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn rect(&self) -> Rect {
        Rect {
            x0: -0.5 * self.width,
            y0: -0.5 * self.height,
            x1: 0.5 * self.width,
            y1: 0.5 * self.height,
        }
    }
}

/// Half-open rectangle `[x0, x1) × [y0, y1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect {
            x0: self.x0.max(other.x0),
            y0: self.y0.max(other.y0),
            x1: self.x1.min(other.x1),
            y1: self.y1.min(other.y1),
        };
        (r.x0 < r.x1 && r.y0 < r.y1).then_some(r)
    }
}

/// How interfering secondary transmitters decide whether they are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StActivityMode {
    /// Each ST runs detect-and-avoid against the sampled PR field.
    #[default]
    Simulated,
    /// Each ST is active independently with the analytic pair probability.
    Thinned,
}

/// Which ends of the reference link must meet the SINR threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkDirectionMode {
    #[default]
    OneWay,
    Bidirectional,
}

/// How the pair's spectrum check treats the SU separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairDistanceMode {
    /// The two SUs sit at the fixed distance `r`, each checked against
    /// every PR with its own fading.
    #[default]
    Fixed,
    /// Omni-directional regime only: every PR carries its own fading draw
    /// (shared by both discs) and its own pair distance `l` with density
    /// `2l/R_o²` on `[0, R_o]`; the pair is blocked when the PR falls in the
    /// union of the two discs. This is the distance-averaged union model.
    Averaged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationConfig {
    /// Region in which primary users are deployed.
    pub outer_window: Window,
    /// Region in which secondary users are deployed; must fit inside
    /// `outer_window`.
    pub inner_window: Window,
    pub realizations: u64,
    pub seed: u64,
    /// Radius of the disc around each PT in which its PR is placed.
    pub primary_link_radius: f64,
    pub st_activity_mode: StActivityMode,
    pub link_direction_mode: LinkDirectionMode,
    /// Ignore interferers farther than this from the receiver.
    pub interference_truncation_radius: Option<f64>,
    pub pair_distance_mode: PairDistanceMode,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            outer_window: Window::new(1200.0, 1200.0),
            inner_window: Window::new(1000.0, 1000.0),
            realizations: 3000,
            seed: 0,
            primary_link_radius: 10.0,
            st_activity_mode: StActivityMode::Simulated,
            link_direction_mode: LinkDirectionMode::OneWay,
            interference_truncation_radius: None,
            pair_distance_mode: PairDistanceMode::Fixed,
        }
    }
}

impl SimulationConfig {
    pub fn with_realizations(mut self, realizations: u64) -> Self {
        self.realizations = realizations;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (o, i) = (self.outer_window, self.inner_window);
        for (name, v) in [
            ("outer_window.width", o.width),
            ("outer_window.height", o.height),
            ("inner_window.width", i.width),
            ("inner_window.height", i.height),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if i.width > o.width || i.height > o.height {
            return Err(Error::Config(format!(
                "inner window {}x{} does not fit inside outer window {}x{}",
                i.width, i.height, o.width, o.height
            )));
        }
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be at least 1".into()));
        }
        if !(self.primary_link_radius >= 0.0 && self.primary_link_radius.is_finite()) {
            return Err(Error::Config(format!(
                "primary_link_radius must be non-negative, got {}",
                self.primary_link_radius
            )));
        }
        if let Some(t) = self.interference_truncation_radius {
            if !(t > 0.0) {
                return Err(Error::Config(format!("interference_truncation_radius must be positive, got {t}")));
            }
        }
        Ok(())
    }
}
