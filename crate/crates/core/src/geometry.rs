//! Planar geometry, the ideal sector antenna, Rayleigh fading and the
//! received-power law shared by the closed forms and the simulator.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A position in the plane. Distances are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite point ({x}, {y})");
        Self { x, y }
    }

    pub fn distance_squared(&self, other: &Point2D) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        self.distance_squared(other).sqrt()
    }

    /// Bearing of `target` seen from `self`, in `[0, 2π)`.
    pub fn bearing_to(&self, target: &Point2D) -> Result<f64> {
        let dx = target.x - self.x;
        let dy = target.y - self.y;
        if dx == 0.0 && dy == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(normalize_angle(dy.atan2(dx)))
    }

    /// Point at `distance` from `self` along `bearing`.
    pub fn offset(&self, bearing: f64, distance: f64) -> Point2D {
        let (s, c) = bearing.sin_cos();
        Point2D::new(self.x + distance * c, self.y + distance * s)
    }
}

/// Wraps any finite angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let wrapped = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// Shortest angular distance between two directions, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

/// Ideal sector antenna: uniform gain `2π / beamwidth` inside the main beam
/// and nothing outside. A beamwidth of `2π` is an omni-directional antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorBeam {
    beamwidth: f64,
    // boresight unit vector and cos(beamwidth / 2), kept for bearing tests
    axis: (f64, f64),
    cos_half: f64,
}

impl SectorBeam {
    pub fn new(orientation: f64, beamwidth: f64) -> Result<Self> {
        if !(beamwidth > 0.0 && beamwidth <= TAU) {
            return Err(Error::InvalidParameter {
                name: "beamwidth",
                value: beamwidth,
                reason: "must lie in (0, 2π]",
            });
        }
        if !orientation.is_finite() {
            return Err(Error::InvalidParameter {
                name: "orientation",
                value: orientation,
                reason: "must be finite",
            });
        }
        let (s, c) = orientation.sin_cos();
        Ok(Self {
            beamwidth,
            axis: (c, s),
            cos_half: (0.5 * beamwidth).cos(),
        })
    }

    pub fn omni() -> Self {
        Self {
            beamwidth: TAU,
            axis: (1.0, 0.0),
            cos_half: -1.0,
        }
    }

    /// Boresight direction in `[0, 2π)`.
    pub fn orientation(&self) -> f64 {
        normalize_angle(self.axis.1.atan2(self.axis.0))
    }

    pub fn beamwidth(&self) -> f64 {
        self.beamwidth
    }

    pub fn is_omni(&self) -> bool {
        self.beamwidth >= TAU
    }

    /// Gain inside the main beam.
    pub fn peak_gain(&self) -> f64 {
        if self.is_omni() {
            1.0
        } else {
            TAU / self.beamwidth
        }
    }

    /// Same beam rotated so that it points along `orientation`.
    pub fn pointed(&self, orientation: f64) -> Self {
        let (s, c) = orientation.sin_cos();
        self.along(c, s)
    }

    /// Same beam with boresight along the unit vector `(ux, uy)`.
    pub fn along(&self, ux: f64, uy: f64) -> Self {
        Self { axis: (ux, uy), ..*self }
    }

    /// Gain towards the displacement `(dx, dy)` whose length is `norm`.
    ///
    /// Same sector model as [`sector_gain`], evaluated with a dot product
    /// instead of an arctangent. The zero displacement has no bearing and
    /// gets the peak gain only from omni-directional antennas.
    pub fn gain_toward(&self, dx: f64, dy: f64, norm: f64) -> f64 {
        if self.is_omni() {
            return 1.0;
        }
        let dot = dx * self.axis.0 + dy * self.axis.1;
        if dot > norm * self.cos_half {
            TAU / self.beamwidth
        } else {
            0.0
        }
    }
}

/// Antenna gain of `beam` in `direction` (radians from the x-axis, any
/// finite value). The beam edge itself gets zero gain.
pub fn sector_gain(beam: &SectorBeam, direction: f64) -> f64 {
    if beam.is_omni() {
        return 1.0;
    }
    if angular_distance(direction, beam.orientation()) < 0.5 * beam.beamwidth {
        TAU / beam.beamwidth
    } else {
        0.0
    }
}

/// Whether an antenna at `source` with `beam` radiates towards `target`.
pub fn beam_covers(source: &Point2D, beam: &SectorBeam, target: &Point2D) -> Result<bool> {
    let bearing = source.bearing_to(target)?;
    Ok(sector_gain(beam, bearing) > 0.0)
}

/// Rayleigh power fading gain, exponential with unit mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FadingSample(pub f64);

impl FadingSample {
    pub const UNIT: FadingSample = FadingSample(1.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R) -> FadingSample {
    FadingSample(Exp1.sample(rng))
}

/// `p_t · r^(-α) · h · g_t · g_r`.
pub fn received_power(p_t: f64, r: f64, alpha: f64, h: FadingSample, g_t: f64, g_r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::SingularPathLoss);
    }
    Ok(p_t * r.powf(-alpha) * h.0 * g_t * g_r)
}
