//! Detect-and-avoid: whether an SU hears a primary receiver's preamble.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::deployment::Station;
use super::{floor_i64, PathLoss};
use crate::analytics::FADING_TAIL_CUTOFF;
use crate::geometry::sample_fading;
use crate::params::{AntennaRegime, NetworkParams};

/// Result of one SU's spectrum check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCheck {
    pub available: bool,
    /// PRs whose preamble exceeded the detection threshold.
    pub detecting_count: u64,
    /// Distance to the nearest such PR.
    pub nearest_detecting: Option<f64>,
}

impl SpectrumCheck {
    fn clear() -> Self {
        Self {
            available: true,
            detecting_count: 0,
            nearest_detecting: None,
        }
    }

    fn record(&mut self, distance: f64) {
        self.available = false;
        self.detecting_count += 1;
        self.nearest_detecting = Some(self.nearest_detecting.map_or(distance, |d| d.min(distance)));
    }
}

/// Outcome of one PR–SU detection link.
pub(crate) enum Link {
    Blocked(f64),
    Clear,
}

/// Tests one PR–SU link with a fresh fading draw.
///
/// The SU is silenced when `p_d · G_p · G_s · h · d^(-α) > η`. Links with a
/// zero gain product, or whose threshold on `h` lies beyond the fading tail
/// cutoff, are clear without consuming a draw. A PR on top of the SU always
/// blocks.
pub(crate) fn detection_link<R: Rng + ?Sized>(su: &Station, pr: &Station, params: &NetworkParams, rng: &mut R) -> Link {
    let dx = su.position.x - pr.position.x;
    let dy = su.position.y - pr.position.y;
    let d2 = dx * dx + dy * dy;
    if d2 == 0.0 {
        return Link::Blocked(0.0);
    }
    let d = d2.sqrt();
    let g = pr.beam.gain_toward(dx, dy, d) * su.beam.gain_toward(-dx, -dy, d);
    if g == 0.0 {
        return Link::Clear;
    }
    let threshold = params.eta * PathLoss::new(params.alpha).inverse_at(d) / (params.p_d * g);
    if threshold > FADING_TAIL_CUTOFF {
        return Link::Clear;
    }
    if sample_fading(rng).value() > threshold {
        Link::Blocked(d)
    } else {
        Link::Clear
    }
}

/// Checks `su` against every PR in order, drawing fresh fading per link.
pub fn check_spectrum_available<R: Rng + ?Sized>(
    su: &Station,
    prs: &[Station],
    params: &NetworkParams,
    rng: &mut R,
) -> SpectrumCheck {
    let mut check = SpectrumCheck::clear();
    for pr in prs {
        if let Link::Blocked(d) = detection_link(su, pr, params, rng) {
            check.record(d);
        }
    }
    check
}

/// Distance beyond which no PR can silence an SU in `regime`, whatever the
/// antenna orientations.
pub(crate) fn detection_cutoff(params: &NetworkParams, regime: AntennaRegime) -> f64 {
    let (theta_p, theta_s) = regime.beamwidths(params);
    let peak = |theta: f64| if theta >= std::f64::consts::TAU { 1.0 } else { std::f64::consts::TAU / theta };
    (FADING_TAIL_CUTOFF * params.p_d * peak(theta_p) * peak(theta_s) / params.eta).powf(1.0 / params.alpha)
}

/// Bucket grid over the PR positions, anchored at the origin.
///
/// Queries return PR indices in increasing order, so a grid-backed check
/// consumes the fading stream exactly as [`check_spectrum_available`] does.
pub(crate) struct PrGrid<'a> {
    prs: &'a [Station],
    cell: f64,
    i0: i64,
    j0: i64,
    nx: i64,
    ny: i64,
    starts: Vec<u32>,
    members: Vec<u32>,
}

impl<'a> PrGrid<'a> {
    pub fn new(prs: &'a [Station], cell: f64) -> Self {
        let (mut xmin, mut ymin, mut xmax, mut ymax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for pr in prs {
            xmin = xmin.min(pr.position.x);
            ymin = ymin.min(pr.position.y);
            xmax = xmax.max(pr.position.x);
            ymax = ymax.max(pr.position.y);
        }
        // keep the cell count bounded when the cutoff is tiny
        let cell = cell.max((xmax - xmin).max(ymax - ymin) / 1024.0).max(f64::MIN_POSITIVE);
        let i0 = floor_i64(xmin / cell);
        let j0 = floor_i64(ymin / cell);
        let nx = floor_i64(xmax / cell) - i0 + 1;
        let ny = floor_i64(ymax / cell) - j0 + 1;
        let mut grid = Self {
            prs,
            cell,
            i0,
            j0,
            nx,
            ny,
            starts: vec![0; (nx * ny + 1) as usize],
            members: vec![0; prs.len()],
        };
        let slots: Vec<usize> = prs.iter().map(|pr| grid.slot(pr.position.x, pr.position.y)).collect();
        for &s in &slots {
            grid.starts[s + 1] += 1;
        }
        for k in 1..grid.starts.len() {
            grid.starts[k] += grid.starts[k - 1];
        }
        let mut fill = grid.starts.clone();
        for (idx, &s) in slots.iter().enumerate() {
            grid.members[fill[s] as usize] = idx as u32;
            fill[s] += 1;
        }
        grid
    }

    fn slot(&self, x: f64, y: f64) -> usize {
        let i = (floor_i64(x / self.cell) - self.i0).clamp(0, self.nx - 1);
        let j = (floor_i64(y / self.cell) - self.j0).clamp(0, self.ny - 1);
        (j * self.nx + i) as usize
    }

    /// Indices of the PRs within `radius` of `(x, y)`, ascending, written to `out`.
    pub fn query(&self, x: f64, y: f64, radius: f64, out: &mut Vec<u32>) {
        out.clear();
        if self.prs.is_empty() {
            return;
        }
        let ia = floor_i64((x - radius) / self.cell) - self.i0;
        let ib = floor_i64((x + radius) / self.cell) - self.i0;
        let ja = floor_i64((y - radius) / self.cell) - self.j0;
        let jb = floor_i64((y + radius) / self.cell) - self.j0;
        let r2 = radius * radius;
        for j in ja.max(0)..=jb.min(self.ny - 1) {
            for i in ia.max(0)..=ib.min(self.nx - 1) {
                let s = (j * self.nx + i) as usize;
                for &idx in &self.members[self.starts[s] as usize..self.starts[s + 1] as usize] {
                    let p = self.prs[idx as usize].position;
                    let (dx, dy) = (p.x - x, p.y - y);
                    if dx * dx + dy * dy <= r2 {
                        out.push(idx);
                    }
                }
            }
        }
        out.sort_unstable();
    }

    pub fn prs(&self) -> &'a [Station] {
        self.prs
    }
}

/// Spectrum checks against a fixed PR field, restricted to nearby PRs.
pub(crate) struct PrField<'a> {
    grid: PrGrid<'a>,
    // slightly inflated so rounding never drops a link the full scan would test
    reach: f64,
    scratch: Vec<u32>,
}

impl<'a> PrField<'a> {
    pub fn new(prs: &'a [Station], params: &NetworkParams, regime: AntennaRegime) -> Self {
        let reach = detection_cutoff(params, regime) * (1.0 + 1e-9);
        Self {
            grid: PrGrid::new(prs, reach),
            reach,
            scratch: Vec::new(),
        }
    }

    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn grid(&self) -> &PrGrid<'a> {
        &self.grid
    }

    /// Same result and fading consumption as [`check_spectrum_available`].
    pub fn check<R: Rng + ?Sized>(&mut self, su: &Station, params: &NetworkParams, rng: &mut R) -> SpectrumCheck {
        self.check_inner(su, params, rng, false)
    }

    /// Availability only; stops at the first detecting PR.
    pub fn is_available<R: Rng + ?Sized>(&mut self, su: &Station, params: &NetworkParams, rng: &mut R) -> bool {
        self.check_inner(su, params, rng, true).available
    }

    fn check_inner<R: Rng + ?Sized>(
        &mut self,
        su: &Station,
        params: &NetworkParams,
        rng: &mut R,
        stop_early: bool,
    ) -> SpectrumCheck {
        let mut check = SpectrumCheck::clear();
        self.grid.query(su.position.x, su.position.y, self.reach, &mut self.scratch);
        let prs = self.grid.prs();
        for &idx in &self.scratch {
            if let Link::Blocked(d) = detection_link(su, &prs[idx as usize], params, rng) {
                check.record(d);
                if stop_early {
                    break;
                }
            }
        }
        check
    }
}
