//! Homogeneous Poisson point processes and the deterministic tiling used to
//! sample them.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use super::config::Rect;
use crate::geometry::Point2D;

/// Side of the square tiles the plane is cut into. Tiles are anchored at the
/// origin, so a tile's content does not depend on the window it is part of.
pub const TILE_SIZE: f64 = 100.0;

/// Draws a Poisson-distributed count with the given mean.
pub fn sample_poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    // rand_distr rejects non-positive means, handled above
    Poisson::new(mean).expect("positive finite mean").sample(rng) as u64
}

/// Homogeneous PPP of intensity `density` on `window`: a Poisson number of
/// i.i.d. uniform points.
pub fn sample_ppp<R: Rng + ?Sized>(density: f64, window: &Rect, rng: &mut R) -> Vec<Point2D> {
    let n = sample_poisson_count(density * window.area(), rng);
    (0..n)
        .map(|_| {
            let x = window.x0 + window.width() * rng.random::<f64>();
            let y = window.y0 + window.height() * rng.random::<f64>();
            Point2D::new(x, y)
        })
        .collect()
}

/// SplitMix64 finaliser, used to derive independent generator seeds.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x243F_6A88_85A3_08D3, |acc, &p| mix64(acc ^ mix64(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tile {
    pub i: i64,
    pub j: i64,
}

impl Tile {
    fn ring(&self) -> i64 {
        self.i.max(-self.i - 1).max(self.j.max(-self.j - 1))
    }

    pub fn rect(&self) -> Rect {
        Rect {
            x0: self.i as f64 * TILE_SIZE,
            y0: self.j as f64 * TILE_SIZE,
            x1: (self.i + 1) as f64 * TILE_SIZE,
            y1: (self.j + 1) as f64 * TILE_SIZE,
        }
    }

    /// Generator owning this tile's content for a given trial and layer.
    pub fn rng(&self, trial_seed: u64, layer: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(&[trial_seed, layer, self.i as u64, self.j as u64]))
    }
}

/// Tiles overlapping `window`, ordered by square ring around the origin so
/// that growing a centred window only appends tiles.
pub(crate) fn tiles_covering(window: &Rect) -> Vec<Tile> {
    let i0 = super::floor_i64(window.x0 / TILE_SIZE);
    let i1 = (window.x1 / TILE_SIZE).ceil() as i64;
    let j0 = super::floor_i64(window.y0 / TILE_SIZE);
    let j1 = (window.y1 / TILE_SIZE).ceil() as i64;
    let mut tiles: Vec<Tile> = (i0..i1).flat_map(|i| (j0..j1).map(move |j| Tile { i, j })).collect();
    tiles.sort_by_key(|t| (t.ring(), t.i, t.j));
    tiles
}

/// Samples a PPP on `window` tile by tile, calling `visit` for every point
/// of every overlapping tile together with whether it lies in the window.
/// Points outside are still visited so that per-point marks drawn from the
/// tile's generator stay aligned whatever the window.
pub(crate) fn for_each_tiled<F>(density: f64, window: &Rect, trial_seed: u64, layer: u64, mut visit: F)
where
    F: FnMut(Point2D, bool, &mut ChaCha8Rng),
{
    for tile in tiles_covering(window) {
        let rect = tile.rect();
        let Some(clip) = rect.intersect(window) else { continue };
        let mut rng = tile.rng(trial_seed, layer);
        let n = sample_poisson_count(density * rect.area(), &mut rng);
        for _ in 0..n {
            let x = rect.x0 + TILE_SIZE * rng.random::<f64>();
            let y = rect.y0 + TILE_SIZE * rng.random::<f64>();
            visit(Point2D::new(x, y), clip.contains(x, y), &mut rng);
        }
    }
}

/// Marked points of the tiled PPP that fall inside `window`.
pub(crate) fn sample_tiled<T, F>(density: f64, window: &Rect, trial_seed: u64, layer: u64, mut mark: F) -> Vec<T>
where
    F: FnMut(Point2D, &mut ChaCha8Rng) -> T,
{
    let mut out = Vec::with_capacity(expected_capacity(density, window));
    for_each_tiled(density, window, trial_seed, layer, |p, inside, rng| {
        let item = mark(p, rng);
        if inside {
            out.push(item);
        }
    });
    out
}

pub(crate) fn expected_capacity(density: f64, window: &Rect) -> usize {
    (density * window.area() * 1.05) as usize + 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::config::Window;

    #[test]
    fn zero_density_is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_ppp(0.0, &Window::new(1200.0, 1200.0).rect(), &mut rng).is_empty());
        assert!(sample_tiled(0.0, &Window::new(1200.0, 1200.0).rect(), 1, 0, |p, _| p).is_empty());
    }

    #[test]
    fn count_mean_and_dispersion() {
        // mean 28 800; 1000 draws put the sample mean within ±3σ/√1000
        let window = Window::new(1200.0, 1200.0).rect();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let counts: Vec<f64> = (0..1000).map(|_| sample_ppp(0.02, &window, &mut rng).len() as f64).collect();
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
        let expect = 0.02 * window.area();
        assert!((mean - expect).abs() < 3.0 * (expect / 1000.0).sqrt(), "{mean}");
        assert!((var / mean - 1.0).abs() < 0.05, "{var} {mean}");
    }

    #[test]
    fn tiled_count_matches_poisson() {
        let window = Window::new(1200.0, 1200.0).rect();
        let counts: Vec<f64> = (0..400u64)
            .map(|t| sample_tiled(0.02, &window, t, 7, |p, _| p).len() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let expect = 0.02 * window.area();
        assert!((mean - expect).abs() < 3.0 * (expect / 400.0).sqrt(), "{mean}");
    }

    #[test]
    fn points_lie_in_window() {
        let window = Rect { x0: -130.0, y0: 20.0, x1: 75.0, y1: 260.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in sample_ppp(0.05, &window, &mut rng) {
            assert!(window.contains(p.x, p.y));
        }
        for p in sample_tiled(0.05, &window, 3, 1, |p, _| p) {
            assert!(window.contains(p.x, p.y));
        }
    }

    #[test]
    fn growing_window_keeps_inner_points() {
        let small = Window::new(1200.0, 1200.0).rect();
        let large = Window::new(1400.0, 1400.0).rect();
        let a = sample_tiled(0.01, &small, 9, 0, |p, rng| (p, rng.random::<u32>()));
        let b = sample_tiled(0.01, &large, 9, 0, |p, rng| (p, rng.random::<u32>()));
        let inner: Vec<_> = b.iter().filter(|(p, _)| small.contains(p.x, p.y)).copied().collect();
        assert_eq!(a, inner);
        assert_eq!(&b[..a.len()], &a[..]);
    }

    #[test]
    fn deterministic_under_seed() {
        let w = Window::new(300.0, 300.0).rect();
        let mut r1 = ChaCha8Rng::seed_from_u64(4);
        let mut r2 = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(sample_ppp(0.01, &w, &mut r1), sample_ppp(0.01, &w, &mut r2));
    }
}
