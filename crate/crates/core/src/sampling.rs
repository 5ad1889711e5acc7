//! Random smooth test functions built from Gaussian wave packets.
//!
//! A [`PacketSum`] is an analytic function, so the same draw can be sampled
//! on a grid and on its refinement.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{Field, Grid};

/// Largest admissible `|f|` on the box seam.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// `σ·d` at which a packet's spectrum, a distance `d` past its centre, is
/// below `1e-16` of its peak.
const SPECTRAL_REACH: f64 = 8.6;

/// `a · exp(−|x − c|²/(2σ²)) · cos(ω·x + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacket {
    pub amplitude: f64,
    pub center: [f64; 2],
    pub width: f64,
    pub wave: [f64; 2],
    pub phase: f64,
}

impl WavePacket {
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let d = [x[0] - self.center[0], x[1] - self.center[1]];
        let r2 = d[0] * d[0] + d[1] * d[1];
        let arg = self.wave[0] * x[0] + self.wave[1] * x[1] + self.phase;
        self.amplitude * (-r2 / (2.0 * self.width * self.width)).exp() * arg.cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacketSum {
    packets: Vec<WavePacket>,
}

impl PacketSum {
    pub fn new(packets: Vec<WavePacket>) -> PacketSum {
        PacketSum { packets }
    }

    /// Draws `count` packets whose spectra sit inside `|ξ| < cutoff` and
    /// whose tails are below [`BOUNDARY_TOL`] on the seam of `grid`.
    ///
    /// When the grid is too small for both, decay wins and the spectrum is
    /// left to [`PacketSum::sample_band_limited`].
    pub fn random<R: Rng + ?Sized>(
        grid: &Grid,
        cutoff: f64,
        count: usize,
        rng: &mut R,
    ) -> PacketSum {
        let l = grid.half_width();
        let reach = l / 8.0;
        let widest = (l - reach) / 8.0;
        let narrowest = (SPECTRAL_REACH / cutoff).max(l / 16.0).min(widest);
        let packets = (0..count)
            .map(|_| {
                let width = rng.gen_range(narrowest..=widest);
                let speed = (cutoff - SPECTRAL_REACH / width).max(0.0);
                let mut center = [0.0; 2];
                let mut wave = [0.0; 2];
                let direction = rng.gen_range(0.0..2.0 * PI);
                let k = rng.gen_range(0.0..=speed);
                for axis in 0..grid.dim() {
                    center[axis] = rng.gen_range(-reach..=reach);
                }
                if grid.dim() == 1 {
                    wave[0] = k;
                } else {
                    wave = [k * direction.cos(), k * direction.sin()];
                }
                let magnitude = rng.gen_range(0.5..1.5);
                let amplitude = if rng.gen_bool(0.5) {
                    magnitude
                } else {
                    -magnitude
                };
                WavePacket {
                    amplitude,
                    center,
                    width,
                    wave,
                    phase: rng.gen_range(0.0..2.0 * PI),
                }
            })
            .collect();
        PacketSum { packets }
    }

    pub fn packets(&self) -> &[WavePacket] {
        &self.packets
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.packets.iter().map(|p| p.eval(x)).sum()
    }

    pub fn sample(&self, grid: &Grid) -> Field {
        Field::from_fn(*grid, |x| self.eval(x))
    }

    /// Samples and removes every mode with `|ξ| ≥ cutoff`.
    pub fn sample_band_limited(&self, grid: &Grid, cutoff: f64) -> Field {
        self.sample(grid).band_limit(cutoff)
    }
}

/// Draws one band-limited decaying field of three packets.
pub fn random_field<R: Rng + ?Sized>(grid: &Grid, cutoff: f64, rng: &mut R) -> Field {
    PacketSum::random(grid, cutoff, 3, rng).sample_band_limited(grid, cutoff)
}

/// Fails with [`Error::BoundaryLeak`] when `|f|` exceeds [`BOUNDARY_TOL`] on
/// the box seam.
pub fn check_decay(f: &Field) -> Result<()> {
    let magnitude = f.boundary_magnitude();
    if magnitude > BOUNDARY_TOL {
        Err(Error::BoundaryLeak { magnitude })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn desk_fields_decay_and_are_band_limited() {
        for (dim, cutoff) in [(1, 64.0), (1, 8.0), (2, 8.0)] {
            let grid = Grid::desk(dim).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..5 {
                let packets = PacketSum::random(&grid, cutoff, 3, &mut rng);
                let raw = packets.sample(&grid);
                let f = packets.sample_band_limited(&grid, cutoff);
                check_decay(&f).unwrap();
                let scale = raw.max_abs();
                let diff = raw.sub(&f).unwrap().max_abs();
                assert!(diff <= 1e-10 * scale, "dim {dim}: truncation {diff}");
                assert!(f.bandwidth(1e-12) < cutoff);
            }
        }
    }

    #[test]
    fn same_draw_on_refined_grid() {
        let grid = Grid::new(1, 1024, 16.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let packets = PacketSum::random(&grid, 16.0, 2, &mut rng);
        let coarse = packets.sample(&grid);
        let fine = packets.sample(&grid.refined());
        for i in 0..grid.len() {
            assert_eq!(coarse.values()[i], fine.values()[2 * i]);
        }
    }

    #[test]
    fn leaking_field_is_rejected() {
        let grid = Grid::new(1, 64, 1.0).unwrap();
        let f = Field::constant(grid, 1.0);
        assert!(matches!(check_decay(&f), Err(Error::BoundaryLeak { .. })));
    }
}
