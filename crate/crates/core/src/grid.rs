//! Periodic sampling box standing in for `ℝⁿ` (`n ∈ {1, 2}`).
//!
//! Nodes sit at `x = -L + i·h` along each axis with `h = 2L/N`, so the origin
//! is node `N/2`. The Fourier side uses angular frequencies `ξ = πm/L` for the
//! signed DFT index `m ∈ [-N/2, N/2)`.
//!
//! Quadrature is the rectangle rule `hⁿ Σ f`, exact for trigonometric
//! polynomials below the Nyquist band. Convolution is circular and
//! computed through the DFT.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{fft_nd, Direction};

/// A uniform periodic grid on `[-L, L)ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    points_per_axis: usize,
}

impl Grid {
    pub fn new(dim: usize, points_per_axis: usize, half_width: f64) -> Result<Grid> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid("dimension must be 1 or 2"));
        }
        if points_per_axis < 2 || !points_per_axis.is_power_of_two() {
            return Err(Error::InvalidGrid(
                "points per axis must be a power of two ≥ 2",
            ));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid("half width must be positive and finite"));
        }
        Ok(Grid {
            dim,
            half_width,
            points_per_axis,
        })
    }

    /// Desk-scale default for the given dimension: `N=4096, L=16` in 1-D and
    /// `N=256, L=8` in 2-D.
    pub fn desk(dim: usize) -> Result<Grid> {
        match dim {
            1 => Grid::new(1, 4096, 16.0),
            2 => Grid::new(2, 256, 8.0),
            _ => Err(Error::InvalidGrid("dimension must be 1 or 2")),
        }
    }

    /// Same box with twice as many points per axis.
    pub fn refined(&self) -> Grid {
        Grid {
            points_per_axis: self.points_per_axis * 2,
            ..*self
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Total number of nodes, `Nⁿ`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight `hⁿ`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Measure of the box, `(2L)ⁿ`.
    pub fn volume(&self) -> f64 {
        (2.0 * self.half_width).powi(self.dim as i32)
    }

    /// Largest resolvable angular frequency, `πN/(2L)`.
    pub fn nyquist(&self) -> f64 {
        PI / self.spacing()
    }

    fn axis_index(&self, node: usize, axis: usize) -> usize {
        // Row-major: axis 0 varies slowest.
        let n = self.points_per_axis;
        match (self.dim, axis) {
            (1, _) => node,
            (_, 0) => node / n,
            _ => node % n,
        }
    }

    /// Coordinate of `node` along `axis`.
    pub fn coordinate(&self, node: usize, axis: usize) -> f64 {
        -self.half_width + self.axis_index(node, axis) as f64 * self.spacing()
    }

    /// Coordinates of `node` (unused trailing entries are zero).
    pub fn point(&self, node: usize) -> [f64; 2] {
        let mut x = [0.0; 2];
        for (axis, xk) in x.iter_mut().enumerate().take(self.dim) {
            *xk = self.coordinate(node, axis);
        }
        x
    }

    /// Euclidean norm `|x|` of the node coordinates.
    pub fn radius(&self, node: usize) -> f64 {
        let x = self.point(node);
        (x[0] * x[0] + x[1] * x[1]).sqrt()
    }

    /// Minimum-image distance between two nodes.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        let width = 2.0 * self.half_width;
        let mut acc = 0.0;
        for axis in 0..self.dim {
            let mut d = (self.coordinate(a, axis) - self.coordinate(b, axis)).abs();
            if d > self.half_width {
                d = width - d;
            }
            acc += d * d;
        }
        acc.sqrt()
    }

    /// Angular frequency of DFT index `k` along one axis.
    pub fn wavenumber(&self, k: usize) -> f64 {
        let n = self.points_per_axis;
        let m = if k < n / 2 {
            k as f64
        } else {
            k as f64 - n as f64
        };
        PI * m / self.half_width
    }

    /// Angular frequency vector of spectral node `node`.
    pub fn frequency(&self, node: usize) -> [f64; 2] {
        let mut xi = [0.0; 2];
        for (axis, x) in xi.iter_mut().enumerate().take(self.dim) {
            *x = self.wavenumber(self.axis_index(node, axis));
        }
        xi
    }

    /// `|ξ|` at spectral node `node`.
    pub fn frequency_norm(&self, node: usize) -> f64 {
        let xi = self.frequency(node);
        (xi[0] * xi[0] + xi[1] * xi[1]).sqrt()
    }

    /// Whether spectral node `node` sits on the Nyquist index along `axis`.
    pub fn is_nyquist(&self, node: usize, axis: usize) -> bool {
        self.axis_index(node, axis) == self.points_per_axis / 2
    }

    /// Whether `node` lies on the periodic seam `x_k = -L` for some axis.
    pub fn on_boundary(&self, node: usize) -> bool {
        (0..self.dim).any(|axis| self.axis_index(node, axis) == 0)
    }

    pub fn check_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// A sampled real-valued function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Field> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Field { grid, values })
    }

    pub fn zeros(grid: Grid) -> Field {
        Field {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn constant(grid: Grid, c: f64) -> Field {
        Field {
            grid,
            values: vec![c; grid.len()],
        }
    }

    /// Samples `f` at every node; `f` receives the coordinate array.
    ///
    /// # Panics
    /// If `f` returns a non-finite value.
    pub fn from_fn(grid: Grid, mut f: impl FnMut([f64; 2]) -> f64) -> Field {
        let values: Vec<f64> = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "sampled function is not finite"
        );
        Field { grid, values }
    }

    /// Samples `f` by node index.
    ///
    /// # Panics
    /// If `f` returns a non-finite value.
    pub fn from_fn_indexed(grid: Grid, f: impl FnMut(usize) -> f64) -> Field {
        let values: Vec<f64> = (0..grid.len()).map(f).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "sampled function is not finite"
        );
        Field { grid, values }
    }

    /// Indicator of the set where `pred` holds.
    pub fn indicator(grid: Grid, mut pred: impl FnMut([f64; 2]) -> bool) -> Field {
        Field::from_fn(grid, |x| if pred(x) { 1.0 } else { 0.0 })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Applies `f(value, node)` at every node.
    pub fn map_indexed(&self, mut f: impl FnMut(f64, usize) -> f64) -> Field {
        Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| f(v, i))
                .collect(),
        }
    }

    pub fn zip_with(&self, other: &Field, mut f: impl FnMut(f64, f64) -> f64) -> Result<Field> {
        self.grid.check_same(&other.grid)?;
        Ok(Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Field {
        self.map(|v| c * v)
    }

    pub fn abs(&self) -> Field {
        self.map(f64::abs)
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Field) -> Result<Field> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Whether every sample equals the first one.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Largest `|f|` on the periodic seam.
    pub fn boundary_magnitude(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| self.grid.on_boundary(*i))
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    /// Quadrature `hⁿ Σ f`.
    pub fn integrate(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().sum::<f64>()
    }

    /// Discrete Fourier coefficients (unnormalized DFT of the samples).
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = self
            .values
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        fft_nd(
            &mut data,
            self.grid.points_per_axis,
            self.grid.dim,
            Direction::Forward,
        );
        data
    }

    /// Inverse of [`Field::spectrum`], keeping the real part.
    pub fn from_spectrum(grid: Grid, mut spectrum: Vec<Complex64>) -> Field {
        fft_nd(
            &mut spectrum,
            grid.points_per_axis,
            grid.dim,
            Direction::Inverse,
        );
        Field {
            grid,
            values: spectrum.into_iter().map(|z| z.re).collect(),
        }
    }

    /// Applies the real Fourier multiplier `m(ξ)` sampled at spectral nodes.
    pub fn apply_multiplier(&self, multiplier: &[f64]) -> Field {
        debug_assert_eq!(multiplier.len(), self.grid.len());
        let spectrum = self
            .spectrum()
            .into_iter()
            .zip(multiplier)
            .map(|(z, &m)| z * m)
            .collect();
        Field::from_spectrum(self.grid, spectrum)
    }

    /// Zeroes every Fourier mode with `|ξ| ≥ cutoff`.
    pub fn band_limit(&self, cutoff: f64) -> Field {
        let grid = self.grid;
        let mask: Vec<f64> = (0..grid.len())
            .map(|k| {
                if grid.frequency_norm(k) < cutoff {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        self.apply_multiplier(&mask)
    }

    /// Largest `|ξ|` carrying a Fourier coefficient above `threshold`
    /// relative to the largest coefficient.
    pub fn bandwidth(&self, threshold: f64) -> f64 {
        let spectrum = self.spectrum();
        let top = spectrum.iter().fold(0.0, |m: f64, z| m.max(z.norm()));
        if top == 0.0 {
            return 0.0;
        }
        spectrum
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > threshold * top)
            .fold(0.0, |m: f64, (k, _)| m.max(self.grid.frequency_norm(k)))
    }
}

/// Quadrature `hⁿ Σ f`.
pub fn integrate(f: &Field) -> f64 {
    f.integrate()
}

/// Circular convolution `(f ∗ g)(x) = hⁿ Σ_y f(y) g(x − y)`.
pub fn convolve(f: &Field, g: &Field) -> Result<Field> {
    f.grid.check_same(&g.grid)?;
    let grid = f.grid;
    let weight = grid.cell_volume();
    let spectrum = f
        .spectrum()
        .into_iter()
        .zip(g.spectrum())
        .enumerate()
        .map(|(k, (a, b))| {
            // Node coordinates are offset by -L, so `x - y` lands at index
            // `i - k + N/2`; the half-length shift is the sign (-1)^k per axis.
            let parity: usize = (0..grid.dim).map(|axis| grid.axis_index(k, axis)).sum();
            let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
            a * b * (weight * sign)
        })
        .collect();
    Ok(Field::from_spectrum(grid, spectrum))
}

/// Spectral partial derivative `∂_axis f` (multiplier `iξ_axis`, Nyquist mode
/// dropped).
pub fn spectral_derivative(f: &Field, axis: usize) -> Result<Field> {
    let grid = f.grid;
    if axis >= grid.dim {
        return Err(Error::AxisOutOfRange {
            axis,
            dim: grid.dim,
        });
    }
    let spectrum = f
        .spectrum()
        .into_iter()
        .enumerate()
        .map(|(k, z)| {
            if grid.is_nyquist(k, axis) {
                Complex64::new(0.0, 0.0)
            } else {
                z * Complex64::new(0.0, grid.frequency(k)[axis])
            }
        })
        .collect();
    Ok(Field::from_spectrum(grid, spectrum))
}

/// Spectral gradient `(∂_1 f, …, ∂_n f)`.
pub fn gradient(f: &Field) -> Vec<Field> {
    (0..f.grid.dim)
        .map(|axis| spectral_derivative(f, axis).expect("axis below dimension"))
        .collect()
}

/// `η_{j,m}(x) = 2^{jn}(1 + 2^j|x|)^{-m}` sampled with minimum-image `|x|`.
pub fn eta_kernel(j: u32, m: f64, grid: &Grid) -> Field {
    let scale = 2f64.powi(j as i32);
    let height = scale.powi(grid.dim as i32);
    Field::from_fn(*grid, |x| {
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        height * (1.0 + scale * r).powf(-m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn gaussian(grid: Grid, sigma: f64) -> Field {
        // Periodized by summing the nearest images; σ ≪ L makes the rest
        // negligible.
        let w = 2.0 * grid.half_width();
        Field::from_fn(grid, |x| {
            (-1..=1)
                .map(|k| {
                    let y = x[0] + k as f64 * w;
                    (-y * y / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
                })
                .sum()
        })
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(3, 16, 1.0).is_err());
        assert!(Grid::new(1, 12, 1.0).is_err());
        assert!(Grid::new(1, 16, 0.0).is_err());
        let g = Grid::new(2, 16, 2.0).unwrap();
        assert_eq!(g.len(), 256);
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.point(16 * 8 + 8), [0.0, 0.0]);
    }

    #[test]
    fn integrate_examples() {
        let g = Grid::new(1, 64, 1.0).unwrap();
        assert!((Field::constant(g, 1.0).integrate() - 2.0).abs() < 1e-15);
        assert_eq!(Field::zeros(g).integrate(), 0.0);
        let g = Grid::new(1, 256, 1.0).unwrap();
        let f = Field::from_fn(g, |x| (PI * x[0]).cos().powi(2));
        assert!((integrate(&f) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn convolve_with_impulse_is_identity() {
        let g = Grid::new(1, 128, 4.0).unwrap();
        let f = Field::from_fn(g, |x| (-x[0] * x[0]).exp() * (3.0 * x[0]).sin());
        let delta = Field::from_fn(g, |x| if x[0] == 0.0 { 1.0 / g.spacing() } else { 0.0 });
        let out = convolve(&delta, &f).unwrap();
        for (a, b) in out.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(convolve(&Field::zeros(g), &f).unwrap().max_abs() < 1e-15);

        let g2 = Grid::new(2, 16, 2.0).unwrap();
        let f2 = Field::from_fn(g2, |x| {
            (-(x[0] * x[0] + 2.0 * x[1] * x[1])).exp() + 0.1 * x[1]
        });
        let delta2 = Field::from_fn(g2, |x| {
            if x == [0.0, 0.0] {
                1.0 / g2.cell_volume()
            } else {
                0.0
            }
        });
        let out2 = convolve(&f2, &delta2).unwrap();
        for (a, b) in out2.values().iter().zip(f2.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussians_convolve_to_gaussian() {
        let g = Grid::new(1, 1024, 8.0).unwrap();
        let (s1, s2) = (0.5, 0.7);
        let out = convolve(&gaussian(g, s1), &gaussian(g, s2)).unwrap();
        let expect = gaussian(g, (s1 * s1 + s2 * s2).sqrt());
        for (a, b) in out.values().iter().zip(expect.values()) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn convolve_mismatched_grids() {
        let a = Field::zeros(Grid::new(1, 16, 1.0).unwrap());
        let b = Field::zeros(Grid::new(1, 32, 1.0).unwrap());
        assert_eq!(convolve(&a, &b), Err(Error::GridMismatch));
    }

    #[test]
    fn derivative_examples() {
        let g = Grid::new(1, 256, 3.0).unwrap();
        let l = g.half_width();
        assert!(
            spectral_derivative(&Field::constant(g, 4.0), 0)
                .unwrap()
                .max_abs()
                < 1e-12
        );
        let f = Field::from_fn(g, |x| (PI * x[0] / l).sin());
        let df = spectral_derivative(&f, 0).unwrap();
        for i in 0..g.len() {
            let x = g.coordinate(i, 0);
            assert!((df.values()[i] - PI / l * (PI * x / l).cos()).abs() < 1e-10);
        }
        assert!(spectral_derivative(&f, 1).is_err());
    }

    #[test]
    fn derivative_is_second_order_consistent_with_centered_differences() {
        // Error between spectral and centered differences shrinks as h².
        let err = |n: usize| {
            let g = Grid::new(1, n, 8.0).unwrap();
            let f = Field::from_fn(g, |x| (-x[0] * x[0]).exp() * (2.0 * x[0]).cos());
            let d = spectral_derivative(&f, 0).unwrap();
            let v = f.values();
            let h = g.spacing();
            (0..n)
                .map(|i| {
                    let fd = (v[(i + 1) % n] - v[(i + n - 1) % n]) / (2.0 * h);
                    (fd - d.values()[i]).abs()
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(256) / err(512);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn eta_kernel_values() {
        let g = Grid::new(1, 64, 4.0).unwrap();
        let origin = g.len() / 2;
        let e0 = eta_kernel(0, 3.0, &g);
        assert_eq!(e0.values()[origin], 1.0);
        let e3 = eta_kernel(3, 3.0, &g);
        assert_eq!(e3.values()[origin], 8.0);
        let at_one: Vec<usize> = (0..g.len()).filter(|&i| g.radius(i) == 1.0).collect();
        assert_eq!(at_one.len(), 2);
        for i in at_one {
            assert!((e0.values()[i] - 2f64.powf(-3.0)).abs() < 1e-15);
        }
        let g2 = Grid::new(2, 16, 2.0).unwrap();
        assert_eq!(eta_kernel(2, 4.0, &g2).values()[16 * 8 + 8], 16.0);
    }

    #[test]
    fn minimum_image_distance() {
        let g = Grid::new(1, 8, 4.0).unwrap();
        // Nodes at -4 and 3 are one unit apart through the seam.
        assert_eq!(g.distance(0, 7), 1.0);
        assert_eq!(g.distance(2, 6), 4.0);
    }
}
