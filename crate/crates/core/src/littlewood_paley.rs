//! Smooth dyadic resolution of unity, Littlewood–Paley blocks, variable
//! Besov norms, the `η_{j,m}` estimates and the Hardy-type inequality.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponents::{local_log_holder, ExponentField, SmoothnessField};
use crate::grid::{convolve, eta_kernel, Field, Grid};
use crate::lebesgue::luxemburg_norm;
use crate::mixed::{mixed_norm, FieldSequence, InequalityRatio};

fn bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// The smooth step `Φ(r) = b(2 − r) / (b(2 − r) + b(r − 1))`: `1` for
/// `r ≤ 1`, `0` for `r ≥ 2`.
pub fn smooth_step(r: f64) -> f64 {
    let inner = bump(2.0 - r);
    if inner == 0.0 {
        return 0.0;
    }
    inner / (inner + bump(r - 1.0))
}

/// Fourier multipliers `(Fφ_j)_{j=0..J}` sampled on the spectral nodes of a
/// grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionOfUnity {
    grid: Grid,
    multipliers: Vec<Vec<f64>>,
}

/// Builds `Fφ₀ = Φ` and `Fφ_j(ξ) = Φ(2^{-j}ξ) − Φ(2^{-j+1}ξ)` for `j ≤ J`.
///
/// Requires `2^J ≤` the Nyquist frequency so that the partition of unity is
/// resolved on `|ξ| ≤ 2^J`; the outer flank of `Fφ_J` may be cut.
pub fn build_resolution(grid: Grid, levels: usize) -> Result<ResolutionOfUnity> {
    if levels >= 52 || 2f64.powi(levels as i32) > grid.nyquist() {
        return Err(Error::LevelsExceedNyquist {
            levels,
            nyquist: grid.nyquist(),
        });
    }
    let norms: Vec<f64> = (0..grid.len()).map(|k| grid.frequency_norm(k)).collect();
    let mut multipliers = Vec::with_capacity(levels + 1);
    let mut previous: Vec<f64> = norms.iter().map(|&r| smooth_step(r)).collect();
    multipliers.push(previous.clone());
    for j in 1..=levels {
        let scale = 2f64.powi(-(j as i32));
        let current: Vec<f64> = norms.iter().map(|&r| smooth_step(r * scale)).collect();
        multipliers.push(current.iter().zip(&previous).map(|(a, b)| a - b).collect());
        previous = current;
    }
    Ok(ResolutionOfUnity { grid, multipliers })
}

impl ResolutionOfUnity {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `J`, the index of the last block.
    pub fn max_level(&self) -> usize {
        self.multipliers.len() - 1
    }

    pub fn levels(&self) -> usize {
        self.multipliers.len()
    }

    pub fn multiplier(&self, j: usize) -> &[f64] {
        &self.multipliers[j]
    }

    /// `max_{|ξ| ≤ 2^J} |Σ_j Fφ_j(ξ) − 1|`.
    pub fn partition_residual(&self) -> f64 {
        let top = 2f64.powi(self.max_level() as i32);
        (0..self.grid.len())
            .filter(|&k| self.grid.frequency_norm(k) <= top)
            .map(|k| {
                let sum: f64 = self.multipliers.iter().map(|m| m[k]).sum();
                (sum - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    fn check_level(&self, j: usize) -> Result<()> {
        if j > self.max_level() {
            return Err(Error::LevelOutOfRange {
                level: j,
                max: self.max_level(),
            });
        }
        Ok(())
    }

    /// Inverse transform of `Fφ_j · spectrum`.
    pub(crate) fn filter(&self, spectrum: &[Complex64], j: usize) -> Field {
        let filtered = spectrum
            .iter()
            .zip(&self.multipliers[j])
            .map(|(&z, &m)| z * m)
            .collect();
        Field::from_spectrum(self.grid, filtered)
    }
}

/// `Δ_j f = φ_j ∗ f`.
pub fn lp_block(f: &Field, rou: &ResolutionOfUnity, j: usize) -> Result<Field> {
    f.grid().check_same(rou.grid())?;
    rou.check_level(j)?;
    Ok(f.apply_multiplier(rou.multiplier(j)))
}

/// All blocks `(Δ_j f)_{j=0..J}` from one forward transform.
pub fn lp_blocks(f: &Field, rou: &ResolutionOfUnity) -> Result<FieldSequence> {
    f.grid().check_same(rou.grid())?;
    let spectrum = f.spectrum();
    FieldSequence::new(
        (0..rou.levels())
            .map(|j| rou.filter(&spectrum, j))
            .collect(),
    )
}

/// `(2^{j s(x)} Δ_j f(x))_{j=0..J}`.
pub fn weighted_blocks(
    f: &Field,
    s: &SmoothnessField,
    rou: &ResolutionOfUnity,
) -> Result<FieldSequence> {
    f.grid().check_same(s.grid())?;
    let blocks = lp_blocks(f, rou)?;
    Ok(blocks.map(|j, b| b.map_indexed(|v, i| v * 2f64.powf(j as f64 * s.values()[i]))))
}

/// `‖f‖_{B^{s(·)}_{p(·),q(·)}}` over the blocks `j ≤ J`.
///
/// Exact when `f` is band-limited below `2^J`.
pub fn besov_norm(
    f: &Field,
    s: &SmoothnessField,
    p: &ExponentField,
    q: &ExponentField,
    rou: &ResolutionOfUnity,
) -> Result<f64> {
    mixed_norm(&weighted_blocks(f, s, rou)?, p, q)
}

/// Node subsample for pair scans: every node when the grid has at most
/// `budget` of them, a uniform stride otherwise.
fn sample_nodes(grid: &Grid, budget: usize) -> Vec<usize> {
    let stride = grid.len().div_ceil(budget);
    (0..grid.len()).step_by(stride).collect()
}

/// Node budget for the pair scan of the shift lemma.
const SHIFT_SCAN_NODES: usize = 1024;

/// Largest admissible `max_j c_j / min_j c_j` for the shift lemma.
pub const SHIFT_SPREAD: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct EtaShiftReport {
    /// Minimal `c` per level.
    pub per_level: Vec<f64>,
    pub c: f64,
    pub c_loc: f64,
    /// `max_j c_j / min_j c_j`.
    pub spread: f64,
    pub passed: bool,
}

/// Minimal `c` with `2^{jα(x)} η_{j,m+R}(x−y) ≤ c 2^{jα(y)} η_{j,m}(x−y)`
/// over sampled pairs and `j ≤ J`.
pub fn check_lemma_eta_shift(
    alpha: &SmoothnessField,
    r: f64,
    m: f64,
    levels: usize,
) -> Result<EtaShiftReport> {
    if !(m > 0.0) {
        return Err(Error::Precondition("m must be positive"));
    }
    let c_loc = local_log_holder(alpha);
    if !(r >= c_loc) {
        return Err(Error::Precondition(
            "R is below the log-Hölder constant of α",
        ));
    }
    let grid = *alpha.grid();
    let nodes = sample_nodes(&grid, SHIFT_SCAN_NODES);
    let a = alpha.values();
    let per_level: Vec<f64> = (0..=levels)
        .map(|j| {
            let scale = 2f64.powi(j as i32);
            let height = scale.powi(grid.dim() as i32);
            let mut best = 0.0f64;
            for &x in &nodes {
                let wx = 2f64.powf(j as f64 * a[x]);
                for &y in &nodes {
                    let base = 1.0 + scale * grid.distance(x, y);
                    let lhs = wx * height * base.powf(-(m + r));
                    let rhs = 2f64.powf(j as f64 * a[y]) * height * base.powf(-m);
                    best = best.max(lhs / rhs);
                }
            }
            best
        })
        .collect();
    let c = per_level.iter().copied().fold(0.0, f64::max);
    let low = per_level.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = c / low;
    Ok(EtaShiftReport {
        passed: c.is_finite() && spread <= SHIFT_SPREAD,
        per_level,
        c,
        c_loc,
        spread,
    })
}

/// Largest admissible `max_j ratio_j / min_j ratio_j` for the convolution
/// estimate.
pub const ETA_SPREAD: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct EtaConvolutionReport {
    /// `‖η_{j,m} ∗ f‖_{p(·)} / ‖f‖_{p(·)}` per level.
    pub ratios: Vec<f64>,
    /// Quadrature of `‖η_{j,m}‖₁` per level.
    pub kernel_mass: Vec<f64>,
    pub max: f64,
    pub spread: f64,
    pub bound: f64,
    /// `f ≡ 0`; every ratio is `0`.
    pub trivial: bool,
    pub passed: bool,
}

/// `‖η_{j,m} ∗ f‖_{p(·)} ≤ c ‖f‖_{p(·)}` for `j ≤ J`, asserted with
/// `c = c_report` and no growth in `j`.
pub fn verify_eta_convolution(
    f: &Field,
    p: &ExponentField,
    m: f64,
    levels: usize,
    c_report: f64,
) -> Result<EtaConvolutionReport> {
    let grid = *f.grid();
    if !(m > grid.dim() as f64) {
        return Err(Error::Precondition("m must exceed the dimension"));
    }
    let base = luxemburg_norm(f, p)?;
    let mut ratios = Vec::with_capacity(levels + 1);
    let mut kernel_mass = Vec::with_capacity(levels + 1);
    for j in 0..=levels {
        let eta = eta_kernel(j as u32, m, &grid);
        kernel_mass.push(eta.integrate());
        if base == 0.0 {
            ratios.push(0.0);
        } else {
            ratios.push(luxemburg_norm(&convolve(&eta, f)?, p)? / base);
        }
    }
    let trivial = base == 0.0;
    let max = ratios.iter().copied().fold(0.0, f64::max);
    let spread = if trivial {
        1.0
    } else {
        max / ratios.iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(EtaConvolutionReport {
        passed: max <= c_report && spread <= ETA_SPREAD,
        ratios,
        kernel_mass,
        max,
        spread,
        bound: c_report,
        trivial,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedEtaReport {
    pub ratio: InequalityRatio,
    /// `c_log(1/q)` measured on the grid.
    pub c_loc: f64,
    pub bound: f64,
    /// `(f_j) ≡ 0`.
    pub trivial: bool,
    pub passed: bool,
}

/// `‖(η_{j,m} ∗ f_j)_j‖_{ℓ^{q(·)}(L^{p(·)})} ≤ c ‖(f_j)_j‖_{ℓ^{q(·)}(L^{p(·)})}`
/// with `c = c_report`.
pub fn verify_mixed_eta(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
    m: f64,
    c_report: f64,
) -> Result<MixedEtaReport> {
    let grid = *fs.grid();
    let c_loc = local_log_holder(&q.reciprocal());
    if !(m > grid.dim() as f64 + c_loc) {
        return Err(Error::Precondition("m must exceed n + c_log(1/q)"));
    }
    let convolved = fs
        .entries()
        .iter()
        .enumerate()
        .map(|(j, f)| convolve(&eta_kernel(j as u32, m, &grid), f))
        .collect::<Result<Vec<_>>>()?;
    let ratio = InequalityRatio::new(
        mixed_norm(&FieldSequence::new(convolved)?, p, q)?,
        mixed_norm(fs, p, q)?,
    );
    Ok(MixedEtaReport {
        passed: ratio.ratio <= c_report,
        trivial: fs.is_zero(),
        ratio,
        c_loc,
        bound: c_report,
    })
}

/// `G_j = Σ_{m≥j} a^{m−j} g_m` and `H_j = Σ_{m≤j} a^{j−m} g_m` over `0..=J`.
pub fn hardy_transform(gs: &FieldSequence, a: f64) -> Result<(FieldSequence, FieldSequence)> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Precondition("a must lie in (0, 1)"));
    }
    let levels = gs.levels();
    let grid = *gs.grid();
    let mut upper = alloc::vec![Field::zeros(grid); levels];
    let mut acc = Field::zeros(grid);
    for j in (0..levels).rev() {
        acc = acc.scale(a).add(gs.get(j))?;
        upper[j] = acc.clone();
    }
    let mut lower = Vec::with_capacity(levels);
    let mut acc = Field::zeros(grid);
    for g in gs.entries() {
        acc = acc.scale(a).add(g)?;
        lower.push(acc.clone());
    }
    Ok((FieldSequence::new(upper)?, FieldSequence::new(lower)?))
}

/// The constant `c(γ) = (1 − a^γ)^{1/q⁻} (1 − a^{1−γ/q⁻})` for
/// `0 < γ < q⁻`.
pub fn hardy_constant(a: f64, q_minus: f64, gamma: f64) -> f64 {
    let inv = 1.0 / q_minus;
    (1.0 - a.powf(gamma)).powf(inv) * (1.0 - a.powf(1.0 - gamma * inv))
}

/// `count` equally spaced points strictly inside `(0, q⁻)`; `q⁻ = ∞` uses
/// `(0, count]`.
pub fn gamma_grid(q_minus: f64, count: usize) -> Vec<f64> {
    let top = if q_minus.is_finite() {
        q_minus
    } else {
        count as f64 + 1.0
    };
    (1..=count)
        .map(|k| top * k as f64 / (count + 1) as f64)
        .collect()
}

/// Slack added to the Hardy bound.
pub const HARDY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct HardyReport {
    /// `‖(G_j)‖ / ‖(g_j)‖`.
    pub ratio_g: f64,
    /// `‖(H_j)‖ / ‖(g_j)‖`.
    pub ratio_h: f64,
    /// `min_γ 1/c(γ)`.
    pub bound: f64,
    pub gamma: f64,
    pub passed: bool,
}

/// Compares both Hardy transforms with the bound `min_γ 1/c(γ)`.
pub fn verify_hardy(
    gs: &FieldSequence,
    a: f64,
    p: &ExponentField,
    q: &ExponentField,
    gammas: &[f64],
) -> Result<HardyReport> {
    let (upper, lower) = hardy_transform(gs, a)?;
    let q_minus = q.minus();
    let (gamma, bound) = gammas
        .iter()
        .filter(|&&g| g > 0.0 && g < q_minus)
        .map(|&g| (g, 1.0 / hardy_constant(a, q_minus, g)))
        .fold(None, |best: Option<(f64, f64)>, cand| match best {
            Some(b) if b.1 <= cand.1 => Some(b),
            _ => Some(cand),
        })
        .ok_or(Error::Precondition("no γ in (0, q⁻)"))?;
    let base = mixed_norm(gs, p, q)?;
    let ratio = |n: f64| if n == 0.0 { 0.0 } else { n / base };
    let ratio_g = ratio(mixed_norm(&upper, p, q)?);
    let ratio_h = ratio(mixed_norm(&lower, p, q)?);
    Ok(HardyReport {
        passed: ratio_g <= bound + HARDY_TOL && ratio_h <= bound + HARDY_TOL,
        ratio_g,
        ratio_h,
        bound,
        gamma,
    })
}
