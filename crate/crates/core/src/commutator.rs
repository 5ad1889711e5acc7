//! The commutator `[V·∇, Δ_j] f` and empirical estimates of its
//! `ℓ^{q(·)}(L^{p(·)})` norm against the right-hand sides of the
//! commutator theorems.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponents::{harmonic_sum, ExponentField, Family, SmoothnessField};
use crate::grid::{spectral_derivative, Field, Grid};
use crate::lebesgue::luxemburg_norm;
use crate::littlewood_paley::{besov_norm, build_resolution, ResolutionOfUnity};
use crate::mixed::{mixed_norm, FieldSequence};
use crate::sampling::{check_decay, PacketSum};

/// A vector field `V = (V₁, …, V_n)` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: Vec<Field>,
}

impl VectorField {
    /// Requires `n` components on a shared grid, each either constant or
    /// decaying at the box seam.
    pub fn new(components: Vec<Field>) -> Result<VectorField> {
        let first = components.first().ok_or(Error::Empty)?;
        let grid = *first.grid();
        if components.len() != grid.dim() {
            return Err(Error::LengthMismatch {
                expected: grid.dim(),
                found: components.len(),
            });
        }
        for c in &components {
            grid.check_same(c.grid())?;
            if !c.is_constant() {
                check_decay(c)?;
            }
        }
        Ok(VectorField { components })
    }

    pub fn constant(grid: Grid, values: &[f64]) -> Result<VectorField> {
        VectorField::new(values.iter().map(|&c| Field::constant(grid, c)).collect())
    }

    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    pub fn components(&self) -> &[Field] {
        &self.components
    }

    pub fn is_constant(&self) -> bool {
        self.components.iter().all(Field::is_constant)
    }

    /// `a V + b W`.
    pub fn combine(&self, a: f64, other: &VectorField, b: f64) -> Result<VectorField> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(v, w)| v.scale(a).add(&w.scale(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { components })
    }

    /// Spectral `div V = Σ_k ∂_k V_k`.
    pub fn divergence(&self) -> Field {
        self.components
            .iter()
            .enumerate()
            .map(|(k, v)| spectral_derivative(v, k).expect("one component per axis"))
            .reduce(|a, b| a.add(&b).expect("shared grid"))
            .expect("at least one component")
    }

    /// All first derivatives `∂_i V_k`.
    pub fn jacobian(&self) -> Vec<Field> {
        let dim = self.grid().dim();
        self.components
            .iter()
            .flat_map(|v| (0..dim).map(move |i| spectral_derivative(v, i).expect("axis below dim")))
            .collect()
    }
}

/// Multiplier `iξ_axis` with the Nyquist mode dropped.
fn derivative_multiplier(grid: &Grid, axis: usize) -> Vec<Complex64> {
    (0..grid.len())
        .map(|k| {
            if grid.is_nyquist(k, axis) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, grid.frequency(k)[axis])
            }
        })
        .collect()
}

/// `([V·∇, Δ_j] f)_{j=0..J}` with
/// `[V·∇, Δ_j] f = Σ_k V_k ∂_k Δ_j f − Δ_j(V_k ∂_k f)`.
///
/// Products are formed pointwise and then filtered; inputs band-limited
/// below `2^J/4` keep them alias-free.
pub fn commutator_sequence(
    v: &VectorField,
    f: &Field,
    rou: &ResolutionOfUnity,
) -> Result<FieldSequence> {
    let grid = *f.grid();
    grid.check_same(v.grid())?;
    grid.check_same(rou.grid())?;
    let spectrum = f.spectrum();
    let multipliers: Vec<Vec<Complex64>> = (0..grid.dim())
        .map(|k| derivative_multiplier(&grid, k))
        .collect();
    let derivative = |mult: &[Complex64], extra: Option<&[f64]>| {
        let data = spectrum
            .iter()
            .zip(mult)
            .enumerate()
            .map(|(i, (&z, &m))| z * m * extra.map_or(1.0, |e| e[i]))
            .collect();
        Field::from_spectrum(grid, data)
    };
    let mut transport = Field::zeros(grid);
    for (vk, mult) in v.components.iter().zip(&multipliers) {
        transport = transport.add(&vk.mul(&derivative(mult, None))?)?;
    }
    let transport_spectrum = transport.spectrum();
    let entries = (0..rou.levels())
        .map(|j| {
            let phi = rou.multiplier(j);
            let mut acc = rou.filter(&transport_spectrum, j).scale(-1.0);
            for (vk, mult) in v.components.iter().zip(&multipliers) {
                acc = acc.add(&vk.mul(&derivative(mult, Some(phi)))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    FieldSequence::new(entries)
}

/// `[V·∇, Δ_j] f` for one level.
pub fn commutator(v: &VectorField, f: &Field, rou: &ResolutionOfUnity, j: usize) -> Result<Field> {
    if j > rou.max_level() {
        return Err(Error::LevelOutOfRange {
            level: j,
            max: rou.max_level(),
        });
    }
    Ok(commutator_sequence(v, f, rou)?
        .into_entries()
        .swap_remove(j))
}

/// `‖(2^{js(·)} [V·∇, Δ_j] f)_j‖_{ℓ^{q(·)}(L^{p(·)})}` over `j ≤ J`.
pub fn commutator_lhs_norm(
    v: &VectorField,
    f: &Field,
    s: &SmoothnessField,
    p: &ExponentField,
    q: &ExponentField,
    rou: &ResolutionOfUnity,
) -> Result<f64> {
    f.grid().check_same(s.grid())?;
    let weighted = commutator_sequence(v, f, rou)?
        .map(|j, c| c.map_indexed(|x, i| x * 2f64.powf(j as f64 * s.values()[i])));
    mixed_norm(&weighted, p, q)
}

fn lebesgue_sum(fields: &[Field], p: &ExponentField) -> Result<f64> {
    fields.iter().map(|f| luxemburg_norm(f, p)).sum()
}

fn besov_sum(
    fields: &[Field],
    s: &SmoothnessField,
    p: &ExponentField,
    q: &ExponentField,
    rou: &ResolutionOfUnity,
) -> Result<f64> {
    fields.iter().map(|f| besov_norm(f, s, p, q, rou)).sum()
}

/// Left side, named right-hand terms and their ratio for one inequality
/// instance.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub estimate: &'static str,
    pub lhs: f64,
    pub rhs_terms: Vec<(&'static str, f64)>,
    pub rhs: f64,
    /// `lhs / rhs`, with `0/0 = 0`.
    pub ratio: f64,
    pub dim: usize,
    pub points_per_axis: usize,
    pub levels: usize,
}

impl EstimateReport {
    fn new(
        estimate: &'static str,
        lhs: f64,
        rhs_terms: Vec<(&'static str, f64)>,
        rou: &ResolutionOfUnity,
    ) -> EstimateReport {
        let rhs: f64 = rhs_terms.iter().map(|t| t.1).sum();
        let ratio = if lhs == 0.0 {
            0.0
        } else if rhs == 0.0 {
            f64::INFINITY
        } else {
            lhs / rhs
        };
        EstimateReport {
            estimate,
            lhs,
            rhs_terms,
            rhs,
            ratio,
            dim: rou.grid().dim(),
            points_per_axis: rou.grid().points_per_axis(),
            levels: rou.levels(),
        }
    }
}

/// Exponents of the single-split commutator estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponents {
    pub s: SmoothnessField,
    pub p1: ExponentField,
    pub p2: ExponentField,
    pub q: ExponentField,
}

/// Exponents of the two-split estimate: `s = s₁ + s₂`, `1/q = 1/q₁ + 1/q₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitExponents {
    pub s1: SmoothnessField,
    pub s2: SmoothnessField,
    pub p1: ExponentField,
    pub p2: ExponentField,
    pub q1: ExponentField,
    pub q2: ExponentField,
}

fn gradient_norm(f: &Field, p: &ExponentField) -> Result<f64> {
    lebesgue_sum(&crate::grid::gradient(f), p)
}

fn check_inputs(v: &VectorField, f: &Field, rou: &ResolutionOfUnity) -> Result<()> {
    f.grid().check_same(v.grid())?;
    f.grid().check_same(rou.grid())
}

/// The three right-hand sides of the first commutator estimate; requires
/// `s⁻ > 0`.
pub fn theorem1_report(
    v: &VectorField,
    f: &Field,
    ex: &Exponents,
    rou: &ResolutionOfUnity,
) -> Result<Vec<EstimateReport>> {
    check_inputs(v, f, rou)?;
    if !(ex.s.minus() > 0.0) {
        return Err(Error::Precondition("s⁻ must be positive"));
    }
    let p = harmonic_sum(&ex.p1, &ex.p2)?;
    let lhs = commutator_lhs_norm(v, f, &ex.s, &p, &ex.q, rou)?;
    let grad_f = crate::grid::gradient(f);
    let grad_f_p1 = lebesgue_sum(&grad_f, &ex.p1)?;
    let v_besov = besov_sum(v.components(), &ex.s, &ex.p2, &ex.q, rou)?;
    let grad_v_p1 = lebesgue_sum(&v.jacobian(), &ex.p1)?;
    let f_besov = besov_norm(f, &ex.s, &ex.p2, &ex.q, rou)?;
    let v_p1 = lebesgue_sum(v.components(), &ex.p1)?;
    let grad_f_besov = besov_sum(&grad_f, &ex.s, &ex.p2, &ex.q, rou)?;
    let f_div = f.mul(&v.divergence())?;
    let f_div_besov = besov_norm(&f_div, &ex.s, &p, &ex.q, rou)?;
    let f_p1 = luxemburg_norm(f, &ex.p1)?;
    let v_besov_plus = besov_sum(v.components(), &ex.s.shifted(1.0), &ex.p2, &ex.q, rou)?;
    Ok(alloc::vec![
        EstimateReport::new(
            "gradient-of-v",
            lhs,
            alloc::vec![
                ("grad_f_p1 * v_besov", grad_f_p1 * v_besov),
                ("grad_v_p1 * f_besov", grad_v_p1 * f_besov),
            ],
            rou,
        ),
        EstimateReport::new(
            "gradient-of-f",
            lhs,
            alloc::vec![
                ("grad_f_p1 * v_besov", grad_f_p1 * v_besov),
                ("v_p1 * grad_f_besov", v_p1 * grad_f_besov),
            ],
            rou,
        ),
        EstimateReport::new(
            "divergence",
            lhs,
            alloc::vec![
                ("f_div_v_besov", f_div_besov),
                ("grad_v_p1 * f_besov", grad_v_p1 * f_besov),
                ("f_p1 * v_besov_shifted", f_p1 * v_besov_plus),
            ],
            rou,
        ),
    ])
}

/// The reduced right-hand side for `0 < s⁻ ≤ s⁺ < 1`.
pub fn theorem2_positive_report(
    v: &VectorField,
    f: &Field,
    ex: &Exponents,
    rou: &ResolutionOfUnity,
) -> Result<EstimateReport> {
    check_inputs(v, f, rou)?;
    if !(ex.s.minus() > 0.0 && ex.s.plus() < 1.0) {
        return Err(Error::Precondition("s must take values in (0, 1)"));
    }
    let p = harmonic_sum(&ex.p1, &ex.p2)?;
    let lhs = commutator_lhs_norm(v, f, &ex.s, &p, &ex.q, rou)?;
    let grad_f_p1 = gradient_norm(f, &ex.p1)?;
    let v_besov = besov_sum(v.components(), &ex.s, &ex.p2, &ex.q, rou)?;
    Ok(EstimateReport::new(
        "positive-smoothness",
        lhs,
        alloc::vec![("grad_f_p1 * v_besov", grad_f_p1 * v_besov)],
        rou,
    ))
}

/// The divergence form for `−1 < s⁻ ≤ s⁺ < 0`.
pub fn theorem2_negative_report(
    v: &VectorField,
    f: &Field,
    ex: &Exponents,
    rou: &ResolutionOfUnity,
) -> Result<EstimateReport> {
    check_inputs(v, f, rou)?;
    if !(ex.s.minus() > -1.0 && ex.s.plus() < 0.0) {
        return Err(Error::Precondition("s must take values in (−1, 0)"));
    }
    let p = harmonic_sum(&ex.p1, &ex.p2)?;
    let lhs = commutator_lhs_norm(v, f, &ex.s, &p, &ex.q, rou)?;
    let f_div = f.mul(&v.divergence())?;
    let f_div_besov = besov_norm(&f_div, &ex.s, &p, &ex.q, rou)?;
    let f_p1 = luxemburg_norm(f, &ex.p1)?;
    let v_besov_plus = besov_sum(v.components(), &ex.s.shifted(1.0), &ex.p2, &ex.q, rou)?;
    Ok(EstimateReport::new(
        "negative-smoothness",
        lhs,
        alloc::vec![
            ("f_div_v_besov", f_div_besov),
            ("f_p1 * v_besov_shifted", f_p1 * v_besov_plus),
        ],
        rou,
    ))
}

/// The split estimate with `s = s₁ + s₂`, `s⁻ > 0`, `s₂⁺ < 1`.
pub fn theorem3_report(
    v: &VectorField,
    f: &Field,
    ex: &SplitExponents,
    rou: &ResolutionOfUnity,
) -> Result<EstimateReport> {
    check_inputs(v, f, rou)?;
    let s = ex.s1.add(&ex.s2)?;
    if !(s.minus() > 0.0) {
        return Err(Error::Precondition("(s₁ + s₂)⁻ must be positive"));
    }
    if !(ex.s2.plus() < 1.0) {
        return Err(Error::Precondition("s₂⁺ must be below 1"));
    }
    let p = harmonic_sum(&ex.p1, &ex.p2)?;
    let q = harmonic_sum(&ex.q1, &ex.q2)?;
    let lhs = commutator_lhs_norm(v, f, &s, &p, &q, rou)?;
    let grad_f = crate::grid::gradient(f);
    let grad_f_p1 = lebesgue_sum(&grad_f, &ex.p1)?;
    let v_besov = besov_sum(v.components(), &s, &ex.p2, &q, rou)?;
    let grad_f_besov = besov_sum(&grad_f, &ex.s1, &ex.p1, &ex.q1, rou)?;
    let v_besov_split = besov_sum(v.components(), &ex.s2, &ex.p2, &ex.q2, rou)?;
    Ok(EstimateReport::new(
        "split-smoothness",
        lhs,
        alloc::vec![
            ("grad_f_p1 * v_besov", grad_f_p1 * v_besov),
            ("grad_f_besov_s1 * v_besov_s2", grad_f_besov * v_besov_split),
        ],
        rou,
    ))
}

/// Which commutator estimate a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    First,
    SecondPositive,
    SecondNegative,
    Third,
}

/// How random vector fields are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorKind {
    /// Independent wave-packet components; `div V ≠ 0` in general.
    Generic,
    /// Random constant vectors.
    Constant,
    /// `V = (∂₂ψ, −∂₁ψ)` for a random stream function; needs `n = 2`.
    DivergenceFree,
}

/// Exponent families of a sweep.
///
/// The split estimate uses `s₂ = s2`, `q₂ = q2`, `s₁ = s − s₂` and
/// `1/q₁ = 1/q − 1/q₂`; the other estimates ignore `s2` and `q2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFamilies {
    pub s: Family,
    pub p1: Family,
    pub p2: Family,
    pub q: Family,
    pub s2: Family,
    pub q2: Family,
}

impl ExponentFamilies {
    pub fn sample(&self, grid: Grid) -> Result<Exponents> {
        Ok(Exponents {
            s: SmoothnessField::from_family(grid, &self.s)?,
            p1: ExponentField::from_family(grid, &self.p1)?,
            p2: ExponentField::from_family(grid, &self.p2)?,
            q: ExponentField::from_family(grid, &self.q)?,
        })
    }

    pub fn sample_split(&self, grid: Grid) -> Result<SplitExponents> {
        let base = self.sample(grid)?;
        let s2 = SmoothnessField::from_family(grid, &self.s2)?;
        let q2 = ExponentField::from_family(grid, &self.q2)?;
        let s1 = base.s.sub(&s2)?;
        let recips: Vec<f64> = base
            .q
            .values()
            .iter()
            .zip(q2.values())
            .map(|(a, b)| a.recip() - b.recip())
            .collect();
        if recips.iter().any(|&r| r < -1e-15) {
            return Err(Error::InvalidExponent("1/q − 1/q₂ is negative"));
        }
        let recips: Vec<f64> = recips.into_iter().map(|r| r.max(0.0)).collect();
        Ok(SplitExponents {
            s1,
            s2,
            p1: base.p1,
            p2: base.p2,
            q1: ExponentField::from_reciprocals(grid, &recips)?,
            q2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub grid: Grid,
    pub levels: usize,
    pub theorem: Theorem,
    pub exponents: ExponentFamilies,
    pub vector: VectorKind,
}

impl SweepConfig {
    /// Inputs are band-limited below `2^J / 4`.
    pub fn cutoff(&self) -> f64 {
        2f64.powi(self.levels as i32) / 4.0
    }
}

/// Reports of one randomized `(V, f)` at `(N, J)` and at `(2N, J + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub coarse: Vec<EstimateReport>,
    pub refined: Vec<EstimateReport>,
}

/// Ratios below this are treated as vanishing when comparing refinements.
pub const RATIO_FLOOR: f64 = 1e-9;

/// Largest admissible change of a ratio under refinement.
pub const REFINEMENT_FACTOR: f64 = 2.0;

impl TrialOutcome {
    pub fn max_ratio(&self) -> f64 {
        self.coarse.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    /// `max(r, r′) / min(r, r′)` over the estimates, with ratios below
    /// [`RATIO_FLOOR`] raised to it.
    pub fn refinement_factor(&self) -> f64 {
        self.coarse
            .iter()
            .zip(&self.refined)
            .map(|(a, b)| {
                let (x, y) = (a.ratio.max(RATIO_FLOOR), b.ratio.max(RATIO_FLOOR));
                x.max(y) / x.min(y)
            })
            .fold(1.0, f64::max)
    }
}

struct Draw {
    f: PacketSum,
    v: Vec<PacketSum>,
    constant: Vec<f64>,
}

fn draw(config: &SweepConfig, rng: &mut ChaCha8Rng) -> Result<Draw> {
    let grid = &config.grid;
    let cutoff = config.cutoff();
    let f = PacketSum::random(grid, cutoff, 3, rng);
    let dim = grid.dim();
    let (v, constant) = match config.vector {
        VectorKind::Generic => (
            (0..dim)
                .map(|_| PacketSum::random(grid, cutoff, 3, rng))
                .collect(),
            Vec::new(),
        ),
        VectorKind::Constant => (
            Vec::new(),
            (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        ),
        VectorKind::DivergenceFree => {
            if dim != 2 {
                return Err(Error::Precondition("divergence-free fields need n = 2"));
            }
            (
                alloc::vec![PacketSum::random(grid, cutoff, 3, rng)],
                Vec::new(),
            )
        }
    };
    Ok(Draw { f, v, constant })
}

fn realize(config: &SweepConfig, d: &Draw, grid: Grid) -> Result<(VectorField, Field)> {
    let cutoff = config.cutoff();
    let f = d.f.sample_band_limited(&grid, cutoff);
    check_decay(&f)?;
    let v = match config.vector {
        VectorKind::Generic => VectorField::new(
            d.v.iter()
                .map(|c| c.sample_band_limited(&grid, cutoff))
                .collect(),
        )?,
        VectorKind::Constant => VectorField::constant(grid, &d.constant)?,
        VectorKind::DivergenceFree => {
            let psi = d.v[0].sample_band_limited(&grid, cutoff);
            VectorField::new(alloc::vec![
                spectral_derivative(&psi, 1)?,
                spectral_derivative(&psi, 0)?.scale(-1.0),
            ])?
        }
    };
    Ok((v, f))
}

fn reports(
    config: &SweepConfig,
    v: &VectorField,
    f: &Field,
    rou: &ResolutionOfUnity,
) -> Result<Vec<EstimateReport>> {
    let grid = *rou.grid();
    match config.theorem {
        Theorem::First => theorem1_report(v, f, &config.exponents.sample(grid)?, rou),
        Theorem::SecondPositive => Ok(alloc::vec![theorem2_positive_report(
            v,
            f,
            &config.exponents.sample(grid)?,
            rou
        )?]),
        Theorem::SecondNegative => Ok(alloc::vec![theorem2_negative_report(
            v,
            f,
            &config.exponents.sample(grid)?,
            rou
        )?]),
        Theorem::Third => Ok(alloc::vec![theorem3_report(
            v,
            f,
            &config.exponents.sample_split(grid)?,
            rou
        )?]),
    }
}

/// One randomized trial; the random stream is `(seed, trial)`.
pub fn sweep_trial(config: &SweepConfig, trial: usize, seed: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let d = draw(config, &mut rng)?;
    let coarse_grid = config.grid;
    let fine_grid = coarse_grid.refined();
    let coarse_rou = build_resolution(coarse_grid, config.levels)?;
    let fine_rou = build_resolution(fine_grid, config.levels + 1)?;
    let (v, f) = realize(config, &d, coarse_grid)?;
    let coarse = reports(config, &v, &f, &coarse_rou)?;
    let (v, f) = realize(config, &d, fine_grid)?;
    let refined = reports(config, &v, &f, &fine_rou)?;
    Ok(TrialOutcome {
        trial,
        coarse,
        refined,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub outcomes: Vec<TrialOutcome>,
    pub max_ratio: f64,
    pub median_ratio: f64,
    pub max_refinement_factor: f64,
    pub finite: bool,
    pub stable: bool,
}

/// Aggregates trial outcomes in trial order.
pub fn summarize(mut outcomes: Vec<TrialOutcome>) -> Result<SweepSummary> {
    if outcomes.is_empty() {
        return Err(Error::Empty);
    }
    outcomes.sort_by_key(|o| o.trial);
    let mut ratios: Vec<f64> = outcomes.iter().map(TrialOutcome::max_ratio).collect();
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    let median_ratio = if ratios.len() % 2 == 1 {
        ratios[mid]
    } else {
        (ratios[mid - 1] + ratios[mid]) / 2.0
    };
    let max_refinement_factor = outcomes
        .iter()
        .map(TrialOutcome::refinement_factor)
        .fold(1.0, f64::max);
    let finite = outcomes
        .iter()
        .flat_map(|o| o.coarse.iter().chain(&o.refined))
        .all(|r| r.ratio.is_finite() && r.lhs.is_finite() && r.rhs.is_finite());
    Ok(SweepSummary {
        outcomes,
        max_ratio,
        median_ratio,
        max_refinement_factor,
        finite,
        stable: max_refinement_factor <= REFINEMENT_FACTOR,
    })
}

/// Empirical constant of one estimate over `trials` randomized `(V, f)`.
pub fn constant_sweep(config: &SweepConfig, trials: usize, seed: u64) -> Result<SweepSummary> {
    if trials == 0 {
        return Err(Error::Empty);
    }
    let outcomes = (0..trials)
        .map(|t| sweep_trial(config, t, seed))
        .collect::<Result<Vec<_>>>()?;
    summarize(outcomes)
}
