//! Duality of `ℓ^{q(·)}(L^{p(·)})`: the absolute pairing, the extremal dual
//! witnesses and a randomized search over the dual unit ball.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponents::{conjugate, ExponentField};
use crate::ext::{Exponent, Extended};
use crate::grid::{Field, Grid};
use crate::lebesgue::{luxemburg_norm, modular};
use crate::mixed::{inner_lambda, mixed_norm, sup_modular, FieldSequence, C_HOLDER};
use crate::sampling::random_field;

/// `∫ Σ_j |f_j(x)| |g_j(x)| dx`.
pub fn pairing(fs: &FieldSequence, gs: &FieldSequence) -> Result<f64> {
    fs.check_levels(gs)?;
    Ok(fs
        .entries()
        .iter()
        .zip(gs.entries())
        .map(|(f, g)| {
            f.values()
                .iter()
                .zip(g.values())
                .map(|(a, b)| (a * b).abs())
                .sum::<f64>()
                * f.grid().cell_volume()
        })
        .sum())
}

/// Levels whose `β_j` falls below this are dropped from a witness.
pub const BETA_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub hs: FieldSequence,
    /// `K = ‖(f_j)‖_{ℓ^{q(·)}(L^{p(·)})}`.
    pub k: f64,
    /// `β_j`; `0` for vanishing or dropped levels.
    pub betas: Vec<f64>,
    /// Levels dropped because `0 < β_j <` [`BETA_FLOOR`].
    pub dropped: Vec<usize>,
}

fn zero_guard(fs: &FieldSequence) -> Result<()> {
    if fs.is_zero() {
        return Err(Error::Precondition("the sequence vanishes identically"));
    }
    Ok(())
}

fn finite_q(q: &ExponentField) -> Result<()> {
    if q.plus().is_infinite() {
        return Err(Error::InvalidExponent("q must be finite-valued"));
    }
    Ok(())
}

/// `f / (K β^{1/q(·)})`.
fn normalized(f: &Field, k: f64, beta: f64, q: &ExponentField) -> Field {
    f.map_indexed(|v, i| v / (k * beta.powf(q.at(i).recip())))
}

/// `h_j = β_j^{1/q′(·)} (|f_j| / (K β_j^{1/q(·)}))^{p(·)−1}` with
/// `Σ_j β_j = 1`.
pub fn extremal_witness(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
) -> Result<Witness> {
    if p.plus().is_infinite() {
        return Err(Error::InvalidExponent("p⁺ = ∞; use infinity_witness"));
    }
    finite_q(q)?;
    zero_guard(fs)?;
    let k = mixed_norm(fs, p, q)?;
    let grid = *fs.grid();
    let mut betas = Vec::with_capacity(fs.levels());
    let mut dropped = Vec::new();
    let mut hs = Vec::with_capacity(fs.levels());
    for (j, f) in fs.entries().iter().enumerate() {
        let beta = match inner_lambda(&f.scale(1.0 / k), p, q)? {
            Extended::Finite(b) => b,
            Extended::Infinity => unreachable!("q is finite-valued"),
        };
        if beta < BETA_FLOOR {
            if beta > 0.0 {
                dropped.push(j);
            }
            betas.push(0.0);
            hs.push(Field::zeros(grid));
            continue;
        }
        betas.push(beta);
        let scaled = normalized(f, k, beta, q);
        hs.push(scaled.map_indexed(|v, i| {
            if v == 0.0 {
                return 0.0;
            }
            let pe = p.at(i).finite().expect("p⁺ < ∞");
            beta.powf(1.0 - q.at(i).recip()) * v.abs().powf(pe - 1.0)
        }));
    }
    Ok(Witness {
        hs: FieldSequence::new(hs)?,
        k,
        betas,
        dropped,
    })
}

/// `|ρ_p(f_j / (K β_j^{1/q(·)})) − 1|` for every retained level.
pub fn beta_residuals(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
    witness: &Witness,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (f, &beta) in fs.entries().iter().zip(&witness.betas) {
        if beta > 0.0 {
            let rho = modular(&normalized(f, witness.k, beta, q), p)?;
            out.push(match rho {
                Extended::Finite(r) => (r - 1.0).abs(),
                Extended::Infinity => f64::INFINITY,
            });
        }
    }
    Ok(out)
}

/// The `p ≡ ∞` witness `h_j = β_j^{1/q′(·)} |E_j|^{-1} χ_{E_j}`, where `E_j`
/// collects the nodes at which `|f_j|/(Kβ_j^{1/q(·)})` is within
/// `ε/(K 2^{j−1})` of its supremum.
pub fn infinity_witness(fs: &FieldSequence, q: &ExponentField, eps: f64) -> Result<Witness> {
    if !(eps > 0.0) {
        return Err(Error::Precondition("eps must be positive"));
    }
    finite_q(q)?;
    zero_guard(fs)?;
    let grid = *fs.grid();
    let infinite = ExponentField::constant(grid, Exponent::Infinity)?;
    let k = mixed_norm(fs, &infinite, q)?;
    let mut betas = Vec::with_capacity(fs.levels());
    let mut hs = Vec::with_capacity(fs.levels());
    for (j, f) in fs.entries().iter().enumerate() {
        let beta = sup_modular(&FieldSequence::single(f.scale(1.0 / k)), q)?
            .finite()
            .expect("q is finite-valued");
        if beta == 0.0 {
            betas.push(0.0);
            hs.push(Field::zeros(grid));
            continue;
        }
        betas.push(beta);
        let scaled = normalized(f, k, beta, q).abs();
        let top = scaled.max_abs();
        let margin = eps / (k * 2f64.powi(j as i32 - 1));
        let chosen: Vec<bool> = scaled.values().iter().map(|&v| v + margin > top).collect();
        let measure = chosen.iter().filter(|&&c| c).count() as f64 * grid.cell_volume();
        hs.push(Field::from_fn_indexed(grid, |i| {
            if chosen[i] {
                beta.powf(1.0 - q.at(i).recip()) / measure
            } else {
                0.0
            }
        }));
    }
    Ok(Witness {
        hs: FieldSequence::new(hs)?,
        k,
        betas,
        dropped: Vec::new(),
    })
}

/// Restriction of every level to the nodes in `mask`.
fn restrict(fs: &FieldSequence, mask: &[bool]) -> FieldSequence {
    fs.map(|_, f| f.map_indexed(|v, i| if mask[i] { v } else { 0.0 }))
}

/// Witness for a piece on which `q` is finite, split further along
/// `{p < ∞}`.
fn finite_q_candidates(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
    eps: f64,
) -> Result<Vec<FieldSequence>> {
    let finite_p: Vec<bool> = p.values().iter().map(|v| !v.is_infinite()).collect();
    let mut out = Vec::new();
    let near = restrict(fs, &finite_p);
    if !near.is_zero() {
        let p_mod = p.with_outside(&finite_p, Exponent::Finite(2.0))?;
        out.push(extremal_witness(&near, &p_mod, q)?.hs);
    }
    let infinite_p: Vec<bool> = finite_p.iter().map(|b| !b).collect();
    let far = restrict(fs, &infinite_p);
    if !far.is_zero() {
        out.push(infinity_witness(&far, q, eps)?.hs);
    }
    Ok(out)
}

/// Dual candidates built piecewise on `A ∩ B`, `B ∖ A` and `ℝⁿ ∖ B` with
/// `A = {p < ∞}` and `B = {q < ∞}`.
///
/// Each candidate is supported in one piece and pairs with `(f_j)` to
/// nearly the norm of that piece; since the three pieces sum to `(f_j)`,
/// the best of them is at least a third of `‖(f_j)‖`.
pub fn split_witnesses(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
    eps: f64,
) -> Result<Vec<FieldSequence>> {
    fs.grid().check_same(p.grid())?;
    fs.grid().check_same(q.grid())?;
    let grid = *fs.grid();
    let finite_q_mask: Vec<bool> = q.values().iter().map(|v| !v.is_infinite()).collect();
    let mut out = Vec::new();
    let inside = restrict(fs, &finite_q_mask);
    if !inside.is_zero() {
        let q_mod = q.with_outside(&finite_q_mask, Exponent::Finite(2.0))?;
        out.extend(finite_q_candidates(&inside, p, &q_mod, eps)?);
    }
    let outside_mask: Vec<bool> = finite_q_mask.iter().map(|b| !b).collect();
    let outside = restrict(fs, &outside_mask);
    if !outside.is_zero() {
        // On `q = ∞` the norm is `sup_j ‖f_j‖_{p(·)}`: norm the largest level.
        let norms = outside
            .entries()
            .iter()
            .map(|f| luxemburg_norm(f, p))
            .collect::<Result<Vec<f64>>>()?;
        let top = (0..norms.len()).fold(0, |best, j| if norms[j] > norms[best] { j } else { best });
        let one = ExponentField::constant(grid, Exponent::Finite(1.0))?;
        let single = FieldSequence::single(outside.get(top).clone());
        for h in finite_q_candidates(&single, p, &one, eps)? {
            let h = h.into_entries().remove(0);
            let mut entries = alloc::vec![Field::zeros(grid); fs.levels()];
            entries[top] = h;
            out.push(FieldSequence::new(entries)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualSearch {
    /// Largest pairing over the rescaled candidates.
    pub best: f64,
    pub k: f64,
    /// Pairings of the random candidates, in trial order.
    pub pairings: Vec<f64>,
    /// Pairings of the rescaled witnesses.
    pub witnesses: Vec<f64>,
    /// Every pairing is at most `C_HOLDER · K`.
    pub within_bound: bool,
}

/// `ε` used for the infinity witnesses inside searches.
const SEARCH_EPS: f64 = 1e-9;

/// Cutoff of the band-limited noise in random candidates.
const NOISE_CUTOFF: f64 = 4.0;

/// Rescales `gs` to the unit sphere of `ℓ^{q′(·)}(L^{p′(·)})` and pairs it
/// with `fs`; `None` when `gs` vanishes.
fn unit_pairing(
    fs: &FieldSequence,
    gs: &FieldSequence,
    p_dual: &ExponentField,
    q_dual: &ExponentField,
) -> Result<Option<f64>> {
    let norm = mixed_norm(gs, p_dual, q_dual)?;
    if norm == 0.0 {
        return Ok(None);
    }
    Ok(Some(pairing(fs, gs)? / norm))
}

/// Random dual candidate shaped by `|f_j|^{p−1}` and modulated by
/// band-limited noise.
fn random_candidate<R: Rng>(fs: &FieldSequence, p: &ExponentField, rng: &mut R) -> FieldSequence {
    let grid: Grid = *fs.grid();
    fs.map(|_, f| {
        let noise = random_field(&grid, NOISE_CUTOFF, rng);
        let scale = noise.max_abs().max(f64::MIN_POSITIVE);
        let strength = rng.gen_range(0.0..1.0);
        let top = f.max_abs();
        f.map_indexed(|v, i| {
            let shape = match p.at(i) {
                _ if v == 0.0 => 0.0,
                Exponent::Finite(pe) => (v.abs() / top).powf(pe - 1.0),
                Exponent::Infinity => v.abs() / top,
            };
            shape * (1.0 + strength * noise.values()[i] / scale)
        })
    })
}

/// Largest pairing of `(f_j)` against rescaled random candidates and the
/// split witnesses; deterministic in `seed`, one stream per trial.
pub fn random_dual_search(
    fs: &FieldSequence,
    p: &ExponentField,
    q: &ExponentField,
    trials: usize,
    seed: u64,
) -> Result<DualSearch> {
    if trials == 0 {
        return Err(Error::Empty);
    }
    let k = mixed_norm(fs, p, q)?;
    if fs.is_zero() {
        return Ok(DualSearch {
            best: 0.0,
            k,
            pairings: alloc::vec![0.0; trials],
            witnesses: Vec::new(),
            within_bound: true,
        });
    }
    let p_dual = conjugate(p);
    let q_dual = conjugate(q);
    let mut pairings = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let gs = random_candidate(fs, p, &mut rng);
        pairings.push(unit_pairing(fs, &gs, &p_dual, &q_dual)?.unwrap_or(0.0));
    }
    let mut witnesses = Vec::new();
    for hs in split_witnesses(fs, p, q, SEARCH_EPS)? {
        if let Some(v) = unit_pairing(fs, &hs, &p_dual, &q_dual)? {
            witnesses.push(v);
        }
    }
    let best = pairings
        .iter()
        .chain(&witnesses)
        .copied()
        .fold(0.0, f64::max);
    let within_bound = pairings
        .iter()
        .chain(&witnesses)
        .all(|&v| v <= C_HOLDER * k);
    Ok(DualSearch {
        best,
        k,
        pairings,
        witnesses,
        within_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormConjugateReport {
    pub norm: f64,
    /// Best pairing against the unit ball of `L^{p′(·)}`.
    pub best: f64,
    /// `best / norm`, with `0/0 = 1`.
    pub ratio: f64,
    pub passed: bool,
}

/// `‖f‖_{p(·)} ≈ sup_{‖g‖_{p′(·)} ≤ 1} ∫|f||g|`, asserted within a factor 2.
pub fn verify_norm_conjugate(
    f: &Field,
    p: &ExponentField,
    trials: usize,
    seed: u64,
) -> Result<NormConjugateReport> {
    let one = ExponentField::constant(*f.grid(), Exponent::Finite(1.0))?;
    let search = random_dual_search(&FieldSequence::single(f.clone()), p, &one, trials, seed)?;
    let norm = search.k;
    let ratio = if norm == 0.0 { 1.0 } else { search.best / norm };
    Ok(NormConjugateReport {
        norm,
        best: search.best,
        ratio,
        passed: (0.5..=2.0).contains(&ratio),
    })
}
