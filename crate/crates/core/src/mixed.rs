//! The mixed Lebesgue-sequence space `ℓ^{q(·)}(L^{p(·)})`.
//!
//! The modular is `Σ_j inf{λ_j > 0 : ρ_p(f_j / λ_j^{1/q(·)}) ≤ 1}` with
//! `λ^{1/∞} = 1`, and the norm is the gauge of its unit ball. An empty
//! constraint set has infimum `+∞`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponents::{harmonic_sum, ExponentField};
use crate::ext::{Exponent, Extended};
use crate::grid::{Field, Grid};
use crate::lebesgue::{luxemburg_norm, ModularKernel, LOG_TOL};
use crate::solve::{threshold, Threshold};

/// Constant asserted for every Hölder-type inequality in this crate.
pub const C_HOLDER: f64 = 8.0;

/// A finite dyadic-indexed sequence `(f_j)_{j=0..J}` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSequence {
    entries: Vec<Field>,
}

impl FieldSequence {
    pub fn new(entries: Vec<Field>) -> Result<FieldSequence> {
        let first = entries.first().ok_or(Error::Empty)?;
        for f in &entries[1..] {
            first.grid().check_same(f.grid())?;
        }
        Ok(FieldSequence { entries })
    }

    pub fn single(f: Field) -> FieldSequence {
        FieldSequence {
            entries: alloc::vec![f],
        }
    }

    pub fn zeros(grid: Grid, levels: usize) -> FieldSequence {
        FieldSequence {
            entries: alloc::vec![Field::zeros(grid); levels.max(1)],
        }
    }

    pub fn grid(&self) -> &Grid {
        self.entries[0].grid()
    }

    /// Number of levels, `J + 1`.
    pub fn levels(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Field] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> &Field {
        &self.entries[j]
    }

    pub fn into_entries(self) -> Vec<Field> {
        self.entries
    }

    pub fn map(&self, mut f: impl FnMut(usize, &Field) -> Field) -> FieldSequence {
        FieldSequence {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(j, e)| f(j, e))
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> FieldSequence {
        self.map(|_, f| f.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(Field::max_abs).fold(0.0, f64::max)
    }

    /// Pointwise products `(f_j g_j)_j`.
    pub fn mul(&self, other: &FieldSequence) -> Result<FieldSequence> {
        self.check_levels(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldSequence { entries })
    }

    pub(crate) fn check_levels(&self, other: &FieldSequence) -> Result<()> {
        self.grid().check_same(other.grid())?;
        if self.levels() != other.levels() {
            return Err(Error::LevelMismatch {
                left: self.levels(),
                right: other.levels(),
            });
        }
        Ok(())
    }
}

fn check_exponents(grid: &Grid, p: &ExponentField, q: &ExponentField) -> Result<()> {
    grid.check_same(p.grid())?;
    grid.check_same(q.grid())
}

/// `inf{λ > 0 : ρ_p(f / λ^{1/q(·)}) ≤ 1}`; `∞` when no `λ` qualifies.
pub fn inner_lambda(f: &Field, p: &ExponentField, q: &ExponentField) -> Result<Extended> {
    check_exponents(f.grid(), p, q)?;
    let inv_q: Vec<f64> = q.values().iter().map(|v| v.recip()).collect();
    let kernel = ModularKernel::new(f, p, Some(&inv_q));
    Ok(kernel.threshold(0.0, 0.0).value())
}

/// `Σ_j ess-sup_x |f_j(x)|^{q(x)}` with `t^∞ = ∞·χ_{(1,∞]}(t)`, the modular
/// when `p ≡ ∞`.
pub fn sup_modular(fs: &FieldSequence, q: &ExponentField) -> Result<Extended> {
    fs.grid().check_same(q.grid())?;
    Ok(fs
        .entries
        .iter()
        .map(|f| {
            f.values()
                .iter()
                .zip(q.values())
                .map(|(&v, &e)| {
                    let t = v.abs();
                    match e {
                        _ if t == 0.0 => Extended::ZERO,
                        Exponent::Finite(q) => Extended::from_f64(t.powf(q)),
                        Exponent::Infinity if t <= 1.0 => Extended::ZERO,
                        Exponent::Infinity => Extended::Infinity,
                    }
                })
                .fold(Extended::ZERO, Extended::max)
        })
        .sum())
}

/// `ρ_{ℓ^{q(·)}(L^{p(·)})}((f_j))`; uses [`sup_modular`] when `p ≡ ∞`.
pub fn mixed_modular(fs: &FieldSequence, p: &ExponentField, q: &ExponentField) -> Result<Extended> {
    check_exponents(fs.grid(), p, q)?;
    if p.is_everywhere_infinite() {
        return sup_modular(fs, q);
    }
    fs.entries.iter().map(|f| inner_lambda(f, p, q)).sum()
}

/// Per-level kernels for repeated evaluation of the mixed modular at
/// `(f_j)/μ`, with warm-started inner searches.
struct MixedEvaluator {
    kernels: Vec<ModularKernel>,
    /// Effective `q` per level, `1 / mean(1/q)`, used to extrapolate warm
    /// starts.
    slopes: Vec<f64>,
    last: Vec<Option<(f64, f64)>>,
}

impl MixedEvaluator {
    fn new(fs: &FieldSequence, p: &ExponentField, q: &ExponentField) -> MixedEvaluator {
        let inv_q: Vec<f64> = q.values().iter().map(|v| v.recip()).collect();
        let mean_inv_q = inv_q.iter().sum::<f64>() / inv_q.len() as f64;
        let slope = 1.0 / mean_inv_q.max(1e-3);
        let kernels: Vec<ModularKernel> = fs
            .entries
            .iter()
            .map(|f| ModularKernel::new(f, p, Some(&inv_q)))
            .collect();
        let levels = kernels.len();
        MixedEvaluator {
            kernels,
            slopes: alloc::vec![slope; levels],
            last: alloc::vec![None; levels],
        }
    }

    /// Mixed modular of `(f_j) / e^{shift}`.
    fn eval(&mut self, shift: f64) -> Extended {
        let mut total = Extended::ZERO;
        for j in 0..self.kernels.len() {
            let kernel = &self.kernels[j];
            if kernel.is_zero() {
                continue;
            }
            let guess = match self.last[j] {
                Some((s, t)) => t - self.slopes[j] * (shift - s),
                None => self.slopes[j] * (kernel.max_log_abs() - shift),
            };
            let found = kernel.threshold(shift, guess);
            match found {
                Threshold::At(t) => {
                    self.last[j] = Some((shift, t));
                    total = total + Extended::from_f64(t.exp());
                }
                Threshold::Zero => {}
                Threshold::Never => return Extended::Infinity,
            }
        }
        total
    }
}

/// `‖(f_j)‖_{ℓ^{q(·)}(L^{p(·)})}`.
///
/// For `q ≡ ∞` this is `sup_j ‖f_j‖_{p(·)}`; otherwise the gauge of the
/// modular unit ball is located by a monotone threshold search in `ln μ`.
pub fn mixed_norm(fs: &FieldSequence, p: &ExponentField, q: &ExponentField) -> Result<f64> {
    check_exponents(fs.grid(), p, q)?;
    if q.is_everywhere_infinite() {
        return fs
            .entries
            .iter()
            .map(|f| luxemburg_norm(f, p))
            .try_fold(0.0, |m, n| n.map(|n| f64::max(m, n)));
    }
    if fs.is_zero() {
        return Ok(0.0);
    }
    if p.is_everywhere_infinite() {
        let found = threshold(
            |t| sup_modular(&fs.scale((-t).exp()), q).expect("grids checked"),
            fs.max_abs().ln(),
            LOG_TOL,
        );
        return Ok(found
            .value()
            .finite()
            .expect("mixed norm of a bounded sequence is finite"));
    }
    let mut evaluator = MixedEvaluator::new(fs, p, q);
    let found = threshold(|s| evaluator.eval(s), fs.max_abs().ln(), LOG_TOL);
    Ok(found
        .value()
        .finite()
        .expect("mixed norm of a bounded sequence is finite"))
}

/// Norms of the truncations `(χ_{A_n} f_j)_j` against the full norm.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    pub truncated: Vec<f64>,
    pub full: f64,
    pub non_decreasing: bool,
    /// `|max_n ‖(χ_{A_n} f_j)‖ − ‖(f_j)‖| / ‖(f_j)‖` (absolute when the norm is 0).
    pub sup_error: f64,
    pub passed: bool,
}

/// Tolerance for the monotone-limit comparison.
pub const MONOTONE_TOL: f64 = 1e-6;

/// Checks `sup_n ‖(χ_{A_n} f_j)‖ = ‖(f_j)‖` on nested masks whose last
/// element covers the grid.
pub fn check_monotone_limit(
    fs: &FieldSequence,
    masks: &[Vec<bool>],
    p: &ExponentField,
    q: &ExponentField,
) -> Result<MonotoneReport> {
    if masks.is_empty() {
        return Err(Error::Empty);
    }
    let len = fs.grid().len();
    for (index, mask) in masks.iter().enumerate() {
        if mask.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: mask.len(),
            });
        }
        if index > 0 && masks[index - 1].iter().zip(mask).any(|(&a, &b)| a && !b) {
            return Err(Error::MasksNotNested { index });
        }
    }
    if !masks[masks.len() - 1].iter().all(|&b| b) {
        return Err(Error::Precondition(
            "the last truncation mask must cover the grid",
        ));
    }

    let full = mixed_norm(fs, p, q)?;
    let truncated = masks
        .iter()
        .map(|mask| {
            let cut = fs.map(|_, f| f.map_indexed(|v, i| if mask[i] { v } else { 0.0 }));
            mixed_norm(&cut, p, q)
        })
        .collect::<Result<Vec<f64>>>()?;
    let slack = MONOTONE_TOL * full.max(f64::MIN_POSITIVE);
    let non_decreasing = truncated.windows(2).all(|w| w[1] >= w[0] - slack);
    let sup = truncated.iter().copied().fold(0.0, f64::max);
    let sup_error = if full > 0.0 {
        (sup - full).abs() / full
    } else {
        sup
    };
    Ok(MonotoneReport {
        non_decreasing,
        sup_error,
        passed: non_decreasing && sup_error <= MONOTONE_TOL,
        truncated,
        full,
    })
}

/// One Hölder-type comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityRatio {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, with `0/0 = 0`.
    pub ratio: f64,
}

impl InequalityRatio {
    pub fn new(lhs: f64, rhs: f64) -> InequalityRatio {
        let ratio = if lhs == 0.0 {
            0.0
        } else if rhs == 0.0 {
            f64::INFINITY
        } else {
            lhs / rhs
        };
        InequalityRatio { lhs, rhs, ratio }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    /// `‖f₀g₀‖_{p} ≤ C ‖f₀‖_{p₁} ‖g₀‖_{p₂}` with `1/p = 1/p₁ + 1/p₂`.
    pub scalar: InequalityRatio,
    /// `‖(f_j g_j)‖_{ℓ^q(L^p)} ≤ C ‖(f_j)‖_{ℓ^{q₁}(L^{p₁})} ‖(g_j)‖_{ℓ^{q₂}(L^{p₂})}`.
    pub general: InequalityRatio,
    /// `‖(f_j g_j)‖_{ℓ^{q₂}(L^p)} ≤ C sup_k ‖f_k‖_{p₁} ‖(g_j)‖_{ℓ^{q₂}(L^{p₂})}`.
    pub sup_form: InequalityRatio,
    pub max_ratio: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Evaluates the three Hölder inequalities and compares them with
/// [`C_HOLDER`].
pub fn check_holder(
    fs: &FieldSequence,
    gs: &FieldSequence,
    p1: &ExponentField,
    p2: &ExponentField,
    q1: &ExponentField,
    q2: &ExponentField,
) -> Result<HolderReport> {
    fs.check_levels(gs)?;
    let p = harmonic_sum(p1, p2)?;
    let q = harmonic_sum(q1, q2)?;
    let products = fs.mul(gs)?;

    let scalar = InequalityRatio::new(
        luxemburg_norm(products.get(0), &p)?,
        luxemburg_norm(fs.get(0), p1)? * luxemburg_norm(gs.get(0), p2)?,
    );
    let general = InequalityRatio::new(
        mixed_norm(&products, &p, &q)?,
        mixed_norm(fs, p1, q1)? * mixed_norm(gs, p2, q2)?,
    );
    let sup_f = fs
        .entries()
        .iter()
        .map(|f| luxemburg_norm(f, p1))
        .try_fold(0.0, |m, n| n.map(|n| f64::max(m, n)))?;
    let sup_form = InequalityRatio::new(
        mixed_norm(&products, &p, q2)?,
        sup_f * mixed_norm(gs, p2, q2)?,
    );
    let max_ratio = scalar.ratio.max(general.ratio).max(sup_form.ratio);
    Ok(HolderReport {
        scalar,
        general,
        sup_form,
        max_ratio,
        bound: C_HOLDER,
        passed: max_ratio <= C_HOLDER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::Family;
    use crate::lebesgue::modular;

    fn grid() -> Grid {
        Grid::new(1, 512, 8.0).unwrap()
    }

    fn constant(g: Grid, p: f64) -> ExponentField {
        ExponentField::constant(g, Exponent::Finite(p)).unwrap()
    }

    fn infinite(g: Grid) -> ExponentField {
        ExponentField::constant(g, Exponent::Infinity).unwrap()
    }

    fn bump(g: Grid, center: f64, width: f64, height: f64) -> Field {
        Field::from_fn(g, |x| {
            let y = (x[0] - center) / width;
            height * (-y * y).exp()
        })
    }

    fn sequence(g: Grid) -> FieldSequence {
        FieldSequence::new(
            (0..4)
                .map(|j| {
                    bump(
                        g,
                        j as f64 - 1.5,
                        0.5 + 0.3 * j as f64,
                        1.0 / (1.0 + j as f64),
                    )
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inner_lambda_examples() {
        let g = grid();
        let f = bump(g, 0.0, 1.0, 2.0);
        let (p, q) = (constant(g, 3.0), constant(g, 2.0));
        assert_eq!(
            inner_lambda(&Field::zeros(g), &p, &q).unwrap(),
            Extended::ZERO
        );
        let lam = inner_lambda(&f, &p, &q).unwrap().finite().unwrap();
        let expect = luxemburg_norm(&f, &p).unwrap().powi(2);
        assert!((lam - expect).abs() <= 1e-10 * expect);

        let small = bump(g, 0.0, 0.3, 0.5);
        assert!(modular(&small, &p).unwrap().le(1.0));
        assert_eq!(
            inner_lambda(&small, &p, &infinite(g)).unwrap(),
            Extended::ZERO
        );
        let big = bump(g, 0.0, 1.0, 3.0);
        assert!(!modular(&big, &p).unwrap().le(1.0));
        assert_eq!(
            inner_lambda(&big, &p, &infinite(g)).unwrap(),
            Extended::Infinity
        );
    }

    #[test]
    fn sup_modular_example() {
        let g = grid();
        let fs = FieldSequence::single(bump(g, 0.0, 1.0, 0.5));
        let v = mixed_modular(&fs, &infinite(g), &constant(g, 2.0)).unwrap();
        assert!((v.finite().unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sup_modular_agrees_with_inner_lambda() {
        let g = grid();
        let fs = sequence(g);
        let q = ExponentField::from_family(g, &Family::LogHolder { a: 1.5, b: 1.0 }).unwrap();
        let via_sup = sup_modular(&fs, &q).unwrap().finite().unwrap();
        let via_inner: Extended = fs
            .entries()
            .iter()
            .map(|f| inner_lambda(f, &infinite(g), &q).unwrap())
            .sum();
        let via_inner = via_inner.finite().unwrap();
        assert!((via_sup - via_inner).abs() <= 1e-8 * via_sup);
    }

    #[test]
    fn constant_exponents_reduce_to_classical() {
        let g = grid();
        let fs = sequence(g);
        let (p0, q0) = (2.5, 1.5);
        let expect = fs
            .entries()
            .iter()
            .map(|f| luxemburg_norm(f, &constant(g, p0)).unwrap().powf(q0))
            .sum::<f64>()
            .powf(1.0 / q0);
        let got = mixed_norm(&fs, &constant(g, p0), &constant(g, q0)).unwrap();
        assert!((got - expect).abs() <= 1e-9 * expect);
    }

    #[test]
    fn single_level_collapses_to_luxemburg() {
        let g = grid();
        let f = bump(g, 0.5, 1.2, 1.7);
        let p = ExponentField::from_family(g, &Family::Oscillation { a: 1.2, b: 2.0 }).unwrap();
        let expect = luxemburg_norm(&f, &p).unwrap();
        let got = mixed_norm(&FieldSequence::single(f), &p, &constant(g, 3.0)).unwrap();
        assert!((got - expect).abs() <= 1e-9 * expect);
    }

    #[test]
    fn q_infinite_is_sup_of_norms() {
        let g = grid();
        let fs = sequence(g);
        let p = constant(g, 2.0);
        let expect = fs
            .entries()
            .iter()
            .map(|f| luxemburg_norm(f, &p).unwrap())
            .fold(0.0, f64::max);
        assert_eq!(mixed_norm(&fs, &p, &infinite(g)).unwrap(), expect);
        assert_eq!(
            mixed_norm(&FieldSequence::zeros(g, 3), &p, &constant(g, 2.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn p_infinite_norm_matches_classical() {
        let g = grid();
        let fs = sequence(g);
        let q0 = 2.0;
        let expect = fs
            .entries()
            .iter()
            .map(|f| f.max_abs().powf(q0))
            .sum::<f64>()
            .powf(1.0 / q0);
        let got = mixed_norm(&fs, &infinite(g), &constant(g, q0)).unwrap();
        assert!((got - expect).abs() <= 1e-9 * expect);
    }

    #[test]
    fn variable_q_norm_sits_on_the_modular_unit_sphere() {
        let g = grid();
        let fs = sequence(g);
        let p = ExponentField::from_family(g, &Family::LogHolder { a: 1.5, b: 2.0 }).unwrap();
        let q = ExponentField::from_family(g, &Family::Oscillation { a: 1.2, b: 1.5 }).unwrap();
        let n = mixed_norm(&fs, &p, &q).unwrap();
        let at = mixed_modular(&fs.scale(1.0 / n), &p, &q)
            .unwrap()
            .finite()
            .unwrap();
        assert!((at - 1.0).abs() < 1e-9, "modular at the norm: {at}");
    }

    #[test]
    fn monotone_limit_on_nested_boxes() {
        let g = grid();
        let fs = sequence(g);
        let (p, q) = (constant(g, 2.0), constant(g, 1.5));
        let masks: Vec<Vec<bool>> = [1.0, 2.0, 4.0, 8.0, 9.0]
            .iter()
            .map(|&r| (0..g.len()).map(|i| g.radius(i) < r).collect())
            .collect();
        let report = check_monotone_limit(&fs, &masks, &p, &q).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.truncated.windows(2).all(|w| w[0] <= w[1] + 1e-12));

        let full = alloc::vec![alloc::vec![true; g.len()]; 3];
        let report = check_monotone_limit(&fs, &full, &p, &q).unwrap();
        assert!(report.truncated.iter().all(|&n| n == report.full));

        let zero = FieldSequence::zeros(g, 2);
        let report = check_monotone_limit(&zero, &masks, &p, &q).unwrap();
        assert!(report.truncated.iter().all(|&n| n == 0.0) && report.passed);

        let mut bad = masks.clone();
        bad.swap(0, 1);
        assert_eq!(
            check_monotone_limit(&fs, &bad, &p, &q).unwrap_err(),
            Error::MasksNotNested { index: 1 }
        );
    }

    #[test]
    fn holder_examples() {
        let g = grid();
        let fs = sequence(g);
        let ones = FieldSequence::new(alloc::vec![Field::constant(g, 1.0); fs.levels()]).unwrap();
        let p1 = ExponentField::from_family(g, &Family::LogHolder { a: 2.0, b: 1.0 }).unwrap();
        let q1 = constant(g, 2.0);
        let r = check_holder(&fs, &ones, &p1, &infinite(g), &q1, &infinite(g)).unwrap();
        // g ≡ 1 with q₂ = ∞: the sup form is an identity.
        assert!(r.sup_form.ratio <= 1.0 + 1e-6, "{r:?}");
        assert!(r.passed);

        let left = FieldSequence::single(Field::indicator(g, |x| x[0] < 0.0));
        let right = FieldSequence::single(Field::indicator(g, |x| x[0] >= 0.0));
        let two = constant(g, 2.0);
        let r = check_holder(&left, &right, &two, &two, &two, &two).unwrap();
        assert_eq!(r.general.lhs, 0.0);
        assert_eq!(r.max_ratio, 0.0);
    }
}
