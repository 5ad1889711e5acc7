//! Variable exponents `p(·), q(·)` with values in `[1, ∞]`, real-valued
//! smoothness fields `s(·)`, and their empirical log-Hölder constants.

use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::ext::{Exponent, Extended};
use crate::grid::{Field, Grid};

/// Built-in exponent families.
///
/// Step fields split along the first coordinate. The radial families use
/// `|x|`; the oscillation averages `(1 + cos(πx_k/L))/2` over the axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Constant(Extended),
    /// `left` for `x₀ < at`, `right` otherwise.
    Step {
        left: Extended,
        right: Extended,
        at: f64,
    },
    /// `a + b / log(e + |x|)`.
    LogHolder {
        a: f64,
        b: f64,
    },
    /// `a + b·(1 + cos(πx/L))/2`.
    Oscillation {
        a: f64,
        b: f64,
    },
}

impl Family {
    fn sample(&self, grid: &Grid, node: usize) -> Extended {
        let x = grid.point(node);
        match *self {
            Family::Constant(c) => c,
            Family::Step { left, right, at } => {
                if x[0] < at {
                    left
                } else {
                    right
                }
            }
            Family::LogHolder { a, b } => Extended::Finite(a + b / (E + grid.radius(node)).ln()),
            Family::Oscillation { a, b } => {
                let l = grid.half_width();
                let bump: f64 = (0..grid.dim())
                    .map(|k| (1.0 + (PI * x[k] / l).cos()) / 2.0)
                    .sum::<f64>()
                    / grid.dim() as f64;
                Extended::Finite(a + b * bump)
            }
        }
    }

    /// The limit of the family as `|x| → ∞`, where it has one.
    pub fn limit(&self) -> Option<f64> {
        match *self {
            Family::Constant(Extended::Finite(c)) => Some(c),
            Family::LogHolder { a, .. } => Some(a),
            _ => None,
        }
    }
}

/// A sampled exponent `p: ℝⁿ → [1, ∞]` with cached essential bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentField {
    grid: Grid,
    values: Vec<Exponent>,
    minus: f64,
    plus: Exponent,
}

impl ExponentField {
    pub fn new(grid: Grid, values: Vec<Exponent>) -> Result<ExponentField> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        for v in &values {
            if let Exponent::Finite(p) = v {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::InvalidExponent("values must lie in [1, ∞]"));
                }
            }
        }
        let minus = values
            .iter()
            .fold(Exponent::Infinity, |m, &v| m.min(v))
            .finite()
            .unwrap_or(f64::INFINITY);
        let plus = values.iter().fold(Exponent::Finite(1.0), |m, &v| m.max(v));
        Ok(ExponentField {
            grid,
            values,
            minus,
            plus,
        })
    }

    pub fn constant(grid: Grid, p: Exponent) -> Result<ExponentField> {
        ExponentField::new(grid, alloc::vec![p; grid.len()])
    }

    /// Samples a family. Oscillating families are clamped to `≥ 1`.
    pub fn from_family(grid: Grid, family: &Family) -> Result<ExponentField> {
        let values = (0..grid.len())
            .map(|i| match family.sample(&grid, i) {
                Extended::Infinity => Exponent::Infinity,
                Extended::Finite(v) => match family {
                    Family::Oscillation { .. } => Exponent::Finite(v.max(1.0)),
                    _ => Exponent::Finite(v),
                },
            })
            .collect();
        ExponentField::new(grid, values)
    }

    /// Builds `p` from `1/p` samples (`0 ↦ ∞`).
    pub fn from_reciprocals(grid: Grid, recips: &[f64]) -> Result<ExponentField> {
        if recips.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(Error::InvalidExponent("reciprocal outside [0, 1]"));
        }
        ExponentField::new(
            grid,
            recips.iter().map(|&r| Exponent::from_recip(r)).collect(),
        )
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Exponent] {
        &self.values
    }

    pub fn at(&self, node: usize) -> Exponent {
        self.values[node]
    }

    /// `p⁻`, the minimum over the samples.
    pub fn minus(&self) -> f64 {
        self.minus
    }

    /// `p⁺`, the maximum over the samples.
    pub fn plus(&self) -> Exponent {
        self.plus
    }

    /// `g_∞` proxy: the sample at the corner node `(-L, …, -L)`.
    pub fn value_at_infinity(&self) -> Exponent {
        self.values[0]
    }

    /// Whether every sample is finite (`p⁺ < ∞`).
    pub fn is_bounded(&self) -> bool {
        !self.plus.is_infinite()
    }

    pub fn is_everywhere_infinite(&self) -> bool {
        self.values.iter().all(|v| v.is_infinite())
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// The pointwise reciprocal `1/p` as a real field.
    pub fn reciprocal(&self) -> SmoothnessField {
        let values = self.values.iter().map(|v| v.recip()).collect();
        SmoothnessField::new(self.grid, values).expect("reciprocals are finite")
    }

    /// The field as a real-valued function, if `p⁺ < ∞`.
    pub fn to_real(&self) -> Option<SmoothnessField> {
        let values: Option<Vec<f64>> = self.values.iter().map(|v| v.finite()).collect();
        values.map(|v| SmoothnessField::new(self.grid, v).expect("finite samples"))
    }

    /// Restriction `χ_A p + c χ_{ℝⁿ∖A}`.
    pub fn with_outside(&self, mask: &[bool], outside: Exponent) -> Result<ExponentField> {
        let values = self
            .values
            .iter()
            .zip(mask)
            .map(|(&v, &inside)| if inside { v } else { outside })
            .collect();
        ExponentField::new(self.grid, values)
    }
}

/// `p′` with `1/p + 1/p′ = 1` and the conventions `1′ = ∞`, `∞′ = 1`.
pub fn conjugate(p: &ExponentField) -> ExponentField {
    let values = p.values.iter().map(|v| v.conjugate()).collect();
    ExponentField::new(p.grid, values).expect("conjugates stay in [1, ∞]")
}

/// The exponent `p` with `1/p = 1/p₁ + 1/p₂`.
pub fn harmonic_sum(p1: &ExponentField, p2: &ExponentField) -> Result<ExponentField> {
    p1.grid.check_same(&p2.grid)?;
    let recips: Vec<f64> = p1
        .values
        .iter()
        .zip(&p2.values)
        .map(|(a, b)| a.recip() + b.recip())
        .collect();
    if recips.iter().any(|&r| r > 1.0 + 1e-15) {
        return Err(Error::InvalidExponent("1/p₁ + 1/p₂ exceeds 1"));
    }
    let recips: Vec<f64> = recips.into_iter().map(|r| r.min(1.0)).collect();
    ExponentField::from_reciprocals(p1.grid, &recips)
}

/// A sampled real-valued field such as the smoothness `s(·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessField {
    grid: Grid,
    values: Vec<f64>,
    minus: f64,
    plus: f64,
    at_infinity: Option<f64>,
}

impl SmoothnessField {
    /// Wraps finite samples; `g_∞` defaults to the corner sample.
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<SmoothnessField> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let minus = values.iter().copied().fold(f64::INFINITY, f64::min);
        let plus = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let at_infinity = Some(values[0]);
        Ok(SmoothnessField {
            grid,
            values,
            minus,
            plus,
            at_infinity,
        })
    }

    pub fn constant(grid: Grid, s: f64) -> Result<SmoothnessField> {
        SmoothnessField::new(grid, alloc::vec![s; grid.len()])
    }

    /// Samples a family; `g_∞` is the family limit when it has one.
    pub fn from_family(grid: Grid, family: &Family) -> Result<SmoothnessField> {
        let values: Option<Vec<f64>> = (0..grid.len())
            .map(|i| family.sample(&grid, i).finite())
            .collect();
        let values = values.ok_or(Error::InvalidExponent("smoothness must be finite"))?;
        let mut field = SmoothnessField::new(grid, values)?;
        if let Some(limit) = family.limit() {
            field.at_infinity = Some(limit);
        }
        Ok(field)
    }

    pub fn from_field(f: &Field) -> SmoothnessField {
        SmoothnessField::new(*f.grid(), f.values().to_vec()).expect("fields are finite")
    }

    /// Replaces `g_∞`; `None` removes it.
    pub fn with_value_at_infinity(mut self, value: Option<f64>) -> SmoothnessField {
        self.at_infinity = value;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn minus(&self) -> f64 {
        self.minus
    }

    pub fn plus(&self) -> f64 {
        self.plus
    }

    pub fn value_at_infinity(&self) -> Option<f64> {
        self.at_infinity
    }

    pub fn shifted(&self, c: f64) -> SmoothnessField {
        SmoothnessField {
            grid: self.grid,
            values: self.values.iter().map(|v| v + c).collect(),
            minus: self.minus + c,
            plus: self.plus + c,
            at_infinity: self.at_infinity.map(|v| v + c),
        }
    }

    pub fn add(&self, other: &SmoothnessField) -> Result<SmoothnessField> {
        self.grid.check_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        let at_infinity = self.at_infinity.zip(other.at_infinity).map(|(a, b)| a + b);
        Ok(SmoothnessField::new(self.grid, values)?.with_value_at_infinity(at_infinity))
    }

    pub fn sub(&self, other: &SmoothnessField) -> Result<SmoothnessField> {
        self.grid.check_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        let at_infinity = self.at_infinity.zip(other.at_infinity).map(|(a, b)| a - b);
        Ok(SmoothnessField::new(self.grid, values)?.with_value_at_infinity(at_infinity))
    }
}

/// Empirical log-Hölder constants of a real field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogHolder {
    /// `max |g(x) − g(y)| · log(e + 1/|x − y|)` over sampled pairs.
    pub local: f64,
    /// `max |g(x) − g_∞| · log(e + |x|)` over nodes.
    pub decay: f64,
}

/// Node budget for the all-pairs scan; larger grids are strided and
/// supplemented with every nearest-neighbour pair.
const PAIR_SCAN_NODES: usize = 4096;

/// Local constant `c_log(g)` over a deterministic pair set.
pub fn local_log_holder(g: &SmoothnessField) -> f64 {
    let grid = g.grid;
    let v = &g.values;
    let stride = grid.len().div_ceil(PAIR_SCAN_NODES);
    let nodes: Vec<usize> = (0..grid.len()).step_by(stride).collect();
    let mut best = 0.0f64;
    for (ia, &a) in nodes.iter().enumerate() {
        for &b in &nodes[ia + 1..] {
            let diff = (v[a] - v[b]).abs();
            if diff > 0.0 {
                best = best.max(diff * (E + 1.0 / grid.distance(a, b)).ln());
            }
        }
    }
    if stride > 1 {
        let n = grid.points_per_axis();
        let neighbour_weight = (E + 1.0 / grid.spacing()).ln();
        for a in 0..grid.len() {
            let mut neighbours = [a - a % n + (a % n + 1) % n, (a + n) % grid.len()];
            if grid.dim() == 1 {
                neighbours[1] = neighbours[0];
            }
            for b in neighbours {
                best = best.max((v[a] - v[b]).abs() * neighbour_weight);
            }
        }
    }
    best
}

/// Decay constant against the stored `g_∞`.
pub fn decay_log_holder(g: &SmoothnessField) -> Result<f64> {
    let limit = g.at_infinity.ok_or(Error::MissingValueAtInfinity)?;
    Ok((0..g.grid.len())
        .map(|i| (g.values[i] - limit).abs() * (E + g.grid.radius(i)).ln())
        .fold(0.0, f64::max))
}

pub fn log_holder_constants(g: &SmoothnessField) -> Result<LogHolder> {
    Ok(LogHolder {
        local: local_log_holder(g),
        decay: decay_log_holder(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid1(n: usize, l: f64) -> Grid {
        Grid::new(1, n, l).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        let g = grid1(16, 1.0);
        for (p, q) in [
            (Exponent::Finite(2.0), Exponent::Finite(2.0)),
            (Exponent::Finite(1.0), Exponent::Infinity),
            (Exponent::Finite(4.0), Exponent::Finite(4.0 / 3.0)),
            (Exponent::Infinity, Exponent::Finite(1.0)),
        ] {
            let c = conjugate(&ExponentField::constant(g, p).unwrap());
            assert!(c.values().iter().all(|&v| v == q));
            assert_eq!(conjugate(&c).values()[0], p);
        }
    }

    #[test]
    fn bounds_are_cached() {
        let g = grid1(64, 4.0);
        let p = ExponentField::from_family(
            g,
            &Family::Step {
                left: Extended::Finite(1.5),
                right: Extended::Infinity,
                at: 0.0,
            },
        )
        .unwrap();
        assert_eq!(p.minus(), 1.5);
        assert_eq!(p.plus(), Exponent::Infinity);
        assert!(!p.is_bounded());
        assert!(ExponentField::constant(g, Exponent::Finite(0.5)).is_err());
    }

    #[test]
    fn harmonic_sum_checks_range() {
        let g = grid1(8, 1.0);
        let four = ExponentField::constant(g, Exponent::Finite(4.0)).unwrap();
        let p = harmonic_sum(&four, &four).unwrap();
        assert_eq!(p.values()[0], Exponent::Finite(2.0));
        let one = ExponentField::constant(g, Exponent::Finite(1.0)).unwrap();
        assert!(harmonic_sum(&one, &four).is_err());
        let inf = ExponentField::constant(g, Exponent::Infinity).unwrap();
        assert_eq!(
            harmonic_sum(&inf, &inf).unwrap().values()[0],
            Exponent::Infinity
        );
    }

    #[test]
    fn constant_field_has_zero_constants() {
        let g = grid1(128, 4.0);
        let s = SmoothnessField::constant(g, 2.5).unwrap();
        let c = log_holder_constants(&s).unwrap();
        assert_eq!((c.local, c.decay), (0.0, 0.0));
    }

    #[test]
    fn local_constant_matches_brute_force() {
        let g = grid1(512, 16.0);
        let s = SmoothnessField::new(
            g,
            (0..g.len()).map(|i| 2.0 + g.radius(i).min(1.0)).collect(),
        )
        .unwrap();
        let mut brute = 0.0f64;
        for a in 0..g.len() {
            for b in 0..g.len() {
                if a != b {
                    let xa = g.coordinate(a, 0);
                    let xb = g.coordinate(b, 0);
                    let d = (xa - xb).abs().min(32.0 - (xa - xb).abs());
                    let diff = (s.values()[a] - s.values()[b]).abs();
                    brute = brute.max(diff * (E + 1.0 / d).ln());
                }
            }
        }
        let c = local_log_holder(&s);
        assert!(c > 0.0 && c.is_finite());
        assert!((c - brute).abs() <= 1e-12 * brute);
    }

    #[test]
    fn decay_constant_of_log_family_is_bounded_by_b() {
        let g = grid1(4096, 16.0);
        let s = SmoothnessField::from_family(g, &Family::LogHolder { a: 3.0, b: 1.0 }).unwrap();
        assert_eq!(s.value_at_infinity(), Some(3.0));
        assert!(decay_log_holder(&s).unwrap() <= 1.0 + 1e-12);
        let no_limit = s.with_value_at_infinity(None);
        assert_eq!(
            decay_log_holder(&no_limit),
            Err(Error::MissingValueAtInfinity)
        );
    }

    #[test]
    fn strided_scan_on_large_grids() {
        let g = Grid::new(2, 128, 4.0).unwrap();
        let s = SmoothnessField::from_family(g, &Family::Oscillation { a: 1.0, b: 1.0 }).unwrap();
        let c = local_log_holder(&s);
        assert!(c > 0.0 && c.is_finite());
    }

    proptest! {
        #[test]
        fn local_constant_ignores_shifts(a in 1.0f64..4.0, b in 0.1f64..3.0, shift in -5.0f64..5.0) {
            let g = grid1(256, 8.0);
            let s = SmoothnessField::from_family(g, &Family::LogHolder { a, b }).unwrap();
            let c0 = local_log_holder(&s);
            let c1 = local_log_holder(&s.shifted(shift));
            prop_assert!((c0 - c1).abs() <= 1e-9 * c0.max(1.0));
        }

        #[test]
        fn conjugates_sum_to_one(p in 1.0f64..50.0) {
            let q = Exponent::Finite(p).conjugate();
            prop_assert!((1.0 / p + q.recip() - 1.0).abs() < 1e-14);
            let back = q.conjugate().finite().unwrap();
            prop_assert!((back - p).abs() <= 1e-12 * p);
        }
    }
}
