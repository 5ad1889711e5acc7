//! The variable-exponent modular `ρ_{p(·)}` and the Luxemburg norm.

use alloc::vec::Vec;

use crate::error::Result;
use crate::exponents::ExponentField;
use crate::ext::{Exponent, Extended};
use crate::grid::Field;
use crate::solve::{threshold, Threshold};

/// Tolerance of every threshold search, in `ln λ`.
pub(crate) const LOG_TOL: f64 = 1e-12;

/// `ω_p(t)`: `t^p` for finite `p`; for `p = ∞`, `0` on `[0, 1]` and `∞`
/// beyond (so `1^∞ = 0`).
pub fn omega(t: f64, p: Exponent) -> Extended {
    debug_assert!(t >= 0.0);
    if t == 0.0 {
        return Extended::ZERO;
    }
    match p {
        Exponent::Finite(p) => Extended::from_f64(t.powf(p)),
        Exponent::Infinity => {
            if t <= 1.0 {
                Extended::ZERO
            } else {
                Extended::Infinity
            }
        }
    }
}

/// `ρ_{p(·)}(f) = ∫ ω_{p(x)}(|f(x)|) dx` by quadrature.
pub fn modular(f: &Field, p: &ExponentField) -> Result<Extended> {
    f.grid().check_same(p.grid())?;
    let sum: Extended = f
        .values()
        .iter()
        .zip(p.values())
        .map(|(&v, &e)| omega(v.abs(), e))
        .sum();
    Ok(match sum {
        Extended::Finite(s) => Extended::from_f64(s * f.grid().cell_volume()),
        Extended::Infinity => Extended::Infinity,
    })
}

/// Nonzero samples of `|f|` in logarithmic form, ready for repeated
/// evaluation of `ρ_p(f / (μ λ^{1/q(·)}))`.
#[derive(Debug, Clone)]
pub(crate) struct ModularKernel {
    log_abs: Vec<f64>,
    exponent: Vec<Exponent>,
    /// `1/q(x)` per retained node; `None` means `q ≡ 1`.
    inv_q: Option<Vec<f64>>,
    weight: f64,
    finite: bool,
}

/// Iteration cap of the Newton search before it hands over to
/// [`threshold`].
const NEWTON_STEPS: usize = 60;

impl ModularKernel {
    pub(crate) fn new(f: &Field, p: &ExponentField, inv_q: Option<&[f64]>) -> ModularKernel {
        let mut log_abs = Vec::new();
        let mut exponent = Vec::new();
        let mut iq = Vec::new();
        for (i, &v) in f.values().iter().enumerate() {
            if v != 0.0 {
                log_abs.push(v.abs().ln());
                exponent.push(p.at(i));
                if let Some(r) = inv_q {
                    iq.push(r[i]);
                }
            }
        }
        ModularKernel {
            finite: exponent.iter().all(|e| !e.is_infinite()),
            log_abs,
            exponent,
            inv_q: inv_q.map(|_| iq),
            weight: f.grid().cell_volume(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.log_abs.is_empty()
    }

    pub(crate) fn max_log_abs(&self) -> f64 {
        self.log_abs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `ρ_p(f / (e^{shift} · e^{t/q(·)}))`.
    pub(crate) fn eval(&self, shift: f64, t: f64) -> Extended {
        let mut acc = 0.0;
        for (k, (&la, &p)) in self.log_abs.iter().zip(&self.exponent).enumerate() {
            let scale = match &self.inv_q {
                Some(r) => t * r[k],
                None => t,
            };
            let a = la - shift - scale;
            match p {
                Exponent::Finite(p) => acc += (p * a).exp(),
                Exponent::Infinity => {
                    if a > 0.0 {
                        return Extended::Infinity;
                    }
                }
            }
        }
        Extended::from_f64(acc * self.weight)
    }

    /// `ρ` and `∂ρ/∂t` at `(shift, t)`; every exponent must be finite.
    fn eval_with_slope(&self, shift: f64, t: f64) -> (f64, f64) {
        let mut acc = 0.0;
        let mut slope = 0.0;
        for (k, (&la, &p)) in self.log_abs.iter().zip(&self.exponent).enumerate() {
            let r = self.inv_q.as_ref().map_or(1.0, |r| r[k]);
            let p = p.finite().unwrap_or(f64::INFINITY);
            let term = (p * (la - shift - t * r)).exp();
            acc += term;
            slope -= p * r * term;
        }
        (acc * self.weight, slope * self.weight)
    }

    /// Newton's method on `ln ρ`, which is convex in `t` (a log-sum-exp of
    /// affine maps), so iterates settle monotonically after at most one
    /// overshoot. `None` when the iteration leaves the representable range
    /// or `ρ` does not depend on `t`.
    fn newton(&self, shift: f64, guess: f64) -> Option<f64> {
        if !self.finite {
            return None;
        }
        let mut t = guess;
        for _ in 0..NEWTON_STEPS {
            let (rho, d_rho) = self.eval_with_slope(shift, t);
            if !(rho > 0.0 && rho.is_finite() && d_rho < 0.0 && d_rho.is_finite()) {
                return None;
            }
            let step = rho.ln() * rho / d_rho;
            t -= step;
            if step.abs() <= LOG_TOL {
                return Some(t);
            }
        }
        None
    }

    /// `inf{λ > 0 : ρ_p(f / (e^{shift} λ^{1/q(·)})) ≤ 1}`.
    pub(crate) fn threshold(&self, shift: f64, guess: f64) -> Threshold {
        if self.is_zero() {
            return Threshold::Zero;
        }
        if let Some(t) = self.newton(shift, guess) {
            return Threshold::At(t);
        }
        threshold(|t| self.eval(shift, t), guess, LOG_TOL)
    }
}

/// `‖f‖_{p(·)} = inf{λ > 0 : ρ_{p(·)}(f/λ) ≤ 1}`.
///
/// The norm is finite for every sampled field since `f` is bounded and the
/// box has finite measure.
pub fn luxemburg_norm(f: &Field, p: &ExponentField) -> Result<f64> {
    f.grid().check_same(p.grid())?;
    let kernel = ModularKernel::new(f, p, None);
    if kernel.is_zero() {
        return Ok(0.0);
    }
    let value = kernel.threshold(0.0, kernel.max_log_abs()).value();
    Ok(value
        .finite()
        .expect("Luxemburg norm of a bounded field is finite"))
}
