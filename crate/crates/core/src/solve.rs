//! Infimum of the sub-level set of a non-increasing extended-real map.
//!
//! All Luxemburg-type quantities reduce to
//! `inf{λ > 0 : F(λ) ≤ 1}` with `F` non-increasing. The search works in
//! `t = ln λ`: it brackets the threshold by geometric expansion, then
//! shrinks the bracket. Interpolation on `ln F` is tried first (exact in one
//! step when `F` is a power of `λ`); bisection takes over whenever `F` is
//! infinite or zero at an endpoint, and on every third step.

use crate::ext::Extended;

/// Outcome of a threshold search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// `F(λ) ≤ 1` for every representable `λ > 0`.
    Zero,
    /// The infimum, as `ln λ`.
    At(f64),
    /// No `λ` satisfies the constraint (infimum of the empty set).
    Never,
}

impl Threshold {
    /// The infimum as a value of `λ`.
    pub fn value(self) -> Extended {
        match self {
            Threshold::Zero => Extended::ZERO,
            Threshold::At(t) => Extended::from_f64(t.exp()),
            Threshold::Never => Extended::Infinity,
        }
    }
}

/// Search window in `ln λ`; `e^{±700}` stays inside `f64`.
const LOG_LIMIT: f64 = 700.0;
const MAX_STEPS: usize = 200;

fn log_value(v: Extended) -> Option<f64> {
    match v {
        Extended::Finite(x) if x > 0.0 && x.is_finite() => Some(x.ln()),
        _ => None,
    }
}

/// Finds `inf{t : f(t) ≤ 1}` for non-increasing `f`, to absolute
/// tolerance `tol` in `t`.
pub fn threshold(mut f: impl FnMut(f64) -> Extended, guess: f64, tol: f64) -> Threshold {
    let guess = guess.clamp(-LOG_LIMIT, LOG_LIMIT);
    let start = f(guess);

    // `lo` always fails the constraint, `hi` always satisfies it.
    let (mut lo, mut f_lo, mut hi, mut f_hi);
    if start.le(1.0) {
        hi = guess;
        f_hi = start;
        let mut step = 1.0;
        loop {
            let t = hi - step;
            if t < -LOG_LIMIT {
                return Threshold::Zero;
            }
            let v = f(t);
            if v.le(1.0) {
                hi = t;
                f_hi = v;
                step *= 2.0;
            } else {
                lo = t;
                f_lo = v;
                break;
            }
        }
    } else {
        lo = guess;
        f_lo = start;
        let mut step = 1.0;
        loop {
            let t = lo + step;
            if t > LOG_LIMIT {
                return Threshold::Never;
            }
            let v = f(t);
            if v.le(1.0) {
                hi = t;
                f_hi = v;
                break;
            } else {
                lo = t;
                f_lo = v;
                step *= 2.0;
            }
        }
    }

    // Illinois-style regula falsi on ln f; every third step bisects.
    let mut weight_lo = 1.0;
    let mut weight_hi = 1.0;
    let mut last_side = 0i8;
    for step in 0..MAX_STEPS {
        if hi - lo <= tol {
            break;
        }
        let interpolated = match (log_value(f_lo), log_value(f_hi)) {
            (Some(a), Some(b)) if step % 3 != 2 => {
                let (a, b) = (a * weight_lo, b * weight_hi);
                if a > b {
                    let t = lo + (hi - lo) * a / (a - b);
                    (t > lo && t < hi).then_some(t)
                } else {
                    None
                }
            }
            _ => None,
        };
        let t = interpolated.unwrap_or(0.5 * (lo + hi));
        let v = f(t);
        if let Some(lv) = log_value(v) {
            if interpolated.is_some() && lv.abs() <= 1e-15 {
                return Threshold::At(t);
            }
        }
        if v.le(1.0) {
            hi = t;
            f_hi = v;
            weight_hi = 1.0;
            if last_side == 1 {
                weight_lo *= 0.5;
            }
            last_side = 1;
        } else {
            lo = t;
            f_lo = v;
            weight_lo = 1.0;
            if last_side == -1 {
                weight_hi *= 0.5;
            }
            last_side = -1;
        }
    }
    Threshold::At(hi)
}
