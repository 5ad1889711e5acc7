use rand::Rng;
use varbesov_core::lebesgue::luxemburg_norm;
use varbesov_core::mixed::{
    check_holder, check_monotone_limit, inner_lambda, mixed_modular, mixed_norm, sup_modular,
};
use varbesov_core::{Exponent, ExponentField, Extended};

use super::{relative, Context, Outcome};
use crate::report::Check;

const P0: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const Q0: [f64; 4] = [1.0, 1.5, 2.0, 4.0];

/// Levels of the unit-ball and monotone-limit sequences.
const SHORT: usize = 4;

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    let tol = &ctx.config.tolerances;
    let levels = ctx.levels() + 1;

    let id = ctx.id("constant-reduction");
    out.push(ctx.guard(&id, || {
        let mut rng = ctx.rng(0);
        let mut worst = 0.0f64;
        for k in 0..ctx.config.instances.reduction {
            let (p0, q0) = (P0[k % 4], Q0[(k / 4) % 4]);
            let p = ExponentField::constant(ctx.grid, Exponent::Finite(p0))?;
            let q = ExponentField::constant(ctx.grid, Exponent::Finite(q0))?;
            let fs = ctx.sequence(levels, &mut rng);
            let oracle = fs
                .entries()
                .iter()
                .map(|f| {
                    let sum: f64 = f.values().iter().map(|v| v.abs().powf(p0)).sum();
                    (sum * ctx.grid.cell_volume()).powf(1.0 / p0).powf(q0)
                })
                .sum::<f64>()
                .powf(1.0 / q0);
            worst = worst.max(relative(mixed_norm(&fs, &p, &q)?, oracle));
        }
        Ok(Check::at_most(
            ctx.suite,
            &id,
            worst,
            0.0,
            tol.mixed_reduction,
        ))
    }));

    let id = ctx.id("q-infinity");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let q = ExponentField::constant(ctx.grid, Exponent::Infinity)?;
        let mut rng = ctx.rng(1);
        let mut worst = 0.0f64;
        for _ in 0..ctx.config.instances.reduction {
            let fs = ctx.sequence(levels, &mut rng);
            let sup = fs
                .entries()
                .iter()
                .map(|f| luxemburg_norm(f, &p))
                .try_fold(0.0, |m, n| n.map(|n| f64::max(m, n)))?;
            worst = worst.max((mixed_norm(&fs, &p, &q)? - sup).abs());
        }
        Ok(Check::exactly(ctx.suite, &id, worst, 0.0))
    }));

    let id = ctx.id("unit-ball");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let q = ctx.exponent(&ctx.config.exponents.q)?;
        let mut rng = ctx.rng(2);
        let mut violations = 0usize;
        let mut skipped = 0usize;
        for _ in 0..ctx.config.instances.unit_ball {
            let fs = ctx.sequence(SHORT, &mut rng);
            let gs = fs.scale(rng.gen_range(-1.0f64..1.0).exp() / mixed_norm(&fs, &p, &q)?);
            let norm = mixed_norm(&gs, &p, &q)?;
            if (norm - 1.0).abs() < tol.unit_ball_margin {
                skipped += 1;
                continue;
            }
            if (norm <= 1.0) != mixed_modular(&gs, &p, &q)?.le(1.0) {
                violations += 1;
            }
        }
        Ok(Check::exactly(ctx.suite, &id, violations as f64, 0.0)
            .with_note(format!("{skipped} instances within the boundary margin")))
    }));

    let id = ctx.id("sup-modular");
    out.push(ctx.guard(&id, || {
        let p = ExponentField::constant(ctx.grid, Exponent::Infinity)?;
        let q = ctx.exponent(&ctx.config.exponents.q)?;
        let mut rng = ctx.rng(3);
        let mut worst = 0.0f64;
        for _ in 0..ctx.config.instances.reduction {
            let fs = ctx.sequence(SHORT, &mut rng).scale(rng.gen_range(0.2..1.0));
            let direct: Extended = fs
                .entries()
                .iter()
                .map(|f| inner_lambda(f, &p, &q))
                .sum::<varbesov_core::Result<Extended>>()?;
            let closed = sup_modular(&fs, &q)?;
            let (Some(a), Some(b)) = (direct.finite(), closed.finite()) else {
                worst = f64::INFINITY;
                continue;
            };
            worst = worst.max(relative(a, b));
        }
        Ok(Check::at_most(
            ctx.suite,
            &id,
            worst,
            0.0,
            tol.mixed_reduction,
        ))
    }));

    let id = ctx.id("monotone-limit");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let q = ctx.exponent(&ctx.config.exponents.q)?;
        let mut rng = ctx.rng(4);
        let fs = ctx.sequence(SHORT, &mut rng);
        let l = ctx.grid.half_width();
        let masks: Vec<Vec<bool>> = [0.125, 0.25, 0.5, 0.75, 1.0]
            .iter()
            .map(|&r| {
                (0..ctx.grid.len())
                    .map(|i| r >= 1.0 || ctx.grid.point(i).iter().all(|x| x.abs() < r * l))
                    .collect()
            })
            .collect();
        let report = check_monotone_limit(&fs, &masks, &p, &q)?;
        let check = Check::at_most(ctx.suite, &id, report.sup_error, 0.0, tol.monotone);
        Ok(if report.non_decreasing {
            check
        } else {
            Check {
                status: crate::report::Status::Fail,
                ..check.with_note("truncated norms decrease")
            }
        })
    }));

    let id = ctx.id("holder");
    out.push(ctx.guard(&id, || {
        let e = &ctx.config.exponents;
        let (p1, p2) = (ctx.exponent(&e.p1)?, ctx.exponent(&e.p2)?);
        let (q1, q2) = (ctx.exponent(&e.q1)?, ctx.exponent(&e.q2)?);
        let mut rng = ctx.rng(5);
        let mut worst = 0.0f64;
        for _ in 0..ctx.config.instances.holder {
            let fs = ctx.sequence(SHORT, &mut rng);
            let gs = ctx.sequence(SHORT, &mut rng);
            worst = worst.max(check_holder(&fs, &gs, &p1, &p2, &q1, &q2)?.max_ratio);
        }
        Ok(Check::at_most(ctx.suite, &id, worst, tol.c_report, 0.0))
    }));

    out
}
