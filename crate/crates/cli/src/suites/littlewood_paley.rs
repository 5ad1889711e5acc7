use varbesov_core::exponents::local_log_holder;
use varbesov_core::lebesgue::luxemburg_norm;
use varbesov_core::littlewood_paley::{
    besov_norm, build_resolution, check_lemma_eta_shift, lp_blocks, verify_eta_convolution,
    verify_mixed_eta,
};
use varbesov_core::sampling::random_field;
use varbesov_core::{Exponent, ExponentField, Family, Field, SmoothnessField};

use super::{relative, Context, Outcome};
use crate::report::{Check, Series};

/// Constant `(s, p, q)` triples for the classical comparison.
const CLASSICAL: [(f64, f64, f64); 3] = [(0.5, 2.0, 2.0), (1.0, 3.0, 1.5), (-0.5, 1.5, 4.0)];

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    let tol = &ctx.config.tolerances;
    let grid = ctx.grid;
    let levels = ctx.levels();
    let n = grid.dim() as f64;
    let rou = match build_resolution(grid, levels) {
        Ok(r) => r,
        Err(e) => {
            out.push(Check::errored(ctx.suite, ctx.id("resolution"), e));
            return out;
        }
    };

    out.push(Check::at_most(
        ctx.suite,
        ctx.id("partition"),
        rou.partition_residual(),
        0.0,
        tol.partition,
    ));

    let id = ctx.id("reconstruction");
    out.push(ctx.guard(&id, || {
        let mut rng = ctx.rng(0);
        let f = random_field(&grid, ctx.cutoff(), &mut rng);
        let blocks = lp_blocks(&f, &rou)?;
        let sum = blocks
            .entries()
            .iter()
            .try_fold(Field::zeros(grid), |acc, b| acc.add(b))?;
        let err = sum.sub(&f)?.max_abs() / f.max_abs();
        Ok(Check::at_most(ctx.suite, &id, err, 0.0, tol.partition))
    }));

    let id = ctx.id("single-block");
    out.push(ctx.guard(&id, || {
        let e = &ctx.config.exponents;
        let s = SmoothnessField::from_family(grid, &e.s.family())?;
        let p = ctx.exponent(&e.p)?;
        let q = ctx.exponent(&e.q)?;
        let mut rng = ctx.rng(1);
        let mut worst = 0.0f64;
        for _ in 0..3 {
            // Every mode below |ξ| = 1 lies in the plateau of the first block.
            let f = random_field(&grid, 1.0, &mut rng);
            worst = worst.max(relative(
                besov_norm(&f, &s, &p, &q, &rou)?,
                luxemburg_norm(&f, &p)?,
            ));
        }
        Ok(Check::at_most(ctx.suite, &id, worst, 0.0, tol.single_block))
    }));

    let id = ctx.id("classical");
    out.push(ctx.guard(&id, || {
        let mut rng = ctx.rng(2);
        let mut worst = 0.0f64;
        for &(s0, p0, q0) in &CLASSICAL {
            let s = SmoothnessField::constant(grid, s0)?;
            let p = ExponentField::constant(grid, Exponent::Finite(p0))?;
            let q = ExponentField::constant(grid, Exponent::Finite(q0))?;
            let f = random_field(&grid, ctx.cutoff(), &mut rng);
            let oracle = lp_blocks(&f, &rou)?
                .entries()
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let sum: f64 = b.values().iter().map(|v| v.abs().powf(p0)).sum();
                    let norm = (sum * grid.cell_volume()).powf(1.0 / p0);
                    (2f64.powf(j as f64 * s0) * norm).powf(q0)
                })
                .sum::<f64>()
                .powf(1.0 / q0);
            worst = worst.max(relative(besov_norm(&f, &s, &p, &q, &rou)?, oracle));
        }
        Ok(Check::at_most(
            ctx.suite,
            &id,
            worst,
            0.0,
            tol.classical_oracle,
        ))
    }));

    let id = ctx.id("eta-shift.constant");
    out.push(ctx.guard(&id, || {
        let alpha = SmoothnessField::constant(grid, 0.5)?;
        let mut worst = 0.0f64;
        for r in [0.0, 1.0] {
            worst = worst.max(check_lemma_eta_shift(&alpha, r, n + 2.0, levels)?.c);
        }
        Ok(Check::exactly(ctx.suite, &id, worst, 1.0))
    }));

    let id = ctx.id("eta-shift.log-holder");
    let check = ctx.guard(&id, || {
        let alpha = SmoothnessField::from_family(grid, &Family::LogHolder { a: 1.0, b: 1.0 })?;
        let r = local_log_holder(&alpha);
        let report = check_lemma_eta_shift(&alpha, r, n + 2.0, levels)?;
        out.series
            .push(Series::new(ctx.suite, &id, "j", "c", &report.per_level));
        Ok(
            Check::at_most(ctx.suite, &id, report.spread, tol.shift_spread, 0.0)
                .with_note(format!("c = {}", crate::report::Number::new(report.c))),
        )
    });
    out.push(check);

    let id = ctx.id("eta-convolution");
    let check = ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let f = Field::from_fn(grid, |x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            (-r2 / 4.0).exp() * (1.2 + (3.0 * x[0]).cos())
        });
        let report = verify_eta_convolution(&f, &p, n + 2.0, levels, tol.c_report)?;
        out.series
            .push(Series::new(ctx.suite, &id, "j", "ratio", &report.ratios));
        let spread = Check::at_most(ctx.suite, &id, report.spread, tol.eta_spread, 0.0)
            .trivial_if(report.trivial);
        Ok(if report.max <= tol.c_report {
            spread
        } else {
            Check {
                status: crate::report::Status::Fail,
                ..spread.with_note("a ratio exceeds c_report")
            }
        })
    });
    out.push(check);

    let id = ctx.id("mixed-eta");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let q = ctx.exponent(&ctx.config.exponents.q)?;
        let mut rng = ctx.rng(3);
        let fs = ctx.sequence(levels + 1, &mut rng);
        let m = n + local_log_holder(&q.reciprocal()) + 1.0;
        let report = verify_mixed_eta(&fs, &p, &q, m, tol.c_report)?;
        Ok(
            Check::at_most(ctx.suite, &id, report.ratio.ratio, tol.c_report, 0.0)
                .trivial_if(report.trivial),
        )
    }));

    out
}
