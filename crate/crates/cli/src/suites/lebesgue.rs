use rand::Rng;
use varbesov_core::lebesgue::{luxemburg_norm, modular};
use varbesov_core::sampling::random_field;
use varbesov_core::{Exponent, ExponentField, Extended, Family, Field, Grid};

use super::{relative, Context, Outcome};
use crate::report::Check;

const REDUCTION_EXPONENTS: [Exponent; 5] = [
    Exponent::Finite(1.0),
    Exponent::Finite(1.5),
    Exponent::Finite(2.0),
    Exponent::Finite(3.0),
    Exponent::Infinity,
];

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    let tol = &ctx.config.tolerances;

    let id = ctx.id("golden-ratio");
    out.push(ctx.guard(&id, || {
        let lambda = golden_norm(ctx)?;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        Ok(Check::at_most(
            ctx.suite,
            &id,
            (lambda - phi).abs(),
            0.0,
            tol.golden_ratio,
        ))
    }));

    for (k, &p0) in REDUCTION_EXPONENTS.iter().enumerate() {
        let id = ctx.id(&format!("constant-reduction.p{p0}"));
        out.push(ctx.guard(&id, || {
            let p = ExponentField::constant(ctx.grid, p0)?;
            let mut rng = ctx.rng(k as u64);
            let mut worst = 0.0f64;
            for _ in 0..ctx.config.instances.reduction {
                let f = random_field(&ctx.grid, ctx.cutoff(), &mut rng);
                worst = worst.max(relative(luxemburg_norm(&f, &p)?, quadrature(&f, p0)));
            }
            Ok(Check::at_most(
                ctx.suite,
                &id,
                worst,
                0.0,
                tol.constant_reduction,
            ))
        }));
    }

    let id = ctx.id("unit-ball");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let mut rng = ctx.rng(10);
        let mut violations = 0usize;
        let mut skipped = 0usize;
        for _ in 0..ctx.config.instances.unit_ball {
            let f = random_field(&ctx.grid, ctx.cutoff(), &mut rng);
            let g = f.scale(rng.gen_range(-1.0f64..1.0).exp() / luxemburg_norm(&f, &p)?);
            let norm = luxemburg_norm(&g, &p)?;
            if (norm - 1.0).abs() < tol.unit_ball_margin {
                skipped += 1;
                continue;
            }
            if (norm <= 1.0) != modular(&g, &p)?.le(1.0) {
                violations += 1;
            }
        }
        Ok(Check::exactly(ctx.suite, &id, violations as f64, 0.0)
            .with_note(format!("{skipped} instances within the boundary margin")))
    }));

    let id = ctx.id("homogeneity");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let mut rng = ctx.rng(11);
        let mut worst = 0.0f64;
        for _ in 0..ctx.config.instances.reduction {
            let f = random_field(&ctx.grid, ctx.cutoff(), &mut rng);
            let c: f64 = rng.gen_range(-3.0..3.0);
            let lhs = luxemburg_norm(&f.scale(c), &p)?;
            worst = worst.max(relative(lhs, c.abs() * luxemburg_norm(&f, &p)?));
        }
        Ok(Check::at_most(
            ctx.suite,
            &id,
            worst,
            0.0,
            tol.constant_reduction,
        ))
    }));

    out
}

/// `‖χ_{[0,2)}‖` for `p = 1` on `[0, 1)` and `p = 2` on `[1, 2)`, on a 1-D
/// grid sharing the configured resolution.
fn golden_norm(ctx: &Context) -> varbesov_core::Result<f64> {
    let grid = Grid::new(1, ctx.grid.points_per_axis(), ctx.grid.half_width())?;
    if grid.half_width() < 2.0 {
        return Err(varbesov_core::Error::Precondition(
            "the box must contain [0, 2)",
        ));
    }
    let f = Field::indicator(grid, |x| (0.0..2.0).contains(&x[0]));
    let p = ExponentField::from_family(
        grid,
        &Family::Step {
            left: Extended::Finite(1.0),
            right: Extended::Finite(2.0),
            at: 1.0,
        },
    )?;
    luxemburg_norm(&f, &p)
}

/// `(h^n Σ|f|^p)^{1/p}`, or `max|f|` for `p = ∞`.
fn quadrature(f: &Field, p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => f.max_abs(),
        Exponent::Finite(p) => {
            let sum: f64 = f.values().iter().map(|v| v.abs().powf(p)).sum();
            (sum * f.grid().cell_volume()).powf(1.0 / p)
        }
    }
}
