use rand::Rng;
use varbesov_core::commutator::{commutator_sequence, constant_sweep, SweepConfig, VectorField};
use varbesov_core::grid::gradient;
use varbesov_core::littlewood_paley::build_resolution;
use varbesov_core::sampling::random_field;
use varbesov_core::{Field, FieldSequence};

use super::{Context, Outcome};
use crate::report::{Check, Number, Series};

/// `max_j ‖C_j − a C_j(V) − b C_j(W)‖_∞` against the size of the terms.
fn defect(whole: &FieldSequence, parts: [(&FieldSequence, f64); 2]) -> varbesov_core::Result<f64> {
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for j in 0..whole.levels() {
        let combined = parts[0]
            .0
            .get(j)
            .scale(parts[0].1)
            .add(&parts[1].0.get(j).scale(parts[1].1))?;
        worst = worst.max(whole.get(j).sub(&combined)?.max_abs());
        scale = scale.max(
            parts[0].0.get(j).scale(parts[0].1).max_abs()
                + parts[1].0.get(j).scale(parts[1].1).max_abs(),
        );
    }
    Ok(if scale == 0.0 { worst } else { worst / scale })
}

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    let tol = &ctx.config.tolerances;
    let grid = ctx.grid;
    let dim = grid.dim();
    let cutoff = ctx.cutoff();

    let id = ctx.id("constant-v");
    out.push(ctx.guard(&id, || {
        let rou = build_resolution(grid, ctx.levels())?;
        let mut rng = ctx.rng(0);
        let mut worst = 0.0f64;
        for _ in 0..4 {
            let values: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = VectorField::constant(grid, &values)?;
            let f = random_field(&grid, cutoff, &mut rng);
            let scale = values.iter().map(|c| c.abs()).fold(0.0, f64::max)
                * gradient(&f).iter().map(Field::max_abs).fold(0.0, f64::max);
            let c = commutator_sequence(&v, &f, &rou)?;
            worst = worst.max(c.max_abs() / scale);
        }
        Ok(Check::at_most(ctx.suite, &id, worst, 0.0, tol.constant_v))
    }));

    let id = ctx.id("bilinearity");
    out.push(ctx.guard(&id, || {
        let rou = build_resolution(grid, ctx.levels())?;
        let mut rng = ctx.rng(1);
        let draw_v = |rng: &mut _| {
            VectorField::new((0..dim).map(|_| random_field(&grid, cutoff, rng)).collect())
        };
        let v = draw_v(&mut rng)?;
        let w = draw_v(&mut rng)?;
        let f = random_field(&grid, cutoff, &mut rng);
        let g = random_field(&grid, cutoff, &mut rng);
        let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let in_v = defect(
            &commutator_sequence(&v.combine(a, &w, b)?, &f, &rou)?,
            [
                (&commutator_sequence(&v, &f, &rou)?, a),
                (&commutator_sequence(&w, &f, &rou)?, b),
            ],
        )?;
        let in_f = defect(
            &commutator_sequence(&v, &f.scale(a).add(&g.scale(b))?, &rou)?,
            [
                (&commutator_sequence(&v, &f, &rou)?, a),
                (&commutator_sequence(&v, &g, &rou)?, b),
            ],
        )?;
        Ok(Check::at_most(
            ctx.suite,
            &id,
            in_v.max(in_f),
            0.0,
            tol.bilinearity,
        ))
    }));

    for case in &ctx.config.cases {
        let base = format!("case.{}", case.name);
        let sweep = SweepConfig {
            grid,
            levels: ctx.levels(),
            theorem: case.theorem.into(),
            exponents: case.families(),
            vector: case.vector.into(),
        };
        match constant_sweep(&sweep, ctx.config.trials, ctx.config.seed) {
            Ok(summary) => {
                let ratios: Vec<f64> = summary.outcomes.iter().map(|o| o.max_ratio()).collect();
                out.series.push(Series::new(
                    ctx.suite,
                    ctx.id(&base),
                    "trial",
                    "ratio",
                    &ratios,
                ));
                let finite = Check::finite(
                    ctx.suite,
                    ctx.id(&format!("{base}.max-ratio")),
                    summary.max_ratio,
                )
                .with_note(format!(
                    "median ratio {}",
                    Number::new(summary.median_ratio)
                ));
                out.push(if summary.finite {
                    finite
                } else {
                    Check {
                        status: crate::report::Status::Fail,
                        ..finite.with_note("a side of the estimate is not finite")
                    }
                });
                out.push(Check::at_most(
                    ctx.suite,
                    ctx.id(&format!("{base}.refinement")),
                    summary.max_refinement_factor,
                    tol.refinement,
                    0.0,
                ));
            }
            Err(e) => {
                out.push(Check::errored(
                    ctx.suite,
                    ctx.id(&format!("{base}.max-ratio")),
                    &e,
                ));
                out.push(Check::errored(
                    ctx.suite,
                    ctx.id(&format!("{base}.refinement")),
                    e,
                ));
            }
        }
    }
    out
}
