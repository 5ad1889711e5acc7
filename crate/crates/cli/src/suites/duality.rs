use rand::Rng;
use varbesov_core::duality::{
    beta_residuals, extremal_witness, pairing, random_dual_search, verify_norm_conjugate,
};
use varbesov_core::exponents::conjugate;
use varbesov_core::mixed::mixed_norm;
use varbesov_core::sampling::random_field;
use varbesov_core::{ExponentField, Family};

use super::{Context, Outcome};
use crate::report::Check;

const LEVELS: usize = 4;

#[derive(Default)]
struct Worst {
    beta_sum: f64,
    residual: f64,
    feasibility: f64,
    pairing: f64,
    search: f64,
}

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    let tol = &ctx.config.tolerances;
    let mut rng = ctx.rng(0);
    let mut worst = Worst {
        pairing: f64::INFINITY,
        ..Worst::default()
    };
    let mut failure = None;
    for k in 0..ctx.config.instances.duality {
        let p = Family::Oscillation {
            a: rng.gen_range(1.1..2.5),
            b: rng.gen_range(0.0..2.0),
        };
        let q = Family::LogHolder {
            a: rng.gen_range(1.2..3.0),
            b: rng.gen_range(0.0..1.0),
        };
        let fs = ctx.sequence(LEVELS, &mut rng);
        let result = (|| {
            let p = ExponentField::from_family(ctx.grid, &p)?;
            let q = ExponentField::from_family(ctx.grid, &q)?;
            let w = extremal_witness(&fs, &p, &q)?;
            worst.beta_sum = worst
                .beta_sum
                .max((w.betas.iter().sum::<f64>() - 1.0).abs());
            worst.residual = beta_residuals(&fs, &p, &q, &w)?
                .into_iter()
                .fold(worst.residual, f64::max);
            worst.feasibility =
                worst
                    .feasibility
                    .max(mixed_norm(&w.hs, &conjugate(&p), &conjugate(&q))?);
            worst.pairing = worst.pairing.min(pairing(&fs, &w.hs)? / w.k);
            let search = random_dual_search(
                &fs,
                &p,
                &q,
                ctx.config.instances.dual_candidates,
                ctx.config.seed ^ k as u64,
            )?;
            worst.search = worst.search.max(search.best / search.k);
            Ok::<_, varbesov_core::Error>(())
        })();
        if let Err(e) = result {
            failure = Some(e);
            break;
        }
    }

    let checks = [
        (
            "beta-sum",
            Check::at_most(
                ctx.suite,
                ctx.id("beta-sum"),
                worst.beta_sum,
                0.0,
                tol.beta_sum,
            ),
        ),
        (
            "beta-residual",
            Check::at_most(
                ctx.suite,
                ctx.id("beta-residual"),
                worst.residual,
                0.0,
                tol.beta_sum,
            ),
        ),
        (
            "feasibility",
            Check::at_most(
                ctx.suite,
                ctx.id("feasibility"),
                worst.feasibility,
                1.0,
                tol.feasibility,
            ),
        ),
        (
            "pairing",
            Check::at_least(
                ctx.suite,
                ctx.id("pairing"),
                worst.pairing,
                1.0,
                tol.pairing,
            ),
        ),
        (
            "search-upper-bound",
            Check::at_most(
                ctx.suite,
                ctx.id("search-upper-bound"),
                worst.search,
                tol.c_report,
                0.0,
            ),
        ),
    ];
    for (name, check) in checks {
        out.push(match &failure {
            Some(e) => Check::errored(ctx.suite, ctx.id(name), e),
            None => check,
        });
    }

    let id = ctx.id("norm-conjugate");
    out.push(ctx.guard(&id, || {
        let p = ctx.exponent(&ctx.config.exponents.p)?;
        let mut rng = ctx.rng(1);
        let f = random_field(&ctx.grid, ctx.cutoff(), &mut rng);
        let report = verify_norm_conjugate(
            &f,
            &p,
            ctx.config.instances.dual_candidates,
            ctx.config.seed,
        )?;
        // Asserted within a factor 2 either way.
        Ok(
            Check::at_most(ctx.suite, &id, report.ratio.log2().abs(), 1.0, 0.0).with_note(format!(
                "pairing / norm = {}",
                crate::report::Number::new(report.ratio)
            )),
        )
    }));

    out
}
