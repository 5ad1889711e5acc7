use varbesov_core::littlewood_paley::{gamma_grid, verify_hardy};
use varbesov_core::{Exponent, ExponentField};

use super::{Context, Outcome};
use crate::report::Check;

const WEIGHTS: [f64; 3] = [0.25, 0.5, 0.75];
const OUTER: [f64; 3] = [1.5, 2.0, 4.0];
const GAMMAS: usize = 64;

pub(super) fn run(ctx: &Context) -> Outcome {
    let mut out = Outcome::default();
    for (ia, &a) in WEIGHTS.iter().enumerate() {
        for (iq, &q0) in OUTER.iter().enumerate() {
            let id = ctx.id(&format!("a{a}.q{q0}"));
            out.push(ctx.guard(&id, || {
                let p = ctx.exponent(&ctx.config.exponents.p)?;
                let q = ExponentField::constant(ctx.grid, Exponent::Finite(q0))?;
                let gammas = gamma_grid(q0, GAMMAS);
                let mut rng = ctx.rng((ia * OUTER.len() + iq) as u64);
                let mut worst = 0.0f64;
                let mut bound = f64::INFINITY;
                for _ in 0..ctx.config.instances.hardy {
                    let gs = ctx.sequence(ctx.levels() + 1, &mut rng);
                    let r = verify_hardy(&gs, a, &p, &q, &gammas)?;
                    worst = worst.max(r.ratio_g).max(r.ratio_h);
                    bound = r.bound;
                }
                Ok(Check::at_most(
                    ctx.suite,
                    &id,
                    worst,
                    bound,
                    ctx.config.tolerances.hardy,
                ))
            }));
        }
    }
    out
}
