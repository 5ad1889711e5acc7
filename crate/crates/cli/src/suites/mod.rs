//! The verification suites and the parallel runner.

mod commutator;
mod duality;
mod hardy;
mod lebesgue;
mod littlewood_paley;
mod mixed;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use varbesov_core::sampling::random_field;
use varbesov_core::{ExponentField, FieldSequence, Grid};

use crate::config::{FamilySpec, SuiteConfig, SuiteName};
use crate::error::ConfigError;
use crate::report::{Check, Environment, Series, SuiteReport};

/// Checks and plot series produced by one suite.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub series: Vec<Series>,
}

impl Outcome {
    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

/// Shared inputs of every suite.
pub(crate) struct Context<'a> {
    pub config: &'a SuiteConfig,
    pub grid: Grid,
    pub suite: SuiteName,
}

impl Context<'_> {
    /// A generator for one purpose inside the suite; independent of how
    /// suites are scheduled.
    pub fn rng(&self, purpose: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(((self.suite as u64) << 32) | purpose);
        rng
    }

    pub fn levels(&self) -> usize {
        self.config.levels
    }

    /// Band limit of random inputs, `2^J / 4`.
    pub fn cutoff(&self) -> f64 {
        2f64.powi(self.config.levels as i32) / 4.0
    }

    pub fn exponent(&self, spec: &FamilySpec) -> varbesov_core::Result<ExponentField> {
        ExponentField::from_family(self.grid, &spec.family())
    }

    pub fn sequence(&self, levels: usize, rng: &mut ChaCha8Rng) -> FieldSequence {
        FieldSequence::new(
            (0..levels)
                .map(|_| random_field(&self.grid, self.cutoff(), rng))
                .collect(),
        )
        .expect("at least one level on a shared grid")
    }

    /// Runs `f`, turning a library error into a failed check.
    pub fn guard(&self, id: &str, f: impl FnOnce() -> varbesov_core::Result<Check>) -> Check {
        f().unwrap_or_else(|e| Check::errored(self.suite, id, e))
    }

    pub fn id(&self, name: &str) -> String {
        format!("{}.{}", self.suite, name)
    }
}

/// Relative error with `0` reference compared absolutely.
pub(crate) fn relative(value: f64, reference: f64) -> f64 {
    let diff = (value - reference).abs();
    if reference == 0.0 {
        diff
    } else {
        diff / reference.abs()
    }
}

fn run_suite(config: &SuiteConfig, grid: Grid, suite: SuiteName) -> Outcome {
    let ctx = Context {
        config,
        grid,
        suite,
    };
    match suite {
        SuiteName::Lebesgue => lebesgue::run(&ctx),
        SuiteName::Mixed => mixed::run(&ctx),
        SuiteName::Duality => duality::run(&ctx),
        SuiteName::LittlewoodPaley => littlewood_paley::run(&ctx),
        SuiteName::Hardy => hardy::run(&ctx),
        SuiteName::Commutator => commutator::run(&ctx),
    }
}

/// Runs the selected suites on worker threads and assembles the report in
/// suite order.
pub fn run(config: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    config.validate()?;
    let grid = config.grid()?;
    let mut selected = config.suites.clone();
    selected.sort();
    selected.dedup();
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&suite| scope.spawn(move || run_suite(config, grid, suite)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut report = SuiteReport {
        environment: Environment::current(),
        config: config.clone(),
        checks: Vec::new(),
        series: Vec::new(),
    };
    for outcome in outcomes {
        report.checks.extend(outcome.checks);
        report.series.extend(outcome.series);
    }
    Ok(report)
}
