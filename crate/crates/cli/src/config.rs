//! The JSON suite configuration.

use std::fmt;

use serde::{Deserialize, Serialize};
use varbesov_core::commutator::{ExponentFamilies, Theorem, VectorKind};
use varbesov_core::{Extended, Family, Grid};

use crate::error::ConfigError;

/// A real number or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawValue", into = "RawValue")]
pub struct Value(pub Extended);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Number(f64),
    Text(String),
}

impl TryFrom<RawValue> for Value {
    type Error = String;

    fn try_from(raw: RawValue) -> Result<Value, String> {
        match raw {
            RawValue::Number(x) => Ok(Value(Extended::Finite(x))),
            RawValue::Text(s) if s == "inf" || s == "infinity" => Ok(Value(Extended::Infinity)),
            RawValue::Text(s) => Err(format!("expected a number or \"inf\", found {s:?}")),
        }
    }
}

impl From<Value> for RawValue {
    fn from(v: Value) -> RawValue {
        match v.0 {
            Extended::Finite(x) => RawValue::Number(x),
            Extended::Infinity => RawValue::Text("inf".into()),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Value {
        Value(Extended::Finite(x))
    }
}

/// A registered exponent family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Constant { value: Value },
    Step { left: Value, right: Value, at: f64 },
    LogHolder { a: f64, b: f64 },
    Oscillation { a: f64, b: f64 },
}

impl FamilySpec {
    pub fn constant(value: f64) -> FamilySpec {
        FamilySpec::Constant {
            value: value.into(),
        }
    }

    pub fn family(&self) -> Family {
        match *self {
            FamilySpec::Constant { value } => Family::Constant(value.0),
            FamilySpec::Step { left, right, at } => Family::Step {
                left: left.0,
                right: right.0,
                at,
            },
            FamilySpec::LogHolder { a, b } => Family::LogHolder { a, b },
            FamilySpec::Oscillation { a, b } => Family::Oscillation { a, b },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Lebesgue,
    Mixed,
    Duality,
    LittlewoodPaley,
    Hardy,
    Commutator,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Lebesgue,
        SuiteName::Mixed,
        SuiteName::Duality,
        SuiteName::LittlewoodPaley,
        SuiteName::Hardy,
        SuiteName::Commutator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Lebesgue => "lebesgue",
            SuiteName::Mixed => "mixed",
            SuiteName::Duality => "duality",
            SuiteName::LittlewoodPaley => "littlewood-paley",
            SuiteName::Hardy => "hardy",
            SuiteName::Commutator => "commutator",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<SuiteName, String> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub dim: usize,
    pub points: usize,
    pub half_width: f64,
}

impl Default for GridSpec {
    fn default() -> GridSpec {
        GridSpec {
            dim: 1,
            points: 4096,
            half_width: 16.0,
        }
    }
}

/// Exponent families shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExponentSpec {
    pub p: FamilySpec,
    pub q: FamilySpec,
    pub s: FamilySpec,
    pub p1: FamilySpec,
    pub p2: FamilySpec,
    pub q1: FamilySpec,
    pub q2: FamilySpec,
}

impl Default for ExponentSpec {
    fn default() -> ExponentSpec {
        ExponentSpec {
            p: FamilySpec::Oscillation { a: 1.5, b: 1.5 },
            q: FamilySpec::LogHolder { a: 1.5, b: 1.0 },
            s: FamilySpec::Oscillation { a: 0.5, b: 0.5 },
            p1: FamilySpec::Oscillation { a: 2.0, b: 2.0 },
            p2: FamilySpec::LogHolder { a: 3.0, b: 1.0 },
            q1: FamilySpec::Oscillation { a: 2.0, b: 1.0 },
            q2: FamilySpec::LogHolder { a: 3.0, b: 1.0 },
        }
    }
}

/// How many random instances each suite draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InstanceSpec {
    pub reduction: usize,
    pub unit_ball: usize,
    pub duality: usize,
    pub dual_candidates: usize,
    pub hardy: usize,
    pub holder: usize,
}

impl Default for InstanceSpec {
    fn default() -> InstanceSpec {
        InstanceSpec {
            reduction: 20,
            unit_ball: 100,
            duality: 20,
            dual_candidates: 8,
            hardy: 10,
            holder: 10,
        }
    }
}

/// Acceptance tolerances; every entry must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub golden_ratio: f64,
    pub constant_reduction: f64,
    pub mixed_reduction: f64,
    pub unit_ball_margin: f64,
    pub beta_sum: f64,
    pub feasibility: f64,
    pub pairing: f64,
    pub hardy: f64,
    pub shift_spread: f64,
    pub eta_spread: f64,
    pub partition: f64,
    pub single_block: f64,
    pub classical_oracle: f64,
    pub monotone: f64,
    pub constant_v: f64,
    pub bilinearity: f64,
    pub refinement: f64,
    pub c_report: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances {
            golden_ratio: 1e-8,
            constant_reduction: 1e-6,
            mixed_reduction: 1e-7,
            unit_ball_margin: 1e-7,
            beta_sum: 1e-5,
            feasibility: 1e-4,
            pairing: 1e-3,
            hardy: 1e-6,
            shift_spread: 2.0,
            eta_spread: 4.0,
            partition: 1e-12,
            single_block: 1e-7,
            classical_oracle: 1e-6,
            monotone: 1e-6,
            constant_v: 1e-10,
            bilinearity: 1e-12,
            refinement: 2.0,
            c_report: 8.0,
        }
    }
}

impl Tolerances {
    fn entries(&self) -> [(&'static str, f64); 18] {
        [
            ("golden_ratio", self.golden_ratio),
            ("constant_reduction", self.constant_reduction),
            ("mixed_reduction", self.mixed_reduction),
            ("unit_ball_margin", self.unit_ball_margin),
            ("beta_sum", self.beta_sum),
            ("feasibility", self.feasibility),
            ("pairing", self.pairing),
            ("hardy", self.hardy),
            ("shift_spread", self.shift_spread),
            ("eta_spread", self.eta_spread),
            ("partition", self.partition),
            ("single_block", self.single_block),
            ("classical_oracle", self.classical_oracle),
            ("monotone", self.monotone),
            ("constant_v", self.constant_v),
            ("bilinearity", self.bilinearity),
            ("refinement", self.refinement),
            ("c_report", self.c_report),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremSpec {
    First,
    SecondPositive,
    SecondNegative,
    Third,
}

impl From<TheoremSpec> for Theorem {
    fn from(t: TheoremSpec) -> Theorem {
        match t {
            TheoremSpec::First => Theorem::First,
            TheoremSpec::SecondPositive => Theorem::SecondPositive,
            TheoremSpec::SecondNegative => Theorem::SecondNegative,
            TheoremSpec::Third => Theorem::Third,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorSpec {
    Generic,
    Constant,
    DivergenceFree,
}

impl From<VectorSpec> for VectorKind {
    fn from(v: VectorSpec) -> VectorKind {
        match v {
            VectorSpec::Generic => VectorKind::Generic,
            VectorSpec::Constant => VectorKind::Constant,
            VectorSpec::DivergenceFree => VectorKind::DivergenceFree,
        }
    }
}

/// One row of the commutator hypothesis matrix.
///
/// The split estimate reads `s2` and `q2`; the others ignore them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub name: String,
    pub theorem: TheoremSpec,
    #[serde(default = "generic")]
    pub vector: VectorSpec,
    pub s: FamilySpec,
    pub p1: FamilySpec,
    pub p2: FamilySpec,
    pub q: FamilySpec,
    #[serde(default = "zero")]
    pub s2: FamilySpec,
    #[serde(default = "infinite")]
    pub q2: FamilySpec,
}

fn generic() -> VectorSpec {
    VectorSpec::Generic
}

fn zero() -> FamilySpec {
    FamilySpec::constant(0.0)
}

fn infinite() -> FamilySpec {
    FamilySpec::Constant {
        value: Value(Extended::Infinity),
    }
}

impl CaseSpec {
    pub fn families(&self) -> ExponentFamilies {
        ExponentFamilies {
            s: self.s.family(),
            p1: self.p1.family(),
            p2: self.p2.family(),
            q: self.q.family(),
            s2: self.s2.family(),
            q2: self.q2.family(),
        }
    }
}

fn case(
    name: &str,
    theorem: TheoremSpec,
    s: FamilySpec,
    p: (FamilySpec, FamilySpec),
    q: FamilySpec,
) -> CaseSpec {
    CaseSpec {
        name: name.into(),
        theorem,
        vector: VectorSpec::Generic,
        s,
        p1: p.0,
        p2: p.1,
        q,
        s2: zero(),
        q2: infinite(),
    }
}

/// The default hypothesis matrix: each estimate with constant and with
/// variable exponents, all with generic (non-solenoidal) `V`.
pub fn default_cases() -> Vec<CaseSpec> {
    let c = FamilySpec::constant;
    let constant_p = (c(4.0), c(4.0));
    let variable_p = (
        FamilySpec::Oscillation { a: 2.0, b: 2.0 },
        FamilySpec::LogHolder { a: 3.0, b: 1.0 },
    );
    let variable_q = FamilySpec::Oscillation { a: 1.5, b: 1.0 };
    let mut third_constant = case(
        "third-constant",
        TheoremSpec::Third,
        c(1.0),
        constant_p,
        c(2.0),
    );
    third_constant.s2 = c(0.5);
    third_constant.q2 = c(4.0);
    let mut third_variable = case(
        "third-variable",
        TheoremSpec::Third,
        FamilySpec::LogHolder { a: 0.5, b: 0.5 },
        variable_p,
        variable_q,
    );
    third_variable.s2 = FamilySpec::Oscillation { a: 0.1, b: 0.3 };
    third_variable.q2 = c(6.0);
    vec![
        case(
            "first-constant",
            TheoremSpec::First,
            c(1.0),
            constant_p,
            c(2.0),
        ),
        case(
            "first-variable",
            TheoremSpec::First,
            FamilySpec::LogHolder { a: 0.5, b: 0.5 },
            variable_p,
            variable_q,
        ),
        case(
            "second-positive-constant",
            TheoremSpec::SecondPositive,
            c(0.5),
            constant_p,
            c(2.0),
        ),
        case(
            "second-positive-variable",
            TheoremSpec::SecondPositive,
            FamilySpec::Oscillation { a: 0.3, b: 0.4 },
            variable_p,
            variable_q,
        ),
        case(
            "second-negative-constant",
            TheoremSpec::SecondNegative,
            c(-0.5),
            constant_p,
            c(2.0),
        ),
        case(
            "second-negative-variable",
            TheoremSpec::SecondNegative,
            FamilySpec::Oscillation { a: -0.7, b: 0.4 },
            variable_p,
            variable_q,
        ),
        third_constant,
        third_variable,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub levels: usize,
    pub seed: u64,
    /// Randomized trials per commutator case.
    pub trials: usize,
    pub suites: Vec<SuiteName>,
    pub exponents: ExponentSpec,
    pub instances: InstanceSpec,
    pub tolerances: Tolerances,
    pub cases: Vec<CaseSpec>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            grid: GridSpec::default(),
            levels: 8,
            seed: 0,
            trials: 32,
            suites: SuiteName::ALL.to_vec(),
            exponents: ExponentSpec::default(),
            instances: InstanceSpec::default(),
            tolerances: Tolerances::default(),
            cases: default_cases(),
        }
    }
}

impl SuiteConfig {
    /// Parses a JSON document, naming the offending field on failure.
    pub fn from_json(text: &str) -> Result<SuiteConfig, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: SuiteConfig =
            serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        config.validate()?;
        Ok(config)
    }

    pub fn grid(&self) -> Result<Grid, ConfigError> {
        Grid::new(self.grid.dim, self.grid.points, self.grid.half_width).map_err(|e| {
            ConfigError::Invalid {
                path: "grid".into(),
                message: e.to_string(),
            }
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let grid = self.grid()?;
        if 2f64.powi(self.levels as i32) > grid.nyquist() {
            return Err(ConfigError::Invalid {
                path: "levels".into(),
                message: format!(
                    "2^{} exceeds the grid Nyquist frequency {}",
                    self.levels,
                    grid.nyquist()
                ),
            });
        }
        for (name, value) in self.tolerances.entries() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::Invalid {
                    path: format!("tolerances.{name}"),
                    message: format!("must be positive and finite, found {value}"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let config = SuiteConfig::default();
        let text = serde_json::to_string(&config).unwrap();
        assert_eq!(SuiteConfig::from_json(&text).unwrap(), config);
    }

    #[test]
    fn empty_document_is_default() {
        assert_eq!(
            SuiteConfig::from_json("{}").unwrap(),
            SuiteConfig::default()
        );
    }

    #[test]
    fn infinity_is_accepted() {
        let c = SuiteConfig::from_json(
            r#"{"exponents": {"p": {"family": "constant", "value": "inf"}}}"#,
        )
        .unwrap();
        assert_eq!(c.exponents.p.family(), Family::Constant(Extended::Infinity));
    }

    #[test]
    fn unknown_family_names_the_field() {
        let err =
            SuiteConfig::from_json(r#"{"exponents": {"q": {"family": "wiggle"}}}"#).unwrap_err();
        match err {
            ConfigError::Schema { path, .. } => assert!(path.starts_with("exponents.q"), "{path}"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = SuiteConfig::from_json(
            r#"{"grid": {"dim": 1, "points": 64, "half_width": 4, "x": 1}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("grid"));
    }

    #[test]
    fn non_positive_tolerance_is_rejected() {
        let err = SuiteConfig::from_json(r#"{"tolerances": {"hardy": 0}}"#).unwrap_err();
        assert!(err.to_string().contains("tolerances.hardy"));
    }
}
