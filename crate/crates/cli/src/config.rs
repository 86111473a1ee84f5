//! JSON experiment configuration.

use std::path::Path;

use ortho_sing::measure::{AnalyticFactor, SingularPoint};
use ortho_sing::Measure;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<ZerosBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<SpacingBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<Theorem1Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asym: Option<AsymBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub singularities: Vec<SingularitySpec>,
    #[serde(default)]
    pub h: HSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SingularitySpec {
    Angle(AngleSpec),
    Position(PositionSpec),
}

/// Singularity at `cos(pi p / q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleSpec {
    pub p: u32,
    pub q: u32,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionSpec {
    pub position: f64,
    pub lambda: f64,
}

/// `"one"`, `"exp"`, or Chebyshev coefficients of `log h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HSpec {
    Named(String),
    LogChebyshev(Vec<f64>),
}

impl Default for HSpec {
    fn default() -> Self {
        Self::Named("one".into())
    }
}

/// Degrees as an explicit list or `start..=end` every `stride`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degrees {
    List(Vec<usize>),
    Range(DegreeRange),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRange {
    pub start: usize,
    pub end: usize,
    pub stride: usize,
}

impl Degrees {
    pub fn expand(&self) -> Result<Vec<usize>, CliError> {
        let out: Vec<usize> = match self {
            Self::List(v) => v.clone(),
            Self::Range(r) => {
                if r.stride == 0 || r.start > r.end {
                    return Err(CliError::Usage(format!("bad degree range {}..={} step {}", r.start, r.end, r.stride)));
                }
                (r.start..=r.end).step_by(r.stride).collect()
            }
        };
        if out.is_empty() || out.contains(&0) {
            return Err(CliError::Usage("degrees must be a nonempty list of positive integers".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceBlock {
    /// Number of coefficient pairs.
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosBlock {
    pub n: usize,
    /// Index zeros around this point instead of listing all of them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpacingBlock {
    pub nu: usize,
    pub k_min: i64,
    pub k_max: i64,
    pub degrees: Degrees,
    /// Gap index for the per-class summary.
    #[serde(default = "default_gap_k")]
    pub gap_k: i64,
    #[serde(default = "default_spacing_tol")]
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Block {
    pub nu: usize,
    #[serde(default = "default_gap_k")]
    pub k: i64,
    pub degrees: Degrees,
    #[serde(default = "default_spacing_tol")]
    pub tolerance: f64,
    /// Replace `degrees` by the record degrees approaching `±(c, d)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub c: f64,
    pub d: f64,
    pub n_max: usize,
    /// Keep only records from this degree on.
    #[serde(default = "default_target_min")]
    pub n_min: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyBlock {
    /// Case ids, e.g. `"convexity-ii"`; all seven when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<Vec<String>>,
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default = "default_verify_k")]
    pub k_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<LimitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<SimplicityBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitBlock {
    pub count: usize,
    #[serde(default = "default_probes")]
    pub probes: Vec<usize>,
    #[serde(default = "default_limit_bound")]
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicityBlock {
    pub count: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Away,
    Endpoint,
    Near,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsymBlock {
    pub region: Region,
    #[serde(default)]
    pub nu: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<SideSpec>,
    pub degrees: Degrees,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_gap_k() -> i64 {
    1
}
fn default_spacing_tol() -> f64 {
    0.02
}
fn default_target_min() -> usize {
    1
}
fn default_count() -> usize {
    50
}
fn default_verify_k() -> usize {
    100
}
fn default_probes() -> Vec<usize> {
    vec![10, 100, 1000]
}
fn default_limit_bound() -> f64 {
    ortho_sing::verify::GAP_LIMIT_BOUND
}
fn default_delta() -> f64 {
    ortho_sing::asymptotics::DEFAULT_DELTA
}

impl MeasureSpec {
    pub fn build(&self) -> Result<Measure, CliError> {
        let sing = self
            .singularities
            .iter()
            .map(|s| match s {
                SingularitySpec::Angle(a) => SingularPoint::from_angle(a.p, a.q, a.lambda),
                SingularitySpec::Position(p) => SingularPoint::at(p.position, p.lambda),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(invalid)?;
        let h = match &self.h {
            HSpec::Named(name) => match name.as_str() {
                "one" => AnalyticFactor::one(),
                "exp" => AnalyticFactor::exp(),
                other => {
                    return Err(CliError::Usage(format!("unknown h `{other}`, expected \"one\", \"exp\" or a list")))
                }
            },
            HSpec::LogChebyshev(c) => AnalyticFactor::from_log_chebyshev(c.clone()).map_err(invalid)?,
        };
        Measure::new(self.alpha, self.beta, sing, h).map_err(invalid)
    }
}

fn invalid(e: ortho_sing::Error) -> CliError {
    CliError::Usage(format!("invalid measure: {e}"))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        if let Some(m) = &cfg.measure {
            m.build()?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical single-line form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn measure(&self) -> Result<Measure, CliError> {
        self.measure.as_ref().ok_or_else(|| CliError::Usage("config has no `measure` block".into()))?.build()
    }
}

/// The named block, or a usage error.
pub fn require<'a, T>(block: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    block.as_ref().ok_or_else(|| CliError::Usage(format!("config has no `{name}` block")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"{
        "schema_version": 1,
        "seed": 9,
        "measure": {"alpha": -0.5, "beta": 0.25,
                    "singularities": [{"p": 1, "q": 2, "lambda": 1.0}, {"position": 0.3, "lambda": -0.5}],
                    "h": [0.1, -0.2]},
        "recurrence": {"n": 10},
        "spacing": {"nu": 1, "k_min": -2, "k_max": 2, "degrees": {"start": 100, "end": 300, "stride": 100}},
        "asym": {"region": "near", "nu": 1, "side": "left", "degrees": [100, 200],
                 "x_min": -0.1, "x_max": 0.0, "points": 11}
    }"#;

    #[test]
    fn round_trip_is_idempotent() {
        let cfg = ExperimentConfig::parse(FULL).unwrap();
        let once = cfg.to_json();
        let again = ExperimentConfig::parse(&once).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(once, again.to_json());
        assert_eq!(cfg.spacing.unwrap().degrees.expand().unwrap(), [100, 200, 300]);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_measures() {
        for bad in [
            r#"{"schema_version": 1, "bogus": 1}"#,
            r#"{"schema_version": 2}"#,
            r#"{"schema_version": 1, "measure": {"alpha": -1.5}}"#,
            r#"{"schema_version": 1, "measure": {"singularities": [{"p": 2, "q": 4, "lambda": 1}]}}"#,
            r#"{"schema_version": 1, "measure": {"singularities": [{"position": 0.1, "lambda": 1, "x": 0}]}}"#,
            r#"{"schema_version": 1, "measure": {"h": "cosh"}}"#,
            r#"{"schema_version": 1, "recurrence": {"n": 3, "m": 1}}"#,
        ] {
            assert!(matches!(ExperimentConfig::parse(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn degree_ranges() {
        let r = Degrees::Range(DegreeRange { start: 5, end: 4, stride: 1 });
        assert!(r.expand().is_err());
        assert!(Degrees::List(vec![]).expand().is_err());
        assert_eq!(Degrees::Range(DegreeRange { start: 1, end: 7, stride: 3 }).expand().unwrap(), [1, 4, 7]);
    }
}
