//! JSON run configuration: the single authoritative input path.
//!
//! An empty document `{}` yields the benchmark calibration. Sections and
//! fields may be given partially; anything omitted takes its default.
//! Unknown keys are rejected so typos cannot silently revert a field to its
//! default.

use serde::{Deserialize, Serialize};

use dmp_core::{EfficiencyCurve, ModelParams, PolicyRegime};

/// Top-level configuration document.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub model: ModelSection,
    pub efficiency: EfficiencySection,
    pub policy: PolicySection,
    /// Research cost. Required by `solve`, optional elsewhere; sweeps over
    /// eta ignore it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

/// `"model"` section; defaults are the benchmark calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    pub y: f64,
    pub b: f64,
    pub c: f64,
    pub r: f64,
    pub delta: f64,
    pub alpha: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::default();
        Self {
            y: p.y,
            b: p.b,
            c: p.c,
            r: p.r,
            delta: p.delta,
            alpha: p.alpha,
        }
    }
}

/// `"efficiency"` section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EfficiencySection {
    pub kind: CurveKind,
    pub scale: f64,
    pub domain_max: f64,
}

impl Default for EfficiencySection {
    fn default() -> Self {
        Self {
            kind: CurveKind::Quadratic,
            scale: 1.0,
            domain_max: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Quadratic,
}

/// `"policy"` section; defaults to the untaxed benchmark wage share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolicySection {
    pub gamma: f64,
    pub tau_f: f64,
    pub tau_w: f64,
}

impl Default for PolicySection {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            tau_f: 0.0,
            tau_w: 0.0,
        }
    }
}

impl RunConfig {
    pub fn model_params(&self) -> ModelParams {
        ModelParams {
            y: self.model.y,
            b: self.model.b,
            c: self.model.c,
            r: self.model.r,
            delta: self.model.delta,
            alpha: self.model.alpha,
        }
    }

    pub fn curve(&self) -> EfficiencyCurve {
        match self.efficiency.kind {
            CurveKind::Quadratic => EfficiencyCurve::Quadratic {
                scale: self.efficiency.scale,
                domain_max: self.efficiency.domain_max,
            },
        }
    }

    pub fn policy(&self) -> PolicyRegime {
        PolicyRegime {
            gamma: self.policy.gamma,
            tau_f: self.policy.tau_f,
            tau_w: self.policy.tau_w,
        }
    }
}

/// Parses a configuration document. Malformed JSON, type mismatches, and
/// unknown keys all fail here; parameter-invariant checks happen afterwards
/// through `validate_params`.
pub fn parse_config(text: &str) -> Result<RunConfig, serde_json::Error> {
    serde_json::from_str(text)
}
