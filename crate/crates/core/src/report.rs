//! Residual reports produced by the identity verifiers.

use serde_json::{json, Value};

use crate::scalar::{Backend, Scalar};

/// Max-norm residual of one verified identity.
///
/// `scale` records the largest input magnitude feeding the check; it anchors
/// the float tolerance and is ignored on the rational backend, where only an
/// exact zero passes.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub label: String,
    pub max_abs: Scalar,
    pub argmax: Option<[usize; 3]>,
    pub scale: f64,
}

impl ResidualReport {
    pub fn new(
        label: impl Into<String>,
        max_abs: Scalar,
        argmax: Option<[usize; 3]>,
        scale: f64,
    ) -> Self {
        ResidualReport {
            label: label.into(),
            max_abs,
            argmax,
            scale,
        }
    }

    pub fn passes(&self) -> bool {
        self.max_abs.is_zero_within(self.scale)
    }

    pub fn backend(&self) -> Backend {
        self.max_abs.backend()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "residual": residual_value(&self.max_abs),
            "pass": self.passes(),
            "argmax": self.argmax.map(|ix| ix.to_vec()),
        })
    }
}

/// Rational residuals serialize as exact `p/q` strings, float residuals as
/// numbers.
pub fn residual_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_text()),
        Scalar::Float(x) => json!(x),
    }
}

/// True when every report in the slice passes.
pub fn all_pass(reports: &[ResidualReport]) -> bool {
    reports.iter().all(ResidualReport::passes)
}
