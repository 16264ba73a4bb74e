//! Axiom-check reports shared by the dynamics and twisted-action validators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One failing instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub axiom: String,
    pub g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Axioms that hold for trivial reasons in this model and were not checked pointwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vacuous: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Witness>,
}

impl ValidationReport {
    pub(crate) fn new() -> Self {
        ValidationReport { valid: true, vacuous: Vec::new(), failures: Vec::new() }
    }

    pub(crate) fn fail(
        &mut self,
        axiom: &str,
        g: usize,
        h: Option<usize>,
        t: Option<usize>,
        point: Option<usize>,
        detail: impl Into<String>,
    ) {
        self.valid = false;
        self.failures.push(Witness {
            axiom: axiom.to_string(),
            g,
            h,
            t,
            point,
            detail: detail.into(),
        });
    }

    pub fn first_failure(&self, axiom: &str) -> Option<&Witness> {
        self.failures.iter().find(|w| w.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        write!(f, "{} failure(s)", self.failures.len())?;
        if let Some(w) = self.failures.first() {
            write!(f, "; first: axiom ({}) at g={}", w.axiom, w.g)?;
            if let Some(h) = w.h {
                write!(f, ", h={h}")?;
            }
            if let Some(t) = w.t {
                write!(f, ", t={t}")?;
            }
            if let Some(p) = w.point {
                write!(f, ", point={p}")?;
            }
            write!(f, ": {}", w.detail)?;
        }
        Ok(())
    }
}
