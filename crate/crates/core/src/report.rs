//! Verification outcomes with machine-checkable witnesses.

use crate::scalar::{Field, GaussianRational};

/// Witness attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// 1-based basis labels locating the failure (a pair, a triple, or a
    /// single column); empty when the witness is a free-standing vector.
    pub labels: Vec<usize>,
    /// Coordinates of the nonzero residual (or witness vector).
    pub residual: Vec<GaussianRational>,
}

impl Certificate {
    pub fn new<F: Field + Into<GaussianRational>>(labels: Vec<usize>, residual: Vec<F>) -> Self {
        Self {
            labels,
            residual: residual.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationItem {
    pub name: String,
    pub passed: bool,
    /// Human-readable summary, e.g. `"15/15 pairs"`.
    pub detail: String,
    pub certificate: Option<Certificate>,
}

impl VerificationItem {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            certificate: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, certificate: Certificate) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            certificate: Some(certificate),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub items: Vec<VerificationItem>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, item: VerificationItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = VerificationItem>) {
        self.items.extend(items);
    }

    /// Conjunction of all items.
    pub fn overall(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn get(&self, name: &str) -> Option<&VerificationItem> {
        self.items.iter().find(|i| i.name == name)
    }
}
