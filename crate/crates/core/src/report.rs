//! Inequality reports shared by every checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Relative equality threshold for pipelines built from closed forms and exact geometry.
pub const CLOSED_FORM_TOL: f64 = 1e-6;
/// Relative equality threshold for pipelines that integrate over the sphere.
pub const QUADRATURE_TOL: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    /// The check could not be decided (e.g. a sufficient condition failed).
    Inconclusive,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Equality)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// What the mathematics predicts for a check; used to decide whether a verdict is a surprise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// A theorem says the inequality holds.
    Holds,
    /// The instance is a known counterexample.
    Violated,
    /// No guarantee either way; the verdict is recorded as evidence.
    Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub regime: Regime,
    /// `|gap| ≤ relative·scale` counts as equality.
    pub relative: f64,
    pub quadrature: Option<String>,
    pub quadrature_nodes: Option<usize>,
}

impl Tolerances {
    pub fn closed_form() -> Self {
        Tolerances {
            regime: Regime::ClosedForm,
            relative: CLOSED_FORM_TOL,
            quadrature: None,
            quadrature_nodes: None,
        }
    }

    pub fn quadrature(id: &str, nodes: usize) -> Self {
        Tolerances {
            regime: Regime::Quadrature,
            relative: QUADRATURE_TOL,
            quadrature: Some(id.to_string()),
            quadrature_nodes: Some(nodes),
        }
    }

    pub fn with_relative(mut self, relative: f64) -> Self {
        self.relative = relative;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`; the inequality claims `gap ≥ 0`.
    pub gap: f64,
    pub relative_gap: f64,
    pub scale: f64,
    pub verdict: Verdict,
    pub expected: Expectation,
    pub equality_case: Option<String>,
    pub inputs_digest: String,
    pub tolerances: Tolerances,
    #[serde(default)]
    pub details: BTreeMap<String, f64>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// SHA-256 of the canonical JSON encoding of `inputs`, hex encoded.
pub fn digest<T: Serialize + ?Sized>(inputs: &T) -> String {
    let bytes = serde_json::to_vec(inputs).unwrap_or_default();
    hex::encode(Sha256::digest(&bytes))
}

fn classify(gap: f64, relative_gap: f64, tol: f64) -> Verdict {
    if !gap.is_finite() {
        Verdict::Inconclusive
    } else if relative_gap.abs() <= tol {
        Verdict::Equality
    } else if gap > 0.0 {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

impl InequalityReport {
    /// Judges `lhs ≥ rhs` with scale `max(|lhs|, |rhs|)`.
    pub fn evaluate<T: Serialize + ?Sized>(
        name: &str,
        lhs: f64,
        rhs: f64,
        tolerances: Tolerances,
        expected: Expectation,
        inputs: &T,
    ) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        Self::evaluate_scaled(name, lhs, rhs, scale, tolerances, expected, inputs)
    }

    /// Judges `lhs ≥ rhs` relative to an explicit scale.
    pub fn evaluate_scaled<T: Serialize + ?Sized>(
        name: &str,
        lhs: f64,
        rhs: f64,
        scale: f64,
        tolerances: Tolerances,
        expected: Expectation,
        inputs: &T,
    ) -> Self {
        let gap = lhs - rhs;
        let relative_gap = if scale > 0.0 { gap / scale } else { 0.0 };
        let verdict = classify(gap, relative_gap, tolerances.relative);
        InequalityReport {
            name: name.to_string(),
            lhs,
            rhs,
            gap,
            relative_gap,
            scale,
            verdict,
            expected,
            equality_case: None,
            inputs_digest: digest(inputs),
            tolerances,
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_case(mut self, case: impl Into<String>) -> Self {
        self.equality_case = Some(case.into());
        self
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    /// Re-judges with another relative tolerance. Verdicts that were set by a
    /// side condition (and so differ from the plain classification) are kept.
    pub fn with_relative_tolerance(mut self, relative: f64) -> Self {
        if self.verdict == classify(self.gap, self.relative_gap, self.tolerances.relative) {
            self.verdict = classify(self.gap, self.relative_gap, relative);
        }
        self.tolerances.relative = relative;
        self
    }

    /// A verdict that contradicts what the mathematics predicts.
    pub fn is_unexpected(&self) -> bool {
        match self.expected {
            Expectation::Holds => self.verdict == Verdict::Violated,
            Expectation::Violated => self.verdict.is_ok(),
            Expectation::Evidence => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let t = Tolerances::closed_form();
        let r = InequalityReport::evaluate("x", 1.0, 0.5, t.clone(), Expectation::Holds, &1);
        assert_eq!(r.verdict, Verdict::Holds);
        let r = InequalityReport::evaluate("x", 1.0, 1.0 + 1e-9, t.clone(), Expectation::Holds, &1);
        assert_eq!(r.verdict, Verdict::Equality);
        let r = InequalityReport::evaluate("x", 0.0, 0.0, t.clone(), Expectation::Holds, &1);
        assert_eq!(r.verdict, Verdict::Equality);
        let r = InequalityReport::evaluate("x", 0.9, 1.0, t, Expectation::Holds, &1);
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.is_unexpected());
    }

    #[test]
    fn tolerance_override() {
        let t = Tolerances::closed_form();
        let r = InequalityReport::evaluate("x", 1.0, 0.999, t.clone(), Expectation::Holds, &1);
        assert_eq!(r.verdict, Verdict::Holds);
        let r = r.with_relative_tolerance(1e-2);
        assert_eq!(r.verdict, Verdict::Equality);
        assert_eq!(r.tolerances.relative, 1e-2);
        let r = InequalityReport::evaluate("x", 1.0, 0.5, t, Expectation::Holds, &1).with_verdict(Verdict::Violated);
        assert_eq!(r.with_relative_tolerance(1.0).verdict, Verdict::Violated);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&[1, 2, 3]), digest(&[1, 2, 3]));
        assert_ne!(digest(&[1, 2, 3]), digest(&[1, 2, 4]));
        assert_eq!(digest(&[1]).len(), 64);
    }
}
