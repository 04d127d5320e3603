//! Pass/fail reports shared by the axiom checkers.

use serde::Serialize;

/// Outcome of one axiom over all tested cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub cases: usize,
    /// First failing case, when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Accumulates cases for a single axiom, keeping the first witness.
#[derive(Debug)]
pub(crate) struct Tally {
    axiom: &'static str,
    cases: usize,
    witness: Option<String>,
    note: Option<String>,
}

impl Tally {
    pub(crate) fn new(axiom: &'static str) -> Self {
        Tally {
            axiom,
            cases: 0,
            witness: None,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom.to_string(),
            passed: self.witness.is_none(),
            cases: self.cases,
            witness: self.witness,
            note: self.note,
        }
    }
}
