//! The five-attribute abstract prover state.

use serde::{Deserialize, Serialize};

/// State text used for steps that exceed their time budget.
pub const TIMEOUT_MARKER: &str = "error:timeout";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// A goal was just declared; the next step must contain a proof method.
    Prove,
    State,
    Chain,
}

/// Everything the toolkit reads back from a prover after a transition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ItpState {
    /// The proof-state display.
    pub state_text: String,
    /// Defined iff `error` is false.
    pub mode: Option<Mode>,
    /// Available facts, compared as a multiset.
    pub facts: Vec<String>,
    pub error: bool,
    pub finish: bool,
}

impl ItpState {
    pub fn error_state(marker: impl Into<String>) -> Self {
        ItpState {
            state_text: marker.into(),
            mode: None,
            facts: Vec::new(),
            error: true,
            finish: false,
        }
    }

    pub fn is_timeout(&self) -> bool {
        self.error && self.state_text == TIMEOUT_MARKER
    }
}

/// Five-attribute equality; `facts` order does not matter.
pub fn states_equal(a: &ItpState, b: &ItpState) -> bool {
    if a.error != b.error || a.finish != b.finish || a.mode != b.mode || a.state_text != b.state_text
    {
        return false;
    }
    if a.facts.len() != b.facts.len() {
        return false;
    }
    let mut fa = a.facts.clone();
    let mut fb = b.facts.clone();
    fa.sort();
    fb.sort();
    fa == fb
}
