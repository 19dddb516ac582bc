//! Step splitting and classification.

use crate::lex::{normalize_text, scan_words, Word, WordKind};

/// Keywords that begin a new step when they start a line.
pub const STEP_KEYWORDS: &[&str] = &[
    "proof", "qed", "by", "have", "show", "assume", "fix", "then", "with", "also", "finally",
    "moreover", "obtain", "hence", "thus", "next", "case", "define", "let", "using", "sorry",
    "oops", ".", "..",
];

/// Keywords that begin a new step even in the middle of a line. Kept minimal:
/// these are the tokens whose placement decides block balance and sorry
/// substitution, and terms rarely contain them bare.
const MIDLINE_KEYWORDS: &[&str] = &["proof", "qed", "by", "sorry", "oops", ".", ".."];

const GOAL_KEYWORDS: &[&str] = &["have", "show", "obtain", "thus", "hence"];

const STRUCTURAL_KEYWORDS: &[&str] = &[
    "assume", "fix", "with", "then", "also", "finally", "moreover", "next", "case", "define",
    "let", "using",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `proof [method]`
    BlockOpen,
    /// `qed [method]`
    BlockClose,
    /// `by method`, or the rule/assumption shorthands `.` and `..`
    TerminalMethod,
    /// `have`/`show`/`obtain`/`thus`/`hence` with a stated goal, possibly
    /// behind chaining keywords (`then show ...`).
    GoalIntro,
    /// `assume`, `fix`, `then`, `with`, `also`, `finally`, `moreover`,
    /// `next`, `define`, `let`, `case`, `using`.
    Structural,
    /// A bare `sorry` or `oops`.
    Sorry,
    Other,
}

impl StepKind {
    pub fn is_sorry(self) -> bool {
        matches!(self, StepKind::Sorry)
    }
}

/// One proof step as consumed by the prover transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    /// Verbatim source slice of the step.
    pub text: String,
    pub kind: StepKind,
    /// 1-based position in the sequence.
    pub index: usize,
    /// Whitespace-normalized form of `text` (quoted material verbatim).
    pub normalized: String,
}

impl ProofStep {
    /// Build a synthetic step, e.g. a `sorry` produced by substitution.
    pub fn synthetic(text: &str, index: usize) -> Self {
        let normalized = normalize_text(text);
        ProofStep { kind: classify(&normalized), text: text.to_string(), index, normalized }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseIssue {
    /// A `qed` closed more blocks than were open; the sequence was truncated
    /// just before it (1-based index of the offending step).
    #[error("block close without matching open at step {step_index}; tail dropped")]
    ExcessClose { step_index: usize },
    /// Blocks left open at the end of input.
    #[error("{count} unclosed block(s) at end of input")]
    UnclosedOpens { count: usize },
}

/// A parsed proof body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSequence {
    pub steps: Vec<ProofStep>,
    /// Original input text.
    pub source: String,
    /// Block imbalance diagnostics; empty for well-formed input.
    pub issues: Vec<ParseIssue>,
}

impl StepSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn balanced(&self) -> bool {
        self.issues.is_empty()
    }

    /// `(kind, normalized-text)` pairs; the equality the round-trip property
    /// is stated over.
    pub fn shape(&self) -> Vec<(StepKind, String)> {
        self.steps.iter().map(|s| (s.kind, s.normalized.clone())).collect()
    }
}

/// Classify a step from its normalized text.
pub(crate) fn classify(normalized: &str) -> StepKind {
    let words = scan_words(normalized);
    let mut first_plain = None;
    let mut has_goal_kw = false;
    for w in &words {
        if w.kind != WordKind::Plain {
            continue;
        }
        if first_plain.is_none() {
            first_plain = Some(w.text);
        }
        if GOAL_KEYWORDS.contains(&w.text) {
            has_goal_kw = true;
        }
    }
    let Some(first) = first_plain else { return StepKind::Other };
    match first {
        "proof" => StepKind::BlockOpen,
        "qed" => StepKind::BlockClose,
        "by" | "." | ".." => StepKind::TerminalMethod,
        "sorry" | "oops" => StepKind::Sorry,
        _ if has_goal_kw => StepKind::GoalIntro,
        _ if STRUCTURAL_KEYWORDS.contains(&first) => StepKind::Structural,
        _ => StepKind::Other,
    }
}

/// Split text into steps with no block-balance analysis. This is the raw
/// splitter used by provers to consume step text relative to an open session;
/// [`parse`] adds the balance diagnostics a whole proof body needs.
pub fn split_steps(text: &str) -> Vec<ProofStep> {
    let words = scan_words(text);
    let mut groups: Vec<Vec<Word<'_>>> = Vec::new();
    let mut line_start = true;
    for w in words {
        match w.kind {
            WordKind::Newline => line_start = true,
            WordKind::Comment => {
                if groups.is_empty() {
                    groups.push(Vec::new());
                }
                groups.last_mut().unwrap().push(w);
                // A comment does not consume the start of a line.
            }
            WordKind::Quoted => {
                if groups.is_empty() {
                    groups.push(Vec::new());
                }
                groups.last_mut().unwrap().push(w);
                line_start = false;
            }
            WordKind::Plain => {
                let starts = if line_start {
                    STEP_KEYWORDS.contains(&w.text)
                } else {
                    MIDLINE_KEYWORDS.contains(&w.text)
                };
                if groups.is_empty() || starts {
                    groups.push(Vec::new());
                }
                groups.last_mut().unwrap().push(w);
                line_start = false;
            }
        }
    }

    let mut steps: Vec<ProofStep> = Vec::new();
    for g in &groups {
        let first = g.first().unwrap();
        let last = g.last().unwrap();
        let slice = &text[first.offset..last.offset + last.text.len()];
        let normalized = normalize_text(slice);
        if normalized.is_empty() {
            continue;
        }
        let kind = classify(&normalized);
        steps.push(ProofStep { text: slice.to_string(), kind, index: steps.len() + 1, normalized });
    }
    steps
}

/// Split a candidate proof body into steps.
///
/// Splitting is keyword-driven: a line beginning with a step keyword starts a
/// new step, anything else glues onto the previous one. `proof`, `qed`, `by`,
/// `sorry` and the terminal dots also split mid-line, so goal statements with
/// an attached `by`-clause become two steps. Quoted strings, cartouches and
/// comments are opaque throughout.
///
/// Imbalanced input is returned best-effort: the sequence is truncated just
/// before a close that has no matching open, and trailing unclosed opens are
/// flagged, both via [`StepSequence::issues`].
pub fn parse(text: &str) -> StepSequence {
    let mut steps = split_steps(text);

    let mut issues = Vec::new();
    let mut depth: i64 = 0;
    let mut cut = None;
    for (i, s) in steps.iter().enumerate() {
        match s.kind {
            StepKind::BlockOpen => depth += 1,
            StepKind::BlockClose => {
                depth -= 1;
                if depth < 0 {
                    issues.push(ParseIssue::ExcessClose { step_index: i + 1 });
                    cut = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    if let Some(i) = cut {
        steps.truncate(i);
        depth = 0;
        for s in &steps {
            match s.kind {
                StepKind::BlockOpen => depth += 1,
                StepKind::BlockClose => depth -= 1,
                _ => {}
            }
        }
    }
    if depth > 0 {
        issues.push(ParseIssue::UnclosedOpens { count: depth as usize });
    }

    StepSequence { steps, source: text.to_string(), issues }
}
