//! Rendering step sequences back to text.

use crate::step::{ProofStep, StepKind, StepSequence};

const INDENT: &str = "  ";

/// Render steps, one per line, indented by block depth. Reparsing the result
/// yields the same `(kind, normalized-text)` sequence.
pub fn render_steps<'a, I>(steps: I) -> String
where
    I: IntoIterator<Item = &'a ProofStep>,
{
    let mut out = String::new();
    let mut depth = 0usize;
    for (n, s) in steps.into_iter().enumerate() {
        let line_depth = match s.kind {
            StepKind::BlockOpen => {
                let d = depth;
                depth += 1;
                d
            }
            StepKind::BlockClose => {
                depth = depth.saturating_sub(1);
                depth
            }
            _ => depth,
        };
        if n > 0 {
            out.push('\n');
        }
        for _ in 0..line_depth {
            out.push_str(INDENT);
        }
        out.push_str(&s.normalized);
    }
    out
}

/// Render a whole sequence.
pub fn render(seq: &StepSequence) -> String {
    render_steps(&seq.steps)
}
