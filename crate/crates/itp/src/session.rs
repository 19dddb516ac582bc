//! Prover sessions: checkpointed transitions over a theorem context.

use std::time::Duration;

use proofscript::{parse, ProofStep, StepKind};

use crate::state::ItpState;

pub type CheckpointId = u64;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("session is closed")]
    Closed,
    #[error("unknown checkpoint {0}")]
    UnknownCheckpoint(CheckpointId),
    #[error("prover io: {0}")]
    Io(#[from] std::io::Error),
    #[error("protocol: {0}")]
    Protocol(String),
    #[error("script: {0}")]
    Script(String),
}

/// Result of one transition. `checkpoint` is absent when the step failed: the
/// session stays at the `from` checkpoint and nothing is recorded, so failed
/// steps never corrupt a session.
#[derive(Debug, Clone)]
pub struct StepResult {
    pub state: ItpState,
    pub checkpoint: Option<CheckpointId>,
}

/// A live prover session bound to one theorem context.
///
/// A session is confined to one worker at a time; distinct sessions are
/// independent. Every successful transition yields a checkpoint that later
/// transitions can branch from in O(1).
pub trait ItpSession: Send {
    fn theorem(&self) -> &str;

    /// State right after the theorem statement, and its checkpoint.
    fn initial(&self) -> (ItpState, CheckpointId);

    /// Cursor position: the state of the most recent apply/restore.
    fn current(&self) -> (ItpState, CheckpointId);

    /// Apply step text from a checkpoint. `timeout` overrides the session's
    /// per-step default; a step exceeding it yields an error state carrying
    /// the timeout marker.
    fn apply_from(
        &mut self,
        from: CheckpointId,
        step: &str,
        timeout: Option<Duration>,
    ) -> Result<StepResult, SessionError>;

    fn state_at(&self, id: CheckpointId) -> Result<ItpState, SessionError>;

    /// Move the cursor back to a checkpoint.
    fn restore(&mut self, id: CheckpointId) -> Result<ItpState, SessionError>;

    /// Move the cursor to the most recent checkpoint whose state equals `s`
    /// on all five attributes.
    fn restore_state(&mut self, s: &ItpState) -> Result<CheckpointId, SessionError>;

    fn close(&mut self);

    fn is_closed(&self) -> bool;

    /// Apply from the cursor.
    fn apply(&mut self, step: &str) -> Result<StepResult, SessionError> {
        let (_, c) = self.current();
        self.apply_from(c, step, None)
    }
}

/// Apply a single parsed step.
pub fn apply_step(
    sess: &mut dyn ItpSession,
    from: CheckpointId,
    step: &ProofStep,
    timeout: Option<Duration>,
) -> Result<StepResult, SessionError> {
    sess.apply_from(from, &step.normalized, timeout)
}

/// Lifted transition over a whole text: parse, then fold step applications,
/// stopping at the first error state. An empty text leaves the state
/// unchanged.
pub fn apply_text(
    sess: &mut dyn ItpSession,
    from: CheckpointId,
    text: &str,
) -> Result<StepResult, SessionError> {
    let seq = parse(text);
    let mut at = from;
    let mut state = sess.state_at(from)?;
    for step in &seq.steps {
        let r = sess.apply_from(at, &step.normalized, None)?;
        state = r.state;
        match r.checkpoint {
            Some(c) => at = c,
            None => return Ok(StepResult { state, checkpoint: None }),
        }
    }
    Ok(StepResult { state, checkpoint: Some(at) })
}

/// Is `proof_text` a proof of the session's theorem? Texts containing `sorry`
/// steps are semi-proofs and never count, regardless of what the prover says.
pub fn is_proof(sess: &mut dyn ItpSession, proof_text: &str) -> Result<bool, SessionError> {
    let seq = parse(proof_text);
    if seq.steps.iter().any(|s| s.kind == StepKind::Sorry) {
        return Ok(false);
    }
    let (_, init) = sess.initial();
    let r = apply_text(sess, init, proof_text)?;
    Ok(!r.state.error && r.state.finish)
}
