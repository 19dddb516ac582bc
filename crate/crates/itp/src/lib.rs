//! Prover abstraction: states, transitions and sessions.
//!
//! A prover is modeled as a set of proof steps, a set of states and a
//! transition function. Two backends implement the session interface: a
//! deterministic scripted machine (`mini`) driven by a goal-graph file, used
//! for tests and campaigns, and a line-delimited JSON TCP client (`remote`)
//! for talking to a real prover bridge.

pub mod mini;
pub mod remote;
mod script;
mod semantics;
mod session;
mod state;
pub mod wire;

pub use script::{GoalSpec, Script, ScriptError};
pub use session::{
    apply_step, apply_text, is_proof, CheckpointId, ItpSession, SessionError, StepResult,
};
pub use state::{states_equal, ItpState, Mode, TIMEOUT_MARKER};
