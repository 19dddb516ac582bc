//! Line-delimited JSON protocol for remote prover bridges (client side).
//!
//! Requests: `{"op":"init","theorem":...}`,
//! `{"op":"apply","from":N,"step":...,"timeout_ms":N}`,
//! `{"op":"state","checkpoint":N}`, `{"op":"close"}`.
//! Responses: `{"ok":true,"state":{state_text,mode,facts,error,finish},
//! "checkpoint":N}` or `{"ok":false,"err":code}`. A failed proof step is not a
//! protocol error: it comes back `ok:true` with `state.error = true` and no
//! new checkpoint.

use serde::{Deserialize, Serialize};

use crate::session::CheckpointId;
use crate::state::ItpState;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Request {
    Init { theorem: String },
    Apply { from: CheckpointId, step: String, timeout_ms: u64 },
    State { checkpoint: CheckpointId },
    Close,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Response {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<ItpState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<CheckpointId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub err: Option<String>,
}

impl Response {
    pub fn ok_state(state: ItpState, checkpoint: Option<CheckpointId>) -> Self {
        Response { ok: true, state: Some(state), checkpoint, err: None }
    }

    pub fn fail(code: &str) -> Self {
        Response { ok: false, state: None, checkpoint: None, err: Some(code.to_string()) }
    }
}

pub const ERR_SESSION_CLOSED: &str = "session_closed";
pub const ERR_UNKNOWN_CHECKPOINT: &str = "unknown_checkpoint";
pub const ERR_BAD_REQUEST: &str = "bad_request";
