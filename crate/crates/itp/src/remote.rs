//! TCP client for a remote prover bridge speaking the wire protocol.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::time::Duration;

use crate::session::{CheckpointId, ItpSession, SessionError, StepResult};
use crate::state::{states_equal, ItpState};
use crate::wire::{Request, Response, ERR_SESSION_CLOSED, ERR_UNKNOWN_CHECKPOINT};

/// Grace added to the step timeout before giving up on the socket.
const IO_GRACE: Duration = Duration::from_secs(30);

pub struct RemoteSession {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
    theorem: String,
    /// States seen so far, by checkpoint, newest last.
    seen: Vec<(CheckpointId, ItpState)>,
    by_id: HashMap<CheckpointId, ItpState>,
    initial: (ItpState, CheckpointId),
    cursor: CheckpointId,
    step_timeout: Duration,
    closed: bool,
}

impl RemoteSession {
    /// Connect and initialize a session for `theorem`.
    pub fn connect(
        addr: &str,
        theorem: &str,
        step_timeout: Duration,
    ) -> Result<Self, SessionError> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true).ok();
        let writer = stream.try_clone()?;
        let mut sess = RemoteSession {
            reader: BufReader::new(stream),
            writer,
            theorem: theorem.to_string(),
            seen: Vec::new(),
            by_id: HashMap::new(),
            initial: (ItpState::error_state("uninitialized"), 0),
            cursor: 0,
            step_timeout,
            closed: false,
        };
        let resp = sess.roundtrip(&Request::Init { theorem: theorem.to_string() }, step_timeout)?;
        let state = resp.state.ok_or_else(|| SessionError::Protocol("init without state".into()))?;
        let id = resp.checkpoint.unwrap_or(0);
        sess.remember(id, state.clone());
        sess.initial = (state, id);
        sess.cursor = id;
        Ok(sess)
    }

    fn remember(&mut self, id: CheckpointId, state: ItpState) {
        self.seen.push((id, state.clone()));
        self.by_id.insert(id, state);
    }

    fn roundtrip(&mut self, req: &Request, budget: Duration) -> Result<Response, SessionError> {
        let line = serde_json::to_string(req)
            .map_err(|e| SessionError::Protocol(format!("encode: {e}")))?;
        self.writer.write_all(line.as_bytes())?;
        self.writer.write_all(b"\n")?;
        self.writer.flush()?;
        self.reader.get_ref().set_read_timeout(Some(budget + IO_GRACE))?;
        let mut buf = String::new();
        let n = self.reader.read_line(&mut buf)?;
        if n == 0 {
            return Err(SessionError::Protocol("connection closed by server".into()));
        }
        let resp: Response = serde_json::from_str(buf.trim_end())
            .map_err(|e| SessionError::Protocol(format!("decode: {e}")))?;
        if resp.ok {
            return Ok(resp);
        }
        match resp.err.as_deref() {
            Some(ERR_SESSION_CLOSED) => Err(SessionError::Closed),
            Some(ERR_UNKNOWN_CHECKPOINT) => Err(SessionError::UnknownCheckpoint(u64::MAX)),
            other => Err(SessionError::Protocol(other.unwrap_or("unknown error").to_string())),
        }
    }

    fn check_open(&self) -> Result<(), SessionError> {
        if self.closed {
            Err(SessionError::Closed)
        } else {
            Ok(())
        }
    }
}

impl ItpSession for RemoteSession {
    fn theorem(&self) -> &str {
        &self.theorem
    }

    fn initial(&self) -> (ItpState, CheckpointId) {
        self.initial.clone()
    }

    fn current(&self) -> (ItpState, CheckpointId) {
        (self.by_id[&self.cursor].clone(), self.cursor)
    }

    fn apply_from(
        &mut self,
        from: CheckpointId,
        step: &str,
        timeout: Option<Duration>,
    ) -> Result<StepResult, SessionError> {
        self.check_open()?;
        let budget = timeout.unwrap_or(self.step_timeout);
        let resp = self.roundtrip(
            &Request::Apply {
                from,
                step: step.to_string(),
                timeout_ms: budget.as_millis() as u64,
            },
            budget,
        )?;
        let state =
            resp.state.ok_or_else(|| SessionError::Protocol("apply without state".into()))?;
        if state.error {
            return Ok(StepResult { state, checkpoint: None });
        }
        let id = resp
            .checkpoint
            .ok_or_else(|| SessionError::Protocol("apply without checkpoint".into()))?;
        self.remember(id, state.clone());
        self.cursor = id;
        Ok(StepResult { state, checkpoint: Some(id) })
    }

    fn state_at(&self, id: CheckpointId) -> Result<ItpState, SessionError> {
        self.by_id.get(&id).cloned().ok_or(SessionError::UnknownCheckpoint(id))
    }

    fn restore(&mut self, id: CheckpointId) -> Result<ItpState, SessionError> {
        self.check_open()?;
        let s = self.state_at(id)?;
        self.cursor = id;
        Ok(s)
    }

    fn restore_state(&mut self, s: &ItpState) -> Result<CheckpointId, SessionError> {
        self.check_open()?;
        for (id, st) in self.seen.iter().rev() {
            if states_equal(st, s) {
                self.cursor = *id;
                return Ok(*id);
            }
        }
        Err(SessionError::UnknownCheckpoint(u64::MAX))
    }

    fn close(&mut self) {
        if !self.closed {
            let _ = self.roundtrip(&Request::Close, Duration::from_secs(5));
            self.closed = true;
        }
    }

    fn is_closed(&self) -> bool {
        self.closed
    }
}

impl Drop for RemoteSession {
    fn drop(&mut self) {
        self.close();
    }
}
