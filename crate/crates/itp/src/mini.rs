//! Deterministic scripted prover.
//!
//! The machine replays steps against a goal graph loaded from a script file.
//! Goals are solved either in one shot (`by m` with `m` in the goal's
//! `solvable_by` set) or by opening a sub-proof block. Mode transitions follow
//! the block discipline: declaring a goal enters prove mode, discharging it
//! returns to state mode, chaining keywords enter chain mode.

use std::collections::HashMap;
use std::time::Duration;

use proofscript::{split_steps, ProofStep};

use crate::script::{GoalSpec, Script};
use crate::semantics::{interpret, Action};
use crate::session::{CheckpointId, ItpSession, SessionError, StepResult};
use crate::state::{ItpState, Mode, TIMEOUT_MARKER};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Intro {
    Have { name: String },
    Show,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Focus {
    goal: usize,
    intro: Intro,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Frame {
    /// Goal this proof block is discharging.
    goal: usize,
    /// Sub-goals still to be shown in this block.
    to_show: Vec<usize>,
    /// Facts proved so far in this block.
    facts: Vec<String>,
    /// Goal currently being proven, if one was declared.
    focus: Option<Focus>,
    mode: Mode,
}

/// Full machine configuration; cloning it is a checkpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Frames {
    frames: Vec<Frame>,
    finished: bool,
}

struct Machine {
    script: Script,
    index: HashMap<String, usize>,
}

enum Fail {
    Code(&'static str),
    Timeout,
}

impl Machine {
    fn new(script: Script) -> Self {
        let index = script.goals.iter().enumerate().map(|(i, g)| (g.id.clone(), i)).collect();
        Machine { script, index }
    }

    fn goal(&self, i: usize) -> &GoalSpec {
        &self.script.goals[i]
    }

    fn initial(&self) -> Frames {
        let root = self.index[&self.script.root];
        Frames {
            frames: vec![Frame {
                goal: root,
                to_show: vec![root],
                facts: Vec::new(),
                focus: Some(Focus { goal: root, intro: Intro::Show }),
                mode: Mode::Prove,
            }],
            finished: false,
        }
    }

    fn state_of(&self, f: &Frames) -> ItpState {
        let facts: Vec<String> = f.frames.iter().flat_map(|fr| fr.facts.clone()).collect();
        if f.finished {
            return ItpState {
                state_text: "no goals".into(),
                mode: Some(Mode::State),
                facts,
                error: false,
                finish: true,
            };
        }
        let top = f.frames.last().unwrap();
        let goal = top
            .focus
            .as_ref()
            .map(|fo| fo.goal)
            .or_else(|| top.to_show.first().copied())
            .unwrap_or(top.goal);
        let pending: usize = f
            .frames
            .iter()
            .map(|fr| {
                fr.to_show.len()
                    + usize::from(matches!(fr.focus, Some(Focus { intro: Intro::Have { .. }, .. })))
            })
            .sum();
        ItpState {
            state_text: format!("goal:{}|pending:{}", self.goal(goal).id, pending),
            mode: Some(top.mode),
            facts,
            error: false,
            finish: false,
        }
    }

    fn solvable(&self, goal: usize, method: &str) -> bool {
        self.goal(goal).solvable_by.iter().any(|m| m == method)
    }

    fn times_out(&self, goal: usize, method: &str) -> bool {
        self.goal(goal).timeout_by.iter().any(|m| m == method)
    }

    fn children(&self, goal: usize) -> Vec<usize> {
        self.goal(goal).children.iter().map(|c| self.index[c]).collect()
    }

    fn conjecture(&self, goal: usize, key: &str) -> Option<usize> {
        self.goal(goal).conjectures.get(key).map(|id| self.index[id])
    }

    /// One transition. Errors leave the configuration untouched.
    fn apply(&self, f: &Frames, step: &ProofStep) -> Result<Frames, Fail> {
        let action = interpret(step);
        if action == Action::Comment {
            return Ok(f.clone());
        }
        if f.finished {
            return Err(Fail::Code("error:finished"));
        }
        let mut next = f.clone();
        let top = next.frames.last_mut().unwrap();
        match action {
            Action::Comment => unreachable!(),
            Action::Sorry => {
                if top.mode != Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                discharge_focus(&mut next);
                Ok(next)
            }
            Action::Using => {
                if top.mode != Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                Ok(next)
            }
            Action::Chain => {
                if top.mode == Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                top.mode = Mode::Chain;
                Ok(next)
            }
            Action::Struct => {
                if top.mode == Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                top.mode = Mode::State;
                Ok(next)
            }
            Action::Goal { show, key, name } => {
                if top.mode == Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                let target = if show {
                    let id = if key == "?thesis" {
                        top.to_show.first().copied()
                    } else {
                        self.conjecture(top.goal, &key).filter(|id| top.to_show.contains(id))
                    };
                    id.ok_or(Fail::Code("error:not-pending"))?
                } else {
                    self.conjecture(top.goal, &key).ok_or(Fail::Code("error:unknown-conjecture"))?
                };
                let intro = if show {
                    Intro::Show
                } else {
                    Intro::Have { name: name.unwrap_or_else(|| key.clone()) }
                };
                top.focus = Some(Focus { goal: target, intro });
                top.mode = Mode::Prove;
                Ok(next)
            }
            Action::Terminal { method } => {
                if top.mode != Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                let goal = top.focus.as_ref().ok_or(Fail::Code("error:mode"))?.goal;
                if self.times_out(goal, &method) {
                    return Err(Fail::Timeout);
                }
                if !self.solvable(goal, &method) {
                    return Err(Fail::Code("error:no-method"));
                }
                discharge_focus(&mut next);
                Ok(next)
            }
            Action::Open { method } => {
                if top.mode != Mode::Prove {
                    return Err(Fail::Code("error:mode"));
                }
                let goal = top.focus.as_ref().ok_or(Fail::Code("error:mode"))?.goal;
                let to_show = match method.as_deref() {
                    None => {
                        let kids = self.children(goal);
                        if kids.is_empty() {
                            vec![goal]
                        } else {
                            kids
                        }
                    }
                    Some("-") => vec![goal],
                    Some(m) => {
                        if self.times_out(goal, m) {
                            return Err(Fail::Timeout);
                        }
                        if self.solvable(goal, m) {
                            Vec::new()
                        } else {
                            let kids = self.children(goal);
                            if !kids.is_empty()
                                && self.script.universe.iter().any(|u| u == m)
                            {
                                kids
                            } else {
                                return Err(Fail::Code("error:no-method"));
                            }
                        }
                    }
                };
                next.frames.push(Frame {
                    goal,
                    to_show,
                    facts: Vec::new(),
                    focus: None,
                    mode: Mode::State,
                });
                Ok(next)
            }
            Action::Close => {
                if next.frames.len() <= 1 {
                    return Err(Fail::Code("error:unmatched-close"));
                }
                let top = next.frames.last().unwrap();
                if top.focus.is_some() || top.mode == Mode::Prove {
                    return Err(Fail::Code("error:pending-goal"));
                }
                if !top.to_show.is_empty() {
                    return Err(Fail::Code("error:pending-goals"));
                }
                next.frames.pop();
                discharge_focus(&mut next);
                Ok(next)
            }
            Action::Unknown => Err(Fail::Code("error:unknown-step")),
        }
    }
}

/// Resolve the innermost frame's focused goal: a discharged `show` retires a
/// pending sub-goal, a discharged `have` becomes an in-scope fact. When the
/// bottom frame runs out of pending goals the theorem is proved.
fn discharge_focus(f: &mut Frames) {
    let bottom = f.frames.len() == 1;
    let top = f.frames.last_mut().unwrap();
    let Some(Focus { goal, intro }) = top.focus.take() else {
        return;
    };
    match intro {
        Intro::Have { name } if !bottom => top.facts.push(name),
        _ => {
            if let Some(p) = top.to_show.iter().position(|g| *g == goal) {
                top.to_show.remove(p);
            }
        }
    }
    top.mode = Mode::State;
    if bottom && top.to_show.is_empty() {
        f.finished = true;
    }
}

/// A session over the scripted prover. Checkpointing clones the frame stack,
/// so restores are O(1) and never replay.
pub struct MiniSession {
    machine: Machine,
    theorem: String,
    checkpoints: Vec<(Frames, ItpState)>,
    cursor: CheckpointId,
    closed: bool,
}

impl MiniSession {
    pub fn new(script: Script, theorem: &str) -> Result<Self, SessionError> {
        script.validate().map_err(|e| SessionError::Script(e.to_string()))?;
        let machine = Machine::new(script);
        let frames = machine.initial();
        let state = machine.state_of(&frames);
        Ok(MiniSession {
            machine,
            theorem: theorem.to_string(),
            checkpoints: vec![(frames, state)],
            cursor: 0,
            closed: false,
        })
    }

    pub fn script(&self) -> &Script {
        &self.machine.script
    }

    fn check_open(&self) -> Result<(), SessionError> {
        if self.closed {
            Err(SessionError::Closed)
        } else {
            Ok(())
        }
    }

    fn frames_at(&self, id: CheckpointId) -> Result<&Frames, SessionError> {
        self.checkpoints
            .get(id as usize)
            .map(|(f, _)| f)
            .ok_or(SessionError::UnknownCheckpoint(id))
    }
}

impl ItpSession for MiniSession {
    fn theorem(&self) -> &str {
        &self.theorem
    }

    fn initial(&self) -> (ItpState, CheckpointId) {
        (self.checkpoints[0].1.clone(), 0)
    }

    fn current(&self) -> (ItpState, CheckpointId) {
        (self.checkpoints[self.cursor as usize].1.clone(), self.cursor)
    }

    fn apply_from(
        &mut self,
        from: CheckpointId,
        step: &str,
        _timeout: Option<Duration>,
    ) -> Result<StepResult, SessionError> {
        self.check_open()?;
        let mut frames = self.frames_at(from)?.clone();
        for s in &split_steps(step) {
            match self.machine.apply(&frames, s) {
                Ok(next) => frames = next,
                Err(Fail::Code(code)) => {
                    return Ok(StepResult { state: ItpState::error_state(code), checkpoint: None })
                }
                Err(Fail::Timeout) => {
                    return Ok(StepResult {
                        state: ItpState::error_state(TIMEOUT_MARKER),
                        checkpoint: None,
                    })
                }
            }
        }
        let state = self.machine.state_of(&frames);
        let id = self.checkpoints.len() as CheckpointId;
        self.checkpoints.push((frames, state.clone()));
        self.cursor = id;
        Ok(StepResult { state, checkpoint: Some(id) })
    }

    fn state_at(&self, id: CheckpointId) -> Result<ItpState, SessionError> {
        self.checkpoints
            .get(id as usize)
            .map(|(_, s)| s.clone())
            .ok_or(SessionError::UnknownCheckpoint(id))
    }

    fn restore(&mut self, id: CheckpointId) -> Result<ItpState, SessionError> {
        self.check_open()?;
        let s = self.state_at(id)?;
        self.cursor = id;
        Ok(s)
    }

    fn restore_state(&mut self, s: &ItpState) -> Result<CheckpointId, SessionError> {
        self.check_open()?;
        for (i, (_, st)) in self.checkpoints.iter().enumerate().rev() {
            if crate::state::states_equal(st, s) {
                self.cursor = i as CheckpointId;
                return Ok(self.cursor);
            }
        }
        Err(SessionError::UnknownCheckpoint(u64::MAX))
    }

    fn close(&mut self) {
        self.closed = true;
    }

    fn is_closed(&self) -> bool {
        self.closed
    }
}
