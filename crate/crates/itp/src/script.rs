//! Goal-graph script files for the scripted prover.
//!
//! Format: JSON with `{goals: [{id, solvable_by: [...], children: [...],
//! conjectures: {text -> id}}], root, universe: [method names]}`. An optional
//! per-goal `timeout_by` lists methods that simulate a step timeout.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::semantics::{canonical_goal_key, canonical_method};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoalSpec {
    pub id: String,
    #[serde(default)]
    pub solvable_by: Vec<String>,
    #[serde(default)]
    pub children: Vec<String>,
    #[serde(default)]
    pub conjectures: BTreeMap<String, String>,
    /// Methods that "time out" on this goal instead of failing outright.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timeout_by: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Script {
    pub goals: Vec<GoalSpec>,
    pub root: String,
    pub universe: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate goal id {0:?}")]
    DuplicateGoal(String),
    #[error("unknown goal id {0:?} referenced by {1:?}")]
    UnknownGoal(String, String),
    #[error("root goal {0:?} not declared")]
    UnknownRoot(String),
    #[error("goal {0:?} is not reachable from the root")]
    Unreachable(String),
    #[error("goal graph has a cycle through {0:?}")]
    Cycle(String),
    #[error("method {0:?} on goal {1:?} is not in the universe")]
    UnknownMethod(String, String),
}

impl Script {
    pub fn from_json(text: &str) -> Result<Self, ScriptError> {
        let mut s: Script = serde_json::from_str(text)?;
        s.canonicalize();
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, ScriptError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Normalize conjecture keys and method names so lookups match
    /// parser-normalized step text.
    fn canonicalize(&mut self) {
        for g in &mut self.goals {
            g.solvable_by = g.solvable_by.iter().map(|m| canonical_method(m)).collect();
            g.timeout_by = g.timeout_by.iter().map(|m| canonical_method(m)).collect();
            g.conjectures =
                g.conjectures.iter().map(|(k, v)| (canonical_goal_key(k), v.clone())).collect();
        }
        self.universe = self.universe.iter().map(|m| canonical_method(m)).collect();
    }

    pub fn validate(&self) -> Result<(), ScriptError> {
        let mut ids = HashSet::new();
        for g in &self.goals {
            if !ids.insert(g.id.as_str()) {
                return Err(ScriptError::DuplicateGoal(g.id.clone()));
            }
        }
        let index: HashMap<&str, &GoalSpec> =
            self.goals.iter().map(|g| (g.id.as_str(), g)).collect();
        if !index.contains_key(self.root.as_str()) {
            return Err(ScriptError::UnknownRoot(self.root.clone()));
        }
        let universe: HashSet<&str> = self.universe.iter().map(String::as_str).collect();
        for g in &self.goals {
            for target in g.children.iter().chain(g.conjectures.values()) {
                if !index.contains_key(target.as_str()) {
                    return Err(ScriptError::UnknownGoal(target.clone(), g.id.clone()));
                }
            }
            for m in g.solvable_by.iter().chain(g.timeout_by.iter()) {
                if !universe.contains(m.as_str()) {
                    return Err(ScriptError::UnknownMethod(m.clone(), g.id.clone()));
                }
            }
        }
        // Reachability and acyclicity over children + conjecture edges.
        let mut seen = HashSet::new();
        let mut on_path = HashSet::new();
        fn visit<'a>(
            id: &'a str,
            index: &HashMap<&'a str, &'a GoalSpec>,
            seen: &mut HashSet<&'a str>,
            on_path: &mut HashSet<&'a str>,
        ) -> Result<(), ScriptError> {
            if on_path.contains(id) {
                return Err(ScriptError::Cycle(id.to_string()));
            }
            if !seen.insert(id) {
                return Ok(());
            }
            on_path.insert(id);
            let g = index[id];
            for next in g.children.iter().chain(g.conjectures.values()) {
                // A conjecture entry mapping to the goal itself is a
                // restatement (for `show` with the goal's own text), not an
                // edge.
                if next != id {
                    visit(next.as_str(), index, seen, on_path)?;
                }
            }
            on_path.remove(id);
            Ok(())
        }
        visit(self.root.as_str(), &index, &mut seen, &mut on_path)?;
        for g in &self.goals {
            if !seen.contains(g.id.as_str()) {
                return Err(ScriptError::Unreachable(g.id.clone()));
            }
        }
        Ok(())
    }

    pub fn goal(&self, id: &str) -> Option<&GoalSpec> {
        self.goals.iter().find(|g| g.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(root_extra: &str) -> String {
        format!(
            r#"{{"goals":[{{"id":"root","solvable_by":["auto"]{root_extra}}}],"root":"root","universe":["auto"]}}"#
        )
    }

    #[test]
    fn loads_minimal() {
        let s = Script::from_json(&minimal("")).unwrap();
        assert_eq!(s.root, "root");
    }

    #[test]
    fn rejects_unknown_child() {
        let err = Script::from_json(&minimal(r#","children":["ghost"]"#)).unwrap_err();
        assert!(matches!(err, ScriptError::UnknownGoal(..)));
    }

    #[test]
    fn rejects_method_outside_universe() {
        let s = r#"{"goals":[{"id":"root","solvable_by":["sos"]}],"root":"root","universe":["auto"]}"#;
        assert!(matches!(Script::from_json(s), Err(ScriptError::UnknownMethod(..))));
    }

    #[test]
    fn rejects_cycle() {
        let s = r#"{"goals":[
            {"id":"root","children":["a"]},
            {"id":"a","children":["root"]}
        ],"root":"root","universe":[]}"#;
        assert!(matches!(Script::from_json(s), Err(ScriptError::Cycle(_))));
    }

    #[test]
    fn rejects_unreachable() {
        let s = r#"{"goals":[
            {"id":"root","solvable_by":[]},
            {"id":"island","solvable_by":[]}
        ],"root":"root","universe":[]}"#;
        assert!(matches!(Script::from_json(s), Err(ScriptError::Unreachable(_))));
    }

    #[test]
    fn conjecture_keys_normalized_outside_quotes() {
        let s = r#"{"goals":[
            {"id":"root","conjectures":{"\"x = y\"   for   a::real":"c"}},
            {"id":"c","solvable_by":["auto"]}
        ],"root":"root","universe":["auto"]}"#;
        let script = Script::from_json(s).unwrap();
        assert!(script.goal("root").unwrap().conjectures.contains_key("\"x = y\" for a::real"));
    }
}
