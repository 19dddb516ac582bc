//! Interpretation of parsed steps into machine actions.

use proofscript::{scan_words, ProofStep, StepKind, Word, WordKind};

const CHAIN_KEYWORDS: &[&str] = &["then", "with", "also", "finally", "moreover"];
const SHOW_KEYWORDS: &[&str] = &["show", "thus"];
const HAVE_KEYWORDS: &[&str] = &["have", "obtain", "hence"];
/// Clauses after a stated goal that are not part of the goal text.
const TRAILING_CLAUSES: &[&str] = &["using", "unfolding", "sledgehammer"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Action {
    Open { method: Option<String> },
    Close,
    Terminal { method: String },
    Goal { show: bool, key: String, name: Option<String> },
    Chain,
    Struct,
    Using,
    Sorry,
    Comment,
    Unknown,
}

fn is_plain(w: &Word<'_>) -> bool {
    matches!(w.kind, WordKind::Plain)
}

/// Remove comments, preserving everything else verbatim.
fn drop_comments(s: &str) -> String {
    let mut out = String::new();
    let mut pos = 0;
    for w in scan_words(s) {
        if w.kind == WordKind::Comment {
            out.push_str(&s[pos..w.offset]);
            pos = w.offset + w.text.len();
        }
    }
    out.push_str(&s[pos..]);
    out
}

/// Strip one balanced layer of outer parentheses.
fn strip_outer_parens(s: &str) -> &str {
    let t = s.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return t;
    }
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != t.len() {
                    return t; // outer parens do not wrap the whole string
                }
            }
            _ => {}
        }
    }
    t[1..t.len() - 1].trim()
}

/// Canonical form for a method invocation: no comments, no outer
/// parentheses, normalized whitespace.
pub(crate) fn canonical_method(s: &str) -> String {
    let no_comments = drop_comments(s);
    proofscript::normalize_text(strip_outer_parens(&no_comments))
}

/// Canonical form for a stated goal: no comments, normalized whitespace.
pub(crate) fn canonical_goal_key(s: &str) -> String {
    proofscript::normalize_text(&drop_comments(s))
}

fn ident_name(word: &str) -> Option<&str> {
    let name = word.strip_suffix(':')?;
    if !name.is_empty()
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
    {
        Some(name)
    } else {
        None
    }
}

pub(crate) fn interpret(step: &ProofStep) -> Action {
    let text = step.normalized.as_str();
    let words = scan_words(text);
    let plains: Vec<&Word<'_>> = words.iter().filter(|w| is_plain(w)).collect();
    match step.kind {
        StepKind::Sorry => Action::Sorry,
        StepKind::BlockOpen => {
            let first = plains[0];
            let rest = text[first.offset + first.text.len()..].trim();
            let method =
                if rest.is_empty() { None } else { Some(canonical_method(rest)) };
            Action::Open { method }
        }
        StepKind::BlockClose => Action::Close,
        StepKind::TerminalMethod => {
            let first = plains[0];
            match first.text {
                "." | ".." => Action::Terminal { method: first.text.to_string() },
                _ => {
                    // `by <method>`
                    let rest = text[first.offset + first.text.len()..].trim();
                    Action::Terminal { method: canonical_method(rest) }
                }
            }
        }
        StepKind::GoalIntro => {
            let kw = words.iter().find(|w| {
                is_plain(w) && (SHOW_KEYWORDS.contains(&w.text) || HAVE_KEYWORDS.contains(&w.text))
            });
            let Some(kw) = kw else { return Action::Unknown };
            let show = SHOW_KEYWORDS.contains(&kw.text);
            let mut key_start = kw.offset + kw.text.len();
            let mut name = None;
            // Optional fact-name binding right after the keyword.
            let after: Vec<&Word<'_>> =
                words.iter().filter(|w| w.offset >= key_start && is_plain(w)).collect();
            if let Some(first) = after.first() {
                if let Some(n) = ident_name(first.text) {
                    name = Some(n.to_string());
                    key_start = first.offset + first.text.len();
                }
            }
            // Truncate at trailing clauses that are not part of the goal text.
            let key_end = words
                .iter()
                .find(|w| {
                    w.offset >= key_start && is_plain(w) && TRAILING_CLAUSES.contains(&w.text)
                })
                .map(|w| w.offset)
                .unwrap_or(text.len());
            let key = canonical_goal_key(&text[key_start..key_end]);
            Action::Goal { show, key, name }
        }
        StepKind::Structural => match plains[0].text {
            t if CHAIN_KEYWORDS.contains(&t) => Action::Chain,
            "using" => Action::Using,
            _ => Action::Struct,
        },
        StepKind::Other => {
            if plains.is_empty() {
                Action::Comment
            } else {
                Action::Unknown
            }
        }
    }
}
