//! Brute-force substitution oracle.
//!
//! Enumerates every candidate obtained by replacing a subset of blocks and
//! by-clauses of a proposal with `sorry`, replays each candidate on the
//! scripted prover, and identifies the unique maximal verifying candidate
//! under the coarsening order. Built directly on the parser and the scripted
//! machine, sharing no code with the salvage implementation it checks.

use itp::mini::MiniSession;
use itp::{apply_text, ItpSession, Mode, Script};
use proofscript::{block_tree, parse, render_steps, ProofStep, StepKind};

/// One substitution candidate. `substituted` lists the replaced spans of the
/// original step sequence (by-clauses as zero-width `(i, i)` spans).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub text: String,
    pub substituted: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy)]
struct SlotNode {
    span: (usize, usize),
    first_child: Option<usize>,
    next_sibling: Option<usize>,
}

fn slot_forest(proposal: &str) -> Option<(Vec<ProofStep>, Vec<SlotNode>, Vec<usize>)> {
    let seq = parse(proposal);
    if !seq.balanced() {
        return None;
    }
    let tree = block_tree(&seq).ok()?;
    let mut spans: Vec<(usize, usize)> = tree.blocks.iter().map(|b| (b.start, b.end)).collect();
    spans.extend(tree.by_slots.iter().map(|i| (*i, *i)));
    // Parent = smallest strictly-containing span.
    spans.sort_by_key(|(s, e)| (*s, std::cmp::Reverse(*e)));
    let mut nodes: Vec<SlotNode> =
        spans.iter().map(|s| SlotNode { span: *s, first_child: None, next_sibling: None }).collect();
    let mut roots = Vec::new();
    for i in 0..nodes.len() {
        let (s, e) = nodes[i].span;
        let mut parent = None;
        for (j, node) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            let (ps, pe) = node.span;
            if ps <= s && e <= pe && (ps, pe) != (s, e) {
                match parent {
                    None => parent = Some(j),
                    Some(p) => {
                        let (qs, qe) = nodes[p].span;
                        if qs <= ps && pe <= qe {
                            parent = Some(j);
                        }
                    }
                }
            }
        }
        match parent {
            None => roots.push(i),
            Some(p) => {
                let head = nodes[p].first_child;
                nodes[i].next_sibling = head;
                nodes[p].first_child = Some(i);
            }
        }
    }
    Some((seq.steps, nodes, roots))
}

fn children(nodes: &[SlotNode], n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = nodes[n].first_child;
    while let Some(c) = cur {
        out.push(c);
        cur = nodes[c].next_sibling;
    }
    out
}

fn choices(nodes: &[SlotNode], n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![vec![nodes[n].span]];
    out.extend(cross(nodes, &children(nodes, n)));
    out
}

fn cross(nodes: &[SlotNode], list: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut acc: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for &c in list {
        let cs = choices(nodes, c);
        let mut next = Vec::with_capacity(acc.len() * cs.len());
        for base in &acc {
            for choice in &cs {
                let mut v = base.clone();
                v.extend_from_slice(choice);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Number of candidates by the slot-tree recursion: a slot contributes
/// `1 + product(children)` and disjoint slots multiply.
pub fn count_candidates(proposal: &str) -> Option<u128> {
    let (_, nodes, roots) = slot_forest(proposal)?;
    fn count(nodes: &[SlotNode], n: usize) -> u128 {
        1 + children(nodes, n).iter().map(|c| count(nodes, *c)).product::<u128>()
    }
    Some(roots.iter().map(|r| count(&nodes, *r)).product())
}

fn candidate_text(steps: &[ProofStep], subst: &[(usize, usize)]) -> String {
    let mut live: Vec<Option<ProofStep>> = steps.iter().cloned().map(Some).collect();
    for &(s, e) in subst {
        for i in s..e {
            live[i - 1] = None;
        }
        live[e - 1] = Some(ProofStep::synthetic("sorry", e));
    }
    render_steps(live.iter().flatten())
}

/// Enumerate all substitution candidates, or `None` when the proposal is
/// unbalanced or has more than `cap` slots.
pub fn enumerate_candidates(proposal: &str, cap: usize) -> Option<Vec<Candidate>> {
    let (steps, nodes, roots) = slot_forest(proposal)?;
    if nodes.len() > cap {
        return None;
    }
    let mut out = Vec::new();
    for mut subst in cross(&nodes, &roots) {
        subst.sort();
        out.push(Candidate { text: candidate_text(&steps, &subst), substituted: subst });
    }
    Some(out)
}

/// Does `fine` refine `coarse`, i.e. is `coarse` obtainable from `fine` by
/// substituting more blocks or by-clauses?
pub fn refines(fine: &Candidate, coarse: &Candidate) -> bool {
    fine.substituted
        .iter()
        .all(|(s, e)| coarse.substituted.iter().any(|(cs, ce)| cs <= s && e <= ce))
}

pub fn verify_on_mini(script: &Script, theorem: &str, text: &str) -> bool {
    let mut sess = MiniSession::new(script.clone(), theorem).unwrap();
    let (_, init) = sess.initial();
    match apply_text(&mut sess, init, text) {
        Ok(r) => !r.state.error && r.state.finish,
        Err(_) => false,
    }
}

#[derive(Debug)]
pub enum MaxOutcome {
    Overflow,
    /// No candidate verifies (the proposal is unsalvageable at block
    /// granularity).
    NoVerifying,
    Unique(Candidate),
    /// More than one maximal verifying candidate; the instance violates the
    /// unique-maximum assumption.
    Ambiguous(Vec<Candidate>),
}

/// The unique maximal verifying candidate, by exhaustive replay.
pub fn maximal_verifying(
    script: &Script,
    theorem: &str,
    proposal: &str,
    cap: usize,
) -> MaxOutcome {
    let Some(cands) = enumerate_candidates(proposal, cap) else {
        return MaxOutcome::Overflow;
    };
    let verifying: Vec<Candidate> = cands
        .into_iter()
        .filter(|c| verify_on_mini(script, theorem, &c.text))
        .collect();
    if verifying.is_empty() {
        return MaxOutcome::NoVerifying;
    }
    let maximal: Vec<Candidate> = verifying
        .iter()
        .filter(|v| {
            !verifying
                .iter()
                .any(|w| w.substituted != v.substituted && refines(w, v))
        })
        .cloned()
        .collect();
    match maximal.len() {
        1 => {
            let m = maximal.into_iter().next().unwrap();
            // Unique maximum, not just unique maximal: everything refines to it.
            if verifying.iter().all(|v| refines(&m, v)) {
                MaxOutcome::Unique(m)
            } else {
                MaxOutcome::Ambiguous(vec![m])
            }
        }
        _ => MaxOutcome::Ambiguous(maximal),
    }
}

/// Can every pending goal of this candidate be closed by one of `methods` or
/// the hammer? Replays the candidate and inspects the goal under focus at
/// each `sorry`.
pub fn portfolio_completable(
    script: &Script,
    theorem: &str,
    candidate_text: &str,
    methods: &[String],
    hammer: Option<&str>,
) -> bool {
    let mut sess = MiniSession::new(script.clone(), theorem).unwrap();
    let (mut state, mut at) = sess.initial();
    for step in &parse(candidate_text).steps {
        if step.kind == StepKind::Sorry {
            if state.mode != Some(Mode::Prove) {
                return false;
            }
            let Some(goal_id) = state
                .state_text
                .strip_prefix("goal:")
                .and_then(|rest| rest.split('|').next())
            else {
                return false;
            };
            let Some(goal) = script.goal(goal_id) else { return false };
            let closable = methods
                .iter()
                .map(String::as_str)
                .chain(hammer)
                .any(|m| {
                    goal.solvable_by.iter().any(|s| s == m)
                        && !goal.timeout_by.iter().any(|t| t == m)
                });
            if !closable {
                return false;
            }
        }
        match sess.apply_from(at, &step.normalized, None) {
            Ok(r) if !r.state.error => {
                state = r.state;
                at = r.checkpoint.unwrap();
            }
            _ => return false,
        }
    }
    state.finish
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_blocks_give_four_candidates() {
        let text = "proof -\nshow \"a\" sorry\nqed\nproof -\nshow \"b\" sorry\nqed";
        assert_eq!(count_candidates(text), Some(4));
        assert_eq!(enumerate_candidates(text, 16).unwrap().len(), 4);
    }

    #[test]
    fn nested_blocks_give_three_not_four() {
        let text = "proof -\nhave \"a\"\nproof -\nshow \"b\" sorry\nqed\nqed";
        assert_eq!(count_candidates(text), Some(3));
    }

    #[test]
    fn by_clauses_are_slots() {
        // outer block + inner by: 1 + (1 + 1) = 3
        let text = "proof -\nshow \"a\" by auto\nqed";
        assert_eq!(count_candidates(text), Some(3));
        let cands = enumerate_candidates(text, 16).unwrap();
        let texts: Vec<&str> = cands.iter().map(|c| c.text.as_str()).collect();
        assert!(texts.contains(&"sorry"));
        assert!(texts.contains(&"proof -\n  show \"a\"\n  sorry\nqed"));
    }

    #[test]
    fn refinement_order() {
        let fine = Candidate { text: String::new(), substituted: vec![(3, 3)] };
        let coarse = Candidate { text: String::new(), substituted: vec![(1, 5)] };
        assert!(refines(&fine, &coarse));
        assert!(!refines(&coarse, &fine));
    }
}
