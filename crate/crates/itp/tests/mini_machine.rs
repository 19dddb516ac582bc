//! Behavior of the scripted prover machine.

use itp::mini::MiniSession;
use itp::{apply_text, is_proof, states_equal, ItpSession, Mode, Script};

fn two_level_script() -> Script {
    Script::from_json(
        r#"{
        "goals": [
            {"id": "root", "children": [], "solvable_by": ["blast"],
             "conjectures": {"\"P\"": "p", "\"Q\"": "q"}},
            {"id": "p", "solvable_by": ["auto"]},
            {"id": "q", "solvable_by": ["simp"], "timeout_by": ["slow"],
             "conjectures": {"\"Q0\"": "q0"}},
            {"id": "q0", "solvable_by": ["arith"]}
        ],
        "root": "root",
        "universe": ["auto", "simp", "blast", "arith", "slow", "."]
    }"#,
    )
    .unwrap()
}

fn session() -> MiniSession {
    MiniSession::new(two_level_script(), "theorem \"R\"").unwrap()
}

#[test]
fn initial_state_is_prove_mode() {
    let sess = session();
    let (s0, _) = sess.initial();
    assert_eq!(s0.mode, Some(Mode::Prove));
    assert_eq!(s0.state_text, "goal:root|pending:1");
    assert!(!s0.error && !s0.finish);
}

#[test]
fn solvable_step_succeeds_and_finishes() {
    let mut sess = session();
    let r = sess.apply("by blast").unwrap();
    assert!(!r.state.error);
    assert!(r.state.finish);
}

#[test]
fn unsolvable_step_fails_and_leaves_session_at_pre_state() {
    let mut sess = session();
    let (s0, c0) = sess.current();
    let r = sess.apply("by sos").unwrap();
    assert!(r.state.error);
    assert_eq!(r.checkpoint, None);
    let (now, c) = sess.current();
    assert_eq!(c, c0);
    assert!(states_equal(&now, &s0));
}

#[test]
fn structured_proof_replays() {
    let mut sess = session();
    let text = "proof -\nhave \"P\" by auto\nhave \"Q\"\nproof -\nhave \"Q0\" by arith\nshow ?thesis by simp\nqed\nshow ?thesis by blast\nqed";
    let (_, init) = sess.initial();
    let r = apply_text(&mut sess, init, text).unwrap();
    assert!(!r.state.error, "failed with {:?}", r.state);
    assert!(r.state.finish);
}

#[test]
fn facts_accumulate_per_block() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    sess.apply("have c0: \"P\"").unwrap();
    let r = sess.apply("by auto").unwrap();
    assert_eq!(r.state.facts, vec!["c0".to_string()]);
    sess.apply("have \"Q\"").unwrap();
    let r = sess.apply("sorry").unwrap();
    assert_eq!(r.state.facts.len(), 2);
    assert!(r.state.facts.contains(&"\"Q\"".to_string()));
}

#[test]
fn sorry_succeeds_only_in_prove_mode() {
    let mut sess = session();
    let r = sess.apply("sorry").unwrap();
    assert!(r.state.finish, "sorry discharges the pending root goal");

    let mut sess = session();
    sess.apply("proof -").unwrap();
    let r = sess.apply("sorry").unwrap();
    assert!(r.state.error, "no goal declared inside the block yet");
}

#[test]
fn finish_is_monotone() {
    let mut sess = session();
    sess.apply("by blast").unwrap();
    let r = sess.apply("by blast").unwrap();
    assert!(r.state.error);
    let r = sess.apply("have \"P\"").unwrap();
    assert!(r.state.error);
}

#[test]
fn unknown_conjecture_fails_in_state_mode() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    let r = sess.apply("have \"NOPE\"").unwrap();
    assert!(r.state.error);
    assert_eq!(r.state.state_text, "error:unknown-conjecture");
}

#[test]
fn goal_declaration_in_prove_mode_fails() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    sess.apply("have \"P\"").unwrap();
    let r = sess.apply("have \"Q\"").unwrap();
    assert!(r.state.error);
    assert_eq!(r.state.state_text, "error:mode");
}

#[test]
fn qed_with_pending_goals_fails() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    let r = sess.apply("qed").unwrap();
    assert!(r.state.error);
    assert_eq!(r.state.state_text, "error:pending-goals");
}

#[test]
fn timeout_method_reports_marker() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    sess.apply("have \"Q\"").unwrap();
    let r = sess.apply("by slow").unwrap();
    assert!(r.state.error);
    assert!(r.state.is_timeout());
}

#[test]
fn chaining_changes_mode() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    sess.apply("have \"P\" by auto").unwrap();
    let r = sess.apply("then").unwrap();
    assert_eq!(r.state.mode, Some(Mode::Chain));
    let r = sess.apply("show ?thesis by blast").unwrap();
    assert!(!r.state.error);
}

#[test]
fn using_is_a_prove_mode_noop() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    sess.apply("have \"P\"").unwrap();
    let before = sess.current().0;
    let r = sess.apply("using h0").unwrap();
    assert!(states_equal(&before, &r.state));
    let r = sess.apply("by auto").unwrap();
    assert!(!r.state.error);
}

#[test]
fn comments_are_noops_anywhere() {
    let mut sess = session();
    sess.apply("(* header *)").unwrap();
    sess.apply("by blast").unwrap();
    let r = sess.apply("(* done *)").unwrap();
    assert!(!r.state.error);
    assert!(r.state.finish);
}

#[test]
fn checkpoint_restore_replays_identically() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    let (_, mark) = sess.current();
    let a = sess.apply("have \"P\"").unwrap().state;
    sess.restore(mark).unwrap();
    let b = sess.apply("have \"P\"").unwrap().state;
    assert!(states_equal(&a, &b));
}

#[test]
fn restore_state_finds_latest_match() {
    let mut sess = session();
    let (s0, c0) = sess.initial();
    sess.apply("proof -").unwrap();
    let back = sess.restore_state(&s0).unwrap();
    assert_eq!(back, c0);
}

#[test]
fn is_proof_rejects_sorry_texts() {
    let mut sess = session();
    assert!(!is_proof(&mut sess, "sorry").unwrap());
    assert!(is_proof(&mut sess, "by blast").unwrap());
    assert!(!is_proof(&mut sess, "by sos").unwrap());
}

#[test]
fn empty_text_leaves_state_unchanged() {
    let mut sess = session();
    let (s0, c0) = sess.initial();
    let r = apply_text(&mut sess, c0, "").unwrap();
    assert!(states_equal(&r.state, &s0));
    assert_eq!(r.checkpoint, Some(c0));
}

#[test]
fn closed_session_errors() {
    let mut sess = session();
    sess.close();
    assert!(sess.apply("by blast").is_err());
}

#[test]
fn show_with_stated_goal_must_be_pending() {
    let mut sess = session();
    sess.apply("proof -").unwrap();
    // "P" is a conjecture of root but not a pending show-goal of this block.
    let r = sess.apply("show \"P\"").unwrap();
    assert!(r.state.error);
}

#[test]
fn bare_proof_decomposes_via_children() {
    let script = Script::from_json(
        r#"{
        "goals": [
            {"id": "root", "children": ["sub"], "conjectures": {"\"S\"": "sub"}},
            {"id": "sub", "solvable_by": [".."]}
        ],
        "root": "root",
        "universe": ["..", "rule impI"]
    }"#,
    )
    .unwrap();
    let mut sess = MiniSession::new(script, "theorem \"S'\"").unwrap();
    sess.apply("proof").unwrap();
    sess.apply("assume \"A\"").unwrap();
    sess.apply("show \"S\"").unwrap();
    let r = sess.apply("..").unwrap();
    assert!(!r.state.error);
    let r = sess.apply("qed").unwrap();
    assert!(r.state.finish);
}
