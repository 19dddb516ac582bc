//! Hand-built scenario fixtures: a classical-logic block proof, a staged
//! fallback run with one automation rescue and one coarse-level retreat, and
//! an induced-proof run where a broken calculation block collapses to a
//! one-method close.

use itp::Script;

/// A fully valid nested block proof with three levels. `proof` decomposes via
/// the default rule, `proof (rule classical)` via a named rule.
pub const CLASSICAL_THEOREM: &str =
    "theorem \"((A \\<longrightarrow> B) \\<longrightarrow> A) \\<longrightarrow> A\"";

pub const CLASSICAL_PROOF: &str = r#"proof
  assume "(A \<longrightarrow> B) \<longrightarrow> A"
  show A
  proof (rule classical)
    assume "\<not> A"
    have "A \<longrightarrow> B"
    proof
      assume A
      with \<open>\<not> A\<close> show B by contradiction
    qed
    with \<open>(A \<longrightarrow> B) \<longrightarrow> A\<close> show A ..
  qed
qed"#;

pub fn classical_script() -> Script {
    Script::from_json(
        r#"{
        "goals": [
            {"id": "peirce", "children": ["a_hyp"], "conjectures": {"A": "a_hyp"}},
            {"id": "a_hyp", "children": ["a_cls"],
             "conjectures": {"\"A \\<longrightarrow> B\"": "a_imp_b", "A": "a_cls"}},
            {"id": "a_imp_b", "children": ["b_goal"], "conjectures": {"B": "b_goal"}},
            {"id": "b_goal", "solvable_by": ["contradiction"]},
            {"id": "a_cls", "solvable_by": [".."]}
        ],
        "root": "peirce",
        "universe": ["contradiction", "..", "rule classical"]
    }"#,
    )
    .unwrap()
}

/// Staged-fallback scenario. The proposal leaves one conjecture pending
/// (`sorry` in place of a proof), fails a terminal method inside a nested
/// block, and then trips a bad declaration, so the salvaged semi-proof has
/// exactly two sorries. Automation closes the first gap, the second resists
/// automation and a scripted completion, and the run retreats to the whole
/// theorem which `blast` closes.
pub const STAGED_THEOREM: &str = "theorem \"R\"";

pub const STAGED_PROPOSAL: &str = r#"proof -
  have "C0"
  sorry
  have "C1"
  proof -
    have "C1x0" by blast
    have "C1x1 typo"
    show ?thesis by auto
  qed
  then show ?thesis by finisher
qed"#;

pub fn staged_script() -> Script {
    Script::from_json(
        r#"{
        "goals": [
            {"id": "root", "solvable_by": ["blast", "finisher"],
             "conjectures": {"\"C0\"": "c0", "\"C1\"": "c1"}},
            {"id": "c0", "solvable_by": ["auto"]},
            {"id": "c1", "conjectures": {"\"C1x0\"": "c1x0"}},
            {"id": "c1x0", "solvable_by": ["arith"]}
        ],
        "root": "root",
        "universe": ["auto", "simp", "blast", "fastforce", "eval", "sos", "arith",
                     "simp: field_simps", "simp add: mod_simps", "finisher", "sledgehammer"]
    }"#,
    )
    .unwrap()
}

/// Induced-proof scenario: the first `have` block is sound and is kept
/// verbatim; every terminal method inside the second block fails, the block
/// collapses, and `sos` closes the collapsed conjecture directly given the
/// first fact.
pub const INDUCED_THEOREM: &str =
    "theorem sq_bound: fixes a::real shows \"a * (2 - a) \\<le> 1\"";

pub const INDUCED_PROPOSAL: &str = r#"proof -
  have "(a - 1)\<^sup>2 \<ge> 0" for a::real
  proof -
    have "0 \<le> (a - 1) * (a - 1)"
      using zero_le_square by auto
    then show "(a - 1)\<^sup>2 \<ge> 0"
      by (simp add: power2_eq_square)
  qed
  then have "a * (2 - a) \<le> 1" for a::real
  proof -
    have "a * (2 - a) = 2 * a - a\<^sup>2" by (simp add: power2_eq_square)
    also have "... = (a - 1)\<^sup>2 + 1 - a\<^sup>2" by (simp add: algebra_simps)
    also have "... \<le> 1"
      using \<open>0 \<le> (a - 1)\<^sup>2\<close> by linarith
    finally show ?thesis .
  qed
  then show ?thesis .
qed"#;

pub fn induced_script() -> Script {
    Script::from_json(
        r#"{
        "goals": [
            {"id": "root", "solvable_by": ["."],
             "conjectures": {
                "\"(a - 1)\\<^sup>2 \\<ge> 0\" for a::real": "sq_nonneg",
                "\"a * (2 - a) \\<le> 1\" for a::real": "bound"}},
            {"id": "sq_nonneg", "solvable_by": ["simp add: power2_eq_square"],
             "conjectures": {
                "\"0 \\<le> (a - 1) * (a - 1)\"": "prod_nonneg",
                "\"(a - 1)\\<^sup>2 \\<ge> 0\"": "sq_nonneg"}},
            {"id": "prod_nonneg", "solvable_by": ["auto"]},
            {"id": "bound", "solvable_by": ["sos", "."],
             "conjectures": {
                "\"a * (2 - a) = 2 * a - a\\<^sup>2\"": "expand",
                "\"... = (a - 1)\\<^sup>2 + 1 - a\\<^sup>2\"": "complete_sq",
                "\"... \\<le> 1\"": "calc_bound"}},
            {"id": "expand", "solvable_by": []},
            {"id": "complete_sq", "solvable_by": []},
            {"id": "calc_bound", "solvable_by": []}
        ],
        "root": "root",
        "universe": ["auto", "simp", "blast", "fastforce", "eval", "sos", "arith",
                     "simp: field_simps", "simp add: mod_simps",
                     "simp add: power2_eq_square", "simp add: algebra_simps",
                     "linarith", ".", "sledgehammer"]
    }"#,
    )
    .unwrap()
}
