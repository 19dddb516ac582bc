//! Seeded generation of goal-graph scripts, witness proofs and corrupted
//! proposals.
//!
//! Every instance carries a script, a witness proof that replays to finish,
//! and a proposal derived from the witness by planting zero or more failures:
//! wrong terminal methods (prove-mode errors), bogus goal declarations
//! (state-mode errors), broken block openers, and junk steps. The planted
//! kinds cover every fallback branch of the salvage algorithm.

use std::collections::BTreeMap;

use itp::{GoalSpec, Script};
use rand::Rng;

/// Methods the default automation portfolio tries, duplicated here so the
/// corpus stays independent of the production defaults it is used to check.
pub const PORTFOLIO: &[&str] = &[
    "auto",
    "simp",
    "blast",
    "fastforce",
    "eval",
    "sos",
    "arith",
    "simp: field_simps",
    "simp add: mod_simps",
];

/// Methods outside the portfolio: goals solvable only by these resist
/// automation and force structure to be kept or completions to be found.
pub const EXOTIC: &[&str] = &["metis", "meson", "force", "presburger", "linarith"];

pub const HAMMER: &str = "sledgehammer";

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_depth: usize,
    pub max_branch: usize,
    /// Upper bound on substitution slots (blocks + by-clauses).
    pub slot_cap: usize,
    /// Corruption count is drawn from 0..=corruptions.
    pub corruptions: usize,
    pub decompose_prob: f64,
    /// Probability that a leaf goal is not portfolio-solvable.
    pub exotic_prob: f64,
    /// Probability that a leaf goal is solvable only by the hammer.
    pub hammer_prob: f64,
    /// Probability that a solvable method is planted as a timeout instead.
    pub timeout_prob: f64,
    /// Random indentation and blank lines in the emitted text.
    pub jitter: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 3,
            max_branch: 3,
            slot_cap: 12,
            corruptions: 3,
            decompose_prob: 0.25,
            exotic_prob: 0.35,
            hammer_prob: 0.08,
            timeout_prob: 0.0,
            jitter: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub script: Script,
    pub theorem: String,
    /// Known-good proof emitted by the generator.
    pub witness: String,
    /// Witness with planted failures (equal to witness when corruptions = 0).
    pub proposal: String,
    pub corruptions: usize,
    /// Goal id -> witness sub-proof for that goal.
    pub subproofs: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
enum Site {
    Terminal { goal: String, prefix: String },
    Decl { prefix: String },
    Show { prefix: String },
    Opener,
}

#[derive(Debug, Clone)]
struct Line {
    indent: usize,
    text: String,
    site: Option<Site>,
}

impl Line {
    fn plain(indent: usize, text: impl Into<String>) -> Self {
        Line { indent, text: text.into(), site: None }
    }
}

struct Builder<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    goals: Vec<GoalSpec>,
    universe: Vec<String>,
    next_id: usize,
    slots: usize,
    subproofs: BTreeMap<String, String>,
}

impl<'a, R: Rng> Builder<'a, R> {
    fn fresh(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn add_method(&mut self, m: &str) {
        if !self.universe.iter().any(|u| u == m) {
            self.universe.push(m.to_string());
        }
    }

    fn prop_text(&mut self) -> String {
        let n = self.fresh();
        let body = match self.rng.random_range(0..5) {
            // Keywords inside quotes must stay opaque.
            0 => format!("if p{n} then q{n} else r{n}"),
            1 => format!("p{n} \\<longrightarrow> q{n}"),
            2 => format!("f{n} x = g{n} (x + {n})"),
            3 => format!("p{n} mod {n} = 0"),
            _ => format!("P{n} x"),
        };
        if self.rng.random_bool(0.15) {
            format!("\"{body}\" for x::real")
        } else {
            format!("\"{body}\"")
        }
    }

    fn pick_leaf_methods(&mut self) -> Vec<String> {
        if self.rng.random_bool(self.cfg.hammer_prob) {
            return vec![HAMMER.to_string()];
        }
        let pool: &[&str] =
            if self.rng.random_bool(self.cfg.exotic_prob) { EXOTIC } else { PORTFOLIO };
        let mut out = vec![pool[self.rng.random_range(0..pool.len())].to_string()];
        if self.rng.random_bool(0.3) {
            let extra = PORTFOLIO[self.rng.random_range(0..PORTFOLIO.len())];
            if !out.iter().any(|m| m == extra) {
                out.push(extra.to_string());
            }
        }
        out
    }

    fn decl_prefix(&mut self, first: bool) -> String {
        let n = self.fresh();
        match self.rng.random_range(0..6) {
            0 if !first => "then have ".to_string(),
            1 if !first => "also have ".to_string(),
            2 if !first => "moreover have ".to_string(),
            3 => format!("have c{n}: "),
            _ => "have ".to_string(),
        }
    }

    /// Generate a goal and the lines of its witness proof. The returned lines
    /// discharge the goal from prove mode.
    fn gen_goal(&mut self, depth: usize) -> (String, Vec<Line>) {
        let id = format!("g{}", self.fresh());
        let tight = self.slots + 4 > self.cfg.slot_cap;
        let leaf_bias = if depth == 0 { 0.15 } else { 0.45 };
        if depth >= self.cfg.max_depth || tight || self.rng.random_bool(leaf_bias) {
            return self.gen_leaf(id);
        }
        if self.rng.random_bool(self.cfg.decompose_prob) {
            self.gen_decomposed(id, depth)
        } else {
            self.gen_direct(id, depth)
        }
    }

    fn gen_leaf(&mut self, id: String) -> (String, Vec<Line>) {
        self.slots += 1;
        let methods = self.pick_leaf_methods();
        for m in &methods {
            self.add_method(m);
        }
        let mut timeout_by = Vec::new();
        let mut solvable = methods.clone();
        if solvable.len() > 1 && self.rng.random_bool(self.cfg.timeout_prob) {
            timeout_by.push(solvable.remove(0));
        }
        let used = solvable[self.rng.random_range(0..solvable.len())].clone();
        let mut lines = Vec::new();
        if self.rng.random_bool(0.15) {
            let n = self.fresh();
            lines.push(Line::plain(0, format!("using lemma{n}")));
        }
        let by = format!("by {}", fmt_method(&used));
        lines.push(Line {
            indent: 0,
            text: by.clone(),
            site: Some(Site::Terminal { goal: id.clone(), prefix: String::new() }),
        });
        self.subproofs.insert(id.clone(), by);
        self.goals.push(GoalSpec {
            id: id.clone(),
            solvable_by: solvable,
            children: Vec::new(),
            conjectures: BTreeMap::new(),
            timeout_by,
        });
        (id, lines)
    }

    fn gen_direct(&mut self, id: String, depth: usize) -> (String, Vec<Line>) {
        self.slots += 1;
        let mut lines = vec![Line::plain(0, "proof -")];
        let mut conjectures = BTreeMap::new();
        let branch = 1 + self.rng.random_range(0..self.cfg.max_branch);
        for k in 0..branch {
            if self.slots + 2 > self.cfg.slot_cap {
                break;
            }
            if self.rng.random_bool(0.1) {
                let n = self.fresh();
                lines.push(Line::plain(1, format!("(* step {n} *)")));
            }
            let (cid, sub) = self.gen_goal(depth + 1);
            let text = self.prop_text();
            conjectures.insert(text.clone(), cid);
            let prefix = self.decl_prefix(k == 0);
            lines.push(Line {
                indent: 1,
                text: format!("{prefix}{text}"),
                site: Some(Site::Decl { prefix }),
            });
            lines.extend(sub.into_iter().map(|mut l| {
                l.indent += 2;
                l
            }));
        }
        // Closing show: either ?thesis or a restatement of the goal itself.
        let final_pool: &[&str] = if self.rng.random_bool(0.5) { EXOTIC } else { PORTFOLIO };
        let m_final = final_pool[self.rng.random_range(0..final_pool.len())].to_string();
        self.add_method(&m_final);
        self.slots += 1; // the closing by-clause
        let show_prefix = if self.rng.random_bool(0.4) { "then show " } else { "show " };
        let show_text = if self.rng.random_bool(0.3) {
            // restate the block goal instead of ?thesis
            let t = self.prop_text();
            conjectures.insert(t.clone(), id.clone());
            t
        } else {
            "?thesis".to_string()
        };
        let show_site = Site::Show { prefix: show_prefix.to_string() };
        if self.rng.random_bool(0.5) {
            // by-clause inline with the show
            lines.push(Line {
                indent: 1,
                text: format!("{show_prefix}{show_text} by {}", fmt_method(&m_final)),
                site: Some(show_site),
            });
        } else {
            lines.push(Line {
                indent: 1,
                text: format!("{show_prefix}{show_text}"),
                site: Some(show_site),
            });
            lines.push(Line {
                indent: 1,
                text: format!("by {}", fmt_method(&m_final)),
                site: Some(Site::Terminal { goal: id.clone(), prefix: String::new() }),
            });
        }
        lines.push(Line::plain(0, "qed"));
        let mut solvable = vec![m_final];
        if self.rng.random_bool(0.2) {
            let extra = PORTFOLIO[self.rng.random_range(0..PORTFOLIO.len())].to_string();
            self.add_method(&extra);
            if !solvable.contains(&extra) {
                solvable.push(extra);
            }
        }
        self.subproofs.insert(id.clone(), plain_text(&lines));
        self.goals.push(GoalSpec {
            id: id.clone(),
            solvable_by: solvable,
            children: Vec::new(),
            conjectures,
            timeout_by: Vec::new(),
        });
        (id, lines)
    }

    fn gen_decomposed(&mut self, id: String, depth: usize) -> (String, Vec<Line>) {
        self.slots += 1;
        let rule = format!("rule r{}", self.fresh());
        self.add_method(&rule);
        let kids = 1 + self.rng.random_range(0..2usize);
        let mut lines = vec![Line {
            indent: 0,
            text: format!("proof ({rule})"),
            site: Some(Site::Opener),
        }];
        let mut children = Vec::new();
        let mut conjectures = BTreeMap::new();
        for k in 0..kids {
            let (cid, sub) = self.gen_goal(depth + 1);
            let text = self.prop_text();
            conjectures.insert(text.clone(), cid.clone());
            children.push(cid);
            if k > 0 && self.rng.random_bool(0.5) {
                lines.push(Line::plain(1, "next"));
            }
            if self.rng.random_bool(0.3) {
                let n = self.fresh();
                lines.push(Line::plain(1, format!("assume \"h{n}\"")));
            }
            lines.push(Line {
                indent: 1,
                text: format!("show {text}"),
                site: Some(Site::Show { prefix: "show ".to_string() }),
            });
            lines.extend(sub.into_iter().map(|mut l| {
                l.indent += 1;
                l
            }));
        }
        lines.push(Line::plain(0, "qed"));
        let solvable = if self.rng.random_bool(0.2) {
            let m = PORTFOLIO[self.rng.random_range(0..PORTFOLIO.len())].to_string();
            self.add_method(&m);
            vec![m]
        } else {
            Vec::new()
        };
        self.subproofs.insert(id.clone(), plain_text(&lines));
        self.goals.push(GoalSpec {
            id: id.clone(),
            solvable_by: solvable,
            children,
            conjectures,
            timeout_by: Vec::new(),
        });
        (id, lines)
    }
}

fn fmt_method(m: &str) -> String {
    if m.contains(' ') {
        format!("({m})")
    } else {
        m.to_string()
    }
}

fn plain_text(lines: &[Line]) -> String {
    lines
        .iter()
        .map(|l| format!("{}{}", "  ".repeat(l.indent), l.text))
        .collect::<Vec<_>>()
        .join("\n")
}

fn jittered_text<R: Rng>(lines: &[Line], rng: &mut R) -> String {
    let mut out = Vec::new();
    for l in lines {
        if rng.random_bool(0.06) {
            out.push(String::new());
        }
        let pad = " ".repeat(l.indent * 2 + rng.random_range(0..3));
        out.push(format!("{pad}{}", l.text));
    }
    out.join("\n")
}

/// Plant up to `want` failures, returning how many were applied.
fn corrupt<R: Rng>(
    lines: &mut [Line],
    goals: &[GoalSpec],
    universe: &[String],
    rng: &mut R,
    want: usize,
) -> usize {
    let mut sites: Vec<usize> =
        (0..lines.len()).filter(|i| lines[*i].site.is_some()).collect();
    // Fisher-Yates prefix shuffle.
    for i in 0..sites.len() {
        let j = rng.random_range(i..sites.len());
        sites.swap(i, j);
    }
    let mut applied = 0;
    for &i in sites.iter() {
        if applied >= want {
            break;
        }
        let line = &mut lines[i];
        match line.site.clone().unwrap() {
            Site::Terminal { goal, prefix } => {
                let g = goals.iter().find(|g| g.id == goal).unwrap();
                let bad: Vec<&String> = universe
                    .iter()
                    .filter(|m| {
                        !g.solvable_by.contains(m)
                            && !g.timeout_by.contains(m)
                            && !m.starts_with("rule ")
                    })
                    .collect();
                if bad.is_empty() {
                    continue;
                }
                let m = bad[rng.random_range(0..bad.len())];
                line.text = format!("{prefix}by {}", fmt_method(m));
            }
            Site::Decl { prefix } => {
                let n = rng.random_range(1000..9999);
                line.text = format!("{prefix}\"bogus{n}\"");
            }
            Site::Show { prefix } => {
                let n = rng.random_range(1000..9999);
                line.text = format!("{prefix}\"bogus{n}\"");
            }
            Site::Opener => {
                let n = rng.random_range(1000..9999);
                line.text = format!("proof (rule undeclared{n})");
            }
        }
        line.site = None;
        applied += 1;
    }
    applied
}

fn finish_script(goals: Vec<GoalSpec>, root: String, universe: Vec<String>) -> Script {
    let raw = Script { goals, root, universe };
    // Round-trip through the loader to canonicalize and validate.
    Script::from_json(&serde_json::to_string(&raw).unwrap()).unwrap()
}

/// Generate one (script, witness, proposal) instance.
pub fn gen_instance<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Instance {
    let mut b = Builder {
        rng,
        cfg,
        goals: Vec::new(),
        universe: vec![HAMMER.to_string()],
        next_id: 0,
        slots: 0,
        subproofs: BTreeMap::new(),
    };
    let (root, mut lines) = b.gen_goal(0);
    let Builder { goals, universe, subproofs, .. } = b;
    let n = rng.random_range(0..=cfg.corruptions);
    let witness = plain_text(&lines);
    let applied = corrupt(&mut lines, &goals, &universe, rng, n);
    let proposal =
        if cfg.jitter { jittered_text(&lines, rng) } else { plain_text(&lines) };
    let nonce: u64 = rng.random();
    let theorem = format!("theorem thm_{nonce:016x}: \"T {root}\"");
    Instance {
        script: finish_script(goals, root, universe),
        theorem,
        witness,
        proposal,
        corruptions: applied,
        subproofs,
    }
}

/// An instance that can only be proved by completing one resistant conjecture
/// with its known sub-proof: automation cannot close the gap conjecture, its
/// block is broken in the proposal, and every enclosing level resists the
/// portfolio too.
#[derive(Debug, Clone)]
pub struct ErpInstance {
    pub script: Script,
    pub theorem: String,
    pub proposal: String,
    /// Goal id of the gap conjecture.
    pub gap_goal: String,
    /// State-text prefix identifying a completion request at the gap.
    pub gap_state_prefix: String,
    /// The sub-proof that closes the gap.
    pub completion: String,
}

pub fn gen_erp_instance<R: Rng>(rng: &mut R, tag: usize) -> ErpInstance {
    let m1 = PORTFOLIO[rng.random_range(0..PORTFOLIO.len())];
    let m2 = PORTFOLIO[rng.random_range(0..PORTFOLIO.len())];
    let ma = PORTFOLIO[rng.random_range(0..PORTFOLIO.len())];
    let gap = format!("gap{tag}");
    let rule = format!("rule split{tag}");
    let goals = vec![
        GoalSpec {
            id: "root".into(),
            solvable_by: vec!["metis".into()],
            children: vec![],
            conjectures: BTreeMap::from([
                (format!("\"A{tag}\""), format!("a{tag}")),
                (format!("\"G{tag}\""), gap.clone()),
            ]),
            timeout_by: vec![],
        },
        GoalSpec {
            id: format!("a{tag}"),
            solvable_by: vec![ma.to_string()],
            children: vec![],
            conjectures: BTreeMap::new(),
            timeout_by: vec![],
        },
        GoalSpec {
            id: gap.clone(),
            solvable_by: vec![],
            children: vec![format!("k1_{tag}"), format!("k2_{tag}")],
            conjectures: BTreeMap::from([
                (format!("\"K1 {tag}\""), format!("k1_{tag}")),
                (format!("\"K2 {tag}\""), format!("k2_{tag}")),
            ]),
            timeout_by: vec![],
        },
        GoalSpec {
            id: format!("k1_{tag}"),
            solvable_by: vec![m1.to_string()],
            children: vec![],
            conjectures: BTreeMap::new(),
            timeout_by: vec![],
        },
        GoalSpec {
            id: format!("k2_{tag}"),
            solvable_by: vec![m2.to_string()],
            children: vec![],
            conjectures: BTreeMap::new(),
            timeout_by: vec![],
        },
    ];
    let universe: Vec<String> = {
        let mut u: Vec<String> =
            PORTFOLIO.iter().map(|m| m.to_string()).collect();
        u.push("metis".into());
        u.push(HAMMER.into());
        u.push(rule.clone());
        u
    };
    let completion = format!(
        "proof ({rule})\n  show \"K1 {tag}\" by {}\n  show \"K2 {tag}\" by {}\nqed",
        fmt_method(m1),
        fmt_method(m2),
    );
    // The proposal breaks the gap block with an undeclared show, so salvage
    // collapses the whole block to a single pending conjecture.
    let proposal = format!(
        "proof -\n  have \"A{tag}\" by {}\n  have \"G{tag}\"\n  proof ({rule})\n    show \"K1 {tag}\" by {}\n    show \"WRONG {tag}\" by {}\n  qed\n  then show ?thesis by metis\nqed",
        fmt_method(ma),
        fmt_method(m1),
        fmt_method(m2),
    );
    ErpInstance {
        script: finish_script(goals, "root".into(), universe),
        theorem: format!("theorem erp_{tag}: \"E{tag}\""),
        proposal,
        gap_state_prefix: format!("goal:{gap}|"),
        gap_goal: gap,
        completion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_have_bounded_slots_and_valid_scripts() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let inst = gen_instance(&mut rng, &cfg);
            assert!(inst.script.validate().is_ok());
            let seq = proofscript::parse(&inst.witness);
            assert!(seq.balanced());
        }
    }

    #[test]
    fn zero_corruption_proposal_equals_witness_modulo_whitespace() {
        let cfg = GenConfig { corruptions: 0, jitter: true, ..GenConfig::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let inst = gen_instance(&mut rng, &cfg);
        let a = proofscript::parse(&inst.witness).shape();
        let b = proofscript::parse(&inst.proposal).shape();
        assert_eq!(a, b);
    }
}
