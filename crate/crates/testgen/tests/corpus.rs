//! Properties of the generated corpus, checked by brute force.

use itp::mini::MiniSession;
use itp::{apply_text, is_proof, states_equal, ItpSession};
use proofscript::{block_tree, innermost_block, parse, render, StepKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testgen::{gen_instance, GenConfig};

#[test]
fn witness_proofs_verify() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..120 {
        let inst = gen_instance(&mut rng, &cfg);
        let mut sess = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        assert!(
            is_proof(&mut sess, &inst.witness).unwrap(),
            "witness #{i} failed:\n{}",
            inst.witness
        );
    }
}

#[test]
fn corpus_round_trips_through_render() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..150 {
        let inst = gen_instance(&mut rng, &cfg);
        for text in [&inst.witness, &inst.proposal] {
            let once = parse(text);
            let again = parse(&render(&once));
            assert_eq!(once.shape(), again.shape());
        }
    }
}

#[test]
fn block_tree_matches_quadratic_containment_scan() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..100 {
        let inst = gen_instance(&mut rng, &cfg);
        let seq = parse(&inst.witness);
        let tree = block_tree(&seq).unwrap();

        // Every span nests in exactly one parent (or none).
        for b in &tree.blocks {
            let parents: Vec<_> = tree
                .blocks
                .iter()
                .filter(|p| {
                    (p.start, p.end) != (b.start, b.end) && p.start <= b.start && b.end <= p.end
                })
                .collect();
            let min_parent =
                parents.iter().map(|p| b.start - p.start + p.end - b.end).min();
            let direct = parents
                .iter()
                .filter(|p| Some(b.start - p.start + p.end - b.end) == min_parent)
                .count();
            assert!(parents.is_empty() || direct == 1);
            assert_eq!(b.depth, parents.len() + 1);
        }

        // Innermost lookup agrees with a brute-force scan at every index.
        for i in 1..=seq.len() {
            let brute = tree
                .blocks
                .iter()
                .filter(|b| b.start <= i && i <= b.end)
                .max_by_key(|b| b.depth)
                .copied();
            assert_eq!(innermost_block(i, &tree), brute);
        }
    }
}

#[test]
fn lifted_transition_equals_manual_fold() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..60 {
        let inst = gen_instance(&mut rng, &cfg);
        let mut a = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        let (_, init_a) = a.initial();
        let lifted = apply_text(&mut a, init_a, &inst.proposal).unwrap();

        let mut b = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        let (mut state, mut at) = b.initial();
        for step in &parse(&inst.proposal).steps {
            let r = b.apply_from(at, &step.normalized, None).unwrap();
            state = r.state;
            match r.checkpoint {
                Some(c) => at = c,
                None => break,
            }
        }
        assert!(states_equal(&lifted.state, &state));
    }
}

#[test]
fn interleaved_checkpoints_match_replay_from_scratch() {
    let cfg = GenConfig { corruptions: 0, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..40 {
        let inst = gen_instance(&mut rng, &cfg);
        let steps = parse(&inst.witness).steps;
        let mut sess = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        let (_, init) = sess.initial();
        let mut marks = vec![init];
        let mut at = init;
        for s in &steps {
            let r = sess.apply_from(at, &s.normalized, None).unwrap();
            at = r.checkpoint.expect("witness steps all succeed");
            marks.push(at);
        }
        // Restore to random earlier marks and re-apply the suffix; the result
        // must equal a fresh replay of the same prefix+suffix.
        for _ in 0..3 {
            let k = rng.random_range(0..steps.len());
            sess.restore(marks[k]).unwrap();
            let r = sess.apply(&steps[k].normalized).unwrap();
            let mut fresh = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
            let (_, f0) = fresh.initial();
            let mut fat = f0;
            for s in &steps[..=k] {
                fat = fresh.apply_from(fat, &s.normalized, None).unwrap().checkpoint.unwrap();
            }
            assert!(states_equal(&r.state, &fresh.state_at(fat).unwrap()));
        }
    }
}

#[test]
fn corrupted_proposals_fail_where_planted() {
    let cfg = GenConfig { corruptions: 2, jitter: false, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut corrupted_fail = 0;
    let mut total_corrupted = 0;
    for _ in 0..80 {
        let inst = gen_instance(&mut rng, &cfg);
        let mut sess = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        let proved = is_proof(&mut sess, &inst.proposal).unwrap();
        if inst.corruptions > 0 {
            total_corrupted += 1;
            if !proved {
                corrupted_fail += 1;
            }
        } else {
            assert!(proved, "uncorrupted proposal must verify");
        }
    }
    assert!(total_corrupted > 20);
    assert_eq!(corrupted_fail, total_corrupted, "planted failures must fail replay");
}

#[test]
fn generated_kinds_cover_the_step_taxonomy() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..60 {
        let inst = gen_instance(&mut rng, &cfg);
        for s in parse(&inst.proposal).steps {
            seen.insert(s.kind);
        }
    }
    for kind in [
        StepKind::BlockOpen,
        StepKind::BlockClose,
        StepKind::TerminalMethod,
        StepKind::GoalIntro,
        StepKind::Structural,
    ] {
        assert!(seen.contains(&kind), "{kind:?} never generated");
    }
}
