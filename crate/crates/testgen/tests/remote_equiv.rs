//! The remote client against the server double behaves like a local session.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Duration;

use itp::mini::MiniSession;
use itp::remote::RemoteSession;
use itp::{apply_text, states_equal, ItpSession, Script};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use testgen::{gen_instance, GenConfig, MiniServer};

fn spawn_for(instances: &[(String, Script)]) -> MiniServer {
    let map: Mutex<HashMap<String, Script>> =
        Mutex::new(instances.iter().cloned().collect());
    MiniServer::spawn(move |theorem| map.lock().unwrap().get(theorem).cloned()).unwrap()
}

#[test]
fn remote_replay_matches_local_replay() {
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let instances: Vec<_> = (0..10).map(|_| gen_instance(&mut rng, &cfg)).collect();
    let server =
        spawn_for(&instances.iter().map(|i| (i.theorem.clone(), i.script.clone())).collect::<Vec<_>>());

    for inst in &instances {
        let mut remote =
            RemoteSession::connect(server.addr(), &inst.theorem, Duration::from_secs(10)).unwrap();
        let mut local = MiniSession::new(inst.script.clone(), &inst.theorem).unwrap();
        let (ri, rc) = remote.initial();
        let (li, lc) = local.initial();
        assert!(states_equal(&ri, &li));
        let r = apply_text(&mut remote, rc, &inst.proposal).unwrap();
        let l = apply_text(&mut local, lc, &inst.proposal).unwrap();
        assert!(states_equal(&r.state, &l.state), "remote/local divergence");
        remote.close();
    }
}

#[test]
fn remote_checkpoint_branching_works() {
    let script = Script::from_json(
        r#"{"goals":[
            {"id":"root","solvable_by":["auto"],"conjectures":{"\"P\"":"p"}},
            {"id":"p","solvable_by":["simp"]}
        ],"root":"root","universe":["auto","simp"]}"#,
    )
    .unwrap();
    let server = spawn_for(&[("t".to_string(), script)]);
    let mut sess = RemoteSession::connect(server.addr(), "t", Duration::from_secs(5)).unwrap();
    let (_, c0) = sess.initial();
    let opened = sess.apply_from(c0, "proof -", None).unwrap();
    let mark = opened.checkpoint.unwrap();
    let a = sess.apply_from(mark, "have \"P\"", None).unwrap();
    assert!(!a.state.error);
    // Branch again from the same checkpoint after a failure.
    let bad = sess.apply_from(mark, "have \"NOPE\"", None).unwrap();
    assert!(bad.state.error);
    assert_eq!(bad.checkpoint, None);
    let b = sess.apply_from(mark, "have \"P\"", None).unwrap();
    assert!(states_equal(&a.state, &b.state));
    sess.close();
}

#[test]
fn unknown_theorem_is_a_protocol_error() {
    let server = spawn_for(&[]);
    let err = RemoteSession::connect(server.addr(), "ghost", Duration::from_secs(5));
    assert!(err.is_err());
}
