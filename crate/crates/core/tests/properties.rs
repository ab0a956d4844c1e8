mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use common::*;
use sigmakit::engine::{prover_commit, prover_respond, verifier_challenge, ResponseTree};
use sigmakit::nizk::{deserialize, prove, serialize, verify};
use sigmakit::primitives::{dl_not_equal, range_stmt};
use sigmakit::{Secret, Statement};

fn tree(seed: u64) -> Statement {
    let group = toy();
    let gen = TreeGen {
        group: &group,
        max_depth: 4,
        max_fanout: 3,
    };
    gen.generate(&mut ChaCha20Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn proofs_roundtrip_through_bytes(seed in any::<u64>()) {
        let stmt = tree(seed);
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 1);
        let proof = prove(&stmt, &mut rng).unwrap();
        let decoded = deserialize(&serialize(&proof), &stmt).unwrap();
        prop_assert_eq!(&decoded, &proof);
        prop_assert!(verify(&stmt, &decoded).unwrap());
    }

    #[test]
    fn rebuilding_with_fresh_secrets_keeps_the_id(seed in any::<u64>()) {
        // Same generator seed, different global secret ids.
        prop_assert_eq!(tree(seed).statement_id(), tree(seed).statement_id());
    }

    #[test]
    fn honest_responses_split_challenges(seed in any::<u64>()) {
        let stmt = tree(seed);
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 2);
        let (state, _) = prover_commit(&stmt, &mut rng).unwrap();
        let c = verifier_challenge(stmt.order(), &mut rng);
        prop_assert!(prover_respond(state, &c).unwrap().challenges_consistent(&c));
    }

    #[test]
    fn deserialize_never_panics(seed in any::<u64>(), junk in prop::collection::vec(any::<u8>(), 0..64)) {
        let stmt = tree(seed);
        let _ = deserialize(&junk, &stmt);
    }
}

#[test]
fn shared_secret_responses_are_identical() {
    let group = curve();
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let v = group.random_scalar(&mut rng);
    let x = Secret::with_value(v);
    let (g, h) = (group.generator(), second_generator(&group));
    let stmt = Statement::and(vec![
        Statement::dlrep(g.exp(&v), &x * g).unwrap(),
        Statement::dlrep(h.exp(&v), &x * h).unwrap(),
    ])
    .unwrap();
    let proof = prove(&stmt, &mut rng).unwrap();
    let ResponseTree::And(legs) = &proof.response else {
        panic!("expected AND")
    };
    let ResponseTree::Leaf(a) = &legs[0] else { panic!() };
    let ResponseTree::Leaf(b) = &legs[1] else { panic!() };
    assert_eq!(a[0].to_bytes(), b[0].to_bytes());
}

#[test]
fn vote_composition_roundtrips() {
    // ElGamal encryption of m under h, plus 0 <= m < 5 on c2.
    let group = curve();
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let (g, h) = (group.generator(), second_generator(&group));
    let (m, r) = (sc(&group, 3), group.random_scalar(&mut rng));
    let (c1, c2) = (g.exp(&r), g.exp(&m) * h.exp(&r));
    let build = |m: &Secret, r: &Secret| {
        Statement::and(vec![
            Statement::dlrep(c1, r * g).unwrap(),
            Statement::dlrep(c2, m * g + r * h).unwrap(),
            range_stmt(c2, g, h, 0, 5, m, r).unwrap(),
        ])
        .unwrap()
    };
    let proof = prove(&build(&Secret::with_value(m), &Secret::with_value(r)), &mut rng).unwrap();
    let template = build(&Secret::new(), &Secret::new());
    let decoded = deserialize(&serialize(&proof), &template).unwrap();
    assert!(verify(&template, &decoded).unwrap());
}

#[test]
fn out_of_range_vote_is_refused() {
    let group = curve();
    let mut rng = ChaCha20Rng::seed_from_u64(13);
    let (g, h) = (group.generator(), second_generator(&group));
    let (m, r) = (sc(&group, 5), group.random_scalar(&mut rng));
    let c2 = g.exp(&m) * h.exp(&r);
    let stmt = range_stmt(c2, g, h, 0, 5, &Secret::with_value(m), &Secret::with_value(r)).unwrap();
    let err = prove(&stmt, &mut rng).unwrap_err();
    assert!(err.to_string().contains("secret value outside declared range"), "{err}");
}

#[test]
fn extended_nodes_inside_disjunctions() {
    // A simulated DLNotEqual branch next to an honest Schnorr branch.
    let group = toy();
    let mut rng = ChaCha20Rng::seed_from_u64(14);
    let (g, h) = (group.generator(), toy_el(16));
    let build = |x: Secret, y: Secret, flags: Option<Vec<bool>>| {
        let children = vec![
            dl_not_equal((toy_el(8), g), (toy_el(2), h), &x).unwrap(),
            Statement::dlrep(toy_el(9), &y * h).unwrap(),
        ];
        match flags {
            Some(f) => Statement::or(children, f).unwrap(),
            None => Statement::or_unflagged(children).unwrap(),
        }
    };
    // 16^4 = 9.
    let stmt = build(
        Secret::new(),
        Secret::with_value(sc(&group, 4)),
        Some(vec![true, false]),
    );
    for _ in 0..20 {
        let proof = prove(&stmt, &mut rng).unwrap();
        let template = build(Secret::new(), Secret::new(), None);
        assert!(verify(&template, &deserialize(&serialize(&proof), &template).unwrap()).unwrap());
    }
}
