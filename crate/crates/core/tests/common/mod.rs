//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use proptest::prelude::*;
use stackoid_core::fixtures;
use stackoid_core::sgpoid::from_generators;
use stackoid_core::{enumerate_states, Semigroupoid};

/// Generator vocabularies small enough to check exhaustively.
pub const VOCABULARIES: &[(&[&str], usize, u64)] = &[
    (&["0", "1", "+"], 2, 2),
    (&["swap"], 2, 2),
    (&["dup", "pop"], 2, 2),
    (&["0", "1", "swap"], 2, 2),
    (&["1", "+"], 2, 2),
    (&["0", "dup", "*"], 2, 2),
    (&["0", "1", "+"], 3, 2),
    (&["0", "1", "2", "+"], 2, 3),
];

pub fn generated(gens: &[&str], cap: usize, modulus: u64) -> Semigroupoid {
    let space = enumerate_states(gens, cap, modulus).unwrap();
    let semantics = space.generator_semantics().unwrap();
    from_generators(&space.generator_graph().unwrap(), &semantics).unwrap()
}

/// Every desk-scale semigroupoid: the hand-written fixtures plus one
/// generated from each vocabulary.
pub fn all_fixtures() -> Vec<(String, Semigroupoid)> {
    let mut out = vec![
        (
            "two_object_six_arrow".to_string(),
            fixtures::two_object_six_arrow(),
        ),
        ("cyclic_two".to_string(), fixtures::cyclic_two()),
        ("right_zero_two".to_string(), fixtures::right_zero_two()),
        (
            "two_copies_cyclic_two".to_string(),
            fixtures::two_copies_cyclic_two(),
        ),
    ];
    for &(gens, cap, m) in VOCABULARIES {
        out.push((
            format!("{} cap={cap} mod={m}", gens.join(",")),
            generated(gens, cap, m),
        ));
    }
    out
}

/// First-order words over the binary vocabulary plus the stack shufflers.
pub const WORDS: &[&str] = &["0", "1", "+", "*", "dup", "swap", "pop", "id"];

pub fn program(max_len: usize) -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(WORDS), 1..=max_len)
}

pub fn partial_map(n: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    prop::collection::vec(prop::option::of(0..n), n)
}
