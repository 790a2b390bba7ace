//! Small reference semigroupoids.

use crate::sgpoid::Semigroupoid;

/// Two objects `σ, τ` and six arrows: `a, b: σ→σ`, `c, d, e: σ→τ`, `f: τ→τ`.
///
/// ```text
///     a  b  c  d  e  f
/// a   a  b  c  d  e
/// b   b  a  c  e  d
/// c                  c
/// d                  c
/// e                  c
/// f                  f
/// ```
pub fn two_object_six_arrow() -> Semigroupoid {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    let arrows = [
        (0, 0, "a"),
        (0, 0, "b"),
        (0, 1, "c"),
        (0, 1, "d"),
        (0, 1, "e"),
        (1, 1, "f"),
    ]
    .into_iter()
    .map(|(d, c, l)| (d, c, l.to_string()))
    .collect();
    let entries = [
        (A, A, A),
        (A, B, B),
        (A, C, C),
        (A, D, D),
        (A, E, E),
        (B, A, B),
        (B, B, A),
        (B, C, C),
        (B, D, E),
        (B, E, D),
        (C, F, C),
        (D, F, C),
        (E, F, C),
        (F, F, F),
    ];
    Semigroupoid::new(vec!["σ".into(), "τ".into()], arrows, entries)
        .expect("fixture is well-formed")
}

/// The cyclic group of order 2 on one object: `e·e = e`, `e·s = s·e = s`, `s·s = e`.
pub fn cyclic_two() -> Semigroupoid {
    Semigroupoid::new(
        vec!["σ".into()],
        vec![(0, 0, "e".into()), (0, 0, "s".into())],
        [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
    )
    .expect("fixture is well-formed")
}

/// Two-element right-zero semigroup on one object: `x·y = y`.
pub fn right_zero_two() -> Semigroupoid {
    Semigroupoid::new(
        vec!["σ".into()],
        vec![(0, 0, "x".into()), (0, 0, "y".into())],
        [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)],
    )
    .expect("fixture is well-formed")
}

/// Disjoint union of two copies of [`cyclic_two`]: `e₁, s₁` on `σ` and
/// `e₂, s₂` on `τ`.
pub fn two_copies_cyclic_two() -> Semigroupoid {
    Semigroupoid::new(
        vec!["σ".into(), "τ".into()],
        vec![
            (0, 0, "e₁".into()),
            (0, 0, "s₁".into()),
            (1, 1, "e₂".into()),
            (1, 1, "s₂".into()),
        ],
        [
            (0, 0, 0),
            (0, 1, 1),
            (1, 0, 1),
            (1, 1, 0),
            (2, 2, 2),
            (2, 3, 3),
            (3, 2, 3),
            (3, 3, 2),
        ],
    )
    .expect("fixture is well-formed")
}
