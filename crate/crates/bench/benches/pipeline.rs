use criterion::{criterion_group, criterion_main, Criterion};
use stackoid_core::fixtures::two_object_six_arrow;
use stackoid_core::lang::{parse_program, Machine};
use stackoid_core::sgpoid::{arrow_type, find_isomorphism, from_generators};
use stackoid_core::state_space::pt_closure;
use stackoid_core::{covering_decompose, enumerate_states};

fn interpreter(c: &mut Criterion) {
    let program = parse_program(": square dup * ; [1 2 3 4 5 6 7 8] [square] map");
    c.bench_function("interpreter/map_square", |b| {
        b.iter(|| {
            let mut m = Machine::new();
            m.run(&program).unwrap();
            m
        })
    });
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for (name, gens, cap, m) in [
        ("binadd", &["0", "1", "+"][..], 2, 2),
        ("binadd_cap3", &["0", "1", "+"][..], 3, 2),
        ("ternary", &["0", "1", "2", "+"][..], 2, 3),
    ] {
        let space = enumerate_states(gens, cap, m).unwrap();
        let semantics = space.generator_semantics().unwrap();
        group.bench_function(name, |b| b.iter(|| pt_closure(&semantics).unwrap()));
    }
    group.finish();
}

fn generation(c: &mut Criterion) {
    let space = enumerate_states(&["0", "1", "+"], 3, 2).unwrap();
    let semantics = space.generator_semantics().unwrap();
    let graph = space.generator_graph().unwrap();
    c.bench_function("from_generators/binadd_cap3", |b| {
        b.iter(|| from_generators(&graph, &semantics).unwrap())
    });
}

fn isomorphism(c: &mut Criterion) {
    let space = enumerate_states(&["0", "1", "+"], 2, 2).unwrap();
    let s = from_generators(
        &space.generator_graph().unwrap(),
        &space.generator_semantics().unwrap(),
    )
    .unwrap();
    c.bench_function("find_isomorphism/binadd_self", |b| {
        b.iter(|| find_isomorphism(&s, &s).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let s = two_object_six_arrow();
    c.bench_function("covering_decompose/two_object", |b| {
        b.iter(|| {
            let (t, phi) = arrow_type(&s).unwrap();
            covering_decompose(&s, t, phi).unwrap()
        })
    });
}

criterion_group!(
    benches,
    interpreter,
    closure,
    generation,
    isomorphism,
    decomposition
);
criterion_main!(benches);
