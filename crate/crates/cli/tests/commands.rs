use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use stackoid_core::fixtures::two_object_six_arrow;
use stackoid_core::interchange::{MorphismRecord, SemigroupoidFile, SgpoidRecord};
use stackoid_core::sgpoid::Morphism;
use tempfile::TempDir;

fn stackoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackoid"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, value: &T) -> String {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn binadd(dir: &TempDir) -> String {
    let out = path(dir, "binadd.json");
    let o = stackoid(&[
        "sgpoid", "--gens", "0,1,+", "--cap", "2", "--mod", "2", "--out", &out,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

#[test]
fn run_prints_the_final_stack() {
    let o = stackoid(&["run", "-e", "1 0 +"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(
        stdout(&stackoid(&["run", "-e", "[1 2 3 4] [dup *] map"])),
        "[1 4 9 16]\n"
    );
    assert_eq!(
        stdout(&stackoid(&["run", "--mod", "2", "-e", "1 1 +"])),
        "0\n"
    );
}

#[test]
fn run_reads_program_files() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("square.stk");
    fs::write(&file, "# squares\n: square dup * ;\n3 square  # 9\n").unwrap();
    let o = stackoid(&["run", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "9\n");
    let o = stackoid(&["run", dir.path().join("missing.stk").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn evaluation_errors_name_the_error_and_token() {
    let cases = [
        (vec!["run", "-e", "+"], "StackUnderflow at token 0"),
        (
            vec!["run", "--cap", "2", "-e", "0 1 0"],
            "StackOverflow at token 2",
        ),
        (vec!["run", "-e", "1 frob"], "UnknownWord at token 1"),
        (vec!["run", "-e", "[1 2"], "UnbalancedBracket at token 0"),
    ];
    for (args, expected) in cases {
        let o = stackoid(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(expected), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn trace_prints_each_step() {
    let o = stackoid(&["trace", "-e", "1 0 +"]);
    assert_eq!(stdout(&o), "1\n1 0\n1\n");
    assert_eq!(
        stdout(&stackoid(&["run", "--trace", "-e", "2 pop"])),
        "2\nε\n"
    );
}

#[test]
fn invalid_flags_are_user_errors() {
    for args in [
        vec!["run", "--mod", "1", "-e", "1"],
        vec!["run", "--cap", "0", "-e", "1"],
        vec!["run", "prog.stk", "-e", "1"],
        vec!["run"],
        vec!["sgpoid", "--gens", "0,1", "--cap", "2"],
        vec!["export", "x.json", "--format", "svg"],
        vec!["frobnicate"],
    ] {
        assert_eq!(stackoid(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(stackoid(&["--help"]).status.code(), Some(0));
}

#[test]
fn sgpoid_reports_states_and_closure() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "b.json");
    let o = stackoid(&[
        "sgpoid", "--gens", "0,1,+", "--cap", "2", "--mod", "2", "--out", &out,
    ]);
    assert_eq!(
        stdout(&o),
        "states=7 closure=21 objects=7 arrows=48 edges=10\n"
    );
    let file: SemigroupoidFile = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let provenance = file.provenance.unwrap();
    assert_eq!(
        (provenance.generators, provenance.cap, provenance.modulus),
        (vec!["0".into(), "1".into(), "+".into()], 2, 2)
    );
    let block = file.statespace.unwrap();
    assert_eq!(block.states, ["ε", "0", "1", "00", "01", "11", "10"]);

    let o = stackoid(&["sgpoid", "--gens", "swap", "--cap", "2", "--mod", "2"]);
    assert!(stderr(&o).contains("closure=2 "), "{}", stderr(&o));
    let file: SemigroupoidFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(file.statespace.unwrap().closure_size, 2);
}

#[test]
fn sgpoid_rejects_combinators() {
    let o = stackoid(&["sgpoid", "--gens", "map", "--cap", "2", "--mod", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CombinatorExcluded"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = |out: &str| {
        stackoid(&[
            "sgpoid",
            "--gens",
            "0,1,+,swap",
            "--cap",
            "2",
            "--mod",
            "2",
            "--out",
            out,
        ]);
    };
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    args(&a);
    args(&b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let (da, db) = (path(&dir, "da.json"), path(&dir, "db.json"));
    stackoid(&["decompose", &a, "--out", &da]);
    stackoid(&["decompose", &a, "--out", &db]);
    assert_eq!(fs::read(&da).unwrap(), fs::read(&db).unwrap());
}

#[test]
fn decompose_two_object_example() {
    let dir = TempDir::new().unwrap();
    let input = write_json(
        &dir,
        "two_object.json",
        &SemigroupoidFile::plain(&two_object_six_arrow()),
    );
    let out = path(&dir, "d.json");
    let o = stackoid(&[
        "decompose",
        &input,
        "--morphism",
        "arrowtype",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "top=3 components=[2,3,1] classes=3 emulation=ok\n"
    );
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["emulation"]["ok"], true);
    assert_eq!(json["components"].as_array().unwrap().len(), 3);
}

#[test]
fn decompose_generated_semigroupoid() {
    let dir = TempDir::new().unwrap();
    let input = binadd(&dir);
    let o = stackoid(&["decompose", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).ends_with("emulation=ok\n"), "{}", stderr(&o));
}

fn morphism_file(
    dir: &TempDir,
    name: &str,
    target: &stackoid_core::Semigroupoid,
    phi: &Morphism,
) -> String {
    write_json(
        dir,
        name,
        &MorphismRecord {
            target: Some(SgpoidRecord::from(target)),
            object_map: phi.object_map.clone(),
            arrow_map: phi.arrow_map.clone(),
        },
    )
}

#[test]
fn decompose_with_morphism_files() {
    let dir = TempDir::new().unwrap();
    let s = two_object_six_arrow();
    let input = write_json(&dir, "two_object.json", &SemigroupoidFile::plain(&s));

    let identity = morphism_file(&dir, "id.json", &s, &Morphism::identity(&s));
    let o = stackoid(&["decompose", &input, "--morphism", &identity]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stderr(&o).contains("components=[1,1,1,1,1,1]"),
        "{}",
        stderr(&o)
    );

    // a and b swapped: a·a = a, but φ(a)φ(a) = b·b = a while φ(a) = b
    let mut corrupted = Morphism::identity(&s);
    corrupted.arrow_map.swap(0, 1);
    let bad = morphism_file(&dir, "bad.json", &s, &corrupted);
    let o = stackoid(&["decompose", &input, "--morphism", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("NotAMorphism: composition of (0,0)"),
        "{}",
        stderr(&o)
    );

    let (t, mut phi) = stackoid_core::sgpoid::arrow_type(&s).unwrap();
    phi.arrow_map = vec![0; 6];
    let o = stackoid(&[
        "decompose",
        &input,
        "--morphism",
        &morphism_file(&dir, "ns.json", &t, &phi),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("NotAMorphism") || stderr(&o).contains("NotSurjective"),
        "{}",
        stderr(&o)
    );

    let no_target = write_json(
        &dir,
        "nt.json",
        &serde_json::json!({"object_map": [0, 1], "arrow_map": [0, 1, 2, 3, 4, 5]}),
    );
    assert_eq!(
        stackoid(&["decompose", &input, "--morphism", &no_target])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn decompose_rejects_non_surjective_morphisms() {
    let dir = TempDir::new().unwrap();
    let s = stackoid_core::fixtures::cyclic_two();
    let input = write_json(&dir, "z2.json", &SemigroupoidFile::plain(&s));
    // everything onto the identity of Z2: a morphism that misses `s`
    let phi = Morphism {
        object_map: vec![0],
        arrow_map: vec![0, 0],
    };
    let o = stackoid(&[
        "decompose",
        &input,
        "--morphism",
        &morphism_file(&dir, "m.json", &s, &phi),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotSurjective"), "{}", stderr(&o));
}

#[test]
fn schema_errors_are_user_errors() {
    let dir = TempDir::new().unwrap();
    let garbage = path(&dir, "g.json");
    fs::write(&garbage, "{not json").unwrap();
    assert_eq!(stackoid(&["decompose", &garbage]).status.code(), Some(1));
    assert_eq!(stackoid(&["export", &garbage]).status.code(), Some(1));

    let non_assoc = write_json(
        &dir,
        "n.json",
        &serde_json::json!({
            "objects": [{"id": 0, "name": "σ"}],
            "arrows": [{"id": 0, "dom": 0, "cod": 0, "label": "x"}, {"id": 1, "dom": 0, "cod": 0, "label": "y"}],
            "table": [[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 0]]
        }),
    );
    let o = stackoid(&["decompose", &non_assoc]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a semigroupoid"), "{}", stderr(&o));
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains("->"))
        .count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    (nodes, edges)
}

#[test]
fn export_dot_of_generated_graph() {
    let dir = TempDir::new().unwrap();
    let input = binadd(&dir);
    let o = stackoid(&["export", &input, "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph stackoid {\n") && dot.ends_with("}\n"));
    assert_eq!(dot_counts(&dot), (7, 10));
    assert!(dot.contains("n0 [label=\"ε\"];"));

    let o = stackoid(&[
        "export",
        &input,
        "--format",
        "dot",
        "--partition",
        "ε|0,1|00,11|01,10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(dot_counts(&stdout(&o)).0, 4);

    let o = stackoid(&[
        "export",
        &input,
        "--format",
        "dot",
        "--partition",
        "ε,00|0|1|01|11|10",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("IncompatiblePartition"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn export_of_graph_files() {
    let dir = TempDir::new().unwrap();
    let input = binadd(&dir);
    let graph = path(&dir, "graph.json");
    let o = stackoid(&[
        "export",
        &input,
        "--format",
        "json",
        "--partition",
        "ε|0,1|00,11|01,10",
        "--out",
        &graph,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = stackoid(&["export", &graph, "--format", "dot"]);
    assert_eq!(dot_counts(&stdout(&o)), (4, 8));

    let empty = write_json(
        &dir,
        "empty.json",
        &serde_json::json!({"objects": [], "edges": []}),
    );
    assert_eq!(
        stdout(&stackoid(&["export", &empty, "--format", "dot"])),
        "digraph stackoid {\n}\n"
    );
}

#[test]
fn json_export_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = binadd(&dir);
    let again = path(&dir, "again.json");
    let o = stackoid(&["export", &input, "--out", &again]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read(&input).unwrap(), fs::read(&again).unwrap());
    let file: SemigroupoidFile =
        serde_json::from_str(&fs::read_to_string(Path::new(&again)).unwrap()).unwrap();
    let s = file.semigroupoid.to_semigroupoid().unwrap();
    assert_eq!(s.arrow_count(), 48);
}
