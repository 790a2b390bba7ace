//! Command-line front end: run and trace programs, extract semigroupoids
//! from generator vocabularies, decompose them, and export JSON or DOT.

mod dot;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use stackoid_core::decomposition::{covering_decompose, verify_emulation};
use stackoid_core::enumerate_states;
use stackoid_core::interchange::{
    DecompositionFile, GraphRecord, MorphismRecord, Provenance, SemigroupoidFile, StateSpaceRecord,
};
use stackoid_core::lang::{parse_program, Machine, StackState};
use stackoid_core::sgpoid::{
    arrow_type, from_generators, quotient_objects, quotient_objects_strict, Semigroupoid,
};
use stackoid_core::state_space::{pt_closure, TypedGeneratorGraph};
use thiserror::Error;

pub use dot::render as render_dot;

#[derive(Debug, Parser)]
#[command(
    name = "stackoid",
    version,
    about = "Concatenative programs as finite semigroupoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a program and print the final stack, bottom first.
    Run(RunArgs),
    /// Run a program and print the stack after every instruction.
    Trace(RunArgs),
    /// Extract the state space, transformation closure and generated
    /// semigroupoid of a generator vocabulary.
    Sgpoid(SgpoidArgs),
    /// Two-level covering decomposition of a semigroupoid file.
    Decompose(DecomposeArgs),
    /// Re-emit a semigroupoid or graph file as JSON or DOT.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Program file.
    #[arg(conflicts_with = "expr", required_unless_present = "expr")]
    pub file: Option<PathBuf>,
    /// Inline program text.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
    /// Reduce integers modulo m (m >= 2).
    #[arg(long = "mod", value_parser = parse_modulus)]
    pub modulus: Option<u64>,
    /// Maximum stack depth (n >= 1).
    #[arg(long, value_parser = parse_cap)]
    pub cap: Option<usize>,
    /// Print one stack per step.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SgpoidArgs {
    /// Comma-separated first-order words, e.g. `0,1,+`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gens: Vec<String>,
    #[arg(long, value_parser = parse_cap)]
    pub cap: usize,
    #[arg(long = "mod", value_parser = parse_modulus)]
    pub modulus: u64,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Semigroupoid JSON file.
    pub input: PathBuf,
    /// `arrowtype`, or a morphism JSON file with a `target` semigroupoid.
    #[arg(long, default_value = "arrowtype")]
    pub morphism: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Semigroupoid or generator-graph JSON file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Merge states before exporting, e.g. `ε|0,1|00,11|01,10`.
    #[arg(long)]
    pub partition: Option<String>,
    /// Require merged states to agree on generator targets as well.
    #[arg(long, requires = "partition")]
    pub strict: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_modulus(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(m) if m >= 2 => Ok(m),
        Ok(m) => Err(format!("modulus must be at least 2, got {m}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("stack cap must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: flags, files, programs or structures.
    #[error("{0}")]
    User(String),
    /// A result the tool produced failed its own check.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn user(e: impl ToString) -> CliError {
    CliError::User(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| user(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Writes `body` to `out` if given, otherwise to `stdout`. Returns whether
/// the body went to a file.
fn emit(out: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<bool, CliError> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| user(format!("{}: {e}", path.display())))?;
            Ok(true)
        }
        None => {
            stdout.write_all(body.as_bytes()).map_err(user)?;
            Ok(false)
        }
    }
}

/// Summaries go to standard output when the JSON went to a file, and to
/// standard error when the JSON itself is on standard output.
fn summarize(
    json_to_file: bool,
    summary: &str,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let sink: &mut dyn Write = if json_to_file { stdout } else { stderr };
    sink.write_all(summary.as_bytes()).map_err(user)
}

fn render_stack(s: &StackState) -> String {
    if s.is_empty() {
        "ε".into()
    } else {
        s.to_string()
    }
}

/// Executes a parsed command. Normal output goes to `stdout`, summaries
/// that accompany JSON on standard output go to `stderr`.
pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => run(args, false, stdout),
        Command::Trace(args) => run(args, true, stdout),
        Command::Sgpoid(args) => sgpoid(args, stdout, stderr),
        Command::Decompose(args) => decompose(args, stdout, stderr),
        Command::Export(args) => export(args, stdout),
    }
}

fn run(args: RunArgs, force_trace: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let source = match (&args.file, args.expr) {
        (Some(path), None) => read(path)?,
        (None, Some(expr)) => expr,
        _ => return Err(user("give exactly one of a program file or -e")),
    };
    let program = parse_program(&source);
    let mut machine = Machine::new()
        .with_cap(args.cap)
        .with_modulus(args.modulus.map(BigInt::from));
    let mut out = String::new();
    if args.trace || force_trace {
        let (steps, error) = match machine.trace(&program) {
            Ok(steps) => (steps, None),
            Err(e) => (e.steps, Some(e.error)),
        };
        for s in &steps {
            out.push_str(&render_stack(s));
            out.push('\n');
        }
        stdout.write_all(out.as_bytes()).map_err(user)?;
        if let Some(e) = error {
            return Err(user(e));
        }
    } else {
        machine.run(&program).map_err(user)?;
        out.push_str(&render_stack(machine.stack()));
        out.push('\n');
        stdout.write_all(out.as_bytes()).map_err(user)?;
    }
    Ok(())
}

fn sgpoid(
    args: SgpoidArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let gens: Vec<String> = args.gens.iter().map(|g| g.trim().to_string()).collect();
    if let Some(empty) = gens.iter().position(String::is_empty) {
        return Err(user(format!("--gens entry {} is empty", empty + 1)));
    }
    let space = enumerate_states(&gens, args.cap, args.modulus).map_err(user)?;
    let semantics = space.generator_semantics().map_err(user)?;
    let graph = space.generator_graph().map_err(user)?;
    let closure = pt_closure(&semantics).map_err(user)?;
    let s = from_generators(&graph, &semantics).map_err(|e| CliError::Internal(e.to_string()))?;
    let report = s.validate();
    if !report.is_valid() {
        return Err(CliError::Internal(format!(
            "generated semigroupoid: {}",
            report.violations[0]
        )));
    }
    let file = SemigroupoidFile {
        provenance: Some(Provenance {
            generators: gens,
            cap: args.cap,
            modulus: args.modulus,
        }),
        statespace: Some(StateSpaceRecord::new(&space, &semantics, &closure, &graph)),
        ..SemigroupoidFile::plain(&s)
    };
    let summary = format!(
        "states={} closure={} objects={} arrows={} edges={}\n",
        space.len(),
        closure.len(),
        s.object_count(),
        s.arrow_count(),
        graph.edges().len()
    );
    let to_file = emit(args.out.as_deref(), &to_json(&file), stdout)?;
    summarize(to_file, &summary, stdout, stderr)
}

fn load_semigroupoid(path: &Path) -> Result<(SemigroupoidFile, Semigroupoid), CliError> {
    let file: SemigroupoidFile =
        serde_json::from_str(&read(path)?).map_err(|e| user(format!("{}: {e}", path.display())))?;
    let s = file.semigroupoid.to_semigroupoid().map_err(user)?;
    let report = s.validate();
    if let Some(v) = report.violations.first() {
        return Err(user(format!("{}: not a semigroupoid: {v}", path.display())));
    }
    Ok((file, s))
}

fn decompose(
    args: DecomposeArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let (_, s) = load_semigroupoid(&args.input)?;
    let (top, phi) = if args.morphism == "arrowtype" {
        arrow_type(&s).map_err(|e| CliError::Internal(e.to_string()))?
    } else {
        let path = Path::new(&args.morphism);
        let record: MorphismRecord = serde_json::from_str(&read(path)?)
            .map_err(|e| user(format!("{}: {e}", path.display())))?;
        let target = record
            .target
            .as_ref()
            .ok_or_else(|| {
                user(format!(
                    "{}: morphism file needs a `target` semigroupoid",
                    path.display()
                ))
            })?
            .to_semigroupoid()
            .map_err(user)?;
        if let Some(v) = target.validate().violations.first() {
            return Err(user(format!(
                "{}: target is not a semigroupoid: {v}",
                path.display()
            )));
        }
        (target, record.to_morphism())
    };
    let d = covering_decompose(&s, top, phi).map_err(user)?;
    let report = verify_emulation(&s, &d);
    let file = DecompositionFile::new(&d, &report);
    let sizes: Vec<String> = d
        .component_sizes()
        .iter()
        .map(ToString::to_string)
        .collect();
    let summary = format!(
        "top={} components=[{}] classes={} emulation={}\n",
        d.top.arrow_count(),
        sizes.join(","),
        d.classes.len(),
        if report.is_ok() { "ok" } else { "failed" }
    );
    let to_file = emit(args.out.as_deref(), &to_json(&file), stdout)?;
    summarize(to_file, &summary, stdout, stderr)?;
    if let Some(v) = report.violations.first() {
        return Err(CliError::Internal(format!("emulation check: {v}")));
    }
    Ok(())
}

/// A semigroupoid file or a bare generator graph.
enum ExportInput {
    Semigroupoid(Box<SemigroupoidFile>, Semigroupoid),
    Graph(TypedGeneratorGraph),
}

fn load_export_input(path: &Path) -> Result<ExportInput, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| user(format!("{}: {e}", path.display())))?;
    if value.get("arrows").is_some() {
        let (file, s) = load_semigroupoid(path)?;
        Ok(ExportInput::Semigroupoid(Box::new(file), s))
    } else {
        let record: GraphRecord =
            serde_json::from_value(value).map_err(|e| user(format!("{}: {e}", path.display())))?;
        Ok(ExportInput::Graph(record.to_graph().map_err(user)?))
    }
}

/// The generator graph behind a semigroupoid file: its recorded generator
/// graph if it has one, otherwise its arrows read as generators.
fn graph_of(file: &SemigroupoidFile, s: &Semigroupoid) -> Result<TypedGeneratorGraph, CliError> {
    match &file.statespace {
        Some(block) => block.graph.to_graph().map_err(user),
        None => {
            let edges = s
                .arrows()
                .iter()
                .map(|a| stackoid_core::state_space::GraphEdge {
                    source: a.dom,
                    label: a.label.clone(),
                    target: a.cod,
                })
                .collect();
            TypedGeneratorGraph::new(s.objects().iter().map(|o| o.name.clone()).collect(), edges)
                .map_err(user)
        }
    }
}

/// Parses `ε|0,1|00,11` into blocks of object ids, by object name.
pub fn parse_partition(
    layout: &str,
    graph: &TypedGeneratorGraph,
) -> Result<Vec<Vec<usize>>, CliError> {
    layout
        .split('|')
        .map(|block| {
            block
                .split(',')
                .map(|name| {
                    let name = name.trim();
                    graph
                        .objects()
                        .iter()
                        .position(|o| o.name == name)
                        .ok_or_else(|| user(format!("partition names unknown state `{name}`")))
                })
                .collect()
        })
        .collect()
}

fn export(args: ExportArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let input = load_export_input(&args.input)?;
    let body = match (&input, args.format, &args.partition) {
        (ExportInput::Semigroupoid(file, s), Format::Json, None) => to_json(&SemigroupoidFile {
            semigroupoid: s.into(),
            ..(**file).clone()
        }),
        (_, format, partition) => {
            let mut graph = match &input {
                ExportInput::Semigroupoid(file, s) => graph_of(file, s)?,
                ExportInput::Graph(g) => g.clone(),
            };
            if let Some(layout) = partition {
                let blocks = parse_partition(layout, &graph)?;
                graph = if args.strict {
                    quotient_objects_strict(&graph, &blocks)
                } else {
                    quotient_objects(&graph, &blocks)
                }
                .map_err(user)?;
            }
            let record = GraphRecord::from(&graph);
            match format {
                Format::Json => to_json(&record),
                Format::Dot => dot::render(&record),
            }
        }
    };
    emit(args.out.as_deref(), &body, stdout)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("stackoid").chain(args.iter().copied()))
    }

    #[test]
    fn flag_validation() {
        assert!(parse(&["run", "-e", "1", "--mod", "1"]).is_err());
        assert!(parse(&["run", "-e", "1", "--cap", "0"]).is_err());
        assert!(parse(&["run", "prog.txt", "-e", "1"]).is_err());
        assert!(parse(&["run"]).is_err());
        assert!(parse(&["export", "x.json", "--strict"]).is_err());
        assert!(parse(&["sgpoid", "--gens", "0,1,+", "--cap", "2"]).is_err());
        let cli = parse(&["sgpoid", "--gens", "0,1,+", "--cap", "2", "--mod", "2"]).unwrap();
        match cli.command {
            Command::Sgpoid(a) => assert_eq!(a.gens, ["0", "1", "+"]),
            other => panic!("{other:?}"),
        }
    }

    fn capture(args: &[&str]) -> (Result<(), CliError>, String, String) {
        let cli = parse(args).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let r = execute(cli, &mut out, &mut err);
        (
            r,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn run_and_trace() {
        assert_eq!(capture(&["run", "-e", "1 0 +"]).1, "1\n");
        assert_eq!(capture(&["run", "-e", ""]).1, "ε\n");
        assert_eq!(capture(&["trace", "-e", "1 0 +"]).1, "1\n1 0\n1\n");
        let (r, out, _) = capture(&["run", "--trace", "--cap", "2", "-e", "0 1 0"]);
        assert_eq!(out, "0\n0 1\n");
        let e = r.unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().starts_with("StackOverflow at token 2"));
    }

    #[test]
    fn sgpoid_summary_goes_to_stderr_with_json_on_stdout() {
        let (r, out, err) = capture(&["sgpoid", "--gens", "0,1,+", "--cap", "2", "--mod", "2"]);
        r.unwrap();
        assert_eq!(err, "states=7 closure=21 objects=7 arrows=48 edges=10\n");
        let file: SemigroupoidFile = serde_json::from_str(&out).unwrap();
        assert_eq!(file.statespace.unwrap().closure_size, 21);
    }

    #[test]
    fn partition_names() {
        let space = enumerate_states(&["0", "1", "+"], 2, 2).unwrap();
        let graph = space.generator_graph().unwrap();
        assert_eq!(
            parse_partition("ε|0,1|00,11|01,10", &graph).unwrap(),
            [vec![0], vec![1, 2], vec![3, 5], vec![4, 6]]
        );
        assert!(parse_partition("ε|2", &graph).is_err());
    }
}
