use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cocycle_core::diagram::planar::is_planar;
use cocycle_core::diagram::{builder, parse_diagram, serialize_diagram, VirtualDiagram, BUILDER_NAMES};
use cocycle_core::invariants::{compute_z, compute_z1, compute_z2, compute_z3, InvariantResult};
use cocycle_core::moves::{random_equivalent_with, FuzzConfig};
use cocycle_core::solver::{count_colorings, enumerate_colorings};
use cocycle_core::{
    Cochain1, Cocycle2, CocycleSpec, CoefficientGroup, Error, Execution, FiniteQuandle, QuandleMap, QuandleSpec,
};

/// Quandle colorings and cocycle invariants of classical and virtual link diagrams.
#[derive(Parser)]
#[command(name = "cocycle", version)]
struct Cli {
    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Output style for `invariant` and `color`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check quandle tables and list automorphisms.
    #[command(subcommand)]
    Quandle(QuandleOp),
    /// Check, build and compare 2-cocycles.
    #[command(subcommand)]
    Cocycle(CocycleOp),
    /// Validate, build and inspect diagrams.
    #[command(subcommand)]
    Diagram(DiagramOp),
    /// Count or list colorings.
    #[command(subcommand)]
    Color(ColorOp),
    /// Compute Z, Z1, Z2 or Z3.
    #[command(subcommand)]
    Invariant(InvariantOp),
    /// Apply random equivalence moves and check that an invariant is unchanged.
    Fuzz(FuzzArgs),
}

#[derive(Subcommand)]
enum QuandleOp {
    /// Check the quandle axioms.
    Check(QuandleInput),
    /// List all automorphisms.
    Auts {
        #[command(flatten)]
        input: QuandleInput,
        /// Largest order searched by brute force.
        #[arg(long, default_value_t = cocycle_core::algebra::DEFAULT_AUTOMORPHISM_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum CocycleOp {
    /// Check the cocycle conditions.
    Check(CocycleInput),
    /// The coboundary of a 1-cochain.
    Coboundary {
        #[command(flatten)]
        quandle: QuandleArgs,
        /// Cochain values as a JSON array of integers.
        #[arg(long)]
        psi: String,
        /// Coefficients modulo this number, 0 for the integers.
        #[arg(long, default_value_t = 0)]
        modulus: u64,
    },
    /// A generating set of the cocycles with coefficients modulo `m`.
    Basis {
        #[command(flatten)]
        quandle: QuandleArgs,
        #[arg(long)]
        modulus: u64,
    },
    /// Whether an automorphism preserves the cocycle.
    Preserves {
        #[command(flatten)]
        input: CocycleInput,
        #[command(flatten)]
        aut: AutArg,
    },
    /// Whether two cocycles differ by a coboundary.
    Cohomologous {
        #[command(flatten)]
        input: CocycleInput,
        /// The second cocycle, in the same forms as `--cocycle`.
        #[arg(long)]
        other: String,
    },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// Check the well-formedness conditions.
    Validate(DiagramInput),
    /// Print a built-in diagram.
    Build { name: String },
    /// List the built-in diagrams.
    Names,
    /// Components and their edge cycles.
    Components(DiagramInput),
}

#[derive(Subcommand)]
enum ColorOp {
    Count(ColorArgs),
    List(ColorArgs),
}

#[derive(Subcommand)]
enum InvariantOp {
    /// Classical state sum.
    Z(InvariantArgs),
    /// State weight for one automorphism.
    Z1(InvariantArgs),
    /// State sum for a cocycle-preserving automorphism.
    Z2(InvariantArgs),
    /// Sum of state weights over all automorphisms.
    Z3(InvariantArgs),
}

/// The primary input, read from a file or given inline.
#[derive(Args)]
struct Primary {
    /// Read the primary JSON input from a file, `-` for stdin.
    #[arg(long, value_name = "PATH", conflicts_with = "json")]
    file: Option<PathBuf>,
    /// The primary JSON input, inline.
    #[arg(long, value_name = "TEXT")]
    json: Option<String>,
}

#[derive(Args)]
struct QuandleArgs {
    /// The dihedral quandle of order N.
    #[arg(long, value_name = "N", conflicts_with = "quandle")]
    dihedral: Option<usize>,
    /// `dihedral:N`, `trivial:N` or quandle JSON.
    #[arg(long)]
    quandle: Option<String>,
}

#[derive(Args)]
struct QuandleInput {
    #[command(flatten)]
    quandle: QuandleArgs,
    #[command(flatten)]
    primary: Primary,
}

#[derive(Args)]
struct CocycleArg {
    /// `example-r4`, `trivial`, `trivial:M` or cocycle JSON.
    #[arg(long)]
    cocycle: Option<String>,
}

#[derive(Args)]
struct CocycleInput {
    #[command(flatten)]
    quandle: QuandleArgs,
    #[command(flatten)]
    cocycle: CocycleArg,
    #[command(flatten)]
    primary: Primary,
}

#[derive(Args)]
struct AutArg {
    /// `id`, `inner:A` or a JSON array of images.
    #[arg(long, default_value = "id")]
    aut: String,
}

#[derive(Args)]
struct DiagramArg {
    /// A built-in diagram name or diagram JSON.
    #[arg(long)]
    diagram: Option<String>,
}

#[derive(Args)]
struct DiagramInput {
    #[command(flatten)]
    diagram: DiagramArg,
    #[command(flatten)]
    primary: Primary,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    input: DiagramInput,
    #[command(flatten)]
    quandle: QuandleArgs,
    #[command(flatten)]
    aut: AutArg,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    input: DiagramInput,
    #[command(flatten)]
    quandle: QuandleArgs,
    #[command(flatten)]
    cocycle: CocycleArg,
    #[command(flatten)]
    aut: AutArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Z,
    Z1,
    Z2,
    Z3,
}

#[derive(Args)]
struct FuzzArgs {
    #[command(flatten)]
    input: DiagramInput,
    #[command(flatten)]
    quandle: QuandleArgs,
    #[command(flatten)]
    cocycle: CocycleArg,
    #[command(flatten)]
    aut: AutArg,
    #[arg(long, default_value_t = 100)]
    moves: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Invariant compared before and after.
    #[arg(long, value_enum, default_value_t = Which::Z2)]
    invariant: Which,
    /// Leave out moves that carry a virtual strand across a classical crossing.
    #[arg(long)]
    no_semi_virtual: bool,
    /// Classical Reidemeister moves only.
    #[arg(long)]
    classical: bool,
}

enum Failure {
    /// Bad arguments or unreadable input; exit status 2.
    Usage(String),
    /// A computation was refused or a check failed; exit status 1.
    Failed(String),
    /// The report is already on stdout; exit status 1.
    Reported,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownName(_) | Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(v: &Value) {
    println!("{v}");
}

impl Primary {
    fn text(&self) -> Result<Option<String>, Failure> {
        if let Some(t) = &self.json {
            return Ok(Some(t.clone()));
        }
        let Some(path) = &self.file else { return Ok(None) };
        let mut s = String::new();
        let read = if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut s).map(|_| ())
        } else {
            std::fs::read_to_string(path).map(|t| s = t)
        };
        read.map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        Ok(Some(s))
    }
}

/// Exactly one of the given sources, or `None` if all are empty.
fn one_of(sources: Vec<(&str, Option<String>)>) -> Result<Option<String>, Failure> {
    let given: Vec<_> = sources.into_iter().filter_map(|(n, v)| v.map(|v| (n, v))).collect();
    match given.len() {
        0 => Ok(None),
        1 => Ok(given.into_iter().next().map(|(_, v)| v)),
        _ => Err(usage(format!(
            "conflicting inputs: {}",
            given.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn parse_quandle(text: &str) -> Result<FiniteQuandle, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(QuandleSpec::parse(text)?);
    }
    let (kind, n) = text.split_once(':').ok_or_else(|| usage(format!("unknown quandle `{text}`")))?;
    let n: usize = n.parse().map_err(|_| usage(format!("bad order in `{text}`")))?;
    Ok(match kind {
        "dihedral" => FiniteQuandle::dihedral(n)?,
        "trivial" => FiniteQuandle::trivial(n)?,
        _ => return Err(usage(format!("unknown quandle `{text}`"))),
    })
}

impl QuandleArgs {
    fn text(&self) -> Option<String> {
        self.dihedral.map(|n| format!("dihedral:{n}")).or_else(|| self.quandle.clone())
    }

    fn resolve(&self) -> Result<Option<FiniteQuandle>, Failure> {
        self.text().map(|t| parse_quandle(&t)).transpose()
    }
}

fn required_quandle(q: &QuandleArgs) -> Result<FiniteQuandle, Failure> {
    q.resolve()?.ok_or_else(|| usage("a quandle is required: --dihedral or --quandle"))
}

fn parse_cocycle(text: &str, q: &FiniteQuandle) -> Result<Cocycle2, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(CocycleSpec::parse(text)?.build(q)?);
    }
    match text {
        "example-r4" => {
            let c = Cocycle2::example_r4();
            if c.quandle() != q {
                return Err(usage("example-r4 lives on the dihedral quandle of order 4"));
            }
            Ok(c)
        }
        "trivial" => Ok(Cocycle2::trivial(q, CoefficientGroup::INFINITE)),
        _ => match text.strip_prefix("trivial:").map(str::parse::<u64>) {
            Some(Ok(m)) => Ok(Cocycle2::trivial(q, CoefficientGroup::cyclic(m))),
            _ => Err(usage(format!("unknown cocycle `{text}`"))),
        },
    }
}

/// The quandle and cocycle, defaulting to the dihedral quandle of order 4
/// when the cocycle is `example-r4`, and to the trivial cocycle otherwise.
fn quandle_and_cocycle(q: &QuandleArgs, cocycle: Option<String>) -> Result<(FiniteQuandle, Cocycle2), Failure> {
    let quandle = match q.resolve()? {
        Some(q) => q,
        None if cocycle.as_deref().map(str::trim) == Some("example-r4") => Cocycle2::example_r4().quandle().clone(),
        None => return Err(usage("a quandle is required: --dihedral or --quandle")),
    };
    let c = match cocycle {
        Some(t) => parse_cocycle(&t, &quandle)?,
        None => Cocycle2::trivial(&quandle, CoefficientGroup::INFINITE),
    };
    Ok((quandle, c))
}

fn parse_aut(text: &str, q: &FiniteQuandle) -> Result<QuandleMap, Failure> {
    let text = text.trim();
    let f = if text == "id" {
        QuandleMap::identity(q.order())
    } else if let Some(a) = text.strip_prefix("inner:") {
        let a: usize = a.parse().map_err(|_| usage(format!("bad element in `{text}`")))?;
        q.inner_automorphism(a)?
    } else if text.starts_with('[') {
        let images: Vec<usize> = serde_json::from_str(text).map_err(|e| usage(format!("bad map: {e}")))?;
        QuandleMap::new(images)
    } else {
        return Err(usage(format!("unknown automorphism `{text}`")));
    };
    if !q.is_automorphism(&f)? {
        return Err(Failure::Failed(format!("{:?} is not an automorphism", f.images())));
    }
    Ok(f)
}

fn parse_diagram_text(text: &str) -> Result<VirtualDiagram, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        Ok(parse_diagram(text)?)
    } else {
        Ok(builder(text)?)
    }
}

impl DiagramInput {
    fn text(&self) -> Result<String, Failure> {
        one_of(vec![("--diagram", self.diagram.diagram.clone()), ("--file/--json", self.primary.text()?)])?
            .ok_or_else(|| usage("a diagram is required: --diagram, --file or --json"))
    }

    fn resolve(&self) -> Result<VirtualDiagram, Failure> {
        parse_diagram_text(&self.text()?)
    }
}

/// `{"valid": true}` or `{"valid": false, ...report}`.
fn report<T: serde::Serialize>(valid: bool, r: &T) -> Outcome {
    let mut out = Map::new();
    out.insert("valid".into(), Value::Bool(valid));
    if !valid {
        if let Value::Object(fields) = serde_json::to_value(r).expect("report serializes") {
            out.extend(fields);
        }
    }
    emit(&Value::Object(out));
    if valid {
        Ok(())
    } else {
        Err(Failure::Reported)
    }
}

fn big(n: &impl ToString) -> Value {
    let s = n.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

fn quandle_from(input: &QuandleInput) -> Result<FiniteQuandle, Failure> {
    let text = one_of(vec![("--dihedral/--quandle", input.quandle.text()), ("--file/--json", input.primary.text()?)])?
        .ok_or_else(|| usage("a quandle is required: --dihedral, --quandle, --file or --json"))?;
    parse_quandle(&text)
}

fn cocycle_from(input: &CocycleInput) -> Result<(FiniteQuandle, Cocycle2), Failure> {
    let text = one_of(vec![("--cocycle", input.cocycle.cocycle.clone()), ("--file/--json", input.primary.text()?)])?
        .ok_or_else(|| usage("a cocycle is required: --cocycle, --file or --json"))?;
    quandle_and_cocycle(&input.quandle, Some(text))
}

fn run_quandle(op: QuandleOp, exec: Execution) -> Outcome {
    match op {
        QuandleOp::Check(input) => {
            let q = quandle_from(&input)?;
            let r = q.validate();
            report(r.is_valid(), &r)
        }
        QuandleOp::Auts { input, bound } => {
            let q = quandle_from(&input)?;
            let auts = q.automorphisms_with(bound, exec)?;
            let images: Vec<&[usize]> = auts.iter().map(QuandleMap::images).collect();
            emit(&json!({ "order": q.order(), "count": auts.len(), "automorphisms": images }));
            Ok(())
        }
    }
}

fn run_cocycle(op: CocycleOp) -> Outcome {
    match op {
        CocycleOp::Check(input) => {
            let (_, c) = cocycle_from(&input)?;
            let r = c.validate();
            report(r.is_valid(), &r)
        }
        CocycleOp::Coboundary { quandle, psi, modulus } => {
            let q = required_quandle(&quandle)?;
            let values: Vec<i64> = serde_json::from_str(&psi).map_err(|e| usage(format!("bad cochain: {e}")))?;
            let c = Cocycle2::coboundary(&q, CoefficientGroup::cyclic(modulus), &Cochain1::new(values))?;
            emit(&c.to_json());
            Ok(())
        }
        CocycleOp::Basis { quandle, modulus } => {
            let q = required_quandle(&quandle)?;
            let gens = Cocycle2::space_basis(&q, modulus)?;
            let gens: Vec<Value> = gens.iter().map(Cocycle2::to_json).collect();
            emit(&json!({ "modulus": modulus, "generators": gens }));
            Ok(())
        }
        CocycleOp::Preserves { input, aut } => {
            let (q, c) = cocycle_from(&input)?;
            let f = parse_aut(&aut.aut, &q)?;
            let out = match c.preservation_witness(&f)? {
                None => json!({ "preserves": true }),
                Some((a, b)) => json!({ "preserves": false, "witness": [a, b] }),
            };
            emit(&out);
            Ok(())
        }
        CocycleOp::Cohomologous { input, other } => {
            let (q, c) = cocycle_from(&input)?;
            let d = parse_cocycle(&other, &q)?;
            let out = match c.is_cohomologous(&d)? {
                Some(psi) => json!({ "cohomologous": true, "witness": psi.to_json() }),
                None => json!({ "cohomologous": false }),
            };
            emit(&out);
            Ok(())
        }
    }
}

fn run_diagram(op: DiagramOp) -> Outcome {
    match op {
        DiagramOp::Validate(input) => {
            let text = input.text()?;
            let d = if text.trim_start().starts_with('{') {
                serde_json::from_str::<VirtualDiagram>(&text).map_err(|e| usage(format!("parse error: {e}")))?
            } else {
                builder(text.trim())?
            };
            let r = d.validate();
            if !r.is_valid() {
                return report(false, &r);
            }
            emit(&json!({
                "valid": true,
                "classical": d.classical_count(),
                "virtual": d.virtual_count(),
                "components": d.component_count(),
                "planar": is_planar(&d),
            }));
            Ok(())
        }
        DiagramOp::Build { name } => {
            println!("{}", serialize_diagram(&builder(&name)?));
            Ok(())
        }
        DiagramOp::Names => {
            emit(&json!(BUILDER_NAMES));
            Ok(())
        }
        DiagramOp::Components(input) => {
            let d = input.resolve()?;
            emit(&json!({
                "components": d.component_count(),
                "free_loops": d.free_loops,
                "cycles": d.edge_cycles(),
            }));
            Ok(())
        }
    }
}

fn run_color(op: ColorOp, format: Format) -> Outcome {
    let (args, list) = match op {
        ColorOp::Count(a) => (a, false),
        ColorOp::List(a) => (a, true),
    };
    let d = args.input.resolve()?;
    let q = required_quandle(&args.quandle)?;
    let f = parse_aut(&args.aut.aut, &q)?;
    if list {
        let all = enumerate_colorings(&d, &q, &f)?;
        match format {
            Format::Json => emit(&json!({ "colorings": all })),
            Format::Human => {
                for c in &all {
                    println!("{}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
                }
            }
        }
    } else {
        let n = count_colorings(&d, &q, &f)?;
        match format {
            Format::Json => emit(&json!({ "colorings": big(&n) })),
            Format::Human => println!("{n}"),
        }
    }
    Ok(())
}

fn compute(
    which: Which,
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    c: &Cocycle2,
    f: &QuandleMap,
    exec: Execution,
) -> Result<InvariantResult, Failure> {
    Ok(match which {
        Which::Z => compute_z(d, q, c, exec)?,
        Which::Z1 => compute_z1(d, q, c, f, exec)?,
        Which::Z2 => compute_z2(d, q, c, f, exec)?,
        Which::Z3 => compute_z3(d, q, c, exec)?,
    })
}

fn run_invariant(op: InvariantOp, format: Format, exec: Execution) -> Outcome {
    let (which, args) = match op {
        InvariantOp::Z(a) => (Which::Z, a),
        InvariantOp::Z1(a) => (Which::Z1, a),
        InvariantOp::Z2(a) => (Which::Z2, a),
        InvariantOp::Z3(a) => (Which::Z3, a),
    };
    let d = args.input.resolve()?;
    let (q, c) = quandle_and_cocycle(&args.quandle, args.cocycle.cocycle.clone())?;
    let f = parse_aut(&args.aut.aut, &q)?;
    let r = compute(which, &d, &q, &c, &f, exec)?;
    match format {
        Format::Json => emit(&r.to_json()),
        Format::Human => println!("{}", r.value),
    }
    Ok(())
}

/// Without a quandle or cocycle the fuzzer uses `example-r4`.
fn run_fuzz(args: FuzzArgs, exec: Execution) -> Outcome {
    let d = args.input.resolve()?;
    let cocycle = match (&args.cocycle.cocycle, args.quandle.text()) {
        (None, None) => Some("example-r4".to_string()),
        (c, _) => c.clone(),
    };
    let (q, c) = quandle_and_cocycle(&args.quandle, cocycle)?;
    let f = parse_aut(&args.aut.aut, &q)?;
    let config = if args.classical {
        FuzzConfig::classical()
    } else {
        FuzzConfig { allow_virtual: true, allow_semi_virtual: !args.no_semi_virtual }
    };
    let before = compute(args.invariant, &d, &q, &c, &f, exec)?.to_json();
    let (out, trace) = random_equivalent_with(&d, args.seed, args.moves, config)?;
    let after = compute(args.invariant, &out, &q, &c, &f, exec)?.to_json();
    let stable = before == after;
    let diagram: Value = serde_json::from_str(&serialize_diagram(&out)).expect("diagram JSON");
    emit(&json!({
        "stable": stable,
        "trace": serde_json::to_value(&trace).expect("trace serializes"),
        "moves": trace.len(),
        "before": before,
        "after": after,
        "diagram": diagram,
    }));
    if stable {
        Ok(())
    } else {
        Err(Failure::Reported)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::auto() };
    let outcome = match cli.command {
        Command::Quandle(op) => run_quandle(op, exec),
        Command::Cocycle(op) => run_cocycle(op),
        Command::Diagram(op) => run_diagram(op),
        Command::Color(op) => run_color(op, cli.format),
        Command::Invariant(op) => run_invariant(op, cli.format, exec),
        Command::Fuzz(args) => run_fuzz(args, exec),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Reported) => ExitCode::from(1),
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
    }
}
