use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posetmorse::cellular::cellular_chain_complex;
use posetmorse::flow::{morse_complex, morse_inequalities};
use posetmorse::homology::{homology, poset_homology};
use posetmorse::io::{parse_complex, parse_matching, parse_poset, poset_to_json, serialize_matching, serialize_poset};
use posetmorse::matching::{classify_poset, morse_check, morse_function, path_stats};
use posetmorse::search::{greedy_matching, verify_and_report, Ordering, SearchPolicy};
use posetmorse::simplicial::{face_poset, order_complex, SimplicialComplex};
use posetmorse::{fixtures, par, Matching, Poset};

/// Discrete Morse theory on finite posets.
#[derive(Parser, Debug)]
#[command(name = "posetmorse", version)]
struct Cli {
    /// Human-readable indented output instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
    /// Compact JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized search restarts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Posets given by their covers.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Simplicial complexes given by their facets.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Matchings, Morse functions and Morse complexes.
    #[command(subcommand)]
    Morse(MorseCmd),
    /// Bundled example data.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Parse, report grading and classes, print the canonical form.
    Validate { poset: PathBuf },
    /// Integer homology of the order complex.
    Homology {
        poset: PathBuf,
        #[command(flatten)]
        opts: HomologyOpts,
    },
    /// Join, cone, opposite or skeleton.
    Algebra {
        #[arg(value_enum)]
        op: AlgebraOp,
        poset: PathBuf,
        /// Second operand of `join`.
        other: Option<PathBuf>,
        /// Apex name for `cone`.
        #[arg(long, default_value = "apex")]
        apex: String,
        /// Degree for `skeleton`.
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Remove beat points until none remain.
    Reduce { poset: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgebraOp {
    Join,
    Cone,
    Opposite,
    Skeleton,
}

#[derive(Args, Debug)]
struct HomologyOpts {
    /// Unreduced homology.
    #[arg(long)]
    unreduced: bool,
    /// Include the chain complex (bases and differential triples).
    #[arg(long)]
    emit_chain: bool,
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// Order complex of a poset.
    Order {
        poset: PathBuf,
        #[arg(long)]
        emit_chain: bool,
    },
    /// Face poset of a simplicial complex.
    #[command(alias = "facepose")]
    Faceposet { complex: PathBuf },
    /// Integer homology of a simplicial complex.
    Homology {
        complex: PathBuf,
        #[command(flatten)]
        opts: HomologyOpts,
    },
}

#[derive(Subcommand, Debug)]
enum MorseCmd {
    /// Matching, acyclicity, critical set and admissibility of each pair.
    Check { poset: PathBuf, matching: PathBuf },
    /// Morse function realizing the matching.
    Function { poset: PathBuf, matching: PathBuf },
    /// Morse complex on the critical cells.
    Complex {
        poset: PathBuf,
        matching: PathBuf,
        /// Include the cellular chain complex.
        #[arg(long)]
        emit_chain: bool,
        /// Include the Morse differential, flow data and inequality verdicts.
        #[arg(long)]
        emit_morse: bool,
    },
    /// Weak, strong and Euler comparisons with Betti numbers.
    Inequalities { poset: PathBuf, matching: PathBuf },
    /// Greedy search for an acyclic matching.
    Search {
        poset: PathBuf,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = OrderingArg::Lex)]
        ordering: OrderingArg,
        /// Only match homologically admissible covers.
        #[arg(long)]
        admissible_only: bool,
        /// Also write the matching file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrderingArg {
    Lex,
    Maxdeg,
}

impl From<OrderingArg> for Ordering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Lex => Ordering::Lexicographic,
            OrderingArg::Maxdeg => Ordering::MaxDegreeFirst,
        }
    }
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    /// Load every fixture and check its expectations.
    Run,
    /// List bundled data files.
    List,
    /// Print a bundled data file, e.g. `fig1x.poset`.
    Show { file: String },
}

/// A command result: the payload and whether the input passed validation.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

/// Failure classes mapped onto exit codes.
enum Failure {
    /// Bad invocation: unreadable file or unknown fixture.
    Usage(anyhow::Error),
    /// Input rejected by the library.
    Invalid(posetmorse::Error),
}

impl From<posetmorse::Error> for Failure {
    fn from(e: posetmorse::Error) -> Self {
        Failure::Invalid(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)
}

fn load_poset(path: &Path) -> Run<Poset> {
    Ok(parse_poset(&read(path)?)?)
}

fn load_matching(path: &Path) -> Run<Matching> {
    Ok(parse_matching(&read(path)?)?)
}

fn load_complex(path: &Path) -> Run<SimplicialComplex> {
    Ok(parse_complex(&read(path)?)?)
}

fn complex_json(k: &SimplicialComplex) -> Value {
    json!({
        "vertices": k.vertices(),
        "dimension": k.dimension(),
        "facets": k.facet_names(),
    })
}

fn homology_json(k: &SimplicialComplex, opts: &HomologyOpts) -> Run<Value> {
    let c = k.chain_complex(!opts.unreduced);
    let mut out = json!({ "homology": homology(&c)?.to_json() });
    if opts.emit_chain {
        out["chain_complex"] = c.to_json();
    }
    Ok(out)
}

fn run_poset(cmd: PosetCmd) -> Run<Outcome> {
    Ok(Outcome::ok(match cmd {
        PosetCmd::Validate { poset } => {
            let x = load_poset(&poset)?;
            json!({
                "elements": x.len(),
                "covers": x.cover_count(),
                "grading": x.grading_info(),
                "classification": classify_poset(&x),
                "canonical": serialize_poset(&x),
            })
        }
        PosetCmd::Homology { poset, opts } => {
            let x = load_poset(&poset)?;
            if opts.emit_chain {
                homology_json(&order_complex(&x), &opts)?
            } else {
                json!({ "homology": poset_homology(&x, !opts.unreduced).to_json() })
            }
        }
        PosetCmd::Algebra { op, poset, other, apex, degree } => {
            let x = load_poset(&poset)?;
            let y = match op {
                AlgebraOp::Join => {
                    let Some(other) = other else {
                        return Err(Failure::Usage(anyhow::anyhow!("join needs a second poset file")));
                    };
                    x.join(&load_poset(&other)?)?
                }
                AlgebraOp::Cone => x.cone(&apex)?,
                AlgebraOp::Opposite => x.opposite(),
                AlgebraOp::Skeleton => x.skeleton(degree)?,
            };
            json!({ "poset": poset_to_json(&y), "canonical": serialize_poset(&y) })
        }
        PosetCmd::Reduce { poset } => {
            let x = load_poset(&poset)?;
            let y = x.beat_point_reduce();
            let removed: Vec<&String> = x.names().iter().filter(|n| y.index_of(n).is_none()).collect();
            json!({ "removed": removed, "poset": poset_to_json(&y), "canonical": serialize_poset(&y) })
        }
    }))
}

fn run_complex(cmd: ComplexCmd) -> Run<Outcome> {
    Ok(Outcome::ok(match cmd {
        ComplexCmd::Order { poset, emit_chain } => {
            let k = order_complex(&load_poset(&poset)?);
            let mut out = json!({ "complex": complex_json(&k) });
            if emit_chain {
                out["chain_complex"] = k.chain_complex(true).to_json();
            }
            out
        }
        ComplexCmd::Faceposet { complex } => {
            let x = face_poset(&load_complex(&complex)?)?;
            json!({ "poset": poset_to_json(&x), "canonical": serialize_poset(&x) })
        }
        ComplexCmd::Homology { complex, opts } => homology_json(&load_complex(&complex)?, &opts)?,
    }))
}

fn run_morse(cmd: MorseCmd, seed: u64) -> Run<Outcome> {
    match cmd {
        MorseCmd::Check { poset, matching } => {
            let x = load_poset(&poset)?;
            let report = morse_check(&x, &load_matching(&matching)?);
            Ok(Outcome {
                ok: report.is_morse(),
                value: json!(report),
            })
        }
        MorseCmd::Function { poset, matching } => {
            let (x, m) = (load_poset(&poset)?, load_matching(&matching)?);
            let f = morse_function(&x, &m)?;
            Ok(Outcome::ok(json!({
                "values": f.to_json(),
                "critical": f.critical_points(&x),
                "path_lengths": path_stats(&x, &m)?,
            })))
        }
        MorseCmd::Complex { poset, matching, emit_chain, emit_morse } => {
            let (x, m) = (load_poset(&poset)?, load_matching(&matching)?);
            let r = morse_complex(&x, &m)?;
            let mut out = json!({
                "critical_basis": r.critical_basis,
                "morse_counts": r.morse_counts,
                "homology": r.homology.to_json(),
            });
            if emit_morse {
                out["morse_complex"] = r.to_json();
                out["inequalities"] = json!(morse_inequalities(&x, &m)?);
            }
            if emit_chain {
                out["chain_complex"] = cellular_chain_complex(&x, true)?.to_json();
            }
            Ok(Outcome::ok(out))
        }
        MorseCmd::Inequalities { poset, matching } => {
            let r = morse_inequalities(&load_poset(&poset)?, &load_matching(&matching)?)?;
            Ok(Outcome::ok(json!(r)))
        }
        MorseCmd::Search { poset, restarts, ordering, admissible_only, out } => {
            let x = load_poset(&poset)?;
            let policy = SearchPolicy {
                ordering: ordering.into(),
                restarts,
                rng_seed: seed,
                admissibility_filter: admissible_only,
            };
            let m = greedy_matching(&x, &policy);
            let text = serialize_matching(&m);
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .with_context(|| format!("cannot write {}", path.display()))
                    .map_err(Failure::Usage)?;
            }
            Ok(Outcome::ok(json!({
                "matching": text,
                "pairs": m.len(),
                "report": verify_and_report(&x, &m),
            })))
        }
    }
}

fn run_fixtures(cmd: FixturesCmd) -> Run<Outcome> {
    match cmd {
        FixturesCmd::Run => {
            let mut reports = Vec::new();
            for name in fixtures::NAMES {
                let fixture = fixtures::load_unchecked(name)?;
                reports.push(fixture.check());
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            Ok(Outcome {
                ok: passed == reports.len(),
                value: json!({
                    "passed": passed,
                    "total": reports.len(),
                    "summary": format!("{passed}/{} fixtures pass", reports.len()),
                    "fixtures": reports,
                }),
            })
        }
        FixturesCmd::List => Ok(Outcome::ok(json!(fixtures::file_names()))),
        FixturesCmd::Show { file } => match fixtures::file(&file) {
            Some(text) => Ok(Outcome::ok(json!(text))),
            None => Err(Failure::Usage(anyhow::anyhow!(
                "no bundled file `{file}`; try `fixtures list`"
            ))),
        },
    }
}

/// Plain-text rendering: nested keys indented, scalars and scalar lists
/// inline, strings unquoted.
fn render_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_pretty(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) if !is_inline(v) => {
            for x in items {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_pretty(x, indent + 1, out);
                }
            }
        }
        Value::String(s) if s.contains('\n') => {
            for line in s.lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(items) => items.iter().all(|x| !x.is_object() && (!x.is_array() || is_inline(x))),
        Value::String(s) => !s.contains('\n'),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn emit(value: &Value, pretty: bool) {
    if pretty {
        let mut out = String::new();
        render_pretty(value, 0, &mut out);
        print!("{out}");
    } else {
        println!("{value}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty && !cli.json;
    let seed = cli.seed;
    let result = par::with_threads(cli.threads, move || match cli.command {
        Command::Poset(c) => run_poset(c),
        Command::Complex(c) => run_complex(c),
        Command::Morse(c) => run_morse(c, seed),
        Command::Fixtures(c) => run_fixtures(c),
    });
    match result {
        Ok(outcome) => {
            emit(&outcome.value, pretty);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(e)) => {
            emit(&json!({ "error": e.kind(), "message": e.to_string() }), pretty);
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
