//! `polyrank`: generate artifacts, compute polytope data, decide
//! unimodular equivalence and run the verification suites.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyrank::equivalence::{decide_equivalence, SearchLimits, Strategy, Verdict};
use polyrank::geometry::{enumerate_facets, lattice_invariants, LatticePolytope};
use polyrank::io::{load_polytope, write_text, Artifact};
use polyrank::suites::{run_suite, suites, Outcome, SuiteResult};
use polyrank::{Error, FamilySpec, MatroidSpec, PolytopeExpr, PosetSpec};

#[derive(Parser)]
#[command(name = "polyrank", version, about = "Exact rank and equivalence computations for lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph, poset, matroid or polytope file from a spec string.
    Gen {
        spec: String,
        /// What to build; guessed from the spec when omitted.
        #[arg(long = "as", value_enum)]
        kind: Option<GenKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertices, facets, dimension, rank or invariant fingerprint.
    Compute {
        /// Polytope file or expression such as `base:D:2,2,2`.
        polytope: String,
        #[arg(long, value_enum, default_value = "rank")]
        what: What,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide unimodular equivalence of two polytopes.
    Equiv {
        p: String,
        q: String,
        #[arg(long, value_enum, default_value = "both")]
        strategy: StrategyArg,
        /// Write the verified witness (JSON) here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Lift the dimension and vertex gates of the search.
        #[arg(long)]
        gate_override: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        /// Bound override, `key=value`; repeatable.
        #[arg(long = "bound", value_parser = parse_bound)]
        bounds: Vec<(String, u64)>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Suite ids, bounds and gates.
    ListSuites,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Poset,
    Matroid,
    Indep,
    Base,
    Stab,
    Edge,
    Order,
    Chain,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Vertices,
    Facets,
    Dim,
    Rank,
    Fingerprint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Canonical,
    Frames,
    Both,
}

fn parse_bound(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v = v.trim().parse().map_err(|e| format!("bound {k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// Exit codes: 0 pass, 1 failure, 2 usage, 3 inconclusive.
fn code_for(e: &Error) -> u8 {
    match e {
        Error::Inconclusive(_) | Error::GateExceeded { .. } => 3,
        Error::Parse { .. }
        | Error::Format(_)
        | Error::Io { .. }
        | Error::UnknownSuite(_)
        | Error::ParameterOutOfRange(_)
        | Error::RankUndefinedForPoint => 2,
        _ => 1,
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> polyrank::Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(spec: &str, kind: Option<GenKind>) -> polyrank::Result<Artifact> {
    let polytope = |prefix: &str| -> polyrank::Result<Artifact> {
        Ok(Artifact::Polytope(format!("{prefix}:{spec}").parse::<PolytopeExpr>()?.build()?))
    };
    match kind {
        Some(GenKind::Graph) => Ok(Artifact::Graph(spec.parse::<FamilySpec>()?.generate()?)),
        Some(GenKind::Poset) => Ok(Artifact::Poset(spec.parse::<PosetSpec>()?.build()?)),
        Some(GenKind::Matroid) => Ok(Artifact::Matroid(spec.parse::<MatroidSpec>()?.build()?)),
        Some(GenKind::Indep) => polytope("indep"),
        Some(GenKind::Base) => polytope("base"),
        Some(GenKind::Stab) => polytope("stab"),
        Some(GenKind::Edge) => polytope("edge"),
        Some(GenKind::Order) => polytope("order"),
        Some(GenKind::Chain) => polytope("chain"),
        None => {
            if let Ok(e) = spec.parse::<PolytopeExpr>() {
                return Ok(Artifact::Polytope(e.build()?));
            }
            match spec.parse::<FamilySpec>() {
                Ok(f) => Ok(Artifact::Graph(f.generate()?)),
                Err(graph_err) => {
                    if let Ok(p) = spec.parse::<PosetSpec>() {
                        return Ok(Artifact::Poset(p.build()?));
                    }
                    if let Ok(m) = spec.parse::<MatroidSpec>() {
                        return Ok(Artifact::Matroid(m.build()?));
                    }
                    Err(graph_err)
                }
            }
        }
    }
}

fn gen_summary(a: &Artifact) -> String {
    match a {
        Artifact::Graph(g) => format!("graph: {} vertices, {} edges", g.vertex_count, g.edges.len()),
        Artifact::Poset(p) => format!("poset: {} elements, {} cover relations", p.element_count(), p.covers().len()),
        Artifact::Matroid(m) => format!(
            "matroid: {} elements, rank {}, {} bases",
            m.ground_size(),
            m.rank(),
            m.bases().len()
        ),
        Artifact::Polytope(p) => format!(
            "polytope: ambient dimension {}, dimension {}, {} vertices",
            p.ambient_dim(),
            p.dim(),
            p.vertex_count()
        ),
        Artifact::HalfspaceSystem(h) => format!("halfspaces: {} inequalities", h.inequalities.len()),
    }
}

fn row(xs: &[i64], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn compute(p: &LatticePolytope, what: What, format: Format) -> polyrank::Result<String> {
    Ok(match what {
        What::Vertices => match format {
            Format::Json => json(&p.vertices()),
            Format::Csv => p.vertices().iter().map(|v| row(v, ",") + "\n").collect(),
            Format::Text => p.vertices().iter().map(|v| row(v, " ") + "\n").collect(),
        },
        What::Facets => {
            let h = enumerate_facets(p);
            match format {
                Format::Json => json(&h),
                Format::Csv => {
                    let mut s = String::new();
                    for i in &h.inequalities {
                        s += &format!("le,{},{}\n", row(&i.normal, ","), i.offset);
                    }
                    for e in &h.equations {
                        s += &format!("eq,{},{}\n", row(&e.normal, ","), e.offset);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{} facets\n", h.inequalities.len());
                    for i in &h.inequalities {
                        s += &format!("[{}] . x <= {}\n", row(&i.normal, " "), i.offset);
                    }
                    for e in &h.equations {
                        s += &format!("[{}] . x  = {}\n", row(&e.normal, " "), e.offset);
                    }
                    s
                }
            }
        }
        What::Dim | What::Rank => {
            let (key, value) = match what {
                What::Dim => ("dim", p.dim() as i64),
                _ => ("rank", p.rank()?),
            };
            match format {
                Format::Json => json(&serde_json::json!({ key: value })),
                Format::Csv => format!("{key}\n{value}\n"),
                Format::Text => format!("{value}\n"),
            }
        }
        What::Fingerprint => {
            let f = lattice_invariants(p);
            match format {
                Format::Text | Format::Json => json(&f),
                Format::Csv => {
                    let rank = f.rank.map_or(String::new(), |r| r.to_string());
                    let sizes: Vec<String> = f.facet_vertex_multiset.iter().map(ToString::to_string).collect();
                    format!(
                        "dim,vertex_count,facet_count,rank,lattice_point_count,normalized_volume,facet_vertex_multiset\n{},{},{},{},{},{},{}\n",
                        f.dim,
                        f.vertex_count,
                        f.facet_count,
                        rank,
                        f.lattice_point_count,
                        f.normalized_volume,
                        sizes.join(" ")
                    )
                }
            }
        }
    })
}

fn equiv(
    p: &str,
    q: &str,
    strategy: StrategyArg,
    witness: Option<&PathBuf>,
    gate_override: bool,
    format: Format,
) -> polyrank::Result<u8> {
    let (a, b) = (load_polytope(p)?, load_polytope(q)?);
    let strategy = match strategy {
        StrategyArg::Canonical => Strategy::Canonical,
        StrategyArg::Frames => Strategy::Frames,
        StrategyArg::Both => Strategy::Both,
    };
    let limits = if gate_override { SearchLimits::ungated() } else { SearchLimits::default() };
    let verdict = decide_equivalence(&a, &b, strategy, &limits)?;
    if let (Some(path), Some(w)) = (witness, verdict.witness()) {
        write_text(path, &json(w))?;
    }
    match format {
        Format::Json => print!("{}", json(&verdict)),
        Format::Csv | Format::Text => match &verdict {
            Verdict::Equivalent { witness, source } => {
                println!("equivalent ({source:?}, |det| = {})", witness.determinant().abs());
            }
            Verdict::NotEquivalent { reason } => println!("not equivalent: {reason}"),
        },
    }
    Ok(if verdict.is_equivalent() { 0 } else { 1 })
}

fn report(r: &SuiteResult, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }
}

fn verify(id: &str, bounds: &[(String, u64)], seed: u64, format: Format, out: Option<&PathBuf>) -> polyrank::Result<u8> {
    let overrides: BTreeMap<String, u64> = bounds.iter().cloned().collect();
    let results: Vec<SuiteResult> = if id == "all" {
        if !overrides.is_empty() {
            return Err(Error::ParameterOutOfRange("--bound needs a single suite id".into()));
        }
        suites()
            .iter()
            .map(|s| run_suite(s.id, &overrides, seed))
            .collect::<polyrank::Result<_>>()?
    } else {
        vec![run_suite(id, &overrides, seed)?]
    };
    let text = match (format, results.as_slice()) {
        (_, [one]) => report(one, format),
        (Format::Json, many) => {
            let docs: Vec<serde_json::Value> = many
                .iter()
                .map(|r| serde_json::from_str(&r.to_json()).expect("suite json"))
                .collect();
            json(&docs)
        }
        (Format::Csv, many) => {
            let mut s = String::new();
            for (i, r) in many.iter().enumerate() {
                let csv = r.to_csv();
                s += if i == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) };
            }
            s
        }
        (Format::Text, many) => many.iter().map(|r| report(r, format)).collect::<Vec<_>>().join("\n"),
    };
    emit(out, &text)?;
    let outcomes: Vec<Outcome> = results.iter().map(SuiteResult::outcome).collect();
    Ok(if outcomes.contains(&Outcome::Fail) {
        1
    } else if outcomes.contains(&Outcome::Inconclusive) {
        3
    } else {
        0
    })
}

fn list_suites() {
    for s in suites() {
        let bounds: Vec<String> = s
            .bounds
            .iter()
            .map(|b| format!("{}={} (gate {})", b.key, b.default, b.gate))
            .collect();
        let seeded = if s.randomized { ", seeded" } else { "" };
        println!("{:<32} {}{seeded}", s.id, s.summary);
        println!("{:<32} {}", "", bounds.join(", "));
    }
}

fn run(cli: Cli) -> polyrank::Result<u8> {
    match cli.command {
        Command::Gen { spec, kind, out } => {
            let a = generate(&spec, kind)?;
            match &out {
                Some(path) => {
                    write_text(path, &a.to_json())?;
                    println!("{}", gen_summary(&a));
                }
                None => {
                    print!("{}", a.to_json());
                    eprintln!("{}", gen_summary(&a));
                }
            }
            Ok(0)
        }
        Command::Compute {
            polytope,
            what,
            format,
            out,
        } => {
            let p = load_polytope(&polytope)?;
            emit(out.as_ref(), &compute(&p, what, format)?)?;
            Ok(0)
        }
        Command::Equiv {
            p,
            q,
            strategy,
            witness,
            gate_override,
            format,
        } => equiv(&p, &q, strategy, witness.as_ref(), gate_override, format),
        Command::Verify {
            suite,
            bounds,
            seed,
            format,
            out,
        } => verify(&suite, &bounds, seed, format, out.as_ref()),
        Command::ListSuites => {
            list_suites();
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_for(&e))
        }
    }
}
