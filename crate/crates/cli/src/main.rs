//! `totalext`: extend, check, derive lists, audit, classify, generate and
//! verify the sharpness examples.
//!
//! Exit codes: 0 success, 1 impossible or a failed check, 2 budget
//! exhausted or otherwise inconclusive, 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use totalext::coloring::{GreedyOutcome, PartialTotalColoring};
use totalext::discharging::{audit, configurations, InstanceParams, Scheme};
use totalext::dot::to_dot;
use totalext::sharpness::{gen_example, verify_sharpness, ExampleId, SharpnessReport};
use totalext::solver::{bipartite_extension, ExtensionError, ListEdgeError, PipelineError, VertexListError};
use totalext::{
    analyze_precolored_shape, check_total_coloring, derive_lists, extend_exact, greedy_extend, Budget, CheckMode,
    Color, PlanarEmbedding, SolveStatus,
};

const OK: u8 = 0;
const NO: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "totalext",
    version,
    about = "Total-coloring extension on embedded planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Graph file (rotation system).
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Precoloring file.
    #[arg(short = 'p', long = "precoloring")]
    precoloring: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Extend a precoloring to the whole graph.
    Extend {
        #[command(flatten)]
        inputs: Inputs,
        /// Palette size; overrides the precoloring file.
        #[arg(short = 'k', long = "palette")]
        k: Option<Color>,
        /// Greedy only.
        #[arg(long, conflicts_with_all = ["exact", "bipartite"])]
        greedy: bool,
        /// Exact search only.
        #[arg(long, conflicts_with = "bipartite")]
        exact: bool,
        /// Constructive bipartite pipeline; needs k >= Δ + d + 4.
        #[arg(long)]
        bipartite: bool,
        /// Degree bound on H for --bipartite; defaults to the maximum degree of H.
        #[arg(short = 'd')]
        d: Option<usize>,
        /// Search budget in nodes.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
        /// Write the resulting coloring here.
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check a (partial) total coloring.
    Check {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "of-h-in-g")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Lists of admissible colors for the uncolored items.
    DeriveLists {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short = 'k', long = "palette")]
        k: Option<Color>,
        #[arg(long)]
        json: bool,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Run a discharging scheme with exact charges.
    Audit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        /// Palette offset: k = Δ + t.
        #[arg(short = 't', default_value_t = 1)]
        t: usize,
        /// Degree bound on H; defaults to the maximum degree of H.
        #[arg(short = 'd')]
        d: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write a DOT drawing with final charges.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also fail when a predicate fails.
        #[arg(long)]
        strict: bool,
    },
    /// Degree buckets, shape of H and its configurations.
    Classify {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(short = 'p', long = "precoloring")]
        precoloring: Option<PathBuf>,
        #[arg(short = 't', default_value_t = 1)]
        t: usize,
        /// Upper end of the degree range counted in q.
        #[arg(long, default_value_t = 4)]
        range_bound: usize,
        /// Required distance between components of H.
        #[arg(long, default_value_t = 3)]
        distance: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate a sharpness example.
    Gen {
        #[arg(value_parser = parse_example)]
        id: ExampleId,
        #[arg(long = "k")]
        k: Option<usize>,
        #[arg(short = 't', long = "t")]
        t: Option<usize>,
        /// Output prefix: writes PREFIX.pg and PREFIX.ptc.
        #[arg(short = 'o')]
        out: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the exact solver on the sharpness examples.
    VerifySharpness {
        /// Examples to run; all of them by default.
        #[arg(value_parser = parse_example)]
        ids: Vec<ExampleId>,
        /// Parameters for greedy-tree and subdivided-star.
        #[arg(long = "param", value_delimiter = ',', default_values_t = [3usize, 4, 5])]
        params: Vec<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    OfH,
    OfHInG,
    Total,
}

impl From<Mode> for CheckMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::OfH => CheckMode::OfH,
            Mode::OfHInG => CheckMode::OfHInG,
            Mode::Total => CheckMode::Total,
        }
    }
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
}

fn parse_example(s: &str) -> Result<ExampleId, String> {
    s.parse()
        .map_err(|e: totalext::sharpness::SharpnessError| e.to_string())
}

/// An error that ends the run with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: INPUT,
        message: message.to_string(),
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Extend {
            inputs,
            k,
            greedy,
            exact,
            bipartite,
            d,
            budget,
            json,
            out,
        } => {
            let (emb, c) = load(&inputs, k)?;
            let budget = budget.map_or_else(Budget::default, Budget::nodes);
            if bipartite {
                return extend_bipartite(&emb, &c, d, budget, json, out.as_deref());
            }
            extend(&emb, &c, greedy, exact, budget, json, out.as_deref())
        }
        Command::Check { inputs, mode, json } => {
            let (emb, c) = load(&inputs, None)?;
            let verdict = check_total_coloring(&emb, &c, mode.into()).map_err(input_error)?;
            if json {
                print_json(&json!({ "proper": verdict.is_proper(), "verdict": verdict }));
            } else {
                println!("{verdict}");
            }
            Ok(if verdict.is_proper() { OK } else { NO })
        }
        Command::DeriveLists { inputs, k, json, out } => {
            let (emb, c) = load(&inputs, k)?;
            let lists = derive_lists(&emb, &c).map_err(input_error)?;
            let text = if json {
                pretty(&serde_json::to_value(&lists).expect("lists serialize"))
            } else {
                lists.to_text()
            };
            emit(&text, out.as_deref())?;
            Ok(OK)
        }
        Command::Audit {
            inputs,
            scheme,
            t,
            d,
            json,
            dot,
            strict,
        } => {
            let (emb, c) = load(&inputs, None)?;
            let h = c.subgraph();
            let params = InstanceParams::new(&emb, t, d.unwrap_or_else(|| h.max_degree()));
            let report = audit(&emb, &h, &params, scheme).map_err(input_error)?;
            if let Some(path) = dot {
                write(&path, &to_dot(&emb, &h, Some(&c), Some(&report.final_ledger)))?;
            }
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            let ok = report.accounting_ok() && (!strict || report.predicates_hold());
            Ok(if ok { OK } else { NO })
        }
        Command::Classify {
            graph,
            precoloring,
            t,
            range_bound,
            distance,
            json,
        } => classify(&graph, precoloring.as_deref(), t, range_bound, distance, json),
        Command::Gen { id, k, t, out, dot } => {
            let param = match id {
                ExampleId::GreedyTree => k,
                ExampleId::SubdividedStar => t,
                ExampleId::JoinedTriangles => k.or(t),
            };
            let ex = gen_example(id, param).map_err(input_error)?;
            let graph = ex.embedding.to_text();
            let pre = ex.precoloring.to_text();
            match out {
                Some(prefix) => {
                    write(Path::new(&format!("{prefix}.pg")), &graph)?;
                    write(Path::new(&format!("{prefix}.ptc")), &pre)?;
                }
                None => print!("{graph}{pre}"),
            }
            if let Some(path) = dot {
                write(
                    &path,
                    &to_dot(&ex.embedding, &ex.precoloring.subgraph(), Some(&ex.precoloring), None),
                )?;
            }
            Ok(OK)
        }
        Command::VerifySharpness {
            ids,
            params,
            budget,
            jobs,
            json,
        } => verify(ids, &params, budget, jobs, json),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn print_json(v: &Value) {
    print!("{}", pretty(v));
}

fn load_graph(path: &Path) -> Result<PlanarEmbedding, Failure> {
    PlanarEmbedding::parse(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(inputs: &Inputs, k: Option<Color>) -> Result<(PlanarEmbedding, PartialTotalColoring), Failure> {
    let emb = load_graph(&inputs.graph)?;
    let path = &inputs.precoloring;
    let mut c =
        PartialTotalColoring::parse(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if let Some(k) = k {
        c = c.with_palette(k).map_err(input_error)?;
    }
    Ok((emb, c))
}

fn extend(
    emb: &PlanarEmbedding,
    c: &PartialTotalColoring,
    greedy_only: bool,
    exact_only: bool,
    budget: Budget,
    json: bool,
    out: Option<&Path>,
) -> Run {
    if !exact_only {
        match greedy_extend(emb, c).map_err(input_error)? {
            GreedyOutcome::Complete(w) => return report_extension("greedy", "colored", Some(&w), None, json, out),
            GreedyOutcome::Stuck { item, .. } if greedy_only => {
                let detail = json!({ "stuck_at": item.to_string() });
                report_extension("greedy", "greedy-stuck", None, Some(detail), json, None)?;
                return Ok(INCONCLUSIVE);
            }
            GreedyOutcome::Stuck { .. } => {}
        }
    }
    let outcome = extend_exact(emb, c, budget).map_err(input_error)?;
    let detail = json!({ "nodes": outcome.stats.nodes });
    report_extension(
        "exact",
        outcome.status.as_str(),
        outcome.witness.as_ref(),
        Some(detail),
        json,
        out,
    )?;
    Ok(match outcome.status {
        SolveStatus::Colored => OK,
        SolveStatus::ProvenImpossible => NO,
        SolveStatus::Timeout => INCONCLUSIVE,
    })
}

fn report_extension(
    route: &str,
    status: &str,
    witness: Option<&PartialTotalColoring>,
    detail: Option<Value>,
    json: bool,
    out: Option<&Path>,
) -> Run {
    if let (Some(path), Some(w)) = (out, witness) {
        write(path, &w.to_text())?;
    }
    if json {
        let mut v = json!({
            "route": route,
            "status": status,
            "witness": witness.map(PartialTotalColoring::to_text),
        });
        if let Some(Value::Object(extra)) = detail {
            v.as_object_mut().expect("object").extend(extra);
        }
        print_json(&v);
    } else {
        println!("{status} ({route})");
        if let (Some(w), None) = (witness, out) {
            print!("{}", w.to_text());
        }
    }
    Ok(OK)
}

fn extend_bipartite(
    emb: &PlanarEmbedding,
    c: &PartialTotalColoring,
    d: Option<usize>,
    budget: Budget,
    json: bool,
    out: Option<&Path>,
) -> Run {
    let d = d.unwrap_or_else(|| c.subgraph().max_degree());
    match bipartite_extension(emb, c, d, budget) {
        Ok(result) => {
            let detail = json!({
                "edge_route": result.edge_route,
                "shrunken_lists_hold": result.shrunken.iter().all(|s| s.holds()),
            });
            report_extension("bipartite", "colored", Some(&result.coloring), Some(detail), json, out)
        }
        Err(
            e @ (ExtensionError::NotBipartite
            | ExtensionError::DegreeAboveD { .. }
            | ExtensionError::PaletteTooSmall { .. }
            | ExtensionError::Coloring(_)
            | ExtensionError::Improper),
        ) => Err(input_error(e)),
        Err(e) => {
            let budget_hit = matches!(
                e,
                ExtensionError::Pipeline(
                    PipelineError::Vertices(VertexListError::BudgetExhausted)
                        | PipelineError::Edges(ListEdgeError::BudgetExhausted)
                )
            );
            Err(Failure {
                code: if budget_hit { INCONCLUSIVE } else { NO },
                message: e.to_string(),
            })
        }
    }
}

fn classify(
    graph: &Path,
    precoloring: Option<&Path>,
    t: usize,
    range_bound: usize,
    distance: usize,
    json: bool,
) -> Run {
    let emb = load_graph(graph)?;
    let c = match precoloring {
        Some(p) => PartialTotalColoring::parse(&read(p)?).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        None => PartialTotalColoring::new(1),
    };
    let h = c.subgraph();
    let degrees = emb.classify_degrees(range_bound);
    let shape = analyze_precolored_shape(&emb, &h, distance).map_err(input_error)?;
    let params = InstanceParams::new(&emb, t, h.max_degree());
    let configs = if shape.is_clique_set() && !h.is_empty() {
        configurations(&emb, &h, &params).ok()
    } else {
        None
    };
    if json {
        print_json(&json!({
            "vertices": emb.vertex_count(),
            "edges": emb.edge_count(),
            "faces": emb.face_count(),
            "bipartite": emb.is_bipartite(),
            "degrees": degrees,
            "high_threshold": params.high_threshold(),
            "shape": shape,
            "configurations": configs,
        }));
        return Ok(OK);
    }
    println!(
        "n={} m={} faces={} Δ={} bipartite={}",
        emb.vertex_count(),
        emb.edge_count(),
        emb.face_count(),
        degrees.max_degree,
        emb.is_bipartite()
    );
    for (d, vs) in &degrees.buckets {
        println!("V_{d}: {vs:?}");
    }
    println!("q = {} (range [2,{range_bound}])", degrees.q);
    let sep = shape.separation.map_or("-".to_string(), |s| s.to_string());
    println!(
        "H: {} components, {:?}, separation {sep}, distance {distance} {}",
        shape.components.len(),
        shape.kind,
        if shape.meets_distance { "met" } else { "not met" }
    );
    for cfg in configs.iter().flatten() {
        let kind = if cfg.poor { "poor" } else { "rich" };
        println!(
            "C{} {} {kind} s={} bound {}",
            cfg.index,
            cfg.label,
            cfg.score,
            cfg.score_bound()
        );
    }
    Ok(OK)
}

fn verify(ids: Vec<ExampleId>, params: &[usize], budget: Option<u64>, jobs: usize, json: bool) -> Run {
    let ids = if ids.is_empty() { ExampleId::ALL.to_vec() } else { ids };
    let mut tasks = Vec::new();
    for id in ids {
        match id {
            ExampleId::JoinedTriangles => tasks.push((id, None)),
            _ => tasks.extend(params.iter().map(|&p| (id, Some(p)))),
        }
    }
    let examples = tasks
        .iter()
        .map(|&(id, p)| gen_example(id, p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input_error)?;
    let budget = budget.map_or_else(Budget::default, Budget::nodes);
    let jobs = jobs.max(1);
    let mut results: Vec<Option<Result<SharpnessReport, String>>> = vec![None; examples.len()];
    std::thread::scope(|s| {
        for (chunk_ex, chunk_out) in examples.chunks(jobs).zip(results.chunks_mut(jobs)) {
            let handles: Vec<_> = chunk_ex
                .iter()
                .map(|ex| s.spawn(move || verify_sharpness(ex, budget).map_err(|e| e.to_string())))
                .collect();
            for (slot, h) in chunk_out.iter_mut().zip(handles) {
                *slot = Some(h.join().expect("verifier thread"));
            }
        }
    });
    let (mut disagree, mut timeout) = (false, false);
    let mut rows = Vec::new();
    for r in results.into_iter().flatten() {
        let r = r.map_err(|e| Failure {
            code: INPUT,
            message: e,
        })?;
        if r.at_fail.status == SolveStatus::Timeout || r.at_next.status == SolveStatus::Timeout {
            timeout = true;
        } else if !r.agrees() {
            disagree = true;
        }
        if !json {
            println!("{r}");
        }
        rows.push(r.to_json());
    }
    if json {
        print_json(&Value::Array(rows));
    }
    Ok(if disagree {
        NO
    } else if timeout {
        INCONCLUSIVE
    } else {
        OK
    })
}
