use clap::{Args, Parser, Subcommand, ValueEnum};
use hedonic_core::bench::{run_bench, BenchConfig};
use hedonic_core::graph::max_k2k3_packing;
use hedonic_core::io::{parse_graph, parse_instance, parse_partition, InstanceJson};
use hedonic_core::partition::PartitionJson;
use hedonic_core::rational::{parse_rational, Rational};
use hedonic_core::reductions::{
    from_k_coloring, from_ks_factor, from_triangle_partition, from_two_sided, random_game,
    ReductionOutput,
};
use hedonic_core::solve::{solve, Method, DEFAULT_ORACLE_CEILING};
use hedonic_core::stability::{
    default_max_steps, find_deviation, run_dynamics, Deviation, DeviationKind, DeviationType,
    StabilityNotion, Target,
};
use hedonic_core::{Error, GameClass, HedonicGame, Partition, WelfareValue};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hedonic",
    version,
    about = "Nash welfare in additively separable hedonic games"
)]
struct Cli {
    /// Largest instance the brute-force oracle accepts.
    #[arg(long, global = true, env = "COALITION_ORACLE_CEILING", default_value_t = DEFAULT_ORACLE_CEILING)]
    oracle_ceiling: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a partition with one of the solvers.
    Solve {
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        size_bound: Option<usize>,
        #[arg(long)]
        count_bound: Option<usize>,
        instance: PathBuf,
    },
    /// Check a partition for a stability notion.
    Stability {
        #[arg(long, value_enum)]
        notion: NotionArg,
        instance: PathBuf,
        partition: PathBuf,
    },
    /// Run deviation dynamics from a start partition (all singletons by default).
    Dynamics {
        #[arg(long, value_enum, default_value_t = KindArg::Individual)]
        kind: KindArg,
        /// Forbid moves that leave a single agent behind.
        #[arg(long)]
        non_abandoning: bool,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        start: Option<PathBuf>,
        instance: PathBuf,
    },
    /// Maximum {K2,K3}-packing of a graph.
    Pack { graph: PathBuf },
    /// Build an instance from a hardness construction.
    Reduce(ReduceArgs),
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw each ordered pair independently (general games only).
        #[arg(long)]
        asymmetric: bool,
    },
    /// Compare solvers with the oracle on a random corpus.
    Bench {
        #[arg(long, value_enum, default_value_t = ClassArg::Aeg)]
        family: ClassArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Comma-separated solver names; defaults to the family's approximation.
        #[arg(long, value_delimiter = ',', value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long)]
        size_bound: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long = "from", value_enum)]
    source: ReductionArg,
    /// Graph JSON for triangles, k-coloring and ks-factor.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Witness: partition JSON (triangles, ks-factor) or a color array (k-coloring).
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Two-sided market JSON with worker_to_firm, firm_to_worker and an optional assignment.
    #[arg(long)]
    market: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NotionArg {
    Ns,
    Is,
    Cns,
    Cis,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Nash,
    Individual,
    ContractualNash,
    ContractualIndividual,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Aeg,
    Afg,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    Triangles,
    TwoSided,
    KColoring,
    KsFactor,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

impl ClassArg {
    fn class(self) -> GameClass {
        match self {
            ClassArg::Aeg => GameClass::Aeg,
            ClassArg::Afg => GameClass::Afg,
            ClassArg::General => GameClass::General,
        }
    }
}

/// A failure with its exit status: 1 for domain outcomes, 2 for bad input.
struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
            status: if e.is_domain() { 1 } else { 2 },
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: "invalid_arguments",
        message: message.into(),
        status: 2,
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: "io_error",
        message: format!("cannot read {}: {e}", path.display()),
        status: 2,
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, code: &'static str) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure {
        code,
        message: format!("{}: {e}", path.display()),
        status: 2,
    })
}

fn load_game(path: &Path) -> CliResult<HedonicGame> {
    Ok(parse_instance(&read(path)?)?)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            match value {
                Output::Json(v) => emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&v).expect("json output")
                )),
                Output::Text(t) => emit(&t),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let body = json!({ "error": { "code": f.code, "message": f.message } });
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&body).expect("json output")
            ));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn run(cli: &Cli) -> CliResult<Output> {
    let ceiling = cli.oracle_ceiling;
    match &cli.command {
        Command::Solve {
            method,
            size_bound,
            count_bound,
            instance,
        } => {
            let game = load_game(instance)?;
            let result = solve(&game, *method, *size_bound, *count_bound, ceiling)?;
            Ok(Output::Json(to_value(&result)))
        }
        Command::Stability {
            notion,
            instance,
            partition,
        } => {
            let game = load_game(instance)?;
            let p = parse_partition(&read(partition)?, game.agent_count())?;
            let notion = match notion {
                NotionArg::Ns => StabilityNotion::Ns,
                NotionArg::Is => StabilityNotion::Is,
                NotionArg::Cns => StabilityNotion::Cns,
                NotionArg::Cis => StabilityNotion::Cis,
            };
            let witness = find_deviation(&game, &p, notion.deviation_kind());
            Ok(Output::Json(json!({
                "notion": notion,
                "stable": witness.is_none(),
                "witness_deviation": witness.map(|d| describe_deviation(&game, &p, &d)),
            })))
        }
        Command::Dynamics {
            kind,
            non_abandoning,
            max_steps,
            start,
            instance,
        } => {
            let game = load_game(instance)?;
            let start = match start {
                Some(path) => parse_partition(&read(path)?, game.agent_count())?,
                None => Partition::singletons(game.agent_count()),
            };
            let kind = DeviationKind::new(
                match kind {
                    KindArg::Nash => DeviationType::Nash,
                    KindArg::Individual => DeviationType::Individual,
                    KindArg::ContractualNash => DeviationType::ContractualNash,
                    KindArg::ContractualIndividual => DeviationType::ContractualIndividual,
                },
                *non_abandoning,
            );
            let cap = max_steps.unwrap_or_else(|| default_max_steps(&game));
            let outcome = run_dynamics(&game, &start, kind, cap)?;
            let mut v = to_value(&outcome);
            v["steps"] = json!(outcome.steps());
            v["max_steps"] = json!(cap);
            Ok(Output::Json(v))
        }
        Command::Pack { graph } => {
            let g = parse_graph(&read(graph)?)?;
            let packing = max_k2k3_packing(&g);
            Ok(Output::Json(json!({
                "parts": packing.parts,
                "covered": packing.covered(),
                "is_factor": packing.is_factor_of(&g),
            })))
        }
        Command::Reduce(args) => Ok(Output::Json(reduction_json(&reduce(args)?))),
        Command::Gen {
            class,
            n,
            p,
            seed,
            asymmetric,
        } => {
            let class = class.class();
            if *asymmetric && class != GameClass::General {
                return Err(usage("--asymmetric applies to general games only"));
            }
            if *n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let game = random_game(&class, *n, *p, *seed, None, !asymmetric)?;
            let mut v = to_value(&InstanceJson::from_game(&game));
            v["provenance"] = json!({
                "generator": "random",
                "parameters": { "class": class.name(), "n": n, "p": p, "seed": seed, "symmetric": !asymmetric },
            });
            Ok(Output::Json(v))
        }
        Command::Bench {
            family,
            n,
            count,
            seed,
            p,
            methods,
            size_bound,
            format,
        } => {
            let family_class = family.class();
            let methods = if methods.is_empty() {
                vec![match family {
                    ClassArg::Aeg => Method::AegApprox,
                    ClassArg::Afg => Method::AfgAlg1,
                    ClassArg::General => Method::SizeTwo,
                }]
            } else {
                methods.clone()
            };
            let config = BenchConfig {
                family: family_class,
                n: *n,
                count: *count,
                seed: *seed,
                p: *p,
                methods,
                size_bound: *size_bound,
                ceiling,
            };
            let report = run_bench(&config)?;
            Ok(match format {
                FormatArg::Json => Output::Json(to_value(&report)),
                FormatArg::Csv => Output::Text(report.to_csv()),
            })
        }
    }
}

fn describe_deviation(game: &HedonicGame, p: &Partition, d: &Deviation) -> Value {
    let members: Vec<usize> = match d.to {
        Target::Coalition(t) => p.coalitions()[t].clone(),
        Target::NewSingleton => Vec::new(),
    };
    json!({
        "agent": d.agent,
        "agent_label": game.label(d.agent),
        "from": d.from,
        "to": d.to,
        "target_members": members,
        "target_labels": members.iter().map(|&i| game.label(i)).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarketJson {
    worker_to_firm: Vec<Vec<hedonic_core::io::RationalLit>>,
    firm_to_worker: Vec<Vec<hedonic_core::io::RationalLit>>,
    #[serde(default)]
    assignment: Option<Vec<Option<usize>>>,
}

fn rational_arg(name: &str, v: &Option<String>) -> CliResult<Rational> {
    let text = v
        .as_deref()
        .ok_or_else(|| usage(format!("--{name} is required")))?;
    Ok(parse_rational(text)?)
}

fn reduce(args: &ReduceArgs) -> CliResult<ReductionOutput> {
    let graph = || -> CliResult<_> {
        let path = args
            .graph
            .as_ref()
            .ok_or_else(|| usage("--graph is required"))?;
        Ok(parse_graph(&read(path)?)?)
    };
    let parts = || -> CliResult<Option<Vec<Vec<usize>>>> {
        match &args.witness {
            Some(path) => Ok(Some(
                read_json::<PartitionJson>(path, "invalid_partition")?.coalitions,
            )),
            None => Ok(None),
        }
    };
    match args.source {
        ReductionArg::Triangles => Ok(from_triangle_partition(&graph()?, parts()?.as_deref())?),
        ReductionArg::KsFactor => {
            let s = args.s.ok_or_else(|| usage("--s is required"))?;
            let alpha = rational_arg("alpha", &args.alpha)?;
            let beta = rational_arg("beta", &args.beta)?;
            Ok(from_ks_factor(
                &graph()?,
                s,
                &alpha,
                &beta,
                parts()?.as_deref(),
            )?)
        }
        ReductionArg::KColoring => {
            let k = args.k.ok_or_else(|| usage("--k is required"))?;
            let colors: Option<Vec<usize>> = match &args.witness {
                Some(path) => Some(read_json(path, "invalid_partition")?),
                None => None,
            };
            Ok(from_k_coloring(&graph()?, k, colors.as_deref())?)
        }
        ReductionArg::TwoSided => {
            let path = args
                .market
                .as_ref()
                .ok_or_else(|| usage("--market is required"))?;
            let market: MarketJson = read_json(path, "invalid_game")?;
            let unwrap = |t: Vec<Vec<hedonic_core::io::RationalLit>>| -> Vec<Vec<Rational>> {
                t.into_iter()
                    .map(|r| r.into_iter().map(|v| v.0).collect())
                    .collect()
            };
            let wf = unwrap(market.worker_to_firm);
            let fw = unwrap(market.firm_to_worker);
            Ok(from_two_sided(&wf, &fw, market.assignment.as_deref())?)
        }
    }
}

/// The instance itself with the bounds, witness, target and provenance as
/// extra keys, so the output can be fed back to `solve`.
fn reduction_json(out: &ReductionOutput) -> Value {
    let mut v = to_value(&InstanceJson::from_game(&out.game));
    v["size_bound"] = json!(out.size_bound);
    v["count_bound"] = json!(out.count_bound);
    v["witness"] = json!(out.witness.as_ref().map(PartitionJson::from));
    v["target_welfare"] = json!(out
        .target_welfare
        .as_ref()
        .map(|w: &WelfareValue| to_value(w)));
    v["provenance"] = to_value(&out.provenance);
    v
}
