//! Argument parsing and dispatch for the `knotfield` binary.

use std::fmt::Display;

use clap::{Args, Parser, Subcommand};
use knotfield::af::{dimension_group, emit_dot, perron, stationary_diagram, IncidenceMatrix};
use knotfield::artin::{
    abelianization, correspondence_report, link_group_presentation, low_index_subgroups, DEFAULT_NODE_BUDGET,
};
use knotfield::braid::{closure_components, free_reduce, parse_braid, underlying_permutation, BraidWord};
use knotfield::cluster::{
    enumerate_seeds, laurent_report, mutate_seed, mutation_tree, polygon_seed, surface_seed, ExchangeMatrix, Seed,
    SurfaceSpec,
};
use knotfield::functor::{field_of, render_table, table_mpq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "knotfield", version, about = "Braid closures, cluster seeds, AF data and quadratic fields")]
struct Cli {
    /// JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Graphviz output where supported.
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Strand count for braid words.
    #[arg(long, global = true, default_value_t = 3)]
    strands: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Braid words and their closures.
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// Link-group presentations.
    Linkgroup {
        #[command(subcommand)]
        op: LinkOp,
    },
    /// Cluster seeds and mutation.
    Cluster {
        #[command(subcommand)]
        op: ClusterOp,
    },
    /// Stationary Bratteli diagrams.
    Af {
        #[command(subcommand)]
        op: AfOp,
    },
    /// Quadratic field of a 3-strand braid.
    Field(FieldArgs),
    /// Field table for the family M_{p,q}.
    Table {
        /// Pairs `p,q`.
        #[arg(long, num_args = 1.., required = true)]
        pq_list: Vec<String>,
    },
    /// Side-by-side reports.
    Report {
        #[command(subcommand)]
        op: ReportOp,
    },
}

#[derive(Subcommand, Debug)]
enum BraidOp {
    /// Number of components of the closure.
    Components {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Free reduction.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum LinkOp {
    Present {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    Abelianize {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Subgroups of small index up to conjugacy.
    Subgroups {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
    },
}

#[derive(Args, Debug)]
struct SeedArgs {
    /// Fan triangulation of the d-gon.
    #[arg(long, conflicts_with_all = ["surface", "matrix"])]
    polygon: Option<usize>,
    /// Surface `G,N`; the default is the once-punctured torus.
    #[arg(long, conflicts_with = "matrix")]
    surface: Option<String>,
    /// Exchange matrix, e.g. `0,1;-1,0`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ClusterOp {
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        /// Directions, 1-based, e.g. `1,2,3`.
        #[arg(long)]
        dirs: String,
    },
    Tree {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Skip undoing the previous step.
        #[arg(long)]
        prune: bool,
    },
    Enumerate {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },
    LaurentCheck {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AfOp {
    Bratteli {
        #[arg(long)]
        matrix: String,
        /// Vertex levels to draw.
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    Perron {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FieldArgs {
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// `σ1^P σ2^-Q`.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pq: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum ReportOp {
    /// Normal subgroups beside ideal counts.
    Correspondence {
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long, default_value_t = 4)]
        max_index: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn domain<E: Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

type Out = Result<String, Failure>;

/// Parses `argv` (without the program name) and runs the command.
pub fn run<S: AsRef<str>>(argv: &[S]) -> CommandResult {
    let args = std::iter::once("knotfield").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: 1, stdout: String::new(), stderr: text }
            } else {
                CommandResult { exit_code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(mut stdout) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            CommandResult { exit_code: 0, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => CommandResult { exit_code: 1, stdout: String::new(), stderr: format!("usage: {m}\n") },
        Err(Failure::Domain(m)) => CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", m.replace('\n', " ")),
        },
    }
}

fn render(cli: &Cli, v: Value, text: impl FnOnce() -> String) -> String {
    if cli.json {
        v.to_string()
    } else {
        text()
    }
}

fn dispatch(cli: &Cli) -> Out {
    match &cli.command {
        Command::Braid { op } => braid_cmd(cli, op),
        Command::Linkgroup { op } => link_cmd(cli, op),
        Command::Cluster { op } => cluster_cmd(cli, op),
        Command::Af { op } => af_cmd(cli, op),
        Command::Field(args) => field_cmd(cli, args),
        Command::Table { pq_list } => table_cmd(cli, pq_list),
        Command::Report { op: ReportOp::Correspondence { braid, max_index } } => {
            let b = word(cli, braid)?;
            let r = correspondence_report(&b, *max_index).map_err(domain)?;
            Ok(render(cli, r.to_json(), || r.to_string()))
        }
    }
}

fn word(cli: &Cli, text: &str) -> Result<BraidWord, Failure> {
    parse_braid(text, cli.strands).map_err(domain)
}

fn braid_cmd(cli: &Cli, op: &BraidOp) -> Out {
    match op {
        BraidOp::Components { word: w } => {
            let b = word(cli, w)?;
            let n = closure_components(&b);
            let perm = underlying_permutation(&b);
            Ok(render(cli, json!({"components": n, "permutation": perm.one_based()}), || n.to_string()))
        }
        BraidOp::Normalize { word: w } => {
            let r = free_reduce(&word(cli, w)?);
            Ok(render(cli, json!({"strands": r.strands(), "letters": r.letters()}), || r.to_string()))
        }
    }
}

fn link_cmd(cli: &Cli, op: &LinkOp) -> Out {
    match op {
        LinkOp::Present { word: w } => {
            let p = link_group_presentation(&word(cli, w)?);
            Ok(render(cli, p.to_json(), || p.to_string()))
        }
        LinkOp::Abelianize { word: w } => {
            let a = abelianization(&link_group_presentation(&word(cli, w)?));
            Ok(render(cli, json!({"free_rank": a.free_rank, "torsion": a.torsion}), || a.to_string()))
        }
        LinkOp::Subgroups { word: w, max_index } => {
            let p = link_group_presentation(&word(cli, w)?);
            let subs = low_index_subgroups(&p, *max_index).map_err(domain)?;
            let v = json!({
                "max_index": max_index,
                "node_budget": DEFAULT_NODE_BUDGET,
                "subgroups": subs.iter().map(|s| json!({
                    "index": s.index,
                    "normal": s.is_normal,
                    "conjugates": s.conjugates,
                    "coset_table": s.coset_table,
                })).collect::<Vec<_>>(),
            });
            Ok(render(cli, v, || {
                let mut out = String::from("index  normal  conjugates\n");
                for s in &subs {
                    out += &format!("{:>5}  {:>6}  {:>10}\n", s.index, s.is_normal, s.conjugates);
                }
                out
            }))
        }
    }
}

fn starting_seed(args: &SeedArgs) -> Result<Seed, Failure> {
    if let Some(d) = args.polygon {
        return polygon_seed(d).map_err(domain);
    }
    if let Some(m) = &args.matrix {
        return ExchangeMatrix::parse(m).map(Seed::initial).map_err(domain);
    }
    let (g, n) = match &args.surface {
        None => (1, 1),
        Some(text) => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [g, n] => match (g.parse(), n.parse()) {
                    (Ok(g), Ok(n)) => (g, n),
                    _ => return Err(Failure::Usage(format!("--surface expects G,N, got {text:?}"))),
                },
                _ => return Err(Failure::Usage(format!("--surface expects G,N, got {text:?}"))),
            }
        }
    };
    let spec = SurfaceSpec::new(g, n).map_err(domain)?;
    surface_seed(&spec).map_err(domain)
}

fn parse_dirs(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad direction {t:?}"))))
        .collect()
}

fn seed_text(s: &Seed) -> String {
    let mut out = String::new();
    for (i, v) in s.variables().iter().enumerate() {
        out += &format!("x{} = {}\n", i + 1, v);
    }
    out += &format!("B = {:?}\n", s.matrix().entries());
    out
}

fn cluster_cmd(cli: &Cli, op: &ClusterOp) -> Out {
    match op {
        ClusterOp::Mutate { seed, dirs } => {
            let mut s = starting_seed(seed)?;
            for k in parse_dirs(dirs)? {
                s = mutate_seed(&s, k).map_err(domain)?;
            }
            Ok(render(cli, s.to_json(), || seed_text(&s)))
        }
        ClusterOp::Tree { seed, depth, prune } => {
            let t = mutation_tree(&starting_seed(seed)?, *depth, *prune).map_err(domain)?;
            if cli.dot {
                return Ok(t.to_dot());
            }
            let v = json!({"levels": t.level_sizes(), "distinct_seeds": t.distinct_seeds(), "revisits": t.revisits_seeds()});
            Ok(render(cli, v, || {
                format!(
                    "levels {:?}\ndistinct seeds {}\nrevisits {}",
                    t.level_sizes(),
                    t.distinct_seeds(),
                    t.revisits_seeds()
                )
            }))
        }
        ClusterOp::Enumerate { seed, max } => {
            let c = enumerate_seeds(&starting_seed(seed)?, *max).map_err(domain)?;
            Ok(json!({"seeds": c.count, "finite": c.finite_type}).to_string())
        }
        ClusterOp::LaurentCheck { seed, trials, depth } => {
            let s0 = starting_seed(seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let (mut laurent, mut positive) = (0usize, 0usize);
            for _ in 0..*trials {
                let len = rng.gen_range(1..=(*depth).max(1));
                let dirs: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=s0.rank())).collect();
                let r = laurent_report(&s0, &dirs).map_err(domain)?;
                laurent += r.laurent as usize;
                positive += r.positive as usize;
            }
            let v = json!({"trials": trials, "seed": cli.seed, "laurent": laurent, "positive": positive});
            Ok(render(cli, v, || format!("{laurent}/{trials} Laurent, {positive}/{trials} positive")))
        }
    }
}

fn af_cmd(cli: &Cli, op: &AfOp) -> Out {
    match op {
        AfOp::Bratteli { matrix, levels } => {
            let a = IncidenceMatrix::parse(matrix).map_err(domain)?;
            let d = stationary_diagram(&a, *levels).map_err(domain)?;
            if cli.dot {
                return Ok(emit_dot(&d));
            }
            let v = json!({"levels": d.levels(), "matrix": a.entries()});
            Ok(render(cli, v, || format!("levels {:?}\nA = {a}", d.levels())))
        }
        AfOp::Perron { matrix } => {
            let a = IncidenceMatrix::parse(matrix).map_err(domain)?;
            let p = perron(&a).map_err(domain)?;
            let g = dimension_group(&a).map_err(domain)?;
            let mut v = p.to_json();
            v["dimension_group"] = json!({"order": g.order, "positivity": g.positivity, "unit": g.unit});
            Ok(render(cli, v, || {
                let exact = p.exact.map_or("-".to_string(), |s| s.to_string());
                format!(
                    "lambda = {exact}\nfloat  = {}\nminpoly {:?}\ndegree {}\nK0 = ({}, {}, {})",
                    p.float, p.minimal_polynomial, p.degree, g.order, g.positivity, g.unit
                )
            }))
        }
    }
}

fn field_cmd(cli: &Cli, args: &FieldArgs) -> Out {
    let b = match (&args.braid, &args.pq) {
        (Some(w), _) => word(cli, w)?,
        (None, Some(pq)) => {
            if pq[0] == 0 || pq[1] == 0 {
                return Err(Failure::Usage("--pq expects positive P and Q".into()));
            }
            BraidWord::sigma1_p_sigma2_neg_q(pq[0], pq[1])
        }
        (None, None) => return Err(Failure::Usage("one of --braid or --pq is required".into())),
    };
    let inv = field_of(&b).map_err(domain)?;
    Ok(render(cli, inv.to_json(), || {
        format!(
            "braid     [{}]\nmonodromy {}\ntrace     {}\nradicand  {}\nD         {}\nfield     {}\nbasis     {}\nknot      {}\nregime    {}",
            inv.braid,
            inv.matrix,
            inv.matrix.trace(),
            inv.radicand,
            inv.field.d(),
            inv.field.name(),
            inv.field.basis_description(),
            inv.is_knot,
            inv.regime
        )
    }))
}

fn parse_pair(text: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("--pq-list expects P,Q pairs, got {text:?}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn table_cmd(cli: &Cli, list: &[String]) -> Out {
    let pairs = list.iter().map(|t| parse_pair(t)).collect::<Result<Vec<_>, _>>()?;
    let rows = table_mpq(&pairs).map_err(domain)?;
    let v = Value::Array(
        rows.iter()
            .map(|r| json!({"p": r.p, "q": r.q, "radicand": r.radicand, "D": r.d, "field": r.field}))
            .collect(),
    );
    Ok(render(cli, v, || render_table(&rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_json_example() {
        let r = run(&["field", "--pq", "1", "1", "--json"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout.trim(), r#"{"radicand":5,"D":5,"field":"Q(sqrt(5))","knot":true}"#);
    }

    #[test]
    fn components_example() {
        let r = run(&["braid", "components", "--strands", "2", "1 1 1"]);
        assert_eq!((r.exit_code, r.stdout.trim()), (0, "1"));
    }

    #[test]
    fn enumerate_example() {
        let r = run(&["cluster", "enumerate", "--polygon", "6"]);
        assert_eq!(r.stdout.trim(), r#"{"seeds":14,"finite":true}"#);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["nonsense"]).exit_code, 1);
        assert_eq!(run(&["--help"]).exit_code, 0);
        let r = run(&["field", "--braid", "1"]);
        assert_eq!(r.exit_code, 2);
        assert!(r.stderr.starts_with("error: NonHyperbolic"));
        assert_eq!(r.stderr.lines().count(), 1);
        assert_eq!(run(&["table", "--pq-list", "1x"]).exit_code, 1);
        assert_eq!(run(&["braid", "components", "1 7"]).exit_code, 2);
    }

    #[test]
    fn negative_leading_letters() {
        let r = run(&["braid", "normalize", "-1 1 2"]);
        assert_eq!((r.exit_code, r.stdout.trim()), (0, "2"));
        assert_eq!(run(&["field", "--braid", "-2 1"]).exit_code, 0);
    }
}
