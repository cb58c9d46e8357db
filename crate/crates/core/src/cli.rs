//! Command-line front end: `gen`, `compile`, `width` and `verify`.
//!
//! Every command is a plain function writing JSON (or DIMACS for `gen`
//! without an output directory) to the given writer, so the binary only
//! parses arguments and maps the result to an exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{
    bookkeeping_report, combined_width_exact, verify_lower_bound, verify_upper_bound, write_csv, write_json,
    BoundReport, LowerMode, Repro, DEFAULT_RANDOM_ORDERS,
};
use crate::caps::Caps;
use crate::cnf::{parse_dimacs, random_kcnf, Cnf, Var};
use crate::decomposition::{
    min_fill, ordering_respecting_f, tree_to_path, validate, PathEnd, Provenance, VariableOrder,
};
use crate::error::{Error, Result};
use crate::graph::{clique_tree, cnf_of_graph, path_graph, Graph};
use crate::matching::{matching_width_exact, verify_cltreemt};
use crate::obdd::Obdd;

#[derive(Parser, Debug)]
#[command(
    name = "obdd-lab",
    version,
    about = "CNF families, decomposition orders and OBDD size bounds"
)]
pub struct Cli {
    /// Cap overrides such as `oracle=20,subset_dp=18`, applied on top of `OBDD_LAB_CAPS`.
    #[arg(long, global = true)]
    pub caps: Option<String>,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Compile a DIMACS CNF into an OBDD.
    Compile(CompileArgs),
    /// Matching width of a graph or combined width of a CNF.
    Width(WidthArgs),
    /// Run a verification suite; exits non-zero if any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `F_{r,k} = CNF(CT_{r,k})`.
    Ctree,
    /// `CNF(P_n)`.
    Path,
    /// Random 3-CNF with `n` variables and `m` clauses.
    Random,
    /// An existing DIMACS file.
    Dimacs,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(short, long)]
    pub r: Option<usize>,
    #[arg(short, long)]
    pub k: Option<usize>,
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Directory for `<name>.cnf`, `<name>.json` and, for graph families, `<name>.graph`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub name: Option<String>,
    /// Also write `<name>.dot`.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    pub cnf: PathBuf,
    /// `respecting-f`, an inline list such as `x1,x2,x3` or `1 2 3`, or a file holding one.
    #[arg(long, default_value = "respecting-f")]
    pub order: String,
    /// Start the bag enumeration from the last bag.
    #[arg(long)]
    pub from_last: bool,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    Mw,
    Combined,
}

#[derive(Args, Debug)]
pub struct WidthArgs {
    /// A `.graph` edge list or a DIMACS CNF.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "mw")]
    pub measure: Measure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Upper,
    Lower,
    Cltreemt,
    Bookkeeping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    PerOrder,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value = "ctree")]
    pub family: Family,
    #[arg(short, long, default_value_t = 1)]
    pub r: usize,
    #[arg(short, long, default_value_t = 1)]
    pub k: usize,
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Random orders (per-order lower bound) or permutations (sampled matching width).
    #[arg(long, default_value_t = DEFAULT_RANDOM_ORDERS)]
    pub samples: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parameters of one invocation, echoed into every JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub caps: Caps,
    pub seed: u64,
}

impl RunConfig {
    fn new(command: &str, caps: Caps, seed: u64) -> RunConfig {
        RunConfig {
            command: command.to_string(),
            r: None,
            k: None,
            n: None,
            caps,
            seed,
        }
    }
}

/// Runs a parsed command line. Returns whether every check passed.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    let mut caps = Caps::from_env()?;
    if let Some(spec) = &cli.caps {
        caps = caps.with_overrides(spec)?;
    }
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, caps, cli.seed, out).map(|_| true),
        Command::Compile(args) => cmd_compile(&args, caps, cli.seed, out),
        Command::Width(args) => cmd_width(&args, caps, cli.seed, out).map(|_| true),
        Command::Verify(args) => cmd_verify(&args, caps, cli.seed, out),
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParameter(format!("missing {flag}")))
}

struct Instance {
    name: String,
    cnf: Cnf,
    graph: Option<Graph>,
    dot: Option<String>,
}

fn build_instance(
    family: Family,
    r: Option<usize>,
    k: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    input: Option<&Path>,
    seed: u64,
) -> Result<Instance> {
    match family {
        Family::Ctree => {
            let (r, k) = (need(r, "-r")?, need(k, "-k")?);
            if k == 0 {
                return Err(Error::InvalidParameter("k must be positive".into()));
            }
            let ct = clique_tree(r, k);
            let gc = cnf_of_graph(&ct.graph);
            Ok(Instance {
                name: format!("ctree_r{r}_k{k}"),
                cnf: gc.cnf,
                dot: Some(ct.to_dot(&format!("CT_{r}_{k}"))),
                graph: Some(ct.graph),
            })
        }
        Family::Path => {
            let n = need(n, "-n")?;
            if n == 0 {
                return Err(Error::InvalidParameter("n must be positive".into()));
            }
            let g = path_graph(n);
            Ok(Instance {
                name: format!("path_n{n}"),
                cnf: cnf_of_graph(&g).cnf,
                dot: Some(g.to_dot(&format!("P_{n}"))),
                graph: Some(g),
            })
        }
        Family::Random => {
            let n = need(n, "-n")?;
            let m = need(m, "-m")?;
            if n < 3 {
                return Err(Error::InvalidParameter("random 3-CNF needs n >= 3".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Instance {
                name: format!("random_n{n}_m{m}_s{seed}"),
                cnf: random_kcnf(n, m, 3, &mut rng),
                graph: None,
                dot: None,
            })
        }
        Family::Dimacs => {
            let path = input.ok_or_else(|| Error::InvalidParameter("missing --input".into()))?;
            let text = fs::read_to_string(path)?;
            Ok(Instance {
                name: path
                    .file_stem()
                    .map_or("input".into(), |s| s.to_string_lossy().into_owned()),
                cnf: parse_dimacs(&text)?,
                graph: None,
                dot: None,
            })
        }
    }
}

/// Writes an instance. Without `--out-dir` the DIMACS text goes to `out`;
/// with it, files are written and a JSON summary goes to `out`.
pub fn cmd_gen(args: &GenArgs, caps: Caps, seed: u64, out: &mut impl Write) -> Result<()> {
    let inst = build_instance(args.family, args.r, args.k, args.n, args.m, args.input.as_deref(), seed)?;
    let name = args.name.clone().unwrap_or(inst.name);
    let mut config = RunConfig::new("gen", caps, seed);
    config.r = args.r;
    config.k = args.k;
    config.n = args.n;
    let meta = json!({
        "config": config,
        "family": args.family,
        "name": name,
        "num_vars": inst.cnf.num_vars(),
        "num_clauses": inst.cnf.num_clauses(),
        "cnf": inst.cnf,
    });
    let Some(dir) = &args.out_dir else {
        out.write_all(inst.cnf.to_dimacs().as_bytes())?;
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{name}.cnf")), inst.cnf.to_dimacs())?;
    fs::write(
        dir.join(format!("{name}.json")),
        serde_json::to_string_pretty(&meta)? + "\n",
    )?;
    if let Some(g) = &inst.graph {
        fs::write(dir.join(format!("{name}.graph")), g.to_edge_list())?;
    }
    if args.dot {
        if let Some(dot) = &inst.dot {
            fs::write(dir.join(format!("{name}.dot")), dot)?;
        }
    }
    let summary = json!({
        "name": name,
        "num_vars": inst.cnf.num_vars(),
        "num_clauses": inst.cnf.num_clauses(),
        "dir": dir,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    Ok(())
}

/// Parses `x3`, `3` or a name from the CNF's name map.
fn parse_var(f: &Cnf, token: &str) -> Result<Var> {
    let bad = || Error::InvalidParameter(format!("unknown variable `{token}` in order"));
    let digits = token.strip_prefix('x').unwrap_or(token);
    if let Ok(i) = digits.parse::<u32>() {
        return Var::new(i).filter(|v| v.slot() < f.num_vars()).ok_or_else(bad);
    }
    f.names()
        .iter()
        .find(|(_, n)| n.as_str() == token)
        .map(|(&v, _)| v)
        .ok_or_else(bad)
}

/// Reads an explicit order: an inline list, or a path to a file holding one.
pub fn parse_order(f: &Cnf, spec: &str) -> Result<VariableOrder> {
    let path = Path::new(spec);
    let text = if path.is_file() {
        fs::read_to_string(path)?
    } else {
        spec.to_string()
    };
    let order = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_var(f, t))
        .collect::<Result<Vec<_>>>()?;
    let order = VariableOrder::new(order, Provenance::Explicit);
    if !order.is_permutation_of(f.num_vars()) {
        return Err(Error::InvalidParameter(format!(
            "order is not a permutation of the {} variables",
            f.num_vars()
        )));
    }
    Ok(order)
}

#[derive(Serialize)]
struct CompileReport {
    config: RunConfig,
    order: Vec<u32>,
    provenance: Provenance,
    internal: usize,
    total: usize,
    layer_sizes: Vec<usize>,
    uniform_layer_sizes: Vec<usize>,
    pathwidth_p: usize,
    layer_bound: usize,
    /// The layer bound is only claimed for orders respecting the decomposition.
    bound_applies: bool,
    pass: bool,
}

/// Compiles a CNF file and reports sizes against `1 + 2^{p+1}`.
pub fn cmd_compile(args: &CompileArgs, caps: Caps, seed: u64, out: &mut impl Write) -> Result<bool> {
    let f = parse_dimacs(&fs::read_to_string(&args.cnf)?)?;
    let inc = f.incidence_graph();
    let pd = tree_to_path(&min_fill(&inc.graph), &inc.graph)?;
    let p = validate(&inc.graph, &pd)?;
    let end = if args.from_last { PathEnd::Last } else { PathEnd::First };
    let order = if args.order == "respecting-f" {
        ordering_respecting_f(&pd, &inc, end)?
    } else {
        parse_order(&f, &args.order)?
    };
    let d = Obdd::compile_with_caps(&f, &order, &caps, false)?;
    let u = Obdd::compile_with_caps(&f, &order, &caps, true)?;
    let layer_bound = 1 + (1usize << (p + 1));
    let bound_applies = order.provenance == Provenance::RespectingF;
    let uniform_layer_sizes = u.layer_sizes();
    let within = uniform_layer_sizes.iter().all(|&s| s <= layer_bound);
    let report = CompileReport {
        config: RunConfig::new("compile", caps, seed),
        order: order.order.iter().map(|v| v.index()).collect(),
        provenance: order.provenance,
        internal: d.internal_count(),
        total: d.total_count(),
        layer_sizes: d.layer_sizes(),
        uniform_layer_sizes,
        pathwidth_p: p,
        layer_bound,
        bound_applies,
        pass: !bound_applies || within,
    };
    if let Some(path) = &args.dot {
        fs::write(
            path,
            d.to_dot(&args.cnf.file_stem().map_or("obdd".into(), |s| s.to_string_lossy())),
        )?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(report.pass)
}

fn looks_like_dimacs(text: &str) -> bool {
    text.lines().any(|l| l.trim_start().starts_with("p cnf"))
}

/// Matching width of a graph (a CNF stands for its primal graph) or
/// combined width of a CNF (a graph stands for `CNF(G)`).
pub fn cmd_width(args: &WidthArgs, caps: Caps, seed: u64, out: &mut impl Write) -> Result<()> {
    let text = fs::read_to_string(&args.input)?;
    let value = match args.measure {
        Measure::Mw => {
            let g = if looks_like_dimacs(&text) {
                parse_dimacs(&text)?.primal_graph()
            } else {
                Graph::parse_edge_list(&text)?
            };
            let rep = matching_width_exact(&g, &caps)?;
            json!({
                "measure": "mw",
                "value": rep.value,
                "witness": rep.witness_order.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "worst_cut": rep.per_prefix,
            })
        }
        Measure::Combined => {
            let f = if looks_like_dimacs(&text) {
                parse_dimacs(&text)?
            } else {
                cnf_of_graph(&Graph::parse_edge_list(&text)?).cnf
            };
            let cw = combined_width_exact(&f, &caps)?;
            json!({
                "measure": "combined",
                "value": cw.value,
                "witness": cw.witness_order.order.iter().map(|v| v.index()).collect::<Vec<_>>(),
            })
        }
    };
    let mut doc = json!({ "config": RunConfig::new("width", caps, seed) });
    doc.as_object_mut()
        .expect("object")
        .extend(value.as_object().expect("object").clone());
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

/// Runs a suite and writes the reports as JSON (and optionally CSV).
/// Returns whether every check passed; warnings do not count.
pub fn cmd_verify(args: &VerifyArgs, caps: Caps, seed: u64, out: &mut impl Write) -> Result<bool> {
    let reports = verify_reports(args, caps, seed)?;
    if let Some(path) = &args.json {
        write_json(&reports, fs::File::create(path)?)?;
    }
    if let Some(path) = &args.csv {
        write_csv(&reports, fs::File::create(path)?)?;
    }
    write_json(&reports, &mut *out)?;
    Ok(reports.iter().all(BoundReport::pass))
}

fn verify_reports(args: &VerifyArgs, caps: Caps, seed: u64) -> Result<Vec<BoundReport>> {
    let (r, k) = (args.r, args.k);
    match args.suite {
        Suite::Bookkeeping => Ok(vec![bookkeeping_report(r, k, &caps, seed)]),
        Suite::Lower => {
            let mode = match args.mode {
                ModeArg::Exact => LowerMode::Exact,
                ModeArg::PerOrder => LowerMode::PerOrder,
            };
            Ok(vec![verify_lower_bound(r, k, mode, args.samples, &caps, seed)?])
        }
        Suite::Upper => {
            let inst = build_instance(
                args.family,
                Some(r),
                Some(k),
                args.n,
                args.m,
                args.input.as_deref(),
                seed,
            )?;
            let mut reports = Vec::new();
            for end in [PathEnd::First, PathEnd::Last] {
                let mut rep = verify_upper_bound(&inst.name, &inst.cnf, None, end, &caps, seed)?;
                rep.params.r = (args.family == Family::Ctree).then_some(r);
                rep.params.k = (args.family == Family::Ctree).then_some(k);
                rep.instance = format!(
                    "{} ({})",
                    inst.name,
                    if end == PathEnd::First { "first end" } else { "last end" }
                );
                reports.push(rep);
            }
            Ok(reports)
        }
        Suite::Cltreemt => {
            let c = verify_cltreemt(r, k, &caps, seed, args.samples.max(1000))?;
            let mut rep = BoundReport::new(format!("CT_{{{r},{k}}}"), "cltreemt", Repro::new(seed, caps));
            rep.params.r = Some(r);
            rep.params.k = Some(k);
            rep.measure("mode", serde_json::to_value(c.mode)?);
            rep.measure("value", c.value);
            rep.measure("bound", c.bound);
            rep.measure("permutations_checked", c.permutations_checked);
            rep.measure("witness_order", c.witness_order.clone());
            rep.check("mw >= ceil(rk/2)", c.pass, format!("{} >= {}", c.value, c.required));
            Ok(vec![rep])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("obdd-lab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn gen_to_stdout() {
        let mut out = Vec::new();
        assert!(run(parse(&["gen", "--family", "ctree", "-r", "0", "-k", "1"]), &mut out).unwrap());
        assert_eq!(String::from_utf8(out).unwrap(), "p cnf 1 0\n");
    }

    #[test]
    fn orders_parse_inline() {
        let f = Cnf::from_dimacs_clauses(3, &[&[1, 2], &[2, 3]]).unwrap();
        let o = parse_order(&f, "x3, x1,x2").unwrap();
        assert_eq!(o.order, [2, 0, 1].map(Var::from_slot).to_vec());
        assert_eq!(parse_order(&f, "3 1 2").unwrap(), o);
        assert!(parse_order(&f, "1,2").is_err());
        assert!(parse_order(&f, "1,2,4").is_err());
    }

    #[test]
    fn verify_bookkeeping_passes_with_warning() {
        let mut out = Vec::new();
        let ok = run(
            parse(&["verify", "--suite", "bookkeeping", "-r", "2", "-k", "2"]),
            &mut out,
        )
        .unwrap();
        assert!(ok);
        let reports: Vec<BoundReport> = serde_json::from_slice(&out).unwrap();
        assert_eq!(reports[0].measured["divergence"], true);
    }
}
