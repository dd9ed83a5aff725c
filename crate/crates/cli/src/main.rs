//! `stanley-bij`: enumerate, map, verify, render, and evaluate characters.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 tree outside the image.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use stanley_bij::character::{self, MultiRectangular};
use stanley_bij::factorization::{self, FactorizationType, MinimalFactorization};
use stanley_bij::forward::{self, AlgorithmState, OpRecord, RunOptions};
use stanley_bij::inverse::{run_a_inverse_explained, InverseError};
use stanley_bij::plane_tree::{build_t0, relabel_to_t1, to_dot, PlaneTree};
use stanley_bij::stanley::{self, StanleyTree, StanleyType};
use stanley_bij::verify::{self, CheckResult};

#[derive(Parser)]
#[command(name = "stanley-bij", version, about = "Minimal factorizations of a long cycle and Stanley trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every factorization or tree of a type, one per line.
    Enum {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Apply the bijection or its inverse.
    Map {
        #[command(subcommand)]
        dir: MapCmd,
    },
    /// Run the verification suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Print a tree, or the first tree of a factorization, as Graphviz DOT.
    Render(Io),
    /// Normalized characters on multi-rectangular diagrams.
    Char {
        #[command(subcommand)]
        what: CharCmd,
    },
}

#[derive(Args)]
struct Io {
    /// Input file; stdin when absent or `-`.
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EnumCmd {
    /// Minimal factorizations with factor lengths `--type a1,...,an`.
    Fact {
        #[arg(long = "type")]
        ty: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Stanley trees of type `--b b1,...,bn`.
    Tree {
        #[arg(long)]
        b: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Factorization to tree.
    Forward {
        #[command(flatten)]
        io: Io,
        /// Print the tree after every bend and jump.
        #[arg(long)]
        trace: bool,
        /// Check the run invariants after every step.
        #[arg(long)]
        instrument: bool,
    },
    /// Tree to factorization.
    Inverse {
        #[command(flatten)]
        io: Io,
        /// Annotate each factor with the rule that recovered it.
        #[arg(long)]
        explain: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Roundtrip,
    Counts,
    Chars,
    Golden,
    Instrument,
    Order,
    Predict,
    Random,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
    /// Largest k for the exhaustive suites.
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Instances for the random round trip.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum CharCmd {
    /// `Ch_k(p × q)` as an exact rational.
    Eval {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// The coefficient of `p1...pn q1^b1...qn^bn` in `Ch_k(p × q)`.
    Coeff {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: String,
    },
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn input_err(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Res<u8> {
    match cli.cmd {
        Cmd::Enum { what } => cmd_enum(what),
        Cmd::Map { dir: MapCmd::Forward { io, trace, instrument } } => cmd_forward(&io, trace, instrument),
        Cmd::Map { dir: MapCmd::Inverse { io, explain } } => cmd_inverse(&io, explain),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Render(io) => cmd_render(&io),
        Cmd::Char { what } => cmd_char(what),
    }
}

fn read_input(path: &Option<PathBuf>) -> Res<String> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(input_err)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin").map_err(input_err)?;
            s
        }
    };
    if text.trim().is_empty() {
        return Err(input_err(anyhow!("empty input")));
    }
    Ok(text)
}

fn open_output(path: &Option<PathBuf>) -> Res<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display())).map_err(input_err)?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout())),
    })
}

fn write_err(e: io::Error) -> Failure {
    Failure { code: 2, err: anyhow::Error::new(e).context("writing output") }
}

/// Lines that carry data: not blank, not `#` comments.
fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_factorization(text: &str) -> Res<MinimalFactorization> {
    let line = data_lines(text).next().ok_or_else(|| input_err(anyhow!("no factorization in input")))?;
    let f: MinimalFactorization = line.parse().map_err(input_err)?;
    f.check().map_err(|d| input_err(anyhow!("not a minimal factorization: {d}")))?;
    Ok(f)
}

/// A one-line tree record, or the vertex/edge text format.
fn parse_tree(text: &str) -> Res<StanleyTree> {
    let first = data_lines(text).next().ok_or_else(|| input_err(anyhow!("no tree in input")))?;
    if first.contains("s1=") {
        return first.parse().map_err(input_err);
    }
    let t: PlaneTree = text.parse().map_err(input_err)?;
    StanleyTree::from_plane_tree(&t).map_err(input_err)
}

fn parse_list(s: &str) -> Res<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad list {s:?}")).map_err(input_err))
        .collect()
}

fn cmd_enum(what: EnumCmd) -> Res<u8> {
    let (mut out, to_file) = match &what {
        EnumCmd::Fact { out, .. } | EnumCmd::Tree { out, .. } => (open_output(out)?, out.is_some()),
    };
    let mut count = 0u64;
    let mut io_err = None;
    match what {
        EnumCmd::Fact { ty, .. } => {
            let t: FactorizationType = ty.parse().map_err(input_err)?;
            let bound = stanley::max_k_from_env(factorization::DEFAULT_MAX_K);
            if t.k() > bound {
                return Err(input_err(anyhow!("k={} exceeds the enumeration bound {bound}; raise STANLEY_BIJ_MAX_K", t.k())));
            }
            let k = t.k();
            factorization::for_each(&t, |fs| {
                count += 1;
                if io_err.is_none() {
                    if let Err(e) = writeln!(out, "{}", MinimalFactorization::from_parts(k, fs.to_vec())) {
                        io_err = Some(e);
                    }
                }
            });
        }
        EnumCmd::Tree { b, .. } => {
            let bt: StanleyType = b.parse().map_err(input_err)?;
            let bound = stanley::max_k_from_env(stanley::DEFAULT_MAX_K);
            if bt.k() > bound {
                return Err(input_err(anyhow!("k={} exceeds the enumeration bound {bound}; raise STANLEY_BIJ_MAX_K", bt.k())));
            }
            stanley::for_each_with_n(bt.k(), bt.n(), |t, ty| {
                if *ty != bt {
                    return;
                }
                count += 1;
                if io_err.is_none() {
                    if let Err(e) = writeln!(out, "{t}") {
                        io_err = Some(e);
                    }
                }
            });
        }
    }
    if let Some(e) = io_err {
        return Err(write_err(e));
    }
    out.flush().map_err(write_err)?;
    if to_file {
        println!("{count}");
    } else {
        eprintln!("{count}");
    }
    Ok(0)
}

fn tree_record(t: &StanleyTree) -> String {
    format!("{t}\ntype={}\n", t.type_of())
}

fn cmd_forward(io: &Io, trace: bool, instrument: bool) -> Res<u8> {
    let f = parse_factorization(&read_input(&io.input)?)?;
    if f.n() < 2 {
        return Err(input_err(anyhow!("need at least two factors")));
    }
    let mut out = open_output(&io.out)?;
    let opts = RunOptions { instrument, ..Default::default() };
    let mut snapshots = String::new();
    let state = if trace {
        let t1 = forward::init(&f).map_err(input_err)?;
        snapshots.push_str(&format!("# T1\n{}", t1.tree));
        let mut step = 0;
        let mut obs = |s: &AlgorithmState, op: &OpRecord| {
            step += 1;
            snapshots.push_str(&format!("# step {step}: {op}\n{}", s.tree));
        };
        forward::run_with(&f, opts, &mut obs)
    } else {
        forward::run_state(&f, opts)
    }
    .map_err(|e| Failure { code: if instrument { 1 } else { 2 }, err: e.into() })?;
    let st = forward::to_stanley(&state).map_err(|e| Failure { code: 1, err: e.into() })?;
    write!(out, "{snapshots}").map_err(write_err)?;
    if trace {
        writeln!(out, "# T2").map_err(write_err)?;
    }
    write!(out, "{}", tree_record(&st)).map_err(write_err)?;
    out.flush().map_err(write_err)?;
    Ok(0)
}

fn cmd_inverse(io: &Io, explain: bool) -> Res<u8> {
    let t = parse_tree(&read_input(&io.input)?)?;
    let (f, cases) = run_a_inverse_explained(&t).map_err(|e| match e {
        InverseError::Type(_) | InverseError::OutOfImage(_) => Failure { code: 3, err: e.into() },
        _ => Failure { code: 1, err: e.into() },
    })?;
    let mut out = open_output(&io.out)?;
    writeln!(out, "{f}").map_err(write_err)?;
    if explain {
        for (i, (c, case)) in f.factors().iter().zip(&cases).enumerate() {
            writeln!(out, "# sigma_{} = {c} case {case}", i + 1).map_err(write_err)?;
        }
    }
    out.flush().map_err(write_err)?;
    Ok(0)
}

fn cmd_render(io: &Io) -> Res<u8> {
    let text = read_input(&io.input)?;
    let first = data_lines(&text).next().unwrap_or_default();
    let tree = if first.contains("s1=") {
        parse_tree(&text)?.to_plane_tree()
    } else if first.starts_with("k=") {
        relabel_to_t1(&build_t0(&parse_factorization(&text)?))
    } else {
        let t: PlaneTree = text.parse().map_err(input_err)?;
        t.check().map_err(|d| input_err(anyhow!("{d}")))?;
        t
    };
    let mut out = open_output(&io.out)?;
    write!(out, "{}", to_dot(&tree)).map_err(write_err)?;
    out.flush().map_err(write_err)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Res<u8> {
    let bound = stanley::max_k_from_env(stanley::DEFAULT_MAX_K);
    let exhaustive = matches!(a.suite, Suite::All | Suite::Roundtrip | Suite::Counts | Suite::Instrument | Suite::Predict);
    if exhaustive && a.k > bound.min(12) {
        return Err(input_err(anyhow!("k={} exceeds the enumeration bound {}; raise STANLEY_BIJ_MAX_K", a.k, bound.min(12))));
    }
    let mut results: Vec<CheckResult> = Vec::new();
    let want = |s: Suite| a.suite == Suite::All || a.suite == s;
    if want(Suite::Golden) {
        results.push(verify::golden());
    }
    if want(Suite::Roundtrip) {
        results.push(verify::bijection(a.k));
    }
    if want(Suite::Counts) {
        if a.suite == Suite::Counts {
            println!("{:<15} {:<16} {:>12} {:>12}", "class", "type", "count", "(k-1)!k^(n-1)");
            for r in verify::count_table(a.k) {
                println!("{:<15} {:<16} {:>12} {:>12}", r.kind, r.class, r.count, r.formula);
            }
        }
        results.push(verify::counts(a.k));
    }
    if want(Suite::Instrument) {
        results.push(verify::instrumentation(a.k));
    }
    if want(Suite::Order) {
        results.push(verify::order_independence(20, a.k, a.seed));
    }
    if want(Suite::Predict) {
        results.push(verify::predictor(a.k));
    }
    if want(Suite::Chars) {
        if a.suite == Suite::Chars {
            let rows = verify::coefficient_table(a.k).map_err(|e| input_err(anyhow!("{e}")))?;
            println!("{:>3} {:<12} {:>12} {:>12} {:>8}", "k", "b", "coefficient", "(-k)^(n-1)", "trees");
            for r in rows {
                let b: Vec<String> = r.b.iter().map(|x| x.to_string()).collect();
                println!("{:>3} {:<12} {:>12} {:>12} {:>8}", r.k, b.join(","), r.coefficient, r.expected, r.trees);
            }
        }
        results.push(verify::characters(a.k));
    }
    if want(Suite::Random) {
        results.push(verify::random_roundtrip(a.samples, 10, 14, a.seed));
    }
    let mut failed = false;
    for r in &results {
        println!("{r}");
        failed |= !r.passed;
    }
    Ok(u8::from(failed))
}

fn cmd_char(what: CharCmd) -> Res<u8> {
    match what {
        CharCmd::Eval { k, p, q } => {
            let pq = MultiRectangular::new(parse_list(&p)?, parse_list(&q)?).map_err(input_err)?;
            println!("{}", character::normalized_character_multi(k, &pq));
        }
        CharCmd::Coeff { k, b } => {
            let c = character::extract_psquarefree_coeff(k, &parse_list(&b)?).map_err(input_err)?;
            println!("{c}");
        }
    }
    Ok(0)
}
