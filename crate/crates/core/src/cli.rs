//! Command-line front end. `main` only calls [`run`].

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::counting::{CountError, CountTable};
use crate::graph::Graph;
use crate::oracle;
use crate::sampler::{self, Branch, Expansion, RandomSource, SampleError, SamplerOptions};
use crate::silhouette;
use crate::types::{CombinatorialType, IsomorphismType};
use crate::words::{self, Word};

#[derive(Parser, Debug)]
#[command(name = "modsub", version, about = "Count and sample subgroups of the modular group")]
pub struct Cli {
    /// Count table cache to load before running (see `precompute`).
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Uniform random graphs, one JSON document per line.
    #[command(subcommand)]
    Sample(SampleCmd),
    /// Rewrite a cyclically reduced graph to its silhouette.
    Silhouette {
        #[arg(long = "in")]
        input: PathBuf,
        /// Print each move before the result.
        #[arg(long)]
        trace: bool,
    },
    /// Test whether a word lies in the subgroup of a rooted graph.
    Member {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// List every labeled graph of a size (size 8 at most).
    Enumerate {
        #[arg(long)]
        size: u32,
        /// Only graphs of this type, written `n,k2,k3,l2,l3`.
        #[arg(long = "type")]
        ty: Option<CombinatorialType>,
        /// Rooted reduced graphs instead of cyclically reduced ones.
        #[arg(long)]
        rooted: bool,
    },
    /// Compare the recurrences against brute-force enumeration.
    Selftest {
        #[arg(long, default_value_t = 7)]
        max_n: u32,
    },
    /// Fill the count table up to a size and write it to a cache file.
    Precompute {
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct TypeArgs {
    n: u32,
    k2: u32,
    k3: u32,
    l2: u32,
    l3: u32,
}

impl TypeArgs {
    fn ty(&self) -> CombinatorialType {
        CombinatorialType::new(self.n, self.k2, self.k3, self.l2, self.l3)
    }
}

#[derive(Args, Debug)]
struct IsoArgs {
    n: u32,
    l2: u32,
    l3: u32,
    r: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    /// labeled cyclically reduced graphs
    #[value(name = "s")]
    S,
    /// labeled rooted reduced graphs
    #[value(name = "L")]
    L,
    /// subgroups
    #[value(name = "H")]
    H,
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// By combinatorial type.
    Type {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum, default_value = "s")]
        what: What,
    },
    /// By isomorphism type: labeled rooted graphs, or subgroups with `--what H`.
    Iso {
        #[command(flatten)]
        t: IsoArgs,
        /// Only cyclically reduced graphs.
        #[arg(long)]
        cyclic: bool,
        #[arg(long, value_enum, default_value = "L")]
        what: What,
    },
    /// Labeled silhouette graphs of size n.
    Silhouette { n: u32 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct SampleOpts {
    /// Required unless running interactively.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    count: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Draw every label uniformly instead of using fresh labels plus one relabeling.
    #[arg(long)]
    faithful: bool,
    /// Choose branches with a full uniform integer instead of the streamed comparison.
    #[arg(long)]
    uniform_integer: bool,
    /// Report random bits consumed on stderr.
    #[arg(long)]
    trace_bits: bool,
}

#[derive(Subcommand, Debug)]
enum SampleCmd {
    /// By combinatorial type.
    Type {
        #[command(flatten)]
        t: TypeArgs,
        /// Rooted reduced graphs instead of cyclically reduced ones.
        #[arg(long)]
        rooted: bool,
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Rooted graphs by isomorphism type.
    Iso {
        #[command(flatten)]
        t: IsoArgs,
        #[arg(long)]
        cyclic: bool,
        #[command(flatten)]
        opts: SampleOpts,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("selftest found {0} mismatches")]
    SelftestFailed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Inconsistent(_) => 3,
            CliError::SelftestFailed(_) => 1,
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::InexactDivision(_) => CliError::Inconsistent(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::Count(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Graph::from_json(&text).map_err(usage)
}

fn load_table(path: &Option<PathBuf>) -> Result<CountTable, CliError> {
    match path {
        Some(p) if p.exists() => Ok(CountTable::load(p)?),
        Some(p) => Err(usage(format!("table file {} not found", p.display()))),
        None => Ok(CountTable::new()),
    }
}

fn write_graph(out: &mut dyn Write, g: &Graph, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", g.to_json()),
        Format::Dot => write!(out, "{}", g.to_dot()),
    }
}

fn source(seed: Option<u64>) -> Result<RandomSource, CliError> {
    match seed {
        Some(s) => Ok(RandomSource::seeded(s)),
        None if std::io::stdout().is_terminal() => Ok(RandomSource::from_entropy()),
        None => Err(usage("--seed is required when output is not a terminal")),
    }
}

fn sampler_options(o: &SampleOpts) -> SamplerOptions {
    SamplerOptions {
        expansion: if o.faithful { Expansion::Faithful } else { Expansion::FreshVertex },
        branch: if o.uniform_integer { Branch::UniformInteger } else { Branch::Bernoulli },
    }
}

fn count(cmd: CountCmd, table: &CountTable, out: &mut dyn Write) -> Result<(), CliError> {
    let value: BigUint = match cmd {
        CountCmd::Type { t, what } => {
            let t = t.ty();
            match what {
                What::S => (*table.s(t)?).clone(),
                What::L => table.l(t)?,
                What::H => table.h(t)?,
            }
        }
        CountCmd::Iso { t, cyclic, what } => {
            let sigma = IsomorphismType::new(t.l2, t.l3, t.r);
            let labeled = if cyclic { table.count_iso_cyclic(t.n, sigma)? } else { table.count_iso(t.n, sigma)? };
            match what {
                What::H => {
                    let f = crate::counting::factorial(t.n);
                    if &labeled % &f != BigUint::default() {
                        return Err(CliError::Inconsistent(format!("rooted count for n={} {sigma}", t.n)));
                    }
                    labeled / f
                }
                What::L => labeled,
                What::S => return Err(usage("--what s only applies to combinatorial types")),
            }
        }
        CountCmd::Silhouette { n } => (*table.silhouette_count(n)?).clone(),
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn sample(cmd: SampleCmd, table: &CountTable, out: &mut dyn Write) -> Result<(), CliError> {
    let o = match &cmd {
        SampleCmd::Type { opts, .. } | SampleCmd::Iso { opts, .. } => opts,
    };
    let mut rng = source(o.seed)?;
    let opts = sampler_options(o);
    for _ in 0..o.count {
        let g = match &cmd {
            SampleCmd::Type { t, rooted: false, .. } => {
                sampler::random_cyclically_reduced_graph(t.ty(), table, &mut rng, opts)?
            }
            SampleCmd::Type { t, rooted: true, .. } => sampler::random_reduced_graph(t.ty(), table, &mut rng, opts)?,
            SampleCmd::Iso { t, cyclic, .. } => {
                let sigma = IsomorphismType::new(t.l2, t.l3, t.r);
                sampler::random_subgroup_iso(t.n, sigma, *cyclic, table, &mut rng, opts)?
            }
        };
        write_graph(out, &g, o.format)?;
    }
    if o.trace_bits {
        eprintln!("bits consumed: {}", rng.bits_consumed());
    }
    Ok(())
}

/// Oracle-versus-recurrence comparison; returns the number of mismatches.
pub fn selftest(max_n: u32, table: &CountTable, out: &mut dyn Write) -> Result<usize, CliError> {
    let max_n = max_n.min(oracle::MAX_ENUM_SIZE);
    let mut bad = 0;
    for n in 1..=max_n {
        let brute = oracle::count_by_type(n).map_err(usage)?;
        let mut checked = 0;
        for t in CombinatorialType::cyclic_of_size(n) {
            let want = brute.get(&t).cloned().unwrap_or_default();
            let got = table.s(t)?;
            if *got != want {
                writeln!(out, "MISMATCH s{t}: recurrence {got}, enumeration {want}")?;
                bad += 1;
            }
            checked += 1;
        }
        writeln!(out, "size {n}: s checked on {checked} types")?;
        if n <= 6 {
            let brute = oracle::count_rooted_by_type(n).map_err(usage)?;
            for t in CombinatorialType::all_of_size(n) {
                let want = brute.get(&t).cloned().unwrap_or_default();
                let got = table.l(t)?;
                if got != want {
                    writeln!(out, "MISMATCH L{t}: recurrence {got}, enumeration {want}")?;
                    bad += 1;
                }
            }
            writeln!(out, "size {n}: L checked")?;
        }
    }
    if max_n >= 6 {
        let (got, want) = (table.silhouette_count(6)?, oracle::silhouette_count(6).map_err(usage)?);
        if *got != want {
            writeln!(out, "MISMATCH silhouette(6): recurrence {got}, enumeration {want}")?;
            bad += 1;
        }
    }
    writeln!(out, "{}", if bad == 0 { "selftest passed" } else { "selftest FAILED" })?;
    Ok(bad)
}

/// Runs one parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let table = load_table(&cli.table)?;
    match cli.command {
        Command::Count(c) => count(c, &table, out),
        Command::Sample(c) => sample(c, &table, out),
        Command::Silhouette { input, trace } => {
            let g = read_graph(&input)?;
            let (s, moves) = silhouette::silhouette_with_trace(&g).map_err(usage)?;
            if trace {
                for m in moves {
                    writeln!(out, "{m}")?;
                }
            }
            writeln!(out, "{}", s.to_json())?;
            Ok(())
        }
        Command::Member { graph, word } => {
            let g = read_graph(&graph)?;
            let w: Word = word.parse().map_err(usage)?;
            writeln!(out, "{}", words::member(&g, &w).map_err(usage)?)?;
            Ok(())
        }
        Command::Enumerate { size, ty, rooted } => {
            let mut res = Ok(());
            let mut emit = |g: Graph| {
                if res.is_ok() && ty.is_none_or(|t| g.combinatorial_type() == t) {
                    res = writeln!(out, "{}", g.to_json());
                }
            };
            if rooted {
                oracle::for_each_reduced(size, &mut emit).map_err(usage)?;
            } else {
                oracle::for_each_cyclically_reduced(size, &mut emit).map_err(usage)?;
            }
            Ok(res?)
        }
        Command::Selftest { max_n } => match selftest(max_n, &table, out)? {
            0 => Ok(()),
            bad => Err(CliError::SelftestFailed(bad)),
        },
        Command::Precompute { max_n, out: path } => {
            table.precompute(max_n)?;
            table.save(&path)?;
            writeln!(out, "wrote {} entries to {}", table.len(), path.display())?;
            Ok(())
        }
    }
}

/// Parses the process arguments and runs the command.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
