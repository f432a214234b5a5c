//! Command-line driver.
//!
//! [`run_args`] parses arguments into a validated [`RunConfig`] and runs it
//! against caller-supplied streams, so the binary and the tests share one
//! entry point. Usage and configuration errors exit with 2, pipeline errors
//! with 1.
//!
//! Outputs go to `--output` when given, else to a default file name under
//! `$CLOUDGRAPH_OUT_DIR` when that is set, else to stdout.

mod bench;
mod stats;

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use bench::{bench_row, BenchRow};
pub use stats::StatsReport;

use crate::cloudpart::{cloud_cap, CloudPartition};
use crate::graph::{generate, io as graph_io, GraphFormat, StaticGraph};
use crate::hierarchy::{mini_graphs, HierarchyOptions, SuccinctEncoding};
use crate::minor::StructureMinor;
use crate::separator::{separate_minor, Backend, SeparatorOptions, Side};
use crate::succinct::BitBudget;
use crate::treedec::{self, DecomposeOptions};
use crate::{Error, Vertex};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CLOUDGRAPH_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cloudgraph", version, about = "Planar graph coarsening, separators, succinct encodings and tree decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Cloud size factor: clouds hold at most ⌈c·log₂ n⌉ vertices.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub c: f64,

    /// Mini-graph threshold exponent.
    #[arg(long, global = true, default_value_t = crate::hierarchy::DEFAULT_DELTA)]
    pub delta: u32,

    /// Micro-graph vertex cap (4..=8); derived from n when omitted.
    #[arg(long, global = true)]
    pub t: Option<usize>,

    /// Separator balance, as a decimal or a fraction such as `2/3`.
    #[arg(long, global = true, default_value = "2/3", value_parser = parse_fraction)]
    pub alpha: f64,

    /// Separator backend: auto, exact, level or cycle.
    #[arg(long, global = true, default_value = "auto")]
    pub backend: Backend,

    /// Enables the bounded-density mode with this critical-cloud threshold.
    #[arg(long, global = true)]
    pub phi: Option<usize>,

    /// Density bound used by the orientation step.
    #[arg(long, global = true, default_value_t = 3)]
    pub density: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Graph file format: canonical or metis.
    #[arg(long, global = true, default_value = "canonical")]
    pub format: GraphFormat,

    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Adds wall-clock timings to `stats` and `bench` output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Generates a graph in canonical format.
    Gen {
        kind: GenKind,
        /// Dimensions: `w h` for grids, `n` for stars and paths, `k` for grid-pow2.
        params: Vec<usize>,
        /// Edge probability for random-planar.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Number of extra crossing edges to add.
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
    /// Prints the cloud partition as CSV.
    Partition { graph: PathBuf },
    /// Prints the structure-maintaining minor.
    Minor { graph: PathBuf },
    /// Prints a balanced separator as CSV.
    Separate { graph: PathBuf },
    /// Prints the mini graphs as CSV.
    Minigraphs { graph: PathBuf },
    /// Writes the binary succinct encoding.
    Encode { graph: PathBuf },
    /// Answers `adj u v`, `deg v` and `nbr v` lines against an encoding.
    Query {
        encoding: PathBuf,
        /// Query file; stdin when omitted.
        #[arg(long)]
        queries: Option<PathBuf>,
    },
    /// Writes a tree decomposition in PACE format.
    Treedec { graph: PathBuf },
    /// Checks a PACE tree decomposition against a graph.
    ValidateTd { graph: PathBuf, td: PathBuf },
    /// Prints pipeline counts and bit-budget peaks as JSON.
    Stats { graph: PathBuf },
    /// Sweeps graph sizes 2^k and prints scaling metrics as CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Grid)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        kmin: u32,
        #[arg(long, default_value_t = 16)]
        kmax: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Grid,
    TriGrid,
    Star,
    Path,
    RandomPlanar,
    GridPow2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Grid,
    TriGrid,
}

impl Family {
    pub fn generate(self, k: u32) -> StaticGraph {
        match self {
            Family::Grid => generate::grid_pow2(k),
            Family::TriGrid => {
                let w = 1usize << k.div_ceil(2);
                generate::tri_grid(w, 1usize << (k / 2))
            }
        }
    }
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
            let b: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
            a / b
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not a finite number"))
    }
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub c: f64,
    pub delta: u32,
    pub t: Option<usize>,
    pub alpha: f64,
    pub phi: Option<usize>,
    pub density: usize,
    pub backend: Backend,
    pub seed: u64,
    pub format: GraphFormat,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Bench {
                family: Family::Grid,
                kmin: 10,
                kmax: 16,
            },
            output: None,
            c: 1.0,
            delta: crate::hierarchy::DEFAULT_DELTA,
            t: None,
            alpha: 2.0 / 3.0,
            phi: None,
            density: 3,
            backend: Backend::Auto,
            seed: 0,
            format: GraphFormat::Canonical,
            timings: false,
        }
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = String;

    fn try_from(cli: Cli) -> Result<Self, String> {
        let cfg = RunConfig {
            command: cli.command,
            output: cli.output,
            c: cli.c,
            delta: cli.delta,
            t: cli.t,
            alpha: cli.alpha,
            phi: cli.phi,
            density: cli.density,
            backend: cli.backend,
            seed: cli.seed,
            format: cli.format,
            timings: cli.timings,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(format!("--c must be positive, got {}", self.c));
        }
        if self.delta == 0 {
            return Err("--delta must be at least 1".into());
        }
        if let Some(t) = self.t {
            if !(4..=8).contains(&t) {
                return Err(format!("--t must lie in 4..=8, got {t}"));
            }
        }
        if !(self.alpha >= 2.0 / 3.0 - 1e-9 && self.alpha < 1.0) {
            return Err(format!("--alpha must lie in [2/3, 1), got {}", self.alpha));
        }
        if self.phi == Some(0) {
            return Err("--phi must be at least 1".into());
        }
        if self.density == 0 {
            return Err("--density must be at least 1".into());
        }
        match &self.command {
            Command::Gen { kind, params, p, .. } => {
                let want = match kind {
                    GenKind::Grid | GenKind::TriGrid | GenKind::RandomPlanar => 2,
                    GenKind::Star | GenKind::Path | GenKind::GridPow2 => 1,
                };
                if params.len() != want {
                    return Err(format!("gen {kind:?} takes {want} size parameter(s), got {}", params.len()));
                }
                if params.contains(&0) {
                    return Err("gen sizes must be positive".into());
                }
                if *kind == GenKind::GridPow2 && params[0] > 30 {
                    return Err("gen grid-pow2 takes k ≤ 30".into());
                }
                if !(0.0..=1.0).contains(p) {
                    return Err(format!("--p must lie in [0, 1], got {p}"));
                }
            }
            Command::Bench { kmin, kmax, .. } if kmin > kmax || *kmax > 30 || *kmin < 2 => {
                return Err(format!("bench needs 2 ≤ kmin ≤ kmax ≤ 30, got {kmin}..{kmax}"));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn separator_options(&self) -> SeparatorOptions {
        SeparatorOptions {
            alpha: self.alpha,
            backend: self.backend,
            planar: self.phi.is_none(),
            proper: false,
        }
    }

    pub fn hierarchy_options(&self) -> HierarchyOptions {
        HierarchyOptions {
            delta: self.delta,
            micro_cap: self.t,
            separator: self.separator_options(),
        }
    }

    pub fn decompose_options(&self) -> DecomposeOptions {
        DecomposeOptions {
            separator: self.separator_options(),
            ..Default::default()
        }
    }

    fn default_name(&self) -> Option<&'static str> {
        Some(match self.command {
            Command::Gen { .. } => "graph.txt",
            Command::Partition { .. } => "partition.csv",
            Command::Minor { .. } => "minor.txt",
            Command::Separate { .. } => "separator.csv",
            Command::Minigraphs { .. } => "minigraphs.csv",
            Command::Encode { .. } => "encoding.bin",
            Command::Query { .. } => return None,
            Command::Treedec { .. } => "decomposition.td",
            Command::ValidateTd { .. } => return None,
            Command::Stats { .. } => "stats.json",
            Command::Bench { .. } => "bench.csv",
        })
    }

    fn output_path(&self) -> Option<PathBuf> {
        if let Some(p) = &self.output {
            return Some(p.clone());
        }
        let dir = std::env::var_os(OUT_DIR_ENV)?;
        Some(Path::new(&dir).join(self.default_name()?))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Pipeline(_) => EXIT_FAILURE,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Pipeline(e.into())
    }
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn run_args<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = RunConfig::try_from(cli).map_err(CliError::Usage).and_then(|cfg| run(&cfg, stdin, stdout));
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Pipeline(Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a validated configuration.
pub fn run(cfg: &RunConfig, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), CliError> {
    cfg.validate().map_err(CliError::Usage)?;
    match cfg.output_path() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let mut out = BufWriter::new(File::create(&path)?);
            dispatch(cfg, stdin, &mut out, stdout)?;
            out.flush()?;
        }
        None => {
            dispatch(cfg, stdin, &mut *stdout, &mut std::io::sink())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// `out` receives the artifact; `notes` receives verdict lines when the
/// artifact goes to a file.
fn dispatch(cfg: &RunConfig, stdin: &mut dyn BufRead, out: &mut dyn Write, notes: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.command {
        Command::Gen { kind, params, p, extra } => {
            let g = generate_graph(*kind, params, *p, cfg.seed);
            let g = if *extra > 0 { generate::with_extra_edges(&g, *extra, cfg.seed) } else { g };
            graph_io::write(&g, out)?;
        }
        Command::Partition { graph } => {
            let g = load(cfg, graph)?;
            let p = partition(cfg, &g, &mut BitBudget::new());
            out.write_all(p.to_csv().as_bytes())?;
        }
        Command::Minor { graph } => {
            let g = load(cfg, graph)?;
            let mut budget = BitBudget::new();
            let p = partition(cfg, &g, &mut budget);
            let m = StructureMinor::build_budgeted(&p, cfg.density, &mut budget)?;
            out.write_all(m.to_text().as_bytes())?;
        }
        Command::Separate { graph } => {
            let g = load(cfg, graph)?;
            let mut budget = BitBudget::new();
            let p = partition(cfg, &g, &mut budget);
            let m = StructureMinor::build_budgeted(&p, cfg.density, &mut budget)?;
            let sep = separate_minor(&m, &cfg.separator_options(), &mut budget)?;
            if let Some((u, v)) = sep.crossing_edge(&g) {
                return Err(Error::Internal(format!("separator leaves edge {u}-{v} between A and B")).into());
            }
            writeln!(out, "vertex,side")?;
            for v in g.vertices() {
                let side = match sep.side(v) {
                    Side::A => "A",
                    Side::S => "S",
                    Side::B => "B",
                };
                writeln!(out, "{v},{side}")?;
            }
        }
        Command::Minigraphs { graph } => {
            let g = load(cfg, graph)?;
            let p = partition(cfg, &g, &mut BitBudget::new());
            let m = StructureMinor::build(&p)?;
            writeln!(out, "mini,depth,vertex,duplicate")?;
            for (id, piece) in mini_graphs(&m, &cfg.hierarchy_options())?.iter().enumerate() {
                for (i, &v) in piece.vertices().iter().enumerate() {
                    writeln!(out, "{id},{},{v},{}", piece.depth(), u8::from(piece.is_duplicate(i as Vertex + 1)))?;
                }
            }
        }
        Command::Encode { graph } => {
            let g = load(cfg, graph)?;
            let e = SuccinctEncoding::encode(&g, cfg.c, &cfg.hierarchy_options())?;
            e.write_to(out)?;
        }
        Command::Query { encoding, queries } => {
            let e = SuccinctEncoding::load(encoding)?;
            match queries {
                Some(path) => answer_queries(&e, &mut BufReader::new(File::open(path)?), out)?,
                None => answer_queries(&e, stdin, out)?,
            }
        }
        Command::Treedec { graph } => {
            let g = load(cfg, graph)?;
            let mut budget = BitBudget::new();
            let p = partition(cfg, &g, &mut budget);
            let m = StructureMinor::build_budgeted(&p, cfg.density, &mut budget)?;
            treedec::write_pace_streaming(&m, &cfg.decompose_options(), out)?;
        }
        Command::ValidateTd { graph, td } => {
            let g = load(cfg, graph)?;
            let td = treedec::read_pace(File::open(td)?)?;
            match treedec::validate(&g, &td) {
                Ok(r) => {
                    let line = format!("valid: {} bags, width {}", r.bags, r.width);
                    writeln!(out, "{line}")?;
                    writeln!(notes, "{line}")?;
                }
                Err(v) => return Err(Error::InvalidArgument(format!("invalid tree decomposition: {v}")).into()),
            }
        }
        Command::Stats { graph } => {
            let g = load(cfg, graph)?;
            let report = stats::collect(cfg, &g)?;
            serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(out)?;
        }
        Command::Bench { family, kmin, kmax } => {
            writeln!(out, "{}", BenchRow::header(cfg.timings))?;
            for k in *kmin..=*kmax {
                let row = bench_row(cfg, *family, k)?;
                writeln!(out, "{}", row.to_csv(cfg.timings))?;
            }
        }
    }
    Ok(())
}

fn generate_graph(kind: GenKind, params: &[usize], p: f64, seed: u64) -> StaticGraph {
    match kind {
        GenKind::Grid => generate::grid(params[0], params[1]),
        GenKind::TriGrid => generate::tri_grid(params[0], params[1]),
        GenKind::Star => generate::star(params[0]),
        GenKind::Path => generate::path(params[0]),
        GenKind::RandomPlanar => generate::random_planar(params[0], params[1], p, seed),
        GenKind::GridPow2 => generate::grid_pow2(params[0] as u32),
    }
}

fn load(cfg: &RunConfig, path: &Path) -> Result<StaticGraph, CliError> {
    Ok(graph_io::load(path, cfg.format)?)
}

fn partition<'g>(cfg: &RunConfig, g: &'g StaticGraph, budget: &mut BitBudget) -> CloudPartition<'g> {
    CloudPartition::build_budgeted(g, cloud_cap(g.n(), cfg.c), cfg.phi, budget)
}

fn answer_queries(e: &SuccinctEncoding, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let n = e.n();
    let vertex = |tok: Option<&str>, line: usize| -> Result<Vertex, Error> {
        let tok = tok.ok_or_else(|| Error::Parse { line, msg: "missing vertex".into() })?;
        match tok.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v as Vertex),
            _ => Err(Error::Parse {
                line,
                msg: format!("`{tok}` is not a vertex in 1..={n}"),
            }),
        }
    };
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if input.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let mut toks = buf.split_whitespace();
        let Some(op) = toks.next() else { continue };
        match op {
            "adj" => {
                let (u, v) = (vertex(toks.next(), line_no)?, vertex(toks.next(), line_no)?);
                writeln!(out, "{}", u8::from(e.adjacent(u, v)))?;
            }
            "deg" => writeln!(out, "{}", e.degree(vertex(toks.next(), line_no)?))?,
            "nbr" => {
                let mut nb: Vec<Vertex> = e.neighbors(vertex(toks.next(), line_no)?).collect();
                nb.sort_unstable();
                let text: Vec<String> = nb.iter().map(u32::to_string).collect();
                writeln!(out, "{}", text.join(" "))?;
            }
            "#" => {}
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown query `{other}`"),
                }
                .into())
            }
        }
        if toks.next().is_some() {
            return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() }.into());
        }
    }
    Ok(())
}

/// Seconds elapsed since `start`.
fn secs(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}
