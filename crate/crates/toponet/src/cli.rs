use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use toponet::fmt::g17;
use toponet::io::{self, NetworkFormat};
use toponet::parallel;
use toponet_core::classical::{log_euclidean_distance, matrix_norm_distance, SpdMatrix};
use toponet_core::distances::{bottleneck, gh_distance, ks_distance, wasserstein};
use toponet_core::filtration::{betti_curve, graph_barcode, morse_pairs_1d};
use toponet_core::inference::{
    ks_pvalue, observed_statistic, permuted_statistic, transposition_test, KsMode,
    PairwiseDistances, PermutationResult,
};
use toponet_core::loss::{pd_regularizer, top_loss, topo_regression, RegressionProblem};
use toponet_core::simplicial::{
    betti_via_hodge, betti_via_rank, maxmin_landmarks, persistence, rips_filtration,
    witness_filtration, FilteredComplex,
};
use toponet_core::summaries::{
    apf, entropy, landscape, persistence_image, Barcode, ImageGrid, ImageNormalization,
    ImageWeight,
};
use toponet_core::{Convention, PersistenceDiagram, WeightedNetwork};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] toponet::Error),
}

impl From<toponet_core::Error> for CliError {
    fn from(e: toponet_core::Error) -> Self {
        CliError::Data(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

/// Persistent homology, topological distances and inference for weighted
/// networks.
///
/// Numbers are written with 17 significant digits. Set TOPONET_THREADS to
/// cap the number of worker threads.
#[derive(Debug, Parser)]
#[command(name = "toponet", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Threshold direction: `above` keeps edges with w > ε, `below` keeps
    /// w < ε.
    #[arg(long, value_enum, default_value_t = ConventionArg::Above, global = true)]
    pub convention: ConventionArg,
    /// Network file format.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto, global = true)]
    pub format: FormatArg,
    /// Node count for edge lists (default: one past the largest index).
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    /// Edge list if the first line has a tab, dense otherwise.
    Auto,
    /// p lines of p comma-separated weights.
    Dense,
    /// i<TAB>j<TAB>w lines, 0-based.
    Edgelist,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti curves of the graph filtration as `epsilon,betti` rows.
    Betti {
        input: PathBuf,
        /// Homology dimension (0 or 1).
        #[arg(long, default_value_t = 0)]
        dim: usize,
        /// Sample at this many evenly spaced points between the smallest and
        /// largest weight instead of listing breakpoints.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Persistence diagrams, one JSON object per line.
    Pd {
        input: PathBuf,
        /// Only this dimension (default: 0 and 1).
        #[arg(long)]
        dim: Option<usize>,
        /// Level at which 0D classes are born (default: just past the
        /// largest weight).
        #[arg(long)]
        death_level: Option<f64>,
        /// Treat the input as a 1D signal and emit its Morse pairs.
        #[arg(long)]
        signal: bool,
    },
    /// Barcode summaries of a diagram file or a network.
    Summary(SummaryArgs),
    /// Distance between two inputs, or a labelled matrix for more.
    Dist(DistArgs),
    /// Exact KS p-values and permutation tests.
    #[command(subcommand)]
    Infer(InferCommand),
    /// Topological losses.
    #[command(subcommand)]
    Loss(LossCommand),
    /// Topologically penalised network regression.
    Regress(RegressArgs),
    /// Rips and witness complexes on point clouds, and their homology.
    #[command(subcommand)]
    Complex(ComplexCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SummaryKind {
    Apf,
    Entropy,
    Landscape,
    Image,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    Uniform,
    Linear,
    Exponential,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormArg {
    /// Each point carries its weight.
    Unit,
    /// Weights divided by the point count.
    Average,
}

#[derive(Debug, Args)]
pub struct SummaryArgs {
    #[arg(value_enum)]
    pub kind: SummaryKind,
    /// Diagram file (JSON lines) or network.
    pub input: PathBuf,
    /// Diagram dimension to summarise.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    /// Landscape levels.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Landscape sample count.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Image kernel width.
    #[arg(long, default_value_t = 0.05)]
    pub sigma: f64,
    #[arg(long, value_enum, default_value_t = WeightArg::Uniform)]
    pub weight: WeightArg,
    #[arg(long, value_enum, default_value_t = NormArg::Unit)]
    pub normalization: NormArg,
    #[arg(long, default_value_t = 20)]
    pub nx: usize,
    #[arg(long, default_value_t = 20)]
    pub ny: usize,
    /// Image margin around the points in units of sigma.
    #[arg(long, default_value_t = 6.0)]
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Method {
    /// Entrywise l-norm of the weight difference.
    Lp,
    /// Frobenius norm of the matrix-log difference of SPD inputs.
    Logeuclid,
    /// Largest single-linkage difference.
    Gh,
    Bottleneck,
    Wasserstein,
    /// Largest Betti-curve gap; needs --dim.
    Ks,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(required = true, num_args = 2..)]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub opts: MethodOpts,
}

#[derive(Debug, Args)]
pub struct MethodOpts {
    /// Homology dimension for diagram and KS methods.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Norm exponent for `lp` (`inf` allowed).
    #[arg(long, default_value_t = 2.0)]
    pub l: f64,
    /// Wasserstein exponent.
    #[arg(long = "wq", default_value_t = 2.0)]
    pub wq: f64,
    /// Ridge added to SPD inputs before taking logs.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Death level used when diagrams come from networks.
    #[arg(long)]
    pub death_level: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    /// d = Dq / sqrt(2q).
    Continuous,
    /// d = ceil(Dq / sqrt(2q)).
    Integer,
}

#[derive(Debug, Subcommand)]
pub enum InferCommand {
    /// Asymptotic p-value of a KS distance between two networks of q edges.
    Ks {
        /// Observed KS distance.
        #[arg(long = "Dq")]
        dq: f64,
        /// Edge count.
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Continuous)]
        mode: ModeArg,
    },
    /// Two-sample permutation test on average between-group distance.
    Perm(PermArgs),
}

#[derive(Debug, Args)]
pub struct PermArgs {
    /// Size of group one; the first m inputs.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub n_perm: usize,
    /// Use a random walk of this many transpositions instead of independent
    /// permutations.
    #[arg(long)]
    pub walk: Option<usize>,
    /// Read pairwise distances from a labelled matrix instead of inputs.
    #[arg(long, conflicts_with = "inputs")]
    pub distances: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Ks)]
    pub method: Method,
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub opts: MethodOpts,
}

#[derive(Debug, Subcommand)]
pub enum LossCommand {
    /// Squared matched birth-death loss between two networks.
    Top { a: PathBuf, b: PathBuf },
    /// Persistence regulariser of a diagram or network.
    Pdreg {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        /// Skip the i0 − 1 most persistent points.
        #[arg(long, default_value_t = 1)]
        i0: usize,
    },
}

#[derive(Debug, Args)]
pub struct RegressArgs {
    /// Network whose topology the estimate is pulled towards.
    #[arg(long)]
    pub prior: PathBuf,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Initial step (default: a tenth of the weight range).
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write `iteration,loss` rows here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(required = true)]
    pub observed: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ComplexCommand {
    /// Vietoris-Rips filtration of a point cloud.
    Rips {
        points: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Largest scale kept.
        #[arg(long, default_value_t = f64::INFINITY)]
        max_eps: f64,
        /// Emit persistence diagrams instead of the complex.
        #[arg(long)]
        diagrams: bool,
    },
    /// Witness filtration on maxmin landmarks.
    Witness {
        points: PathBuf,
        #[arg(long)]
        landmarks: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        diagrams: bool,
    },
    /// Betti numbers of a complex file.
    Betti {
        complex: PathBuf,
        /// Sublevel to take first.
        #[arg(long)]
        eps: Option<f64>,
        /// Also compute them from Hodge Laplacian kernels.
        #[arg(long)]
        hodge: bool,
    },
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    fn convention(&self) -> Convention {
        match self.g.convention {
            ConventionArg::Above => Convention::Similarity,
            ConventionArg::Below => Convention::Dissimilarity,
        }
    }

    fn network(&self, path: &Path) -> Result<WeightedNetwork> {
        let format = match self.g.format {
            FormatArg::Auto => NetworkFormat::Auto,
            FormatArg::Dense => NetworkFormat::Dense,
            FormatArg::Edgelist => NetworkFormat::EdgeList,
        };
        Ok(io::load_network(path, format, self.g.nodes, self.convention())?)
    }

    /// Diagram of dimension `dim` from a diagram file or a network.
    fn diagram(&self, path: &Path, dim: usize, death_level: Option<f64>) -> Result<PersistenceDiagram> {
        let text = io::read_to_string(path)?;
        let src = path.display().to_string();
        if text.trim_start().starts_with('{') {
            let all = io::parse_diagrams(&src, &text)?;
            return all.into_iter().find(|d| d.dim == dim).ok_or_else(|| {
                CliError::Data(toponet::Error::Data(format!("{src}: no diagram of dimension {dim}")))
            });
        }
        if dim > 1 {
            return usage("network diagrams exist in dimensions 0 and 1");
        }
        let net = self.network(path)?;
        Ok(graph_barcode(&net, death_level)?.diagram(dim)?)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.g.output {
            Some(p) => Ok(io::write_file(p, text)?),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let ctx = Ctx { g: &cli.global };
    let out = match &cli.command {
        Command::Betti { input, dim, grid } => betti(&ctx, input, *dim, *grid)?,
        Command::Pd {
            input,
            dim,
            death_level,
            signal,
        } => pd(&ctx, input, *dim, *death_level, *signal)?,
        Command::Summary(a) => summary(&ctx, a)?,
        Command::Dist(a) => dist(&ctx, a)?,
        Command::Infer(InferCommand::Ks { dq, q, mode }) => {
            let mode = match mode {
                ModeArg::Continuous => KsMode::Continuous,
                ModeArg::Integer => KsMode::Ceiling,
            };
            format!("{}\n", g17(ks_pvalue(*dq, *q, mode)?))
        }
        Command::Infer(InferCommand::Perm(a)) => perm(&ctx, a)?,
        Command::Loss(LossCommand::Top { a, b }) => {
            format!("{}\n", g17(top_loss(&ctx.network(a)?, &ctx.network(b)?)))
        }
        Command::Loss(LossCommand::Pdreg { input, dim, p, q, i0 }) => {
            let d = ctx.diagram(input, *dim, None)?;
            format!("{}\n", g17(pd_regularizer(&d, *p, *q, *i0)?))
        }
        Command::Regress(a) => regress(&ctx, a)?,
        Command::Complex(c) => complex(&ctx, c)?,
    };
    ctx.emit(&out)
}

fn betti(ctx: &Ctx, input: &Path, dim: usize, grid: Option<usize>) -> Result<String> {
    if dim > 1 {
        return usage("--dim must be 0 or 1");
    }
    let net = ctx.network(input)?;
    let curve = betti_curve(&net, dim)?;
    Ok(match grid {
        None => io::write_betti_curve(&curve),
        Some(n) if n < 2 => return usage("--grid needs at least 2 points"),
        Some(n) => {
            let (lo, hi) = (net.min_weight().unwrap_or(0.0), net.max_weight().unwrap_or(1.0));
            let xs: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
            io::write_betti_samples(&curve, &xs)
        }
    })
}

fn pd(ctx: &Ctx, input: &Path, dim: Option<usize>, level: Option<f64>, signal: bool) -> Result<String> {
    let mut out = String::new();
    if signal {
        let text = io::read_to_string(input)?;
        let samples = io::parse_signal(&input.display().to_string(), &text)?;
        let pairs = morse_pairs_1d(&samples)?;
        out.push_str(&io::write_diagram(&pairs.diagram()));
        out.push('\n');
        return Ok(out);
    }
    let net = ctx.network(input)?;
    let bc = graph_barcode(&net, level)?;
    let dims: Vec<usize> = match dim {
        Some(d) if d > 1 => return usage("--dim must be 0 or 1"),
        Some(d) => vec![d],
        None => vec![0, 1],
    };
    for d in dims {
        out.push_str(&io::write_diagram(&bc.diagram(d)?));
        out.push('\n');
    }
    Ok(out)
}

fn summary(ctx: &Ctx, a: &SummaryArgs) -> Result<String> {
    let pd = ctx.diagram(&a.input, a.dim, None)?;
    let mut out = String::new();
    match a.kind {
        SummaryKind::Entropy => {
            let bc = Barcode::from_diagram(&pd)?;
            out = format!("{}\n", g17(entropy(&bc)?));
        }
        SummaryKind::Apf => {
            let bc = Barcode::from_diagram(&pd)?;
            let mut centres: Vec<f64> = bc.intervals().iter().map(|&(b, d)| (b + d) / 2.0).collect();
            centres.sort_by(f64::total_cmp);
            centres.dedup();
            for t in centres {
                let _ = writeln!(out, "{},{}", g17(t), g17(apf(&bc, t)));
            }
        }
        SummaryKind::Landscape => {
            if a.grid < 2 || a.k == 0 {
                return usage("landscapes need --grid >= 2 and --k >= 1");
            }
            let bc = Barcode::from_diagram(&pd)?;
            let lo = bc.intervals().iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
            let hi = bc.intervals().iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (0.0, 1.0) };
            for s in 0..a.grid {
                let eps = lo + (hi - lo) * s as f64 / (a.grid - 1) as f64;
                let _ = write!(out, "{}", g17(eps));
                for k in 1..=a.k {
                    let _ = write!(out, ",{}", g17(landscape(&bc, k, eps)?));
                }
                out.push('\n');
            }
        }
        SummaryKind::Image => {
            let grid = ImageGrid::covering(&pd, a.margin * a.sigma, a.nx, a.ny)?;
            let weight = match a.weight {
                WeightArg::Uniform => ImageWeight::Uniform,
                WeightArg::Linear => ImageWeight::Linear,
                WeightArg::Exponential => ImageWeight::Exponential,
            };
            let norm = match a.normalization {
                NormArg::Unit => ImageNormalization::UnitMass,
                NormArg::Average => ImageNormalization::Average,
            };
            out = io::write_image(&persistence_image(&pd, grid, a.sigma, weight, norm)?);
        }
    }
    Ok(out)
}

/// Pairwise distance of `method` between two loaded inputs.
enum Loaded {
    Net(WeightedNetwork),
    Spd(SpdMatrix),
    Diagram(PersistenceDiagram),
}

fn load_for(ctx: &Ctx, method: Method, opts: &MethodOpts, path: &Path) -> Result<Loaded> {
    Ok(match method {
        Method::Logeuclid => {
            let text = io::read_to_string(path)?;
            let (p, data) = io::parse_square(&path.display().to_string(), &text)?;
            Loaded::Spd(SpdMatrix::new(p, data)?)
        }
        Method::Bottleneck | Method::Wasserstein => {
            Loaded::Diagram(ctx.diagram(path, opts.dim.unwrap_or(0), opts.death_level)?)
        }
        _ => Loaded::Net(ctx.network(path)?),
    })
}

fn check_method(method: Method, opts: &MethodOpts) -> Result<()> {
    if method == Method::Ks && opts.dim.is_none() {
        return usage("--method ks needs an explicit --dim (0 or 1)");
    }
    if matches!(method, Method::Ks) && opts.dim > Some(1) {
        return usage("--dim must be 0 or 1");
    }
    if opts.l.is_nan() || opts.l < 1.0 {
        return usage("--l must be at least 1");
    }
    if opts.wq.is_nan() || opts.wq < 1.0 {
        return usage("--wq must be at least 1");
    }
    Ok(())
}

fn distance(method: Method, opts: &MethodOpts, a: &Loaded, b: &Loaded) -> Result<f64> {
    Ok(match (a, b) {
        (Loaded::Spd(x), Loaded::Spd(y)) => log_euclidean_distance(x, y, opts.alpha)?,
        (Loaded::Diagram(x), Loaded::Diagram(y)) => match method {
            Method::Bottleneck => bottleneck(x, y)?,
            _ => wasserstein(x, y, opts.wq)?,
        },
        (Loaded::Net(x), Loaded::Net(y)) => match method {
            Method::Lp => matrix_norm_distance(x, y, opts.l)?,
            Method::Gh => gh_distance(x, y)?,
            _ => ks_distance(x, y, opts.dim.unwrap_or(0))?,
        },
        _ => unreachable!("inputs are loaded for one method"),
    })
}

fn distance_matrix(ctx: &Ctx, method: Method, opts: &MethodOpts, inputs: &[PathBuf]) -> Result<Vec<f64>> {
    let loaded = inputs
        .iter()
        .map(|p| load_for(ctx, method, opts, p))
        .collect::<Result<Vec<_>>>()?;
    parallel::pairwise(loaded.len(), |i, j| distance(method, opts, &loaded[i], &loaded[j]))
}

fn labels(inputs: &[PathBuf]) -> Vec<String> {
    inputs.iter().map(|p| p.display().to_string()).collect()
}

fn dist(ctx: &Ctx, a: &DistArgs) -> Result<String> {
    check_method(a.method, &a.opts)?;
    let m = distance_matrix(ctx, a.method, &a.opts, &a.inputs)?;
    Ok(if a.inputs.len() == 2 {
        format!("{}\n", g17(m[1]))
    } else {
        io::write_distance_matrix(&labels(&a.inputs), &m)
    })
}

const QUANTILES: [f64; 5] = [0.5, 0.9, 0.95, 0.975, 0.99];

fn perm(ctx: &Ctx, a: &PermArgs) -> Result<String> {
    let dist = match &a.distances {
        Some(path) => {
            let text = io::read_to_string(path)?;
            let (_, data) = io::parse_distance_matrix(&path.display().to_string(), &text)?;
            let n = (data.len() as f64).sqrt() as usize;
            PairwiseDistances::from_matrix(n, data)?
        }
        None => {
            check_method(a.method, &a.opts)?;
            if a.inputs.len() < 3 {
                return usage("a permutation test needs at least 3 inputs");
            }
            let m = distance_matrix(ctx, a.method, &a.opts, &a.inputs)?;
            PairwiseDistances::from_matrix(a.inputs.len(), m)?
        }
    };
    let seed = ctx.g.seed;
    let res = match a.walk {
        Some(steps) => transposition_test(&dist, a.m, steps, seed)?,
        None => {
            if a.n_perm == 0 {
                return usage("--n-perm must be positive");
            }
            let observed = observed_statistic(&dist, a.m)?;
            let null: Vec<f64> = parallel::pool().install(|| {
                (0..a.n_perm as u64)
                    .into_par_iter()
                    .map(|k| permuted_statistic(&dist, a.m, seed, k))
                    .collect()
            });
            PermutationResult::from_null(observed, null, seed)
        }
    };
    let quantiles: Vec<String> = QUANTILES
        .iter()
        .map(|&q| format!("\"{q}\":{}", g17(res.null_quantile(q).unwrap_or(f64::NAN))))
        .collect();
    Ok(format!(
        "{{\"observed\":{},\"p\":{},\"n_perm\":{},\"seed\":{},\"null_quantiles\":{{{}}}}}\n",
        g17(res.observed),
        g17(res.p_value),
        res.n_perm(),
        res.seed,
        quantiles.join(",")
    ))
}

fn regress(ctx: &Ctx, a: &RegressArgs) -> Result<String> {
    let observed = a
        .observed
        .iter()
        .map(|p| ctx.network(p))
        .collect::<Result<Vec<_>>>()?;
    let prior = ctx.network(&a.prior)?;
    let mut prob = RegressionProblem::new(observed, prior, a.lambda);
    prob.max_iter = a.max_iter;
    prob.step = a.step;
    prob.tol = a.tol;
    let res = topo_regression(&prob)?;
    if let Some(path) = &a.trace {
        let mut log = String::new();
        for (k, v) in res.trace.iter().enumerate() {
            let _ = writeln!(log, "{k},{}", g17(*v));
        }
        io::write_file(path, &log)?;
    }
    Ok(io::write_dense(&res.estimate))
}

fn diagrams_text(fc: &FilteredComplex, max_dim: usize) -> String {
    let mut out = String::new();
    for d in persistence(fc, max_dim) {
        out.push_str(&io::write_diagram(&d));
        out.push('\n');
    }
    out
}

fn complex(ctx: &Ctx, c: &ComplexCommand) -> Result<String> {
    let points = |path: &Path| -> Result<_> {
        let text = io::read_to_string(path)?;
        Ok(io::parse_points(&path.display().to_string(), &text)?)
    };
    Ok(match c {
        ComplexCommand::Rips {
            points: path,
            max_dim,
            max_eps,
            diagrams,
        } => {
            let fc = rips_filtration(&points(path)?, *max_dim, *max_eps)?;
            if *diagrams {
                diagrams_text(&fc, *max_dim)
            } else {
                io::write_complex(&fc)
            }
        }
        ComplexCommand::Witness {
            points: path,
            landmarks,
            max_dim,
            diagrams,
        } => {
            let cloud = points(path)?;
            let marks = maxmin_landmarks(&cloud, *landmarks, ctx.g.seed)?;
            let fc = witness_filtration(&cloud, &marks, *max_dim)?;
            if *diagrams {
                diagrams_text(&fc, *max_dim)
            } else {
                io::write_complex(&fc)
            }
        }
        ComplexCommand::Betti { complex, eps, hodge } => {
            let text = io::read_to_string(complex)?;
            let fc = io::parse_complex(&complex.display().to_string(), &text)?;
            let k = fc.sublevel(eps.unwrap_or(f64::INFINITY));
            let mut out = String::new();
            for dim in 0..=k.dim().unwrap_or(0) {
                let b = betti_via_rank(&k, dim);
                if *hodge {
                    let h = betti_via_hodge(&k, dim);
                    if h != b {
                        return Err(toponet::Error::Data(format!(
                            "β{dim}: rank gives {b}, Hodge gives {h}"
                        ))
                        .into());
                    }
                }
                let _ = writeln!(out, "{dim},{b}");
            }
            out
        }
    })
}
