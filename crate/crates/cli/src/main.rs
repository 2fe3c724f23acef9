//! Command-line front end: robust subgraph-count bounds, extremal and
//! power-law graph generation, motif counting and bound-to-count ratios,
//! all emitting plot-ready CSV.
//!
//! Exit codes: 0 success, 1 infeasible parameters or runtime failure,
//! 2 usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use madcount::ambiguity::{powerlaw_params, powerlaw_params_matched_cutoff, AmbiguityParams};
use madcount::bounds::{self, BoundResult};
use madcount::graphgen;
use madcount::kernels::{check_assumption1, check_assumption2, Kernel};
use madcount::motifs::{self, CutoffChoice, RatioVariant};
use madcount::patterns::{self, Pattern};

#[derive(Parser)]
#[command(
    name = "madcount",
    version,
    about = "Sharp mean-MAD-range bounds on subgraph counts in hidden-variable random graphs",
    after_help = "CSV schemas:\n\
        bound/scale   pattern,name,regime,n,value,normalized_constant\n\
        powerlaw      k,tau,n,regime,value,exponent\n\
        count         pattern,name,count\n\
        stats         file,n,mu,mad,h_max,sigma2\n\
        compare       pattern,observed,bound,ratio,variant,cutoff\n\
        sweep         curve,pattern,n,value,normalized_constant\n\
        All floating-point values are printed with 9 significant digits."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact tight bound on the expected subgraph count
    Bound(BoundArgs),
    /// Large-n limit formulas (MAD or variance based)
    Scale(ScaleArgs),
    /// Power-law clique counts and the matched extremal bounds
    Powerlaw(PowerlawArgs),
    /// Generate a hidden-variable graph (extremal or power-law weights)
    Gen(GenArgs),
    /// Count pattern copies in an edge-list graph
    Count(CountArgs),
    /// Degree summary statistics of an edge-list graph
    Stats(StatsArgs),
    /// Observed counts vs bounds formed from the graph's own statistics
    Compare(CompareArgs),
    /// Probe a kernel against the shape and ratio-form checks
    CheckKernel(CheckKernelArgs),
    /// Evaluate bounds over a logarithmic grid of network sizes
    Sweep(SweepArgs),
}

/// Model parameters shared by the bound-producing commands. Flags override
/// `--config` file entries; `--from-powerlaw` derives mean, MAD and variance
/// from a truncated power law.
#[derive(Args, Clone, Default)]
struct ModelArgs {
    /// key=value file with defaults (a, mu, mad, sigma2, hc, hs, n, tau, kernel)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Minimum weight (default 0)
    #[arg(long)]
    a: Option<f64>,
    /// Mean weight
    #[arg(long)]
    mu: Option<f64>,
    /// Mean absolute deviation of the weights
    #[arg(long)]
    mad: Option<f64>,
    /// Weight variance (variance-based formulas)
    #[arg(long)]
    sigma2: Option<f64>,
    /// Natural cutoff (maximum weight); default sqrt(mu n)
    #[arg(long)]
    hc: Option<f64>,
    /// Structural cutoff; default hc
    #[arg(long)]
    hs: Option<f64>,
    /// Number of vertices
    #[arg(long)]
    n: Option<u64>,
    /// Power-law weight exponent (excludes --mad)
    #[arg(long, conflicts_with = "mad")]
    tau: Option<f64>,
    /// Kernel name: chung-lu | poisson | generalized
    #[arg(long)]
    kernel: Option<String>,
    /// Derive (mu, mad, sigma2, hc) from a power law, e.g. "tau=2.5,hc=100"
    /// (omit hc to solve hc = sqrt(mu n) from --n)
    #[arg(long)]
    from_powerlaw: Option<String>,
}

struct Model {
    a: f64,
    mu: f64,
    mad: Option<f64>,
    sigma2: Option<f64>,
    h_c: f64,
    h_s: f64,
    n: u64,
    kernel: Kernel,
    tau: Option<f64>,
}

impl ModelArgs {
    fn merged(&self) -> Result<ModelArgs> {
        let mut merged = self.clone();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            apply_config(&mut merged, &text)?;
        }
        Ok(merged)
    }

    fn resolve(&self) -> Result<Model> {
        let merged = self.merged()?;
        let mut a = merged.a;
        let mut mu = merged.mu;
        let mut mad = merged.mad;
        let mut sigma2 = merged.sigma2;
        let mut h_c = merged.hc;
        let mut tau = merged.tau;

        // --from-powerlaw "tau=..,hc=..", or bare --tau with the cutoff
        // taken from --hc or solved self-consistently from --n
        let powerlaw_request = match (&merged.from_powerlaw, tau) {
            (Some(spec), _) => Some(parse_powerlaw_spec(spec)?),
            (None, Some(t)) if mu.is_none() => Some((t, h_c, 1.0)),
            _ => None,
        };
        if let Some((pl_tau, pl_hc, h_min)) = powerlaw_request {
            let pl = match pl_hc {
                Some(cutoff) => powerlaw_params(pl_tau, cutoff, h_min)?,
                None => {
                    let n = merged.n.ok_or_else(|| {
                        anyhow!("a power-law model without hc needs --n to solve the cutoff")
                    })?;
                    powerlaw_params_matched_cutoff(pl_tau, n, h_min)?
                }
            };
            a = a.or(Some(pl.h_min));
            mu = mu.or(Some(pl.mu));
            mad = mad.or(Some(pl.d));
            sigma2 = sigma2.or(Some(pl.sigma2));
            h_c = h_c.or(Some(pl.h_c));
            tau = tau.or(Some(pl_tau));
        }

        let n = merged.n.ok_or_else(|| anyhow!("missing --n"))?;
        let mu = mu.ok_or_else(|| anyhow!("missing --mu (or --from-powerlaw)"))?;
        let a = a.unwrap_or(0.0);
        let h_c = h_c.unwrap_or_else(|| (mu * n as f64).sqrt());
        let h_s = merged.hs.unwrap_or(h_c);
        let kernel_name = merged.kernel.as_deref().unwrap_or("chung-lu");
        let kernel = Kernel::from_name(kernel_name)
            .ok_or_else(|| anyhow!("unknown kernel '{kernel_name}'"))?;
        Ok(Model { a, mu, mad, sigma2, h_c, h_s, n, kernel, tau })
    }
}

fn apply_config(args: &mut ModelArgs, text: &str) -> Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let parse_f64 =
            || -> Result<f64> { value.parse().context(format!("config key '{key}'")) };
        match key {
            "a" => args.a = args.a.or(Some(parse_f64()?)),
            "mu" => args.mu = args.mu.or(Some(parse_f64()?)),
            "mad" => args.mad = args.mad.or(Some(parse_f64()?)),
            "sigma2" => args.sigma2 = args.sigma2.or(Some(parse_f64()?)),
            "hc" => args.hc = args.hc.or(Some(parse_f64()?)),
            "hs" => args.hs = args.hs.or(Some(parse_f64()?)),
            "tau" => args.tau = args.tau.or(Some(parse_f64()?)),
            "n" => {
                if args.n.is_none() {
                    args.n = Some(value.parse().context("config key 'n'")?);
                }
            }
            "kernel" => {
                if args.kernel.is_none() {
                    args.kernel = Some(value.to_string());
                }
            }
            other => bail!("config line {}: unknown key '{other}'", lineno + 1),
        }
    }
    Ok(())
}

fn parse_powerlaw_spec(spec: &str) -> Result<(f64, Option<f64>, f64)> {
    let mut tau = None;
    let mut hc = None;
    let mut h_min = 1.0;
    for part in spec.split(',') {
        let (key, value) =
            part.split_once('=').ok_or_else(|| anyhow!("--from-powerlaw: expected key=value"))?;
        let value: f64 = value.trim().parse().context("--from-powerlaw value")?;
        match key.trim() {
            "tau" => tau = Some(value),
            "hc" => hc = Some(value),
            "hmin" => h_min = value,
            other => bail!("--from-powerlaw: unknown key '{other}'"),
        }
    }
    Ok((tau.ok_or_else(|| anyhow!("--from-powerlaw needs tau"))?, hc, h_min))
}

/// Pattern selection shared by counting commands.
#[derive(Args, Clone)]
struct PatternArgs {
    /// Pattern name ("triangle", "p4", ...) or literal "k=4;edges=0-1,1-2,2-3";
    /// repeatable
    #[arg(long = "pattern")]
    patterns: Vec<String>,
    /// All connected patterns of this size (3, 4 or 5)
    #[arg(long)]
    pattern_size: Option<usize>,
}

impl PatternArgs {
    fn resolve(&self, default_size: Option<usize>) -> Result<Vec<Pattern>> {
        let mut out = Vec::new();
        for name in &self.patterns {
            let p = patterns::by_name(name)
                .map(Ok)
                .unwrap_or_else(|| Pattern::parse_literal(name).map_err(anyhow::Error::from))
                .with_context(|| format!("pattern '{name}'"))?;
            out.push(p);
        }
        if let Some(size) = self.pattern_size {
            out.extend(patterns::catalog(size)?);
        }
        if out.is_empty() {
            if let Some(size) = default_size {
                out.extend(patterns::catalog(size)?);
            } else {
                bail!("no pattern selected; pass --pattern or --pattern-size");
            }
        }
        Ok(out)
    }
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    patterns: PatternArgs,
}

#[derive(Args)]
struct ScaleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    patterns: PatternArgs,
    /// mad: core-structure limit; variance: diminishing-d limit (needs --sigma2)
    #[arg(long, default_value = "mad")]
    variant: String,
}

#[derive(Args)]
struct PowerlawArgs {
    /// Clique size
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    n: u64,
    /// Use the variance-matched extremal bound instead of the power-law count
    #[arg(long)]
    variance_matched: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path; a key=value sidecar is written next to it
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CountArgs {
    /// Edge-list file (lines "u v"; '#'/'%' comments)
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Total vertex count including isolated vertices (edge lists cannot
    /// carry them; the gen sidecar records the true n)
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    /// Total vertex count including isolated vertices
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Total vertex count including isolated vertices
    #[arg(long)]
    n: Option<usize>,
    /// mad | variance
    #[arg(long, default_value = "mad")]
    variant: String,
    /// sqrt-mu-n | h-max
    #[arg(long, default_value = "sqrt-mu-n")]
    cutoff: String,
}

#[derive(Args)]
struct CheckKernelArgs {
    #[arg(long)]
    kernel: String,
    #[arg(long, default_value_t = 1001)]
    grid_size: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Logarithmic grid "start:stop:points", e.g. "1e3:1e9:13"
    #[arg(long)]
    n_grid: String,
    /// Clique size for the power-law curves (with --tau)
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Write to a file instead of stdout; a .dat extension selects
    /// gnuplot-style space-separated columns with a '#' header
    #[arg(long)]
    output: Option<PathBuf>,
}

/// 9 significant digits, %g-style: positional in mid range, scientific
/// otherwise, trailing zeros trimmed.
fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mant.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

// the pattern literal carries commas, so it rides in a quoted CSV field
fn bound_row(pattern: &Pattern, n: u64, b: &BoundResult, constant: f64) -> String {
    format!(
        "\"{}\",{},{},{n},{},{}",
        pattern.literal(),
        pattern.name().unwrap_or("-"),
        b.regime.name(),
        fmt9(b.value),
        fmt9(constant)
    )
}

fn params_from(model: &Model) -> Result<AmbiguityParams> {
    let mad = model.mad.ok_or_else(|| anyhow!("missing --mad (or --from-powerlaw)"))?;
    Ok(AmbiguityParams::new(model.a, model.mu, mad, model.h_c, model.h_s, model.n)?)
}

// The three-point maximizer is guaranteed for kernels passing the convexity
// probe; report honestly when the requested kernel does not.
fn warn_if_not_convex(kernel: &Kernel) {
    let rep = check_assumption1(kernel, 1001);
    if !(rep.nonnegative && rep.nondecreasing && rep.convex) {
        eprintln!(
            "note: kernel {} fails the shape probe (convex={}); the bound is the \
             three-point value, not a proven maximum",
            kernel.name(),
            rep.convex
        );
    }
}

fn run_bound(args: &BoundArgs) -> Result<()> {
    let model = args.model.resolve()?;
    let params = params_from(&model)?;
    let pats = args.patterns.resolve(None)?;
    warn_if_not_convex(&model.kernel);
    let mut rows = Vec::with_capacity(pats.len());
    for pattern in &pats {
        let b = bounds::tight_bound(pattern, &params, &model.kernel)?;
        if let Some(warning) = &b.warning {
            eprintln!("warning: {warning}");
        }
        let k = pattern.k() as i32;
        let constant = b.value / ((model.n as f64).powi(k) * model.h_c.powi(-k));
        rows.push(bound_row(pattern, model.n, &b, constant));
    }
    println!("pattern,name,regime,n,value,normalized_constant");
    for row in rows {
        println!("{row}");
    }
    Ok(())
}

fn run_scale(args: &ScaleArgs) -> Result<()> {
    let model = args.model.resolve()?;
    let pats = args.patterns.resolve(None)?;
    warn_if_not_convex(&model.kernel);
    let mut rows = Vec::with_capacity(pats.len());
    for pattern in &pats {
        let b = match args.variant.as_str() {
            "mad" => {
                let params = params_from(&model)?;
                bounds::scaling_mad(pattern, &params, &model.kernel)?
            }
            "variance" => {
                let sigma2 =
                    model.sigma2.ok_or_else(|| anyhow!("variant=variance needs --sigma2"))?;
                bounds::scaling_variance(
                    pattern,
                    model.mu,
                    sigma2,
                    model.h_c,
                    model.n,
                    &model.kernel,
                )?
            }
            other => bail!("unknown variant '{other}' (mad | variance)"),
        };
        if let Some(warning) = &b.warning {
            eprintln!("warning: {warning}");
        }
        let constant = b.normalized_constant().unwrap_or(f64::NAN);
        rows.push(bound_row(pattern, model.n, &b, constant));
    }
    println!("pattern,name,regime,n,value,normalized_constant");
    for row in rows {
        println!("{row}");
    }
    Ok(())
}

fn run_powerlaw(args: &PowerlawArgs) -> Result<()> {
    let b = if args.tau < 2.0 {
        bounds::powerlaw_clique_scaling_dense(args.k, args.tau, args.n)?
    } else if args.variance_matched {
        bounds::variance_matched_clique_bound(args.k, args.tau, args.n)?
    } else {
        bounds::powerlaw_clique_count(args.k, args.tau, args.n)?
    };
    if let Some(warning) = &b.warning {
        eprintln!("warning: {warning}");
    }
    println!("k,tau,n,regime,value,exponent");
    println!(
        "{},{},{},{},{},{}",
        args.k,
        fmt9(args.tau),
        args.n,
        b.regime.name(),
        fmt9(b.value),
        fmt9(b.exponent.unwrap_or(f64::NAN))
    );
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<()> {
    let model = args.model.resolve()?;
    let n = model.n as usize;
    let mut meta: Vec<(&str, String)> = vec![
        ("n", model.n.to_string()),
        ("seed", args.seed.to_string()),
        ("kernel", model.kernel.name().to_string()),
        ("hs", fmt9(model.h_s)),
    ];
    let weights = if let Some(tau) = model.tau {
        let h_min = if model.a > 0.0 { model.a } else { 1.0 };
        let pl = powerlaw_params(tau, model.h_c, h_min)?;
        meta.push(("weights", "power-law".to_string()));
        meta.push(("tau", fmt9(tau)));
        meta.push(("hmin", fmt9(pl.h_min)));
        meta.push(("hc", fmt9(pl.h_c)));
        meta.push(("mu", fmt9(pl.mu)));
        meta.push(("mad", fmt9(pl.d)));
        graphgen::sample_weights_powerlaw(&pl, n, args.seed)
    } else {
        let params = params_from(&model)?;
        let dist = madcount::ambiguity::three_point(&params)?;
        meta.push(("weights", "three-point".to_string()));
        meta.push(("a", fmt9(model.a)));
        meta.push(("mu", fmt9(model.mu)));
        meta.push(("mad", fmt9(params.d)));
        meta.push(("hc", fmt9(model.h_c)));
        graphgen::sample_weights_three_point(&dist, n, args.seed)
    };
    let graph = graphgen::realize_graph(&weights, &model.kernel, model.h_s, args.seed)?;
    meta.push(("edges", graph.edge_count().to_string()));
    graphgen::write_edge_list(&args.output, &graph)?;
    let meta_path = args.output.with_extension(format!(
        "{}meta",
        args.output
            .extension()
            .map(|e| format!("{}.", e.to_string_lossy()))
            .unwrap_or_default()
    ));
    graphgen::write_metadata(&meta_path, &meta)?;
    eprintln!(
        "wrote {} ({} vertices, {} edges) and {}",
        args.output.display(),
        graph.n(),
        graph.edge_count(),
        meta_path.display()
    );
    Ok(())
}

fn pad_to_declared(graph: madcount::graphgen::Graph, declared: Option<usize>) -> Result<madcount::graphgen::Graph> {
    match declared {
        None => Ok(graph),
        Some(n) if n >= graph.n() => Ok(graph.padded_to(n)),
        Some(n) => bail!(
            "--n {n} is smaller than the {} vertices present in the file",
            graph.n()
        ),
    }
}

fn run_count(args: &CountArgs) -> Result<()> {
    let (graph, report) = motifs::read_edge_list(&args.input)?;
    let graph = pad_to_declared(graph, args.n)?;
    if report.self_loops_dropped + report.duplicates_dropped > 0 {
        eprintln!(
            "warning: dropped {} self-loops and {} duplicate edges",
            report.self_loops_dropped, report.duplicates_dropped
        );
    }
    let pats = args.patterns.resolve(Some(4))?;
    let mut rows = Vec::with_capacity(pats.len());
    for pattern in &pats {
        let count = motifs::count_copies(&graph, pattern)?;
        rows.push(format!(
            "\"{}\",{},{count}",
            pattern.literal(),
            pattern.name().unwrap_or("-")
        ));
    }
    println!("pattern,name,count");
    for row in rows {
        println!("{row}");
    }
    Ok(())
}

fn run_stats(args: &StatsArgs) -> Result<()> {
    let (graph, report) = motifs::read_edge_list(&args.input)?;
    let graph = pad_to_declared(graph, args.n)?;
    if report.self_loops_dropped + report.duplicates_dropped > 0 {
        eprintln!(
            "warning: dropped {} self-loops and {} duplicate edges",
            report.self_loops_dropped, report.duplicates_dropped
        );
    }
    let s = motifs::summary_stats(&graph)?;
    println!("file,n,mu,mad,h_max,sigma2");
    println!(
        "{},{},{},{},{},{}",
        args.input.display(),
        s.n,
        fmt9(s.mu),
        fmt9(s.mad),
        s.h_max,
        fmt9(s.sigma2)
    );
    Ok(())
}

fn run_compare(args: &CompareArgs) -> Result<()> {
    let (graph, _) = motifs::read_edge_list(&args.input)?;
    let graph = pad_to_declared(graph, args.n)?;
    let pats = args.patterns.resolve(Some(4))?;
    let variant = match args.variant.as_str() {
        "mad" => RatioVariant::Mad,
        "variance" => RatioVariant::VarianceMad,
        other => bail!("unknown variant '{other}' (mad | variance)"),
    };
    let cutoff = match args.cutoff.as_str() {
        "sqrt-mu-n" => CutoffChoice::SqrtMuN,
        "h-max" => CutoffChoice::HMax,
        other => bail!("unknown cutoff '{other}' (sqrt-mu-n | h-max)"),
    };
    let report = motifs::bound_ratio(&graph, &pats, cutoff, variant)?;
    println!("pattern,observed,bound,ratio,variant,cutoff");
    for row in &report.rows {
        let label = row
            .pattern
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("\"{}\"", row.pattern.literal()));
        println!(
            "{label},{},{},{},{},{}",
            row.observed,
            fmt9(row.bound),
            fmt9(row.ratio),
            report.variant.name(),
            report.cutoff.name()
        );
    }
    Ok(())
}

fn run_check_kernel(args: &CheckKernelArgs) -> Result<()> {
    let kernel = Kernel::from_name(&args.kernel)
        .ok_or_else(|| anyhow!("unknown kernel '{}'", args.kernel))?;
    let a1 = check_assumption1(&kernel, args.grid_size);
    let a2 = check_assumption2(&kernel, args.grid_size);
    println!(
        "kernel {}: shape check (f): nonnegative={} nondecreasing={} convex={} worst_violation={}",
        kernel.name(),
        a1.nonnegative,
        a1.nondecreasing,
        a1.convex,
        fmt9(a1.worst_violation)
    );
    println!(
        "kernel {}: ratio check (r): r0_is_one={} r_nonincreasing={} worst_violation={}",
        kernel.name(),
        a2.r0_is_one,
        a2.r_nonincreasing,
        fmt9(a2.worst_violation)
    );
    if !a1.convex {
        eprintln!(
            "note: f is not convex on [0,1]; the three-point maximizer is guaranteed only \
             for convex kernels, so treat bounds under this kernel as the three-point value, \
             not a proven maximum"
        );
    }
    Ok(())
}

fn parse_n_grid(spec: &str) -> Result<Vec<u64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, points] = parts[..] else {
        bail!("--n-grid expects start:stop:points");
    };
    let lo: f64 = lo.parse().context("--n-grid start")?;
    let hi: f64 = hi.parse().context("--n-grid stop")?;
    let points: usize = points.parse().context("--n-grid points")?;
    if !(lo > 0.0 && hi > lo && points >= 2) {
        bail!("--n-grid needs 0 < start < stop and points >= 2");
    }
    let step = (hi / lo).ln() / (points - 1) as f64;
    let mut grid: Vec<u64> =
        (0..points).map(|i| (lo * (step * i as f64).exp()).round() as u64).collect();
    grid.dedup();
    Ok(grid)
}

fn run_sweep(args: &SweepArgs) -> Result<()> {
    let grid = parse_n_grid(&args.n_grid)?;
    let merged = args.model.merged()?;
    // rows of (curve, pattern, n, value, normalized_constant)
    let mut rows: Vec<(String, String, u64, f64, f64)> = Vec::new();

    if let Some(tau) = merged.tau {
        // power-law comparison curves for k-cliques
        let k = args.k;
        let clique_name = format!("k{k}");
        for &n in &grid {
            let curves: Vec<(&str, BoundResult)> = if tau < 2.0 {
                vec![("powerlaw", bounds::powerlaw_clique_scaling_dense(k, tau, n)?)]
            } else {
                vec![
                    ("powerlaw", bounds::powerlaw_clique_count(k, tau, n)?),
                    ("variance-matched", bounds::variance_matched_clique_bound(k, tau, n)?),
                ]
            };
            for (curve, b) in curves {
                rows.push((
                    curve.to_string(),
                    clique_name.clone(),
                    n,
                    b.value,
                    b.normalized_constant().unwrap_or(f64::NAN),
                ));
            }
            // MAD-maximal bound with the power law's own mean and MAD
            let pl = powerlaw_params_matched_cutoff(tau, n, 1.0)?;
            let h = (pl.mu * n as f64).sqrt();
            let params = AmbiguityParams::new(1.0, pl.mu, pl.d, h, h, n)?;
            let b = bounds::clique_bound_mad(k, &params, &Kernel::ChungLu)?;
            rows.push((
                "mad-matched".to_string(),
                clique_name.clone(),
                n,
                b.value,
                b.normalized_constant().unwrap_or(f64::NAN),
            ));
        }
    } else {
        // fixed (a, mu, mad, kernel); h_c = h_s = sqrt(mu n) tracks the grid
        let mu = merged.mu.ok_or_else(|| anyhow!("missing --mu"))?;
        let mad = merged.mad.ok_or_else(|| anyhow!("missing --mad"))?;
        let a = merged.a.unwrap_or(0.0);
        let kernel_name = merged.kernel.as_deref().unwrap_or("chung-lu");
        let kernel = Kernel::from_name(kernel_name)
            .ok_or_else(|| anyhow!("unknown kernel '{kernel_name}'"))?;
        let pats = args.patterns.resolve(None)?;
        for &n in &grid {
            for pattern in &pats {
                let h = (mu * n as f64).sqrt();
                let params = AmbiguityParams::new(a, mu, mad, h, h, n)?;
                let name = pattern.name().unwrap_or("-").to_string();
                let tight = bounds::tight_bound(pattern, &params, &kernel)?;
                let norm = (n as f64).powi(pattern.k() as i32) * h.powi(-(pattern.k() as i32));
                rows.push(("tight".to_string(), name.clone(), n, tight.value, tight.value / norm));
                let limit = bounds::scaling_mad(pattern, &params, &kernel)?;
                rows.push((
                    "mad-limit".to_string(),
                    name,
                    n,
                    limit.value,
                    limit.normalized_constant().unwrap_or(f64::NAN),
                ));
            }
        }
    }

    let gnuplot = args
        .output
        .as_deref()
        .and_then(|p| p.extension())
        .is_some_and(|ext| ext == "dat");
    let mut text = String::new();
    if gnuplot {
        text.push_str("# curve pattern n value normalized_constant\n");
        for (curve, pattern, n, value, constant) in &rows {
            text.push_str(&format!(
                "{curve} {pattern} {n} {} {}\n",
                fmt9(*value),
                fmt9(*constant)
            ));
        }
    } else {
        text.push_str("curve,pattern,n,value,normalized_constant\n");
        for (curve, pattern, n, value, constant) in &rows {
            text.push_str(&format!(
                "{curve},{pattern},{n},{},{}\n",
                fmt9(*value),
                fmt9(*constant)
            ));
        }
    }
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(args) => run_bound(args),
        Command::Scale(args) => run_scale(args),
        Command::Powerlaw(args) => run_powerlaw(args),
        Command::Gen(args) => run_gen(args),
        Command::Count(args) => run_count(args),
        Command::Stats(args) => run_stats(args),
        Command::Compare(args) => run_compare(args),
        Command::CheckKernel(args) => run_check_kernel(args),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(madcount::Error::Infeasible { d, d_max }) =
                err.downcast_ref::<madcount::Error>()
            {
                eprintln!(
                    "error: infeasible parameters: mad {d} exceeds the feasibility bound \
                     2(mu-a)(hc-mu)/(hc-a) = {}",
                    fmt9(*d_max)
                );
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::FAILURE
        }
    }
}
