//! Command-line frontend: builds distributions from expressions such as
//! `truncate(Normal(), -1, 1)` and evaluates, samples or describes them.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compdist::catalog::{self, CatalogFilter};
use compdist::compose::{self, VectorDistribution};
use compdist::distribution::component_labels;
use compdist::{DecoratorKind, Distribution, EvalOptions, Fun, NumericOptions, ValueSupport};

pub mod error;
pub mod output;
pub mod parser;
pub mod resolve;

pub use error::CliError;
use output::{Cell, Format, Table};
use resolve::{Resolved, Resolver};

#[derive(Debug, Parser)]
#[command(
    name = "compdist",
    version,
    about = "Build, compose and evaluate probability distributions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Significant digits in numeric output.
    #[arg(long, global = true, default_value_t = 7)]
    pub digits: usize,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// Root-finding tolerance.
    #[arg(long, global = true)]
    pub root_tol: Option<f64>,
    /// Seed for random draws.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// File of `key = value` numeric options.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListKind {
    Distributions,
    Compositors,
    Decorators,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List distributions, compositors or decorators.
    List {
        #[arg(value_enum, default_value = "distributions")]
        kind: ListKind,
    },
    /// Summarise a distribution.
    Describe {
        expr: String,
        #[arg(long)]
        params: bool,
        #[arg(long)]
        traits: bool,
        #[arg(long)]
        properties: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Evaluate pdf, cdf, quantile, survival, hazard or cumhazard.
    Eval {
        expr: String,
        fun: String,
        /// Points as `1,2,3`, `a:b` or `@file`; repeat for paired evaluation.
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
        /// Upper tail for cdf and quantile.
        #[arg(long)]
        upper: bool,
        /// Natural log of the result (log probabilities for quantile).
        #[arg(long)]
        log: bool,
    },
    /// Draw random values.
    Sample {
        expr: String,
        #[arg(short, long, default_value_t = 10)]
        n: usize,
    },
    /// Function values on a grid for plotting, in long format.
    Plotdata {
        expr: String,
        /// Comma-separated functions or `all`.
        #[arg(long, default_value = "all")]
        fun: String,
        /// Grid size for continuous distributions.
        #[arg(long, default_value_t = 129)]
        points: usize,
    },
    /// Paired quantiles of two distributions.
    Qq {
        first: String,
        second: String,
        #[arg(long, default_value_t = 99)]
        points: usize,
    },
}

impl Global {
    pub fn options(&self) -> Result<NumericOptions, CliError> {
        let mut opts = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read '{}': {e}", p.display())))?;
                NumericOptions::parse_config(&text)?
            }
            None => NumericOptions::default(),
        };
        if let Some(t) = self.quad_tol {
            opts.quad_rel_tol = t;
        }
        if let Some(t) = self.root_tol {
            opts.root_tol = t;
        }
        opts.validate()?;
        Ok(opts)
    }

    fn format(&self) -> Format {
        Format {
            json: self.json,
            digits: self.digits.max(1),
        }
    }
}

/// Runs a parsed command line, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let fmt = g.format();
    let resolver = Resolver::new(g.options()?);
    let resolve =
        |src: &str| -> Result<Resolved, CliError> { resolver.resolve(&parser::parse_expr(src)?) };
    match &cli.command {
        Command::List { kind } => fmt.write_table(out, &list(*kind)),
        Command::Describe {
            expr,
            params,
            traits,
            properties,
            stats,
        } => {
            let sections = Sections {
                params: *params,
                traits: *traits,
                properties: *properties,
                stats: *stats,
            };
            describe(out, fmt, &resolve(expr)?, sections)
        }
        Command::Eval {
            expr,
            fun,
            at,
            upper,
            log,
        } => {
            let fun: Fun = fun.parse()?;
            let points = at
                .iter()
                .map(|s| points(s))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = EvalOptions {
                lower_tail: !upper,
                log: *log,
                simplify: true,
            };
            fmt.write_table(out, &eval(&resolve(expr)?, fun, &points, opts)?)
        }
        Command::Sample { expr, n } => fmt.write_table(out, &sample(&resolve(expr)?, *n, g.seed)?),
        Command::Plotdata { expr, fun, points } => {
            let d = resolve(expr)?.into_dist()?;
            fmt.write_table(out, &plot_data(&d, &plot_funs(fun)?, *points)?)
        }
        Command::Qq {
            first,
            second,
            points,
        } => {
            let a = resolve(first)?.into_dist()?;
            let b = resolve(second)?.into_dist()?;
            fmt.write_table(out, &qq(&a, &b, *points)?)
        }
    }
}

/// Parses an evaluation point list: `1,2,3`, `[1, 2]`, `a:b` (unit steps)
/// or `@file`.
pub fn points(spec: &str) -> Result<Vec<f64>, CliError> {
    let s = spec.trim();
    if let Some(path) = s.strip_prefix('@') {
        return resolve::read_numbers(std::path::Path::new(path));
    }
    let s = s.trim_start_matches('[').trim_end_matches(']');
    if let Some((a, b)) = s.split_once(':') {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("invalid range '{spec}'")))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if b < a || b - a > 1e7 {
            return Err(CliError::Usage(format!("invalid range '{spec}'")));
        }
        return Ok((0..=((b - a).floor() as usize))
            .map(|k| a + k as f64)
            .collect());
    }
    resolve::parse_numbers(s).map_err(|bad| CliError::Usage(format!("'{bad}' is not a number")))
}

pub fn list(kind: ListKind) -> Table {
    match kind {
        ListKind::Distributions => {
            let mut t = Table::new([
                "class",
                "short_name",
                "name",
                "value_support",
                "variate_form",
                "parameters",
            ]);
            for e in catalog::list_catalog(CatalogFilter::default()) {
                let ids: Vec<String> = e.parameters.iter().map(|r| r.id.clone()).collect();
                t.push(vec![
                    e.class.into(),
                    e.short_name.into(),
                    e.name.into(),
                    e.traits.value_support.to_string().into(),
                    e.traits.variate_form.to_string().into(),
                    ids.join(" ").into(),
                ]);
            }
            t
        }
        ListKind::Compositors => {
            let about = [
                "restrict to (lower, upper] and renormalise",
                "clamp draws to [lower, upper]",
                "weighted mixture of components",
                "independent product of components",
                "collection evaluated together",
            ];
            let mut t = Table::new(["name", "description"]);
            for (name, text) in compose::COMPOSITORS.iter().zip(about) {
                t.push(vec![(*name).into(), text.into()]);
            }
            t
        }
        ListKind::Decorators => {
            let mut t = Table::new(["name", "adds"]);
            for k in DecoratorKind::ALL {
                t.push(vec![k.name().into(), k.summary().into()]);
            }
            t
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sections {
    pub params: bool,
    pub traits: bool,
    pub properties: bool,
    pub stats: bool,
}

fn param_table(rows: &[compdist::params::ParamRow]) -> Table {
    let mut t = Table::new(["id", "value", "support", "description"]);
    for r in rows {
        t.push(vec![
            r.id.clone().into(),
            r.value.to_string().into(),
            r.support.clone().into(),
            r.description.clone().into(),
        ]);
    }
    t
}

fn describe(out: &mut dyn Write, fmt: Format, r: &Resolved, s: Sections) -> Result<(), CliError> {
    let d = match r {
        Resolved::Vector(v) => {
            if s.params {
                return fmt.write_table(out, &param_table(&v.parameters()?.rows()));
            }
            let mut t = Table::new(["component", "name", "parameters"]);
            for (label, c) in v.labels().into_iter().zip(v.components()) {
                t.push(vec![label.into(), c.name().into(), c.to_string().into()]);
            }
            return fmt.write_table(out, &t);
        }
        Resolved::Dist(d) => d,
    };
    let summary = d.describe();
    if !(s.params || s.traits || s.properties || s.stats) {
        if fmt.json {
            serde_json::to_writer_pretty(&mut *out, &summary)?;
            writeln!(out)?;
        } else {
            write!(out, "{summary}")?;
        }
        return Ok(());
    }
    if s.params {
        fmt.write_table(out, &param_table(&summary.parameters))?;
    }
    let mut kv = Table::new(["key", "value"]);
    if s.traits {
        kv.push(vec![
            "value_support".into(),
            summary.traits.value_support.to_string().into(),
        ]);
        kv.push(vec![
            "variate_form".into(),
            summary.traits.variate_form.to_string().into(),
        ]);
        kv.push(vec![
            "type".into(),
            summary.traits.type_set.to_string().into(),
        ]);
    }
    if s.properties {
        let p = &summary.properties;
        kv.push(vec!["support".into(), p.support.to_string().into()]);
        kv.push(vec!["symmetry".into(), p.symmetry.to_string().into()]);
        if let Some(k) = p.kurtosis {
            kv.push(vec!["kurtosis".into(), k.to_string().into()]);
        }
        if let Some(sk) = p.skewness {
            kv.push(vec!["skewness".into(), sk.to_string().into()]);
        }
    }
    if s.stats {
        if let Some(st) = &summary.statistics {
            kv.push(vec!["mean".into(), st.mean.into()]);
            for (k, v) in [
                ("variance", st.variance),
                ("skewness", st.skewness),
                ("excess_kurtosis", st.excess_kurtosis),
            ] {
                if let Some(v) = v {
                    kv.push(vec![k.into(), v.into()]);
                }
            }
        }
    }
    if s.traits || s.properties || s.stats {
        fmt.write_table(out, &kv)?;
    }
    Ok(())
}

fn arg_label(fun: Fun) -> &'static str {
    if fun == Fun::Quantile {
        "p"
    } else {
        "x"
    }
}

fn point_values(d: &Distribution, fun: Fun, pts: &[Vec<f64>]) -> Result<Vec<f64>, CliError> {
    match fun {
        Fun::Pdf => Ok(d.pdf_points(pts)?),
        Fun::Cdf => Ok(d.cdf_points(pts)?),
        _ => Err(CliError::Usage(format!(
            "{fun} is not defined for multivariate distributions"
        ))),
    }
}

pub fn eval(
    r: &Resolved,
    fun: Fun,
    args: &[Vec<f64>],
    opts: EvalOptions,
) -> Result<Table, CliError> {
    let args: Vec<Vec<f64>> = if args.is_empty() {
        vec![Vec::new()]
    } else {
        args.to_vec()
    };
    match r {
        Resolved::Vector(v) => eval_vector(v, fun, &args, opts),
        Resolved::Dist(d) if !d.is_univariate() => {
            let k = d.dimension();
            if args.len() == 1 {
                let pts: Vec<Vec<f64>> = args[0].iter().map(|x| vec![*x; k]).collect();
                let values = point_values(d, fun, &pts)?;
                let mut t = Table::new(["x", d.short_name()]);
                for (x, v) in args[0].iter().zip(values) {
                    t.push(vec![(*x).into(), v.into()]);
                }
                return Ok(t);
            }
            if args.len() != k {
                return Err(CliError::Usage(format!(
                    "{} is {k}-dimensional: give one --at list per coordinate",
                    d.short_name()
                )));
            }
            let m = args[0].len();
            if args.iter().any(|a| a.len() != m) {
                return Err(CliError::Usage(
                    "coordinate lists must have equal length".into(),
                ));
            }
            let pts: Vec<Vec<f64>> = (0..m)
                .map(|j| args.iter().map(|a| a[j]).collect())
                .collect();
            let values = point_values(d, fun, &pts)?;
            let mut header: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
            header.push(d.short_name().to_string());
            let mut t = Table::new(header);
            for (p, v) in pts.iter().zip(values) {
                let mut row: Vec<Cell> = p.iter().map(|x| Cell::Num(*x)).collect();
                row.push(v.into());
                t.push(row);
            }
            Ok(t)
        }
        Resolved::Dist(d) if args.len() > 1 => {
            let values = d.eval_vectorised(fun, &args)?;
            let mut t = Table::new([d.short_name()]);
            for v in values {
                t.push(vec![v.into()]);
            }
            Ok(t)
        }
        Resolved::Dist(d) => {
            let values = d.evaluate(fun, &args[0], opts)?.into_values();
            let mut t = Table::new([arg_label(fun), d.short_name()]);
            for (x, v) in args[0].iter().zip(values) {
                t.push(vec![(*x).into(), v.into()]);
            }
            Ok(t)
        }
    }
}

fn eval_vector(
    v: &VectorDistribution,
    fun: Fun,
    args: &[Vec<f64>],
    opts: EvalOptions,
) -> Result<Table, CliError> {
    let m = v.eval_with(fun, args, opts)?;
    let product_mode = args.len() == 1;
    let mut header = Vec::new();
    if product_mode {
        header.push(arg_label(fun).to_string());
    }
    header.extend(m.labels().iter().cloned());
    let mut t = Table::new(header);
    for (j, row) in m.rows().iter().enumerate() {
        let mut cells = Vec::new();
        if product_mode {
            cells.push(args[0][j].into());
        }
        cells.extend(row.iter().map(|x| Cell::Num(*x)));
        t.push(cells);
    }
    Ok(t)
}

pub fn sample(r: &Resolved, n: usize, seed: Option<u64>) -> Result<Table, CliError> {
    match r {
        Resolved::Vector(v) => {
            let m = v.rand(n, seed)?;
            let mut t = Table::new(m.labels().to_vec());
            for row in m.rows() {
                t.push(row.iter().map(|x| Cell::Num(*x)).collect());
            }
            Ok(t)
        }
        Resolved::Dist(d) if d.is_univariate() => {
            let mut t = Table::new([d.short_name()]);
            for x in d.rand(n, seed)? {
                t.push(vec![x.into()]);
            }
            Ok(t)
        }
        Resolved::Dist(d) => {
            let pts = d.rand_points(n, seed)?;
            let mut t = Table::new((1..=d.dimension()).map(|i| format!("{}_{i}", d.short_name())));
            for p in pts {
                t.push(p.into_iter().map(Cell::Num).collect());
            }
            Ok(t)
        }
    }
}

pub fn plot_funs(spec: &str) -> Result<Vec<Fun>, CliError> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Fun::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| Ok(s.trim().parse::<Fun>()?))
        .collect()
}

/// Evaluation grid over the support: support points for discrete
/// distributions (plus the integer just below), `n` points between the
/// 0.001 and 0.999 quantiles otherwise.
pub fn plot_grid(d: &Distribution, n: usize) -> Result<Vec<f64>, CliError> {
    let support = d.support();
    let discrete = d.value_support() != ValueSupport::Continuous && support.is_countable();
    if discrete {
        let mut xs = match support.finite_values() {
            Some(v) if v.len() <= 10_000 => v,
            _ => {
                let lo = d.quantile(&[0.001])?[0].floor();
                let hi = d.quantile(&[0.999])?[0].ceil();
                (0..=((hi - lo) as usize))
                    .map(|k| lo + k as f64)
                    .filter(|x| support.contains_num(*x))
                    .collect()
            }
        };
        if let Some(first) = xs.first().copied() {
            let below = first - 1.0;
            if d.type_set().contains_num(below) {
                xs.insert(0, below);
            }
        }
        return Ok(xs);
    }
    let n = n.max(2);
    let q = d.quantile(&[0.001, 0.999])?;
    let (lo, hi) = (q[0], q[1]);
    if !(hi > lo) {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

pub fn plot_data(d: &Distribution, funs: &[Fun], n: usize) -> Result<Table, CliError> {
    let grid = plot_grid(d, n)?;
    let probs: Vec<f64> = (1..=99).map(|i| f64::from(i) / 100.0).collect();
    let mut t = Table::new(["fun", "x", "y"]);
    for &f in funs {
        let xs = if f == Fun::Quantile { &probs } else { &grid };
        let ys = d.evaluate(f, xs, EvalOptions::default())?.into_values();
        for (x, y) in xs.iter().zip(ys) {
            t.push(vec![f.name().into(), (*x).into(), y.into()]);
        }
    }
    Ok(t)
}

pub fn qq(a: &Distribution, b: &Distribution, n: usize) -> Result<Table, CliError> {
    if !a.is_univariate() || !b.is_univariate() {
        return Err(CliError::Usage(
            "qq needs two univariate distributions".into(),
        ));
    }
    let n = n.max(1);
    let ps: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
    let qa = a.quantile(&ps)?;
    let qb = b.quantile(&ps)?;
    let labels = component_labels(&[a.clone(), b.clone()]);
    let mut t = Table::new(["p".to_string(), labels[0].clone(), labels[1].clone()]);
    for i in 0..n {
        t.push(vec![ps[i].into(), qa[i].into(), qb[i].into()]);
    }
    Ok(t)
}
