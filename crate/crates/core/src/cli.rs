//! The `circhyp` command line.
//!
//! Every subcommand builds a [`Report`] and prints it as JSON or CSV. Exit
//! codes: 0 when the check passes, 1 when an equation or consistency check
//! fails, 2 on usage or parse errors. `stability` always exits 0 on valid
//! input since its report is the product.

use std::ffi::OsString;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::components::{decompose, CirculantFunction, CirculantOf, ComponentVector, ScalarFunction};
use crate::error::{Error, Result};
use crate::expr::{parse_complex, parse_function};
use crate::fourier::Order;
use crate::funceq::{
    construct_solution, max_residual, residual_matrix_of, verify_components, verify_family, EquationIndex,
    GeneratorStatus, VerifyReport, GENERATOR_TOL,
};
use crate::genhyp::{genhyp3, genhyp4, genhyp_expsum, genhyp_series, GenHypSpec, SERIES_TOL};
use crate::report::{Cell, ConfigEcho, Format, Report};
use crate::samples::{standard_pairs, Pair, DEFAULT_PAIR_COUNT, DEFAULT_SEED};
use crate::stability::stability_experiment;
use crate::sweep;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "circhyp", version, about = "Generalized hyperbolic functions and circulant functional equations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Order of the circulant matrices
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Equation index (for verify, the index under test)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<i64>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Number of random (x, y) sample pairs
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_COUNT)]
    pub samples: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Omit the timestamp so that reports are byte-identical across runs
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F^{(a)}_{n,k} three ways: `eval genhyp N K A`
    Eval {
        kind: String,
        n: usize,
        k: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Points, comma separated (complex literals allowed)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5,1,2")]
        x: Vec<String>,
    },
    /// Split an expression into its n components
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5,1,2")]
        x: Vec<String>,
    },
    /// Check the index-m equation for circ(f), a component tuple, or a constructed family
    Verify {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        /// Component functions f_0,...,f_{n-1}
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["expr", "generators"])]
        components: Option<Vec<String>>,
        /// Generators h_0,...,h_{d-1} of a constructed family
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "expr")]
        generators: Option<Vec<String>>,
        /// Index the family is constructed for (defaults to --m)
        #[arg(long, allow_hyphen_values = true, requires = "generators")]
        construct_m: Option<i64>,
    },
    /// Build the solution family from d = gcd(n, m) exponential generators
    Construct {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        generators: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5,1")]
        x: Vec<String>,
    },
    /// Run the stability experiment for (n, m)
    Stability,
    /// Plot data: x against F^{(a)}_{n,k}(x) for each listed order
    Table {
        /// Orders to tabulate (defaults to --n)
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        from: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        to: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
}

struct Outcome {
    report: Report,
    exit: i32,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    match execute(&cli) {
        Ok(Outcome { mut report, exit }) => {
            if !cli.global.deterministic {
                report.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
            }
            if let Err(e) = out.write_all(report.render().as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("--tol must be positive, got {}", g.tol)));
    }
    if g.samples == 0 {
        return Err(Error::InvalidArgument("--samples must be at least 1".into()));
    }
    match &cli.command {
        Command::Eval { kind, n, k, a, x } => cmd_eval(g, kind, *n, *k, a, x),
        Command::Decompose { expr, x } => cmd_decompose(g, expr, x),
        Command::Verify { expr, components, generators, construct_m } => {
            cmd_verify(g, expr.as_deref(), components.as_deref(), generators.as_deref(), *construct_m)
        }
        Command::Construct { generators, x } => cmd_construct(g, generators, x),
        Command::Stability => cmd_stability(g),
        Command::Table { orders, a, from, to, step } => cmd_table(g, orders.as_deref(), *a, *from, *to, *step),
    }
}

fn echo(g: &GlobalOpts) -> ConfigEcho {
    ConfigEcho { n: g.n, m: g.m, seed: g.seed, tol: g.tol, samples: g.samples, format: g.format }
}

fn need_n(g: &GlobalOpts) -> Result<Order> {
    Order::new(g.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?)
}

fn need_m(g: &GlobalOpts) -> Result<i64> {
    g.m.ok_or_else(|| Error::InvalidArgument("--m is required".into()))
}

fn parse_points(list: &[String]) -> Result<Vec<Complex64>> {
    list.iter().map(|s| parse_complex(s.trim())).collect()
}

fn parse_functions(list: &[String]) -> Result<Vec<ScalarFunction>> {
    list.iter().map(|s| parse_function(s.trim())).collect()
}

fn complex_columns(name: &str) -> [String; 2] {
    [format!("{name}.re"), format!("{name}.im")]
}

fn complex_cells(z: Option<Complex64>) -> [Cell; 2] {
    match z {
        Some(z) => [Cell::Num(z.re), Cell::Num(z.im)],
        None => [Cell::Empty, Cell::Empty],
    }
}

fn pairs(g: &GlobalOpts) -> Vec<Pair> {
    standard_pairs(g.seed, g.samples)
}

fn cmd_eval(g: &GlobalOpts, kind: &str, n: usize, k: usize, a: &str, xs: &[String]) -> Result<Outcome> {
    if kind != "genhyp" {
        return Err(Error::InvalidArgument(format!("unknown function family '{kind}', expected 'genhyp'")));
    }
    let order = Order::new(n)?;
    let a = parse_complex(a)?;
    let spec = GenHypSpec::new(order, k, a)?;
    let xs = parse_points(xs)?;
    let hyperbolic = a == Complex64::new(1.0, 0.0);

    let mut columns: Vec<String> = complex_columns("x").into();
    for name in ["series", "expsum", "closed"] {
        columns.extend(complex_columns(name));
    }
    columns.extend(["delta_series_expsum", "delta_series_closed", "delta_expsum_closed"].map(String::from));
    let mut report = Report::new("eval", echo(g), columns);

    // Deltas are relative to max(1, |series|) so that large arguments do not
    // trip the tolerance through rounding alone.
    let mut worst = 0.0f64;
    for x in xs {
        let series = genhyp_series(&spec, x, SERIES_TOL)?;
        let expsum = if hyperbolic { Some(genhyp_expsum(order, k, x)?) } else { None };
        let closed = match (hyperbolic, n) {
            (true, 3) => Some(genhyp3(k, x)?),
            (true, 4) => Some(genhyp4(k, x)?),
            _ => None,
        };
        let scale = series.norm().max(1.0);
        let delta = |p: Option<Complex64>, q: Option<Complex64>| p.zip(q).map(|(p, q)| (p - q).norm() / scale);
        let deltas = [delta(Some(series), expsum), delta(Some(series), closed), delta(expsum, closed)];
        for d in deltas.iter().flatten() {
            worst = worst.max(*d);
        }
        let mut row: Vec<Cell> = complex_cells(Some(x)).into();
        row.extend(complex_cells(Some(series)));
        row.extend(complex_cells(expsum));
        row.extend(complex_cells(closed));
        row.extend(deltas.map(Cell::from));
        report.push_row(row);
    }
    report.add_summary("family", format!("F^({a})_{{{n},{k}}}"));
    report.max_residual = Some(worst);
    report.pass = worst <= g.tol;
    Ok(finish(report))
}

fn cmd_decompose(g: &GlobalOpts, expr: &str, xs: &[String]) -> Result<Outcome> {
    let n = need_n(g)?;
    let f = parse_function(expr)?;
    let xs = parse_points(xs)?;
    let parts = decompose(&f, n);

    let mut columns: Vec<String> = complex_columns("x").into();
    columns.extend(complex_columns("f"));
    for j in 0..n.get() {
        columns.extend(complex_columns(&format!("f_{j}")));
    }
    columns.push("defect".into());
    let mut report = Report::new("decompose", echo(g), columns);

    let mut worst = 0.0f64;
    for x in xs {
        let fx = f.eval(x);
        let values: Vec<Complex64> = parts.parts().iter().map(|p| p.eval(x)).collect();
        let defect = (values.iter().sum::<Complex64>() - fx).norm();
        worst = worst.max(defect);
        let mut row: Vec<Cell> = complex_cells(Some(x)).into();
        row.extend(complex_cells(Some(fx)));
        for v in values {
            row.extend(complex_cells(Some(v)));
        }
        row.push(Cell::Num(defect));
        report.push_row(row);
    }
    report.add_summary("expr", expr);
    report.max_residual = Some(worst);
    report.pass = worst <= g.tol;
    Ok(finish(report))
}

fn residual_rows(report: &mut Report, family: &dyn CirculantFunction, m: i64, pairs: &[Pair]) {
    let rows = sweep::map(pairs, |&(x, y)| (x, y, residual_matrix_of(family, m, x, y).one_norm()));
    for (x, y, r) in rows {
        let mut row: Vec<Cell> = complex_cells(Some(x)).into();
        row.extend(complex_cells(Some(y)));
        row.push(Cell::Num(r));
        report.push_row(row);
    }
}

fn pair_columns() -> Vec<String> {
    let mut columns: Vec<String> = complex_columns("x").into();
    columns.extend(complex_columns("y"));
    columns.push("residual".into());
    columns
}

fn cmd_verify(
    g: &GlobalOpts,
    expr: Option<&str>,
    components: Option<&[String]>,
    generators: Option<&[String]>,
    construct_m: Option<i64>,
) -> Result<Outcome> {
    let n = need_n(g)?;
    let m = need_m(g)?;
    let pairs = pairs(g);
    let mut report = Report::new("verify", echo(g), pair_columns());

    let verdict = match (expr, components, generators) {
        (Some(src), None, None) => {
            let family = CirculantOf::new(parse_function(src)?, n);
            let index = EquationIndex::new(n, m)?;
            residual_rows(&mut report, &family, m, &pairs);
            report.add_summary("family", format!("circ({src})"));
            let worst = max_residual(&family, m, &pairs);
            VerifyReport {
                n: n.get(),
                m_test: index.m(),
                d: index.d(),
                max_residual: worst,
                tol: g.tol,
                pass: worst <= g.tol,
                in_subgroup: true,
                samples: pairs.len(),
            }
        }
        (None, Some(list), None) => {
            let parts = ComponentVector::new(n, parse_functions(list)?)?;
            residual_rows(&mut report, &parts, m, &pairs);
            report.add_summary("family", format!("components({})", list.join(", ")));
            verify_components(&parts, m, &pairs, g.tol)?
        }
        (None, None, Some(list)) => {
            let cm = construct_m.unwrap_or(m);
            let family = construct_solution(n, cm, parse_functions(list)?)?;
            residual_rows(&mut report, &family, m, &pairs);
            report.add_summary("family", format!("constructed(m={cm}; {})", list.join(", ")));
            report.add_summary("construct_m", cm);
            let verdict = verify_family(&family, m, &pairs, g.tol)?;
            report.add_summary("in_subgroup", verdict.in_subgroup);
            verdict
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give exactly one of EXPR, --components or --generators".into(),
            ))
        }
    };
    report.add_summary("m_test", verdict.m_test);
    report.add_summary("d", verdict.d);
    report.add_summary("samples", verdict.samples);
    report.max_residual = Some(verdict.max_residual);
    report.pass = verdict.pass;
    Ok(finish(report))
}

fn cmd_construct(g: &GlobalOpts, generators: &[String], xs: &[String]) -> Result<Outcome> {
    let n = need_n(g)?;
    let m = need_m(g)?;
    let family = construct_solution(n, m, parse_functions(generators)?)?;
    let xs = parse_points(xs)?;
    let pairs = pairs(g);

    let mut columns: Vec<String> = complex_columns("x").into();
    for j in 0..n.get() {
        columns.extend(complex_columns(&format!("f_{j}")));
    }
    let mut report = Report::new("construct", echo(g), columns);
    let parts = family.components();
    for x in xs {
        let mut row: Vec<Cell> = complex_cells(Some(x)).into();
        for p in parts.parts() {
            row.extend(complex_cells(Some(p.eval(x))));
        }
        report.push_row(row);
    }

    for (r, status) in family.generator_status(&pairs, GENERATOR_TOL).iter().enumerate() {
        let text = match status {
            GeneratorStatus::Zero => "zero".to_string(),
            GeneratorStatus::Exponential { defect } => format!("exponential (defect {defect:e})"),
            GeneratorStatus::NotExponential { defect } => format!("not exponential (defect {defect:e})"),
        };
        report.add_summary(&format!("generator_{r}"), text);
    }
    let verdict = verify_family(&family, m, &pairs, g.tol)?;
    report.add_summary("d", verdict.d);
    report.add_summary("samples", verdict.samples);
    report.max_residual = Some(verdict.max_residual);
    report.pass = verdict.pass;
    Ok(finish(report))
}

fn cmd_stability(g: &GlobalOpts) -> Result<Outcome> {
    let n = need_n(g)?;
    let m = need_m(g)?;
    let result = stability_experiment(n, m, &pairs(g))?;

    let columns = ["label", "residual", "diagonal_residual", "approximate", "growth", "unbounded", "exact"];
    let mut report = Report::new("stability", echo(g), columns.map(String::from).to_vec());
    for member in &result.members {
        report.push_row(vec![
            Cell::text(member.label.clone()),
            Cell::Num(member.residual),
            Cell::Num(member.diagonal_residual),
            Cell::Bool(member.approximate),
            Cell::Num(member.growth),
            Cell::Bool(member.unbounded),
            Cell::Bool(member.exact),
        ]);
    }
    report.add_summary("classification", result.classification.as_str());
    report.add_summary("d", result.d);
    report.add_summary("epsilon", result.epsilon);
    report.add_summary("unbounded_witness", result.unbounded_witness);
    report.add_summary("satisfies_equation", result.satisfies_equation);
    report.max_residual = Some(result.max_residual);
    report.pass = result.is_consistent();
    Ok(Outcome { report, exit: EXIT_PASS })
}

fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::InvalidArgument(format!("bad grid from {from} to {to} step {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidArgument(format!("grid has {count} points, limit is 1000000")));
    }
    Ok((0..count).map(|i| from + i as f64 * step).collect())
}

fn cmd_table(g: &GlobalOpts, orders: Option<&[usize]>, a: f64, from: f64, to: f64, step: f64) -> Result<Outcome> {
    let orders: Vec<Order> = match orders {
        Some(list) if !list.is_empty() => list.iter().map(|&n| Order::new(n)).collect::<Result<_>>()?,
        _ => vec![need_n(g)?],
    };
    let xs = grid(from, to, step)?;
    let a = Complex64::new(a, 0.0);

    let mut columns = vec!["x".to_string()];
    let mut specs = Vec::new();
    for &n in &orders {
        for k in 0..n.get() {
            columns.push(format!("F_{{{n},{k}}}"));
            specs.push(GenHypSpec::new(n, k, a)?);
        }
    }
    let mut report = Report::new("table", echo(g), columns);
    for x in xs {
        let mut row = vec![Cell::Num(x)];
        for spec in &specs {
            // Real parameter and argument give a real value.
            row.push(Cell::Num(genhyp_series(spec, Complex64::new(x, 0.0), SERIES_TOL)?.re));
        }
        report.push_row(row);
    }
    report.add_summary("a", a.re);
    Ok(Outcome { report, exit: EXIT_PASS })
}

fn finish(report: Report) -> Outcome {
    let exit = if report.pass { EXIT_PASS } else { EXIT_FAIL };
    Outcome { report, exit }
}
