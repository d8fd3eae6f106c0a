//! Command-line workflows over the `dcorr` library: association statistics,
//! permutation tests, data simulation and genome scans.

pub mod error;
pub mod output;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dcorr::inference::DEFAULT_REPLICATES;
use dcorr::{
    distance_correlation, pearson, scan_markers, simulate_backcross, simulate_shape, spearman,
    BackcrossSpec, MarkerMatrix, PermutationTest, Shape, ShapeSpec, StatisticKind,
};

pub use error::{CliError, Result};
pub use output::{Format, Records, Value};
pub use table::{load_table, parse_table, Table};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "dcorr",
    version,
    about = "Distance correlation, permutation tests of independence and genome scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Pearson, Spearman, distance covariance and distance correlation.
    Dcor(DcorArgs),
    /// Permutation test of independence between two column groups.
    Test(TestArgs),
    /// Generate a demonstration shape or a synthetic backcross.
    Simulate(SimulateArgs),
    /// Per-marker test of a phenotype against genotype columns.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct DcorArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated column names for the first variable.
    #[arg(long)]
    pub x: String,
    /// Comma-separated column names for the second variable.
    #[arg(long)]
    pub y: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// dcov_sq or dcor
    #[arg(long, default_value = "dcov_sq")]
    pub statistic: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// parabola, circle, cross, four_clusters, sinusoid, independent or backcross
    #[arg(long)]
    pub shape: String,
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    /// Noise level; each shape has its own default.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replicates for the summary row's permutation test.
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    /// Where the generated data goes.
    #[arg(long)]
    pub output: PathBuf,
    /// Where the summary row goes; stdout when omitted.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 154)]
    pub individuals: usize,
    #[arg(long, default_value_t = 119)]
    pub markers: usize,
    /// 0-based index of the marker carrying the effect.
    #[arg(long)]
    pub causal: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub effect: f64,
    #[arg(long = "missing-rate", default_value_t = 0.0)]
    pub missing_rate: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Marker columns; every column except the phenotype when omitted.
    #[arg(long)]
    pub x: Option<String>,
    /// Phenotype column.
    #[arg(long)]
    pub y: String,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum distinct genotype levels per marker.
    #[arg(long = "max-levels", default_value_t = 2)]
    pub max_levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Runs one command and writes its outputs.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Dcor(args) => {
            let records = dcor_records(args)?;
            output::write_output(args.out.output.as_deref(), &records.render(args.out.format))
        }
        Command::Test(args) => {
            let records = test_records(args)?;
            output::write_output(args.out.output.as_deref(), &records.render(args.out.format))
        }
        Command::Simulate(args) => {
            let (data, summary) = simulate_records(args)?;
            output::write_output(Some(&args.output), &data.render(args.format))?;
            output::write_output(args.summary.as_deref(), &summary.render(args.format))
        }
        Command::Scan(args) => {
            let records = scan_records(args)?;
            output::write_output(args.out.output.as_deref(), &records.render(args.out.format))
        }
    }
}

fn check_replicates(r: usize) -> Result<()> {
    if r < 1 {
        return Err(CliError::Usage("--replicates must be at least 1".into()));
    }
    Ok(())
}

fn single_column(table: &Table, cols: &[usize]) -> Option<Vec<f64>> {
    match cols {
        [c] => table.column_at(*c).iter().copied().collect(),
        _ => None,
    }
}

pub fn dcor_records(args: &DcorArgs) -> Result<Records> {
    let table = load_table(&args.input)?;
    let (xc, yc) = (table.select(&args.x)?, table.select(&args.y)?);
    let (x, y) = (table.sample(&xc)?, table.sample(&yc)?);
    let ctx = table.source().to_string();
    let res = distance_correlation(&x, &y).map_err(|e| CliError::from_core(&ctx, e))?;
    let (mut r_pearson, mut r_spearman) = (None, None);
    if let (Some(xs), Some(ys)) = (single_column(&table, &xc), single_column(&table, &yc)) {
        r_pearson = Some(pearson(&xs, &ys).map_err(|e| CliError::from_core(&ctx, e))?);
        r_spearman = Some(spearman(&xs, &ys).map_err(|e| CliError::from_core(&ctx, e))?);
    }
    let mut out = Records::new([
        "n",
        "pearson",
        "spearman",
        "dcov_sq",
        "dvar_x_sq",
        "dvar_y_sq",
        "dcor",
    ]);
    out.push(vec![
        x.n().into(),
        r_pearson.into(),
        r_spearman.into(),
        res.dcov_sq.into(),
        res.dvar_x_sq.into(),
        res.dvar_y_sq.into(),
        res.dcor.into(),
    ]);
    Ok(out)
}

pub fn test_records(args: &TestArgs) -> Result<Records> {
    check_replicates(args.replicates)?;
    let kind: StatisticKind = args
        .statistic
        .parse()
        .map_err(|e| CliError::from_core("--statistic", e))?;
    let table = load_table(&args.input)?;
    let x = table.sample(&table.select(&args.x)?)?;
    let y = table.sample(&table.select(&args.y)?)?;
    let ctx = table.source().to_string();
    let test = PermutationTest::new(args.replicates, args.seed)
        .statistic(kind)
        .run(&x, &y)
        .map_err(|e| CliError::from_core(&ctx, e))?;
    let dcor = distance_correlation(&x, &y)
        .map_err(|e| CliError::from_core(&ctx, e))?
        .dcor;
    let mut out = Records::new([
        "statistic_kind",
        "statistic",
        "replicates",
        "exceed_count",
        "p_value",
        "seed",
        "dcor",
    ]);
    out.push(vec![
        test.statistic_kind.name().into(),
        test.statistic.into(),
        test.replicates.into(),
        test.exceed_count.into(),
        test.p_value.into(),
        test.seed.into(),
        dcor.into(),
    ]);
    Ok(out)
}

/// Generated data and its one-row summary.
pub fn simulate_records(args: &SimulateArgs) -> Result<(Records, Records)> {
    if args.shape == "backcross" {
        return simulate_backcross_records(args);
    }
    check_replicates(args.replicates)?;
    let shape: Shape = args
        .shape
        .parse()
        .map_err(|e| CliError::from_core("--shape", e))?;
    let mut spec = ShapeSpec::new(shape, args.n, args.seed);
    if let Some(noise) = args.noise {
        spec = spec.with_noise(noise);
    }
    let (x, y) = simulate_shape(&spec).map_err(|e| CliError::from_core("simulate", e))?;
    let mut data = Records::new(["x", "y"]);
    for (a, b) in x.values().iter().zip(y.values()) {
        data.push(vec![(*a).into(), (*b).into()]);
    }
    let ctx = format!("simulated {shape}");
    let r = pearson(x.values(), y.values()).map_err(|e| CliError::from_core(&ctx, e))?;
    let dcor = distance_correlation(&x, &y)
        .map_err(|e| CliError::from_core(&ctx, e))?
        .dcor;
    let test = PermutationTest::new(args.replicates, args.seed)
        .run(&x, &y)
        .map_err(|e| CliError::from_core(&ctx, e))?;
    let mut summary = Records::new([
        "shape",
        "n",
        "noise",
        "seed",
        "replicates",
        "pearson",
        "dcor",
        "p_value",
    ]);
    summary.push(vec![
        shape.name().into(),
        spec.n.into(),
        spec.noise.into(),
        spec.seed.into(),
        args.replicates.into(),
        r.into(),
        dcor.into(),
        test.p_value.into(),
    ]);
    Ok((data, summary))
}

fn simulate_backcross_records(args: &SimulateArgs) -> Result<(Records, Records)> {
    let mut spec = BackcrossSpec::new(args.individuals, args.markers, args.seed)
        .missing_rate(args.missing_rate);
    if let Some(j) = args.causal {
        spec = spec.causal(j, args.effect);
    }
    let sim =
        simulate_backcross(&spec).map_err(|e| CliError::from_core("simulate backcross", e))?;
    let mk = &sim.markers;
    let mut data = Records::new(
        std::iter::once("phenotype".to_string()).chain(mk.marker_ids().iter().cloned()),
    );
    for (i, &ph) in sim.phenotype.iter().enumerate() {
        let mut row = vec![Value::Num(ph)];
        row.extend((0..mk.m()).map(|j| Value::from(mk.column(j)[i].map(u64::from))));
        data.push(row);
    }
    let mut summary = Records::new([
        "individuals",
        "markers",
        "causal",
        "effect",
        "missing_rate",
        "seed",
    ]);
    summary.push(vec![
        spec.n_individuals.into(),
        spec.n_markers.into(),
        spec.causal_marker.into(),
        spec.effect_size.into(),
        spec.missing_rate.into(),
        spec.seed.into(),
    ]);
    Ok((data, summary))
}

pub fn scan_records(args: &ScanArgs) -> Result<Records> {
    check_replicates(args.replicates)?;
    let table = load_table(&args.input)?;
    let phen_col = table.select(&args.y)?;
    let [phen_col] = phen_col[..] else {
        return Err(CliError::Usage(
            "--y must name exactly one phenotype column".into(),
        ));
    };
    let marker_cols = match &args.x {
        Some(sel) => table.select(sel)?,
        None => (0..table.names().len())
            .filter(|&c| c != phen_col)
            .collect(),
    };
    if marker_cols.is_empty() {
        return Err(CliError::Usage("no marker columns selected".into()));
    }
    let phenotype = table.sample(&[phen_col])?.values().to_vec();
    let markers = marker_matrix(&table, &marker_cols, args.max_levels)?;
    let scan = scan_markers(&markers, &phenotype, args.replicates, args.seed)
        .map_err(|e| CliError::from_core(table.source(), e))?;
    let mut out = Records::new([
        "marker_id",
        "n_used",
        "statistic",
        "p_value",
        "neglog10_p",
        "degenerate",
    ]);
    for rec in &scan.records {
        out.push(vec![
            rec.marker_id.as_str().into(),
            rec.n_used.into(),
            rec.statistic.into(),
            rec.p_value.into(),
            rec.neglog10_p.into(),
            Value::Bool(rec.degenerate),
        ]);
    }
    Ok(out)
}

fn marker_matrix(table: &Table, cols: &[usize], max_levels: usize) -> Result<MarkerMatrix> {
    let mut columns = Vec::with_capacity(cols.len());
    for &c in cols {
        let name = &table.names()[c];
        let calls = table
            .column_at(c)
            .iter()
            .enumerate()
            .map(|(row, cell)| match *cell {
                None => Ok(None),
                Some(v) if v >= 0.0 && v <= f64::from(u8::MAX) && v.fract() == 0.0 => {
                    Ok(Some(v as u8))
                }
                Some(v) => Err(CliError::Data(format!(
                    "{}: line {}, column '{name}': genotype {v} is not a small nonnegative integer",
                    table.source(),
                    row + 2
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        columns.push(calls);
    }
    let ids = cols.iter().map(|&c| table.names()[c].clone()).collect();
    MarkerMatrix::new(ids, columns, max_levels).map_err(|e| CliError::from_core(table.source(), e))
}
