//! Command-line front end: single-point queries, axis sweeps with CSV/SVG
//! output, the two lattice oracles, and the randomized verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error, 3 verification
//! failure. `WQED_THREADS` caps the worker pool used for sweeps and suites.

mod svg;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use crate::dressed::dressed_basis;
use crate::model::{make_point, rwa_validity, ModelParams, RawModelParams};
use crate::oracle::{run_wavepacket, solve_stationary, OracleError, WavepacketSpec};
use crate::scattering::{effective_potential, scattering_amplitudes, ScatteringError};
use crate::sweep::{
    run_sweep, Preset, RowOutcome, SweepAxis, SweepError, SweepSpec, SweepSummary, SweepTable,
};
use crate::verify::{run_verify, VerifyOptions};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_COMPUTATION: i32 = 2;
const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Computation(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Computation(m) => m,
        }
    }
}

impl From<crate::model::ModelError> for CliError {
    fn from(err: crate::model::ModelError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(err: SweepError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<ScatteringError> for CliError {
    fn from(err: ScatteringError) -> Self {
        CliError::Computation(err.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(err: OracleError) -> Self {
        match err {
            OracleError::InvalidProblem(_) | OracleError::InvalidRunSpec(_) => {
                CliError::Usage(err.to_string())
            }
            _ => CliError::Computation(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Computation(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "wqed",
    version,
    about = "Single-photon transport through a cavity chain with a driven three-level emitter",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form amplitudes at one incident momentum
    Point(PointArgs),
    /// Tabulate amplitudes along a momentum, detuning, or drive-strength axis
    Sweep(SweepArgs),
    /// Re-derive one momentum by solving the finite lattice directly
    OracleStationary(OracleStationaryArgs),
    /// Scatter a Gaussian packet in the time domain and measure the split
    OracleWavepacket(OracleWavepacketArgs),
    /// Run the randomized cross-check suites and report pass/fail
    Verify(VerifyArgs),
}

/// Model parameters, resolved as defaults <- preset <- config file <- flags.
#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Named parameter set: fig2a, fig2b, fig2c, fig2d, fig2e, fig3a, fig3b, fig3c
    #[arg(long)]
    preset: Option<String>,
    /// JSON file with parameter (and sweep) overrides
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bare waveguide cavity frequency
    #[arg(long, allow_hyphen_values = true)]
    omega_a: Option<f64>,
    /// Control cavity frequency
    #[arg(long, allow_hyphen_values = true)]
    omega_b: Option<f64>,
    /// Middle emitter level
    #[arg(long, allow_hyphen_values = true)]
    omega_2: Option<f64>,
    /// Top emitter level
    #[arg(long, allow_hyphen_values = true)]
    omega_3: Option<f64>,
    /// Nearest-neighbour hopping rate
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<f64>,
    /// Lower-transition coupling (the unit of energy)
    #[arg(long, allow_hyphen_values = true)]
    g_a: Option<f64>,
    /// Upper-transition coupling to the control cavity
    #[arg(long, allow_hyphen_values = true)]
    g_b: Option<f64>,
    /// Control-cavity photon number
    #[arg(long)]
    n: Option<u32>,
}

/// Optional JSON config: the model-parameter keys plus sweep keys, all
/// optional, unknown keys rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ConfigFile {
    omega_a: Option<f64>,
    omega_b: Option<f64>,
    omega_2: Option<f64>,
    omega_3: Option<f64>,
    xi: Option<f64>,
    g_a: Option<f64>,
    g_b: Option<f64>,
    n: Option<u32>,
    axis: Option<String>,
    lo: Option<f64>,
    hi: Option<f64>,
    samples: Option<usize>,
    k: Option<f64>,
    oracle_check: Option<bool>,
}

#[derive(Debug)]
struct ResolvedSetup {
    raw: RawModelParams,
    preset: Option<Preset>,
    config: ConfigFile,
}

impl ResolvedSetup {
    fn params(&self) -> Result<ModelParams, CliError> {
        Ok(self.raw.validate()?)
    }
}

fn parse_preset(name: &str) -> Result<Preset, CliError> {
    Preset::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
        CliError::Usage(format!(
            "unknown preset `{name}` (expected one of: {})",
            names.join(", ")
        ))
    })
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

fn resolve_setup(args: &ParamArgs) -> Result<ResolvedSetup, CliError> {
    let preset = args.preset.as_deref().map(parse_preset).transpose()?;
    let mut raw: RawModelParams = preset.map(|p| p.params().into()).unwrap_or_default();
    let config = match &args.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    overlay_config(&mut raw, &config);
    overlay_flags(&mut raw, args);
    Ok(ResolvedSetup {
        raw,
        preset,
        config,
    })
}

fn overlay_config(raw: &mut RawModelParams, config: &ConfigFile) {
    let ConfigFile {
        omega_a,
        omega_b,
        omega_2,
        omega_3,
        xi,
        g_a,
        g_b,
        n,
        ..
    } = config;
    apply(&mut raw.omega_a, omega_a);
    apply(&mut raw.omega_b, omega_b);
    apply(&mut raw.omega_2, omega_2);
    apply(&mut raw.omega_3, omega_3);
    apply(&mut raw.xi, xi);
    apply(&mut raw.g_a, g_a);
    apply(&mut raw.g_b, g_b);
    apply(&mut raw.n, n);
}

fn overlay_flags(raw: &mut RawModelParams, args: &ParamArgs) {
    apply(&mut raw.omega_a, &args.omega_a);
    apply(&mut raw.omega_b, &args.omega_b);
    apply(&mut raw.omega_2, &args.omega_2);
    apply(&mut raw.omega_3, &args.omega_3);
    apply(&mut raw.xi, &args.xi);
    apply(&mut raw.g_a, &args.g_a);
    apply(&mut raw.g_b, &args.g_b);
    apply(&mut raw.n, &args.n);
}

fn apply<T: Copy>(slot: &mut T, value: &Option<T>) {
    if let Some(v) = value {
        *slot = *v;
    }
}

/// Informational nudge when the drive is strong enough to strain the
/// single-carrier (rotating-frame) model the amplitudes assume.
fn warn_if_strong_drive(params: &ModelParams) {
    let report = rwa_validity(params);
    if !report.valid {
        eprintln!(
            "warning: control coupling g_b*sqrt(n) is {:.3} of the smaller emitter level \
             (threshold {:.2}); the rotating-frame model is strained at this drive",
            report.ratio, report.threshold
        );
    }
}

fn fmt_c(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{:.11e} {sign} {:.11e}i", z.re, z.im.abs())
}

fn fmt_list(values: &[f64]) -> String {
    if values.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.11e}")).collect();
    parts.join(", ")
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Incident momentum (reduced to (-pi, pi])
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
}

fn cmd_point(args: &PointArgs) -> Result<(), CliError> {
    let setup = resolve_setup(&args.params)?;
    let params = setup.params()?;
    warn_if_strong_drive(&params);
    let point = make_point(&params, args.k);
    let result = scattering_amplitudes(&params, &point)?;
    // A single-point query wants a traveling photon; at a band edge the group
    // velocity vanishes and only the directional limit exists. Sweeps keep
    // such rows as tagged data, the point command refuses them.
    if result.branch() == crate::scattering::Branch::BandEdge {
        return Err(CliError::Computation(format!(
            "momentum k = {:.11e} sits at a band edge: zero group velocity, no traveling wave \
             to scatter (the directional limit is r = -1, t = 0)",
            point.k()
        )));
    }

    let raw = RawModelParams::from(params);
    println!(
        "model   omega_a={} omega_b={} omega_2={} omega_3={} xi={} g_a={} g_b={} n={}",
        raw.omega_a, raw.omega_b, raw.omega_2, raw.omega_3, raw.xi, raw.g_a, raw.g_b, raw.n
    );
    println!(
        "point   k = {:.11e}   Omega_k = {:.11e}   E = {:.11e}",
        point.k(),
        point.omega_k(),
        point.energy()
    );
    println!(
        "detune  delta_a = {:.11e}   delta_b = {:.11e}   g_b^2 n = {:.11e}",
        point.delta_a(),
        point.delta_b(),
        params.control_strength()
    );
    println!("branch  {}", result.branch());
    println!(
        "r = {}   R = {:.11e}",
        fmt_c(result.r()),
        result.reflection()
    );
    println!(
        "t = {}   T = {:.11e}",
        fmt_c(result.t()),
        result.transmission()
    );
    println!(
        "unitarity defect |R + T - 1| = {:.11e}",
        (result.reflection() + result.transmission() - 1.0).abs()
    );
    match effective_potential(&params, &point) {
        Ok(v) => println!("effective potential V = {v:.11e}"),
        Err(ScatteringError::PoleAtThisEnergy) => {
            println!("effective potential V: pole (incidence resonant with a dressed level)");
        }
        Err(e) => return Err(e.into()),
    }
    if let Ok(basis) = dressed_basis(&params, &point) {
        println!(
            "dressed omega_+ = {:.11e}   omega_- = {:.11e}   gap = {:.11e}",
            basis.omega_plus(),
            basis.omega_minus(),
            basis.gap()
        );
        println!(
            "        g_+ = {:.11e}   g_- = {:.11e}   delta_+ = {:.11e}   delta_- = {:.11e}",
            basis.g_plus(),
            basis.g_minus(),
            basis.delta_plus(),
            basis.delta_minus()
        );
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
    Both,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Sweep axis: k, delta_b, or gb2n
    #[arg(long)]
    axis: Option<String>,
    /// Lower end of the axis range
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    /// Upper end of the axis range
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    /// Number of grid rows (endpoints included)
    #[arg(long)]
    samples: Option<usize>,
    /// Momentum held fixed on the detuning/strength axes
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Re-derive every row on a finite lattice; adds |dr|, |dt| columns
    #[arg(long)]
    oracle_check: bool,
    /// Output path; CSV goes to stdout when omitted
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// What to write: csv, svg, or both (`both` takes the path's stem)
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn parse_axis(name: &str) -> Result<SweepAxis, CliError> {
    match name {
        "k" => Ok(SweepAxis::K),
        "delta_b" => Ok(SweepAxis::DeltaB),
        "gb2n" => Ok(SweepAxis::GbSqN),
        other => Err(CliError::Usage(format!(
            "unknown axis `{other}` (expected k, delta_b, or gb2n)"
        ))),
    }
}

fn default_grid(axis: SweepAxis) -> (f64, f64, usize) {
    match axis {
        SweepAxis::K => (-std::f64::consts::PI, std::f64::consts::PI, 1001),
        SweepAxis::DeltaB => (-4.0, 4.0, 1001),
        SweepAxis::GbSqN => (0.0, 250.0, 1001),
    }
}

fn resolve_sweep_spec(setup: &ResolvedSetup, args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let preset_spec = setup.preset.map(Preset::spec);
    let axis_name = args.axis.as_deref().or(setup.config.axis.as_deref());
    let axis = match (axis_name, &preset_spec) {
        (Some(name), _) => parse_axis(name)?,
        (None, Some(spec)) => spec.axis,
        (None, None) => {
            return Err(CliError::Usage(
                "pick an axis: --axis k|delta_b|gb2n (or use --preset)".into(),
            ))
        }
    };
    // The preset grid only carries over while the axis stays the preset's own.
    let (mut lo, mut hi, mut samples, mut fixed_k) = match &preset_spec {
        Some(spec) if spec.axis == axis => (spec.lo, spec.hi, spec.samples, spec.fixed_k),
        _ => {
            let (lo, hi, samples) = default_grid(axis);
            (lo, hi, samples, None)
        }
    };
    apply(&mut lo, &setup.config.lo);
    apply(&mut hi, &setup.config.hi);
    apply(&mut samples, &setup.config.samples);
    apply(&mut lo, &args.lo);
    apply(&mut hi, &args.hi);
    apply(&mut samples, &args.samples);
    if let Some(k) = setup.config.k {
        fixed_k = Some(k);
    }
    if let Some(k) = args.k {
        fixed_k = Some(k);
    }
    let oracle_check = args.oracle_check || setup.config.oracle_check.unwrap_or(false);
    Ok(SweepSpec {
        base: setup.params()?,
        axis,
        lo,
        hi,
        samples,
        fixed_k,
        oracle_check,
    })
}

fn render_summary(table: &SweepTable, summary: &SweepSummary) -> String {
    let axis = table.axis().column_name();
    let mut out = format!(
        "sweep over {axis}: {} rows ({} evaluated, {} band-edge, {} failed)\n",
        summary.rows, summary.evaluated, summary.band_edge_rows, summary.failed_rows
    );
    if let (Some((x_min, t_min)), Some((x_max, t_max))) = (summary.min_t, summary.max_t) {
        out.push_str(&format!(
            "T in [{t_min:.11e} at {axis} = {x_min:.11e}, {t_max:.11e} at {axis} = {x_max:.11e}]\n"
        ));
    }
    out.push_str(&format!(
        "full transmission rows at {axis} = {}\n",
        fmt_list(&summary.transparent_at)
    ));
    out.push_str(&format!(
        "full reflection rows at {axis} = {}\n",
        fmt_list(&summary.mirror_at)
    ));
    out.push_str(&format!(
        "max |R + T - 1| = {:.11e}\n",
        summary.max_unitarity_defect
    ));
    if let Some(dev) = summary.max_oracle_deviation {
        out.push_str(&format!("max lattice deviation = {dev:.11e}\n"));
    }
    out
}

fn sweep_chart(table: &SweepTable, title: &str) -> Option<String> {
    let mut t_pts = Vec::new();
    let mut r_pts = Vec::new();
    for row in table.rows() {
        if let RowOutcome::Value { result, .. } = &row.outcome {
            t_pts.push((row.axis_value, result.transmission()));
            r_pts.push((row.axis_value, result.reflection()));
        }
    }
    let series = [
        svg::Series {
            label: "T",
            color: "#1f77b4",
            points: t_pts,
        },
        svg::Series {
            label: "R",
            color: "#d62728",
            points: r_pts,
        },
    ];
    svg::line_chart(title, table.axis().column_name(), "probability", &series)
}

fn write_outputs(
    format: OutputFormat,
    output: Option<&Path>,
    csv: &str,
    chart: Option<String>,
) -> Result<(), CliError> {
    match (format, output) {
        (OutputFormat::Csv, None) => print!("{csv}"),
        (OutputFormat::Csv, Some(path)) => std::fs::write(path, csv)?,
        (OutputFormat::Svg | OutputFormat::Both, None) => {
            return Err(CliError::Usage(
                "SVG output needs a path: add -o/--output".into(),
            ))
        }
        (OutputFormat::Svg, Some(path)) => {
            let chart =
                chart.ok_or_else(|| CliError::Computation("no finite rows to chart".into()))?;
            std::fs::write(path, chart)?;
        }
        (OutputFormat::Both, Some(path)) => {
            std::fs::write(path.with_extension("csv"), csv)?;
            let chart =
                chart.ok_or_else(|| CliError::Computation("no finite rows to chart".into()))?;
            std::fs::write(path.with_extension("svg"), chart)?;
        }
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let setup = resolve_setup(&args.params)?;
    let spec = resolve_sweep_spec(&setup, args)?;
    warn_if_strong_drive(&spec.base);
    let table = run_sweep(&spec)?;
    let summary = table.summary();
    let title = setup
        .preset
        .map_or_else(|| "sweep".to_string(), |p| p.name().to_string());
    let chart = sweep_chart(&table, &title);
    write_outputs(args.format, args.output.as_deref(), &table.to_csv(), chart)?;
    eprint!("{}", render_summary(&table, &summary));
    Ok(())
}

#[derive(Args, Debug)]
struct OracleStationaryArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Incident momentum
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    /// Sites on each side of the emitter (chain covers -L..=L)
    #[arg(long, default_value_t = 25)]
    half_length: usize,
    /// Append per-site amplitudes as CSV rows after the report
    #[arg(long)]
    sites: bool,
}

fn cmd_oracle_stationary(args: &OracleStationaryArgs) -> Result<(), CliError> {
    let setup = resolve_setup(&args.params)?;
    let params = setup.params()?;
    warn_if_strong_drive(&params);
    let point = make_point(&params, args.k);
    let closed = scattering_amplitudes(&params, &point)?;
    let solution = solve_stationary(
        &crate::oracle::LatticeProblem::new(params, args.half_length)?,
        point.k(),
    )?;
    println!(
        "stationary lattice, {} sites per side, k = {:.11e}",
        args.half_length,
        solution.k()
    );
    println!(
        "closed form   r = {}   t = {}",
        fmt_c(closed.r()),
        fmt_c(closed.t())
    );
    println!(
        "lattice fit   r = {}   t = {}",
        fmt_c(solution.r_fit()),
        fmt_c(solution.t_fit())
    );
    println!(
        "deviation     |dr| = {:.11e}   |dt| = {:.11e}",
        (solution.r_fit() - closed.r()).norm(),
        (solution.t_fit() - closed.t()).norm()
    );
    println!(
        "occupancy     |beta|^2 = {:.11e}   |zeta|^2 = {:.11e}",
        solution.beta().norm_sqr(),
        solution.zeta().norm_sqr()
    );
    println!(
        "residuals     interior = {:.11e}   |R + T - 1| = {:.11e}",
        solution.interior_residual(),
        (solution.reflection() + solution.transmission() - 1.0).abs()
    );
    if args.sites {
        println!();
        println!("site,re_alpha,im_alpha,abs2");
        let half = args.half_length as i32;
        for (offset, alpha) in solution.alpha().iter().enumerate() {
            let j = offset as i32 - half;
            println!("{j},{:e},{:e},{:e}", alpha.re, alpha.im, alpha.norm_sqr());
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
struct OracleWavepacketArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Carrier momentum (rightward: sin k0 > 0)
    #[arg(long, allow_hyphen_values = true)]
    k0: f64,
    /// Packet width in sites
    #[arg(long, default_value_t = 15.0)]
    sigma: f64,
    /// Sites on each side of the emitter
    #[arg(long, default_value_t = 1000)]
    half_length: usize,
    /// Initial packet centre (default: -half_length/2)
    #[arg(long, allow_hyphen_values = true)]
    j0: Option<i32>,
    /// Time step (default: 0.02/xi)
    #[arg(long)]
    dt: Option<f64>,
    /// Steps between recorded samples
    #[arg(long)]
    record_stride: Option<usize>,
    /// Where to put the time-series CSV / SVG; report only when omitted
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// What to write when --output is given: csv, svg, or both
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn cmd_oracle_wavepacket(args: &OracleWavepacketArgs) -> Result<(), CliError> {
    let setup = resolve_setup(&args.params)?;
    let params = setup.params()?;
    warn_if_strong_drive(&params);
    let mut spec = WavepacketSpec::new(params, args.half_length, args.k0, args.sigma);
    spec.j0 = args.j0;
    spec.dt = args.dt;
    spec.record_stride = args.record_stride;
    let run = run_wavepacket(&spec)?;
    println!(
        "wavepacket k0 = {:.11e}, {} steps of dt = {:.11e}",
        run.k0(),
        run.steps(),
        run.dt()
    );
    println!(
        "measured      T = {:.11e}   R = {:.11e}",
        run.t_measured(),
        run.r_measured()
    );
    let point = make_point(&params, run.k0());
    match scattering_amplitudes(&params, &point) {
        Ok(closed) => {
            println!(
                "closed form   T = {:.11e}   R = {:.11e}",
                closed.transmission(),
                closed.reflection()
            );
            println!(
                "deviation     |dT| = {:.11e}   |dR| = {:.11e}",
                (run.t_measured() - closed.transmission()).abs(),
                (run.r_measured() - closed.reflection()).abs()
            );
        }
        Err(e) => println!("closed form   unavailable here ({e})"),
    }
    println!(
        "leftover near scatterer = {:.11e}   norm drift = {:.11e}   max |zeta|^2 = {:.11e}",
        run.residual_near_scatterer(),
        run.norm_drift(),
        run.max_zeta_sq()
    );
    if let Some(path) = args.output.as_deref() {
        let chart = wavepacket_chart(&run);
        write_outputs(args.format, Some(path), &run.to_csv(), chart)?;
    } else if args.format != OutputFormat::Csv {
        return Err(CliError::Usage(
            "SVG output needs a path: add -o/--output".into(),
        ));
    }
    Ok(())
}

fn wavepacket_chart(run: &crate::oracle::WavepacketRun) -> Option<String> {
    let pick = |f: fn(&crate::oracle::WavepacketSample) -> f64| -> Vec<(f64, f64)> {
        run.samples().iter().map(|s| (s.time, f(s))).collect()
    };
    let series = [
        svg::Series {
            label: "left",
            color: "#d62728",
            points: pick(|s| s.p_left),
        },
        svg::Series {
            label: "right",
            color: "#1f77b4",
            points: pick(|s| s.p_right),
        },
        svg::Series {
            label: "scatterer",
            color: "#2ca02c",
            points: pick(|s| s.p_scatterer),
        },
    ];
    svg::line_chart("wavepacket split", "time", "probability", &series)
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Seed for every randomized suite
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random points for the unitarity suite
    #[arg(long, default_value_t = 100_000)]
    unitarity_points: usize,
    /// Random points for the bare/dressed equivalence suite
    #[arg(long, default_value_t = 10_000)]
    equivalence_points: usize,
    /// Random points for the stationary-lattice suite
    #[arg(long, default_value_t = 100)]
    stationary_points: usize,
    /// Lattice half-length used by the stationary suite
    #[arg(long, default_value_t = 25)]
    half_length: usize,
    /// Add the three time-domain spot checks (slower)
    #[arg(long)]
    with_wavepacket: bool,
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let opts = VerifyOptions {
        seed: args.seed,
        unitarity_points: args.unitarity_points,
        equivalence_points: args.equivalence_points,
        stationary_points: args.stationary_points,
        half_length: args.half_length,
        with_wavepacket: args.with_wavepacket,
    };
    let report = run_verify(&opts);
    print!("{}", report.render());
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var("WQED_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(limit) if limit >= 1 => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(limit)
                .build_global();
        }
        _ => eprintln!("warning: ignoring WQED_THREADS={raw:?} (want a positive integer)"),
    }
}

/// Parse the process arguments, run one subcommand, and hand back the exit
/// code for `main` to pass to the OS.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    configure_threads();
    let outcome = match &cli.command {
        Command::Point(args) => cmd_point(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OracleStationary(args) => cmd_oracle_stationary(args),
        Command::OracleWavepacket(args) => cmd_oracle_wavepacket(args),
        Command::Verify(args) => return cmd_verify(args),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}
