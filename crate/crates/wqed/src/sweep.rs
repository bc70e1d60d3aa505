//! Parameter sweeps over momentum, drive detuning, or drive strength.
//!
//! Rows are evaluated independently (in parallel) from the closed-form
//! amplitudes; optionally each row is re-derived on the finite lattice and
//! the deviation recorded. Detuning and strength axes feed the detunings
//! straight into the amplitude evaluator, so special rows (a grid value that
//! cancels the detunings exactly, say) are hit without rounding detours.

use crate::model::{dispersion, make_point, ModelParams, RawModelParams};
use crate::oracle::{solve_stationary, LatticeProblem, OracleError};
use crate::scattering::{
    amplitudes_from_detunings, scattering_amplitudes, Branch, ScatteringError, ScatteringResult,
};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt::Write as _;

/// Chain half-length used for the per-row lattice check.
const ORACLE_HALF_LENGTH: usize = 25;
/// A row counts as a transparency/mirror locus when T or R clears this.
pub const LOCUS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Incident momentum k.
    K,
    /// Drive detuning; each row shifts the top level to realize it.
    DeltaB,
    /// Drive strength g_b^2 n as one knob.
    GbSqN,
}

impl SweepAxis {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepAxis::K => "k",
            SweepAxis::DeltaB => "delta_b",
            SweepAxis::GbSqN => "gb2n",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: ModelParams,
    pub axis: SweepAxis,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    /// Momentum held fixed on the detuning/strength axes.
    pub fixed_k: Option<f64>,
    /// Re-derive every row on the lattice and emit deviation columns.
    pub oracle_check: bool,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), SweepError> {
        let bad = |msg: String| Err(SweepError::InvalidSpec(msg));
        if self.samples < 2 {
            return bad(format!("need at least 2 samples, got {}", self.samples));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return bad(format!(
                "range [{}, {}] is not increasing",
                self.lo, self.hi
            ));
        }
        match self.axis {
            SweepAxis::K => {
                if self.fixed_k.is_some() {
                    return bad("fixed_k only applies to detuning/strength sweeps".into());
                }
            }
            SweepAxis::DeltaB | SweepAxis::GbSqN => {
                if self.fixed_k.is_none() {
                    return bad("detuning/strength sweeps need a fixed momentum".into());
                }
                if self.axis == SweepAxis::GbSqN && self.lo < 0.0 {
                    return bad(format!(
                        "drive strength cannot be negative (lo = {})",
                        self.lo
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Lattice-check cells of one row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleColumns {
    NotRequested,
    Deviation {
        dr_abs: f64,
        dt_abs: f64,
    },
    /// The lattice route does not apply here (band edge, say).
    Unavailable,
}

#[derive(Debug, Clone)]
pub enum RowOutcome {
    Value {
        result: ScatteringResult,
        oracle: OracleColumns,
    },
    Failed {
        tag: &'static str,
    },
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub outcome: RowOutcome,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    axis: SweepAxis,
    oracle_check: bool,
    rows: Vec<SweepRow>,
}

fn error_tag(err: &ScatteringError) -> &'static str {
    match err {
        ScatteringError::DegenerateBandEdge { .. } => "DegenerateBandEdge",
        ScatteringError::InvalidPoint { .. } => "InvalidPoint",
        ScatteringError::PoleAtThisEnergy => "Pole",
        ScatteringError::NoInBandSolution { .. } => "NoInBandSolution",
        ScatteringError::NoControlPhotons => "NoControlPhotons",
    }
}

fn grid_value(lo: f64, hi: f64, samples: usize, i: usize) -> f64 {
    let last = (samples - 1) as f64;
    (lo * ((samples - 1 - i) as f64) + hi * (i as f64)) / last
}

/// Evaluate the sweep; rows come back in axis order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, SweepError> {
    spec.validate()?;
    let base = spec.base;
    // detunings at the held momentum, shared by every non-K row
    let held = spec.fixed_k.map(|k| make_point(&base, k));
    let rows: Vec<SweepRow> = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let x = grid_value(spec.lo, spec.hi, spec.samples, i);
            let computed = match spec.axis {
                SweepAxis::K => scattering_amplitudes(&base, &make_point(&base, x)),
                SweepAxis::DeltaB => {
                    let pt = held.as_ref().unwrap();
                    amplitudes_from_detunings(
                        base.g_a(),
                        base.xi(),
                        pt.k(),
                        pt.delta_a(),
                        x,
                        base.control_strength(),
                    )
                }
                SweepAxis::GbSqN => {
                    let pt = held.as_ref().unwrap();
                    amplitudes_from_detunings(
                        base.g_a(),
                        base.xi(),
                        pt.k(),
                        pt.delta_a(),
                        pt.delta_b(),
                        x,
                    )
                }
            };
            let outcome = match computed {
                Err(e) => RowOutcome::Failed { tag: error_tag(&e) },
                Ok(result) => {
                    let oracle = if !spec.oracle_check {
                        OracleColumns::NotRequested
                    } else {
                        lattice_check(spec, x, &result)
                    };
                    RowOutcome::Value { result, oracle }
                }
            };
            SweepRow {
                axis_value: x,
                outcome,
            }
        })
        .collect();
    Ok(SweepTable {
        axis: spec.axis,
        oracle_check: spec.oracle_check,
        rows,
    })
}

/// Re-derive one row on the lattice with parameters that realize the row's
/// axis value, and measure the amplitude deviation.
fn lattice_check(spec: &SweepSpec, x: f64, closed: &ScatteringResult) -> OracleColumns {
    if closed.branch() == Branch::BandEdge {
        return OracleColumns::Unavailable;
    }
    let raw: RawModelParams = spec.base.into();
    let (raw, k) = match spec.axis {
        SweepAxis::K => (raw, x),
        SweepAxis::DeltaB => (
            RawModelParams {
                omega_3: raw.omega_2 + raw.omega_b + x,
                ..raw
            },
            spec.fixed_k.unwrap(),
        ),
        SweepAxis::GbSqN => (
            RawModelParams {
                g_b: x.sqrt(),
                n: if x > 0.0 { 1 } else { 0 },
                ..raw
            },
            spec.fixed_k.unwrap(),
        ),
    };
    let Ok(params) = raw.validate() else {
        return OracleColumns::Unavailable;
    };
    let Ok(problem) = LatticeProblem::new(params, ORACLE_HALF_LENGTH) else {
        return OracleColumns::Unavailable;
    };
    match solve_stationary(&problem, k) {
        Ok(sol) => OracleColumns::Deviation {
            dr_abs: (sol.r_fit() - closed.r()).norm(),
            dt_abs: (sol.t_fit() - closed.t()).norm(),
        },
        Err(OracleError::BandEdge { .. }) => OracleColumns::Unavailable,
        Err(_) => OracleColumns::Unavailable,
    }
}

impl SweepTable {
    pub fn axis(&self) -> SweepAxis {
        self.axis
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("axis_name,axis_value,re_r,im_r,re_t,im_t,R,T,branch");
        if self.oracle_check {
            out.push_str(",dr_abs,dt_abs");
        }
        out.push('\n');
        let name = self.axis.column_name();
        for row in &self.rows {
            match &row.outcome {
                RowOutcome::Value { result, oracle } => {
                    write!(
                        out,
                        "{name},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
                        row.axis_value,
                        result.r().re,
                        result.r().im,
                        result.t().re,
                        result.t().im,
                        result.reflection(),
                        result.transmission(),
                        result.branch()
                    )
                    .unwrap();
                    match oracle {
                        OracleColumns::NotRequested => {}
                        OracleColumns::Deviation { dr_abs, dt_abs } => {
                            write!(out, ",{dr_abs:e},{dt_abs:e}").unwrap();
                        }
                        OracleColumns::Unavailable => out.push_str(",,"),
                    }
                }
                RowOutcome::Failed { tag } => {
                    write!(out, "{name},{:e},,,,,,,{tag}", row.axis_value).unwrap();
                    if self.oracle_check {
                        out.push_str(",,");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> SweepSummary {
        let mut s = SweepSummary {
            rows: self.rows.len(),
            ..SweepSummary::default()
        };
        for row in &self.rows {
            match &row.outcome {
                RowOutcome::Failed { .. } => s.failed_rows += 1,
                RowOutcome::Value { result, oracle } => {
                    if result.branch() == Branch::BandEdge {
                        s.band_edge_rows += 1;
                        continue;
                    }
                    s.evaluated += 1;
                    let t = result.transmission();
                    let r = result.reflection();
                    s.max_unitarity_defect = s.max_unitarity_defect.max((r + t - 1.0).abs());
                    if s.min_t.is_none_or(|(_, best)| t < best) {
                        s.min_t = Some((row.axis_value, t));
                    }
                    if s.max_t.is_none_or(|(_, best)| t > best) {
                        s.max_t = Some((row.axis_value, t));
                    }
                    if t >= 1.0 - LOCUS_TOL {
                        s.transparent_at.push(row.axis_value);
                    }
                    if r >= 1.0 - LOCUS_TOL {
                        s.mirror_at.push(row.axis_value);
                    }
                    if let OracleColumns::Deviation { dr_abs, dt_abs } = oracle {
                        let worst = dr_abs.max(*dt_abs);
                        s.max_oracle_deviation =
                            Some(s.max_oracle_deviation.map_or(worst, |m| m.max(worst)));
                    }
                }
            }
        }
        s
    }
}

/// Digest of a finished sweep. Band-edge rows (trivially R = 1) are excluded
/// from the extrema and loci.
#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub rows: usize,
    pub evaluated: usize,
    pub band_edge_rows: usize,
    pub failed_rows: usize,
    pub min_t: Option<(f64, f64)>,
    pub max_t: Option<(f64, f64)>,
    pub transparent_at: Vec<f64>,
    pub mirror_at: Vec<f64>,
    pub max_unitarity_defect: f64,
    pub max_oracle_deviation: Option<f64>,
}

/// Ready-made parameter sets with grids that land on the interesting rows
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig2e,
    Fig3a,
    Fig3b,
    Fig3c,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig2c,
        Preset::Fig2d,
        Preset::Fig2e,
        Preset::Fig3a,
        Preset::Fig3b,
        Preset::Fig3c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2c => "fig2c",
            Preset::Fig2d => "fig2d",
            Preset::Fig2e => "fig2e",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
            Preset::Fig3c => "fig3c",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Preset::Fig2a => "momentum sweep, resonant drive, one control photon",
            Preset::Fig2b => "momentum sweep, resonant drive, thirty control photons",
            Preset::Fig2c => "momentum sweep, red-detuned drive, one control photon",
            Preset::Fig2d => "momentum sweep, red-detuned drive, thirty control photons",
            Preset::Fig2e => "momentum sweep, undriven emitter (two-level limit)",
            Preset::Fig3a => {
                "drive-detuning sweep at fixed momentum, photon above the middle level"
            }
            Preset::Fig3b => {
                "drive-detuning sweep at fixed momentum, photon below the middle level"
            }
            Preset::Fig3c => "drive-strength sweep at fixed momentum, strongly driven limit",
        }
    }

    /// Parameters of the sweep, including its grid.
    pub fn spec(self) -> SweepSpec {
        match self {
            Preset::Fig2a => momentum_preset(1, 3.0),
            Preset::Fig2b => momentum_preset(30, 3.0),
            Preset::Fig2c => momentum_preset(1, 0.0),
            Preset::Fig2d => momentum_preset(30, 0.0),
            Preset::Fig2e => momentum_preset(0, 3.0),
            Preset::Fig3a => detuning_preset(0.8),
            Preset::Fig3b => detuning_preset(-0.8),
            Preset::Fig3c => strength_preset(),
        }
    }

    /// The parameter set alone, for single-point evaluation.
    pub fn params(self) -> ModelParams {
        self.spec().base
    }
}

fn momentum_preset(n: u32, omega_3: f64) -> SweepSpec {
    let base = RawModelParams {
        omega_a: 0.0,
        omega_b: 1.0,
        omega_2: 2.0,
        omega_3,
        xi: 2.0,
        g_a: 1.0,
        g_b: 1.0,
        n,
    }
    .validate()
    .unwrap();
    SweepSpec {
        base,
        axis: SweepAxis::K,
        lo: -PI,
        hi: PI,
        // 1002 intervals: divisible by 6, so k = +-2 pi / 3 are grid rows
        samples: 1003,
        fixed_k: None,
        oracle_check: false,
    }
}

fn detuning_preset(delta_a: f64) -> SweepSpec {
    let proto = RawModelParams {
        omega_a: 0.0,
        omega_b: 1.0,
        omega_2: 0.0,
        omega_3: 1.0,
        xi: 1.0,
        g_a: 1.0,
        g_b: 1.0,
        n: 1,
    }
    .validate()
    .unwrap();
    // pin delta_a by construction: omega_2 - dispersion(k) is exact here
    let omega_2 = dispersion(&proto, FRAC_PI_4) + delta_a;
    let base = RawModelParams {
        omega_2,
        omega_3: omega_2 + 1.0,
        ..proto.into()
    }
    .validate()
    .unwrap();
    SweepSpec {
        base,
        axis: SweepAxis::DeltaB,
        lo: -4.0,
        hi: 4.0,
        // step 0.005: the transparency and mirror rows are grid points
        samples: 1601,
        fixed_k: Some(FRAC_PI_4),
        oracle_check: false,
    }
}

fn strength_preset() -> SweepSpec {
    let proto = RawModelParams {
        omega_a: 0.0,
        omega_b: 1.0,
        omega_2: 0.0,
        omega_3: 1.0,
        xi: 2.0,
        g_a: 1.0,
        g_b: 1.0,
        n: 1,
    }
    .validate()
    .unwrap();
    let omega_2 = dispersion(&proto, FRAC_PI_6) + 1.0;
    let base = RawModelParams {
        omega_2,
        omega_3: omega_2 + 3.0,
        ..proto.into()
    }
    .validate()
    .unwrap();
    SweepSpec {
        base,
        axis: SweepAxis::GbSqN,
        lo: 0.0,
        hi: 250.0,
        // step 0.25 exactly: the mirror row g_b^2 n = 3 is a grid point
        samples: 1001,
        fixed_k: Some(FRAC_PI_6),
        oracle_check: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_THIRDS_PI: f64 = 2.0 * PI / 3.0;

    #[test]
    fn grid_hits_endpoints_and_midpoint() {
        assert_eq!(grid_value(-4.0, 4.0, 1601, 0), -4.0);
        assert_eq!(grid_value(-4.0, 4.0, 1601, 1600), 4.0);
        assert_eq!(grid_value(-4.0, 4.0, 1601, 800), 0.0);
        assert_eq!(grid_value(-PI, PI, 1003, 501), 0.0);
    }

    #[test]
    fn validation_rejects_malformed_specs() {
        let mut spec = Preset::Fig2a.spec();
        spec.samples = 1;
        assert!(run_sweep(&spec).is_err());
        let mut spec = Preset::Fig2a.spec();
        spec.hi = spec.lo;
        assert!(run_sweep(&spec).is_err());
        let mut spec = Preset::Fig2a.spec();
        spec.fixed_k = Some(1.0);
        assert!(run_sweep(&spec).is_err());
        let mut spec = Preset::Fig3a.spec();
        spec.fixed_k = None;
        assert!(run_sweep(&spec).is_err());
        let mut spec = Preset::Fig3c.spec();
        spec.lo = -1.0;
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn resonant_momentum_sweep_is_transparent_at_the_special_momenta() {
        let table = run_sweep(&Preset::Fig2a.spec()).unwrap();
        let s = table.summary();
        assert_eq!(s.rows, 1003);
        assert_eq!(s.failed_rows, 0);
        // k = -pi, 0, pi
        assert_eq!(s.band_edge_rows, 3);
        assert!(
            s.transparent_at
                .iter()
                .any(|&k| (k - TWO_THIRDS_PI).abs() < 1e-9),
            "transparent at {:?}",
            s.transparent_at
        );
        assert!(s
            .transparent_at
            .iter()
            .any(|&k| (k + TWO_THIRDS_PI).abs() < 1e-9));
        assert!(s.max_unitarity_defect < 1e-12);
    }

    #[test]
    fn undriven_momentum_sweep_blocks_the_resonant_momentum() {
        let table = run_sweep(&Preset::Fig2e.spec()).unwrap();
        let s = table.summary();
        assert!(s.transparent_at.is_empty());
        let (k_min, t_min) = s.min_t.unwrap();
        assert!((k_min.abs() - TWO_THIRDS_PI).abs() < 1e-9);
        assert!(t_min < 1e-12);
        assert!(s
            .mirror_at
            .iter()
            .any(|&k| (k - TWO_THIRDS_PI).abs() < 1e-9));
    }

    #[test]
    fn detuning_presets_hit_their_special_rows_exactly() {
        let table = run_sweep(&Preset::Fig3a.spec()).unwrap();
        let transparent = &table.rows()[640];
        assert_eq!(transparent.axis_value, -0.8);
        match &transparent.outcome {
            RowOutcome::Value { result, .. } => {
                assert_eq!(result.branch(), Branch::FullTransmission);
                assert_eq!(result.reflection(), 0.0);
            }
            RowOutcome::Failed { .. } => panic!("row failed"),
        }
        let mirror = &table.rows()[890];
        assert_eq!(mirror.axis_value, 0.45);
        match &mirror.outcome {
            RowOutcome::Value { result, .. } => {
                assert_eq!(result.branch(), Branch::FullReflection);
                assert_eq!(result.transmission(), 0.0);
            }
            RowOutcome::Failed { .. } => panic!("row failed"),
        }
        // mirrored parameter set swaps the loci
        let flipped = run_sweep(&Preset::Fig3b.spec()).unwrap();
        let s = flipped.summary();
        assert!(s.transparent_at.iter().any(|&d| (d - 0.8).abs() < 1e-12));
        assert!(s.mirror_at.iter().any(|&d| (d + 0.45).abs() < 1e-12));
    }

    #[test]
    fn strength_preset_hits_the_mirror_row_exactly() {
        let table = run_sweep(&Preset::Fig3c.spec()).unwrap();
        let mirror = &table.rows()[12];
        assert_eq!(mirror.axis_value, 3.0);
        match &mirror.outcome {
            RowOutcome::Value { result, .. } => {
                assert_eq!(result.branch(), Branch::FullReflection);
                assert_eq!(result.transmission(), 0.0);
            }
            RowOutcome::Failed { .. } => panic!("row failed"),
        }
        // strong drive pushes the emitter out of the photon's way
        let s = table.summary();
        for row in &table.rows()[800..] {
            if let RowOutcome::Value { result, .. } = &row.outcome {
                assert!(result.transmission() > 0.99, "at {}", row.axis_value);
            }
        }
        assert!(s.max_unitarity_defect < 1e-12);
    }

    #[test]
    fn csv_layout_matches_the_contract() {
        let mut spec = Preset::Fig2a.spec();
        spec.samples = 5;
        let plain = run_sweep(&spec).unwrap().to_csv();
        let mut lines = plain.lines();
        assert_eq!(
            lines.next().unwrap(),
            "axis_name,axis_value,re_r,im_r,re_t,im_t,R,T,branch"
        );
        assert_eq!(lines.clone().count(), 5);
        assert!(lines.all(|l| l.starts_with("k,") && l.split(',').count() == 9));

        spec.oracle_check = true;
        let checked = run_sweep(&spec).unwrap().to_csv();
        let mut lines = checked.lines();
        assert_eq!(
            lines.next().unwrap(),
            "axis_name,axis_value,re_r,im_r,re_t,im_t,R,T,branch,dr_abs,dt_abs"
        );
        for line in lines {
            assert_eq!(line.split(',').count(), 11);
            let cells: Vec<&str> = line.split(',').collect();
            if cells[8] == "BandEdge" {
                assert_eq!(cells[9], "");
                assert_eq!(cells[10], "");
            } else {
                let dr: f64 = cells[9].parse().unwrap();
                let dt: f64 = cells[10].parse().unwrap();
                assert!(dr < 1e-10 && dt < 1e-10, "{line}");
            }
        }
    }

    #[test]
    fn degenerate_rows_fail_with_a_tag_not_a_panic() {
        // at k = 0 the photon is detuned by -1 while the drive is detuned by
        // +1: the band-edge limit is genuinely ambiguous there
        let base = RawModelParams {
            omega_a: 0.0,
            omega_b: 1.0,
            omega_2: -3.0,
            omega_3: -1.0,
            xi: 1.0,
            g_a: 1.0,
            g_b: 1.0,
            n: 1,
        }
        .validate()
        .unwrap();
        let spec = SweepSpec {
            base,
            axis: SweepAxis::K,
            lo: -0.1,
            hi: 0.1,
            samples: 3,
            fixed_k: None,
            oracle_check: false,
        };
        let table = run_sweep(&spec).unwrap();
        match &table.rows()[1].outcome {
            RowOutcome::Failed { tag } => assert_eq!(*tag, "DegenerateBandEdge"),
            RowOutcome::Value { .. } => panic!("expected a failed row"),
        }
        let csv = table.to_csv();
        assert!(csv.contains("k,0e0,,,,,,,DegenerateBandEdge\n"), "{csv}");
        assert_eq!(table.summary().failed_rows, 1);
    }

    #[test]
    fn deterministic_output() {
        let mut spec = Preset::Fig3c.spec();
        spec.samples = 101;
        let a = run_sweep(&spec).unwrap().to_csv();
        let b = run_sweep(&spec).unwrap().to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(Preset::from_name(p.name()), Some(p));
        }
        assert_eq!(Preset::from_name("fig9z"), None);
    }

    #[test]
    fn strength_rows_agree_with_the_lattice_at_effective_parameters() {
        let mut spec = Preset::Fig3c.spec();
        spec.samples = 11;
        spec.hi = 5.0;
        spec.oracle_check = true;
        let table = run_sweep(&spec).unwrap();
        for row in table.rows() {
            match &row.outcome {
                RowOutcome::Value { oracle, .. } => match oracle {
                    OracleColumns::Deviation { dr_abs, dt_abs } => {
                        assert!(*dr_abs < 1e-10 && *dt_abs < 1e-10, "at {}", row.axis_value);
                    }
                    other => panic!("expected deviation cells, got {other:?}"),
                },
                RowOutcome::Failed { .. } => panic!("row failed"),
            }
        }
    }
}
