//! Randomized cross-checks between every route the crate offers.
//!
//! Each suite samples parameter points from a seeded generator, pushes them
//! through two independent routes (or one route and an exact identity) and
//! records the worst residual against a pinned threshold. Reports are
//! deterministic for a given seed and never include wall-clock data.

use crate::dressed::{condition_equivalence_check, dressed_basis, scattering_amplitudes_vtype};
use crate::model::{make_point, ModelParams, RawModelParams};
use crate::oracle::{run_wavepacket, solve_stationary, LatticeProblem, WavepacketSpec};
use crate::scattering::{amplitudes_from_detunings, scattering_amplitudes};
use crate::sweep::Preset;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

pub const UNITARITY_THRESHOLD: f64 = 1e-12;
pub const EQUIVALENCE_THRESHOLD: f64 = 1e-10;
pub const STATIONARY_THRESHOLD: f64 = 1e-10;
pub const WAVEPACKET_THRESHOLD: f64 = 0.03;
/// Packet width used by the wavepacket spot checks.
pub const SPOT_SIGMA: f64 = 15.0;
/// Chain half-length used by the wavepacket spot checks.
pub const SPOT_HALF_LENGTH: usize = 1000;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub unitarity_points: usize,
    pub equivalence_points: usize,
    pub stationary_points: usize,
    pub half_length: usize,
    pub with_wavepacket: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 7,
            unitarity_points: 100_000,
            equivalence_points: 10_000,
            stationary_points: 100,
            half_length: 25,
            with_wavepacket: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub points: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl SuiteOutcome {
    fn judge(name: &'static str, points: usize, max_residual: f64, threshold: f64) -> Self {
        SuiteOutcome {
            name,
            points,
            max_residual,
            threshold,
            passed: max_residual <= threshold,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub outcomes: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            writeln!(
                out,
                "suite {:<22} {:>7} points  max residual {:<12.5e} threshold {:<8.0e} {}",
                o.name,
                o.points,
                o.max_residual,
                o.threshold,
                if o.passed { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        writeln!(
            out,
            "overall: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

/// Random in-band scattering configuration. Momenta keep a hair of distance
/// from the band edges so every route is defined.
fn sample_configuration(rng: &mut ChaCha8Rng, n_lo: u32, n_hi: u32) -> (ModelParams, f64) {
    let omega_a = rng.random_range(-1.0..1.0);
    let omega_b = rng.random_range(0.2..3.0);
    let omega_2 = omega_a + rng.random_range(-6.0..6.0);
    let delta_b = rng.random_range(-4.0..4.0);
    let raw = RawModelParams {
        omega_a,
        omega_b,
        omega_2,
        omega_3: omega_2 + omega_b + delta_b,
        xi: rng.random_range(0.3..3.0),
        g_a: rng.random_range(0.2..2.0),
        g_b: rng.random_range(0.1..2.0),
        n: rng.random_range(n_lo..=n_hi),
    };
    let params = raw.validate().expect("sampled parameters are in range");
    let sign = if rng.random_range(0..2) == 0 {
        1.0
    } else {
        -1.0
    };
    let k = sign * rng.random_range(0.05..PI - 0.05);
    (params, k)
}

/// |r|^2 + |t|^2 = 1 straight from the closed forms.
pub fn unitarity_suite(seed: u64, points: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let (params, k) = sample_configuration(&mut rng, 0, 30);
        let point = make_point(&params, k);
        let s = scattering_amplitudes(&params, &point).expect("in-band momentum");
        worst = worst.max((s.reflection() + s.transmission() - 1.0).abs());
    }
    SuiteOutcome::judge("unitarity", points, worst, UNITARITY_THRESHOLD)
}

/// Bare-picture amplitudes against the doublet-potential route, plus the
/// paired transparency/mirror condition residuals.
pub fn equivalence_suite(seed: u64, points: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let (params, k) = sample_configuration(&mut rng, 1, 30);
        let point = make_point(&params, k);
        let basis = dressed_basis(&params, &point).expect("driven configuration");
        let bare = scattering_amplitudes(&params, &point).expect("in-band momentum");
        let dressed =
            scattering_amplitudes_vtype(&params, &point, &basis).expect("in-band momentum");
        worst = worst
            .max((bare.r() - dressed.r()).norm())
            .max((bare.t() - dressed.t()).norm());
        let cond = condition_equivalence_check(&params, &point).expect("driven configuration");
        worst = worst.max(cond.cross_residual());
        assert!(cond.consistent());
    }
    SuiteOutcome::judge("dressed-equivalence", points, worst, EQUIVALENCE_THRESHOLD)
}

/// Closed forms against the finite-lattice stationary solve.
pub fn stationary_suite(seed: u64, points: usize, half_length: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let (params, k) = sample_configuration(&mut rng, 0, 30);
        let point = make_point(&params, k);
        let closed = scattering_amplitudes(&params, &point).expect("in-band momentum");
        let problem = LatticeProblem::new(params, half_length).expect("chain long enough");
        let sol = solve_stationary(&problem, k).expect("in-band momentum");
        worst = worst
            .max((closed.r() - sol.r_fit()).norm())
            .max((closed.t() - sol.t_fit()).norm());
    }
    SuiteOutcome::judge("stationary-lattice", points, worst, STATIONARY_THRESHOLD)
}

/// Fixed parameter spots where a Gaussian packet's asymptotic split is
/// compared with |t(k0)|^2: one near-full transmission, one near-full
/// reflection, one mid-slope.
pub fn wavepacket_spots() -> Vec<SuiteOutcome> {
    let mut outcomes = Vec::new();

    // transparent spot: driven emitter at its transparency momentum
    let params = Preset::Fig2a.params();
    let k0 = 2.0 * PI / 3.0;
    outcomes.push(spot_outcome("wavepacket-transmit", params, k0));

    // mirror spot: undriven emitter resonant with the incident photon,
    // carrier at the band centre where the packet keeps its shape
    let raw = RawModelParams {
        omega_a: 0.0,
        omega_b: 1.0,
        omega_2: 0.0,
        omega_3: 3.0,
        xi: 1.0,
        g_a: 1.0,
        g_b: 1.0,
        n: 0,
    };
    let mirror = raw.validate().unwrap();
    let mut o = spot_outcome("wavepacket-reflect", mirror, FRAC_PI_2);
    // the top level must stay dark without control photons
    let run = run_wavepacket(&WavepacketSpec::new(
        mirror,
        SPOT_HALF_LENGTH,
        FRAC_PI_2,
        SPOT_SIGMA,
    ))
    .expect("mirror spot runs clean");
    if run.max_zeta_sq() != 0.0 {
        o.passed = false;
    }
    outcomes.push(o);

    // mid-slope spot: drive detuned to put |t|^2 at one half
    let spec = Preset::Fig3a.spec();
    let delta_b = locate_half_transmission_delta_b();
    let raw: RawModelParams = spec.base.into();
    let half = RawModelParams {
        omega_3: raw.omega_2 + raw.omega_b + delta_b,
        ..raw
    }
    .validate()
    .unwrap();
    outcomes.push(spot_outcome("wavepacket-half", half, spec.fixed_k.unwrap()));
    outcomes
}

fn spot_outcome(name: &'static str, params: ModelParams, k0: f64) -> SuiteOutcome {
    let expect = scattering_amplitudes(&params, &make_point(&params, k0))
        .expect("in-band momentum")
        .transmission();
    let run = run_wavepacket(&WavepacketSpec::new(
        params,
        SPOT_HALF_LENGTH,
        k0,
        SPOT_SIGMA,
    ))
    .expect("spot runs clean");
    SuiteOutcome::judge(
        name,
        1,
        (run.t_measured() - expect).abs(),
        WAVEPACKET_THRESHOLD,
    )
}

/// Drive detuning on the mid-slope parameter set where |t|^2 crosses 1/2,
/// found by bisection between the transparency and mirror detunings.
pub fn locate_half_transmission_delta_b() -> f64 {
    let spec = Preset::Fig3a.spec();
    let point = make_point(&spec.base, spec.fixed_k.unwrap());
    let t_at = |delta_b: f64| -> f64 {
        amplitudes_from_detunings(
            spec.base.g_a(),
            spec.base.xi(),
            point.k(),
            point.delta_a(),
            delta_b,
            spec.base.control_strength(),
        )
        .expect("in-band momentum")
        .transmission()
    };
    // T = 1 at delta_b = -0.8 and T = 0 at 0.45
    let (mut lo, mut hi) = (-0.8, 0.45);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_at(mid) >= 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Run every suite that `opts` asks for.
pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut outcomes = vec![
        unitarity_suite(opts.seed, opts.unitarity_points),
        equivalence_suite(opts.seed, opts.equivalence_points),
        stationary_suite(opts.seed, opts.stationary_points, opts.half_length),
    ];
    if opts.with_wavepacket {
        outcomes.extend(wavepacket_spots());
    }
    VerifyReport { outcomes }
}
