//! Closed-form single-photon scattering off the driven emitter.
//!
//! The emitter acts on the chain photon as an energy-dependent point scatterer
//! with strength
//!
//! ```text
//! V(E) = g_a^2 (E - [omega_3 + (n-1) omega_b])
//!        ------------------------------------------------------------
//!        (E - [omega_2 + n omega_b]) (E - [omega_3 + (n-1) omega_b]) - g_b^2 n
//! ```
//!
//! which in detuning form reads
//! `V = -g_a^2 (delta_a + delta_b) / (delta_a (delta_a + delta_b) - g_b^2 n)`.
//! The reflection and transmission amplitudes are always evaluated from the
//! cancelled closed forms below, never by dividing through `V`, so the
//! pole of `V` (full reflection) costs no precision.

use crate::dressed::DressedBasis;
use crate::model::{dispersion, ModelParams, ScatteringPoint};
use num_complex::Complex64;

/// |sin k| below this counts as a band edge: zero group velocity, no
/// propagating channel.
pub const BAND_EDGE_TOL: f64 = 1e-12;

/// Absolute tolerance (in units of g_a^2) under which the effective-potential
/// denominator is reported as a pole rather than divided through.
pub const POLE_TOL: f64 = 1e-12;

/// Consistency tolerance between a `ScatteringPoint` and the parameters it is
/// evaluated against.
const POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ScatteringError {
    #[error(
        "band edge at k = {k}: zero group velocity and the amplitude limit is direction-dependent"
    )]
    DegenerateBandEdge { k: f64 },
    #[error("scattering point inconsistent with the model parameters (field `{field}`)")]
    InvalidPoint { field: &'static str },
    #[error("effective potential has a pole at this energy (incident photon resonant with a dressed level)")]
    PoleAtThisEnergy,
    #[error("no in-band momentum reaches Omega = {omega_required} (band [{band_lo}, {band_hi}])")]
    NoInBandSolution {
        omega_required: f64,
        band_lo: f64,
        band_hi: f64,
    },
    #[error("condition requires a populated control cavity (g_b^2 n > 0)")]
    NoControlPhotons,
}

/// Which closed form produced the amplitudes. Metadata only: on the branch
/// boundaries the values agree with the generic-branch limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    /// Effective two-level emitter: the control term g_b^2 n vanishes and the
    /// shared factor (delta_a + delta_b) cancels from both amplitudes.
    TwoLevelN0,
    /// sin k = 0: the photon cannot propagate and is returned whole.
    BandEdge,
    /// delta_a + delta_b = 0 with an active control drive: r = 0 exactly.
    FullTransmission,
    /// delta_a (delta_a + delta_b) = g_b^2 n: t = 0 exactly.
    FullReflection,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Branch::Generic => "Generic",
            Branch::TwoLevelN0 => "TwoLevelN0",
            Branch::BandEdge => "BandEdge",
            Branch::FullTransmission => "FullTransmission",
            Branch::FullReflection => "FullReflection",
        };
        f.write_str(name)
    }
}

/// Reflection/transmission amplitudes at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    r: Complex64,
    t: Complex64,
    reflection: f64,
    transmission: f64,
    branch: Branch,
}

impl ScatteringResult {
    pub(crate) fn assemble(r: Complex64, t: Complex64, branch: Branch) -> Self {
        ScatteringResult {
            r,
            t,
            reflection: r.norm_sqr(),
            transmission: t.norm_sqr(),
            branch,
        }
    }

    pub fn r(&self) -> Complex64 {
        self.r
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    /// R = |r|^2.
    pub fn reflection(&self) -> f64 {
        self.reflection
    }

    /// T = |t|^2.
    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }
}

fn check_point(params: &ModelParams, point: &ScatteringPoint) -> Result<(), ScatteringError> {
    let close = |a: f64, b: f64| (a - b).abs() <= POINT_TOL * (1.0 + a.abs() + b.abs());
    if !close(point.omega_k(), dispersion(params, point.k())) {
        return Err(ScatteringError::InvalidPoint { field: "omega_k" });
    }
    if !close(point.delta_a(), params.omega_2() - point.omega_k()) {
        return Err(ScatteringError::InvalidPoint { field: "delta_a" });
    }
    if !close(point.delta_b(), params.delta_b()) {
        return Err(ScatteringError::InvalidPoint { field: "delta_b" });
    }
    let energy = f64::from(params.n()) * params.omega_b() + point.omega_k();
    if !close(point.energy(), energy) {
        return Err(ScatteringError::InvalidPoint { field: "energy" });
    }
    Ok(())
}

/// Shared evaluator: everything the amplitudes depend on, with the control
/// drive folded into the single product `gb2n = g_b^2 n`. Sweeps over that
/// product call this directly so grid values are honoured exactly.
pub(crate) fn amplitudes_from_detunings(
    g_a: f64,
    xi: f64,
    k: f64,
    delta_a: f64,
    delta_b: f64,
    gb2n: f64,
) -> Result<ScatteringResult, ScatteringError> {
    // decoupled emitter: the chain does not see a scatterer at all
    if g_a == 0.0 {
        return Ok(ScatteringResult::assemble(
            Complex64::ZERO,
            Complex64::ONE,
            Branch::Generic,
        ));
    }

    let sin_k = k.sin();
    let sum = delta_a + delta_b;

    if gb2n == 0.0 {
        // two-level emitter; the (delta_a + delta_b) factor cancels, so the
        // formulas stay finite even where the three-level ones read 0/0
        if sin_k.abs() <= BAND_EDGE_TOL {
            return Ok(ScatteringResult::assemble(
                -Complex64::ONE,
                Complex64::ZERO,
                Branch::BandEdge,
            ));
        }
        let ga2 = g_a * g_a;
        let den = Complex64::new(ga2, 2.0 * xi * delta_a * sin_k);
        let r = -ga2 / den;
        let t = Complex64::new(0.0, 2.0 * xi * delta_a * sin_k) / den;
        return Ok(ScatteringResult::assemble(r, t, Branch::TwoLevelN0));
    }

    if sin_k.abs() <= BAND_EDGE_TOL {
        if sum.abs() <= BAND_EDGE_TOL {
            return Err(ScatteringError::DegenerateBandEdge { k });
        }
        return Ok(ScatteringResult::assemble(
            -Complex64::ONE,
            Complex64::ZERO,
            Branch::BandEdge,
        ));
    }

    let bracket = delta_a * sum - gb2n;
    if sum == 0.0 {
        // r-numerator vanishes while the denominator keeps the finite
        // -gb2n term: the photon passes untouched
        return Ok(ScatteringResult::assemble(
            Complex64::ZERO,
            Complex64::ONE,
            Branch::FullTransmission,
        ));
    }
    if bracket == 0.0 {
        // t-numerator vanishes; r reduces to -sum/sum
        return Ok(ScatteringResult::assemble(
            -Complex64::ONE,
            Complex64::ZERO,
            Branch::FullReflection,
        ));
    }

    let ga2 = g_a * g_a;
    let den = Complex64::new(ga2 * sum, 2.0 * xi * bracket * sin_k);
    let r = -ga2 * sum / den;
    let t = Complex64::new(0.0, 2.0 * xi * bracket * sin_k) / den;
    Ok(ScatteringResult::assemble(r, t, Branch::Generic))
}

/// Reflection/transmission amplitudes at `point`.
///
/// Unitarity |r|^2 + |t|^2 = 1 holds on every branch because the numerators
/// are the real and imaginary parts of the common denominator.
pub fn scattering_amplitudes(
    params: &ModelParams,
    point: &ScatteringPoint,
) -> Result<ScatteringResult, ScatteringError> {
    check_point(params, point)?;
    amplitudes_from_detunings(
        params.g_a(),
        params.xi(),
        point.k(),
        point.delta_a(),
        point.delta_b(),
        params.control_strength(),
    )
}

/// Strength of the equivalent point scatterer at the point's energy.
///
/// With no control term the cancelled two-level form `-g_a^2 / delta_a` is
/// used. `PoleAtThisEnergy` marks incidence resonant with a dressed level;
/// the amplitudes themselves stay finite there (full reflection).
pub fn effective_potential(
    params: &ModelParams,
    point: &ScatteringPoint,
) -> Result<f64, ScatteringError> {
    check_point(params, point)?;
    let ga2 = params.g_a() * params.g_a();
    if ga2 == 0.0 {
        return Ok(0.0);
    }
    let gb2n = params.control_strength();
    if gb2n == 0.0 {
        let den = -point.delta_a();
        if den.abs() < POLE_TOL * params.g_a() {
            return Err(ScatteringError::PoleAtThisEnergy);
        }
        return Ok(ga2 / den);
    }
    let e = point.energy();
    let top = params.omega_3() + (f64::from(params.n()) - 1.0) * params.omega_b();
    let mid = params.omega_2() + f64::from(params.n()) * params.omega_b();
    let num = e - top;
    let den = (e - mid) * (e - top) - gb2n;
    if den.abs() < POLE_TOL * ga2 {
        return Err(ScatteringError::PoleAtThisEnergy);
    }
    Ok(ga2 * num / den)
}

/// Same scatterer strength written over the dressed doublet:
/// `V = -(g_+^2 / delta_+ + g_-^2 / delta_-)`.
pub fn effective_potential_dressed(
    params: &ModelParams,
    point: &ScatteringPoint,
    basis: &DressedBasis,
) -> Result<f64, ScatteringError> {
    check_point(params, point)?;
    let dp = basis.delta_plus();
    let dm = basis.delta_minus();
    let tol = POLE_TOL * params.g_a().max(1.0);
    if dp.abs() < tol || dm.abs() < tol {
        return Err(ScatteringError::PoleAtThisEnergy);
    }
    Ok(-(basis.g_plus().powi(2) / dp + basis.g_minus().powi(2) / dm))
}

/// Residual of the transparency condition; zero iff delta_a + delta_b = 0.
pub fn full_transmission_residual(point: &ScatteringPoint) -> f64 {
    point.delta_a() + point.delta_b()
}

/// Momentum (non-negative representative; -k works equally) at which the
/// photon passes with certainty, if the band reaches the required energy.
/// Needs an active control drive: with g_b^2 n = 0 the condition
/// delta_a + delta_b = 0 is an ordinary off-resonant point, not transparency.
pub fn solve_full_transmission_k(params: &ModelParams) -> Result<f64, ScatteringError> {
    if params.control_strength() == 0.0 {
        return Err(ScatteringError::NoControlPhotons);
    }
    let omega = params.omega_2() + params.delta_b();
    invert_band(params, omega)
}

/// Residual of the perfect-mirror condition; zero iff
/// delta_a (delta_a + delta_b) = g_b^2 n. With no control term the condition
/// collapses to bare resonance, delta_a = 0.
pub fn full_reflection_residual(params: &ModelParams, point: &ScatteringPoint) -> f64 {
    let gb2n = params.control_strength();
    if gb2n == 0.0 {
        point.delta_a()
    } else {
        point.delta_a() * (point.delta_a() + point.delta_b()) - gb2n
    }
}

/// Control strength g_b^2 n that would make this point a perfect mirror,
/// if one exists (the product cannot be negative).
pub fn required_control_strength(point: &ScatteringPoint) -> Option<f64> {
    let s = point.delta_a() * (point.delta_a() + point.delta_b());
    (s >= 0.0).then_some(s)
}

/// All non-negative in-band momenta at which the chain photon is fully
/// reflected for these parameters. Up to two for a driven emitter (one per
/// dressed level), at most one when g_b^2 n = 0.
pub fn solve_full_reflection_k(params: &ModelParams) -> Vec<f64> {
    let gb2n = params.control_strength();
    let delta_b = params.delta_b();
    let roots: Vec<f64> = if gb2n == 0.0 {
        vec![0.0]
    } else {
        // delta_a^2 + delta_a delta_b - gb2n = 0
        let gap = (delta_b * delta_b + 4.0 * gb2n).sqrt();
        vec![(-delta_b + gap) / 2.0, (-delta_b - gap) / 2.0]
    };
    roots
        .into_iter()
        .filter_map(|delta_a| invert_band(params, params.omega_2() - delta_a).ok())
        .collect()
}

fn invert_band(params: &ModelParams, omega: f64) -> Result<f64, ScatteringError> {
    let arg = (params.omega_a() - omega) / (2.0 * params.xi());
    if !(-1.0..=1.0).contains(&arg) {
        return Err(ScatteringError::NoInBandSolution {
            omega_required: omega,
            band_lo: params.band_min(),
            band_hi: params.band_max(),
        });
    }
    Ok(arg.acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_point, RawModelParams};
    use std::f64::consts::PI;

    fn params(omega_2: f64, omega_3: f64, xi: f64, g_b: f64, n: u32) -> ModelParams {
        RawModelParams {
            omega_a: 0.0,
            omega_b: 1.0,
            omega_2,
            omega_3,
            xi,
            g_a: 1.0,
            g_b,
            n,
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn unitarity_on_a_coarse_grid() {
        let p = params(2.0, 3.0, 2.0, 1.0, 1);
        for i in 1..60 {
            let k = -PI + 2.0 * PI * (i as f64) / 60.0;
            let pt = make_point(&p, k);
            let s = scattering_amplitudes(&p, &pt).unwrap();
            assert!(
                (s.reflection() + s.transmission() - 1.0).abs() < 1e-12,
                "k={k}"
            );
        }
    }

    #[test]
    fn full_transmission_when_detunings_cancel() {
        // delta_b = -delta_a at k = pi/4, xi = 1, delta_a = 0.8
        let omega_2 = 0.8 - std::f64::consts::SQRT_2;
        let p = params(omega_2, omega_2 + 1.0 - 0.8, 1.0, 1.0, 1);
        let pt = make_point(&p, PI / 4.0);
        assert!(full_transmission_residual(&pt).abs() < 1e-12);
        let s = scattering_amplitudes(&p, &pt).unwrap();
        assert_eq!(s.branch(), Branch::FullTransmission);
        assert_eq!(s.r(), Complex64::ZERO);
        assert_eq!(s.transmission(), 1.0);
    }

    #[test]
    fn full_reflection_when_control_matches() {
        // delta_a = 1, delta_b = 2 -> perfect mirror at g_b^2 n = 3
        let omega_2 = 1.0 - 2.0 * 3.0f64.sqrt();
        let p = params(omega_2, omega_2 + 3.0, 2.0, 3.0f64.sqrt(), 1);
        let pt = make_point(&p, PI / 6.0);
        assert!((pt.delta_a() - 1.0).abs() < 1e-12);
        assert!((pt.delta_b() - 2.0).abs() < 1e-12);
        assert!((required_control_strength(&pt).unwrap() - 3.0).abs() < 1e-12);
        // g_b = sqrt(3) squares back to 3 - eps; evaluate on the exact product
        let s = amplitudes_from_detunings(1.0, 2.0, pt.k(), 1.0, 2.0, 3.0).unwrap();
        assert_eq!(s.branch(), Branch::FullReflection);
        assert_eq!(s.t(), Complex64::ZERO);
        assert_eq!(s.r(), -Complex64::ONE);
    }

    #[test]
    fn two_level_resonance_reflects_completely() {
        // n = 0, delta_a = 0 at k = 2 pi / 3
        let p = params(2.0, 3.0, 2.0, 1.0, 0);
        let pt = make_point(&p, 2.0 * PI / 3.0);
        let s = scattering_amplitudes(&p, &pt).unwrap();
        assert_eq!(s.branch(), Branch::TwoLevelN0);
        assert!((s.reflection() - 1.0).abs() < 1e-12);
        assert!(s.transmission() < 1e-12);
    }

    #[test]
    fn two_level_branch_matches_generic_cancellation() {
        // at n = 0 the generic three-level form reduces algebraically to the
        // two-level one wherever delta_a + delta_b != 0
        let p = params(1.3, 2.9, 1.7, 0.8, 0);
        for i in 1..40 {
            let k = -PI + 2.0 * PI * (i as f64) / 40.0;
            if k.sin().abs() < 1e-6 {
                continue;
            }
            let pt = make_point(&p, k);
            let sum = pt.delta_a() + pt.delta_b();
            if sum.abs() < 1e-9 {
                continue;
            }
            let two = scattering_amplitudes(&p, &pt).unwrap();
            let ga2 = 1.0;
            let bracket = pt.delta_a() * sum;
            let den = Complex64::new(ga2 * sum, 2.0 * p.xi() * bracket * k.sin());
            let r_generic = -ga2 * sum / den;
            assert!((two.r() - r_generic).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn band_edge_returns_everything() {
        let p = params(2.0, 3.0, 2.0, 1.0, 1);
        let pt = make_point(&p, 0.0);
        let s = scattering_amplitudes(&p, &pt).unwrap();
        assert_eq!(s.branch(), Branch::BandEdge);
        assert_eq!(s.r(), -Complex64::ONE);
        assert_eq!(s.t(), Complex64::ZERO);
    }

    #[test]
    fn degenerate_band_edge_is_an_error() {
        // delta_a + delta_b = 0 exactly at k = 0: Omega = -2 xi, so pick
        // omega_2 = -2 xi - delta_b with delta_b = 1 - eps... use direct call
        let err = amplitudes_from_detunings(1.0, 2.0, 0.0, -1.0, 1.0, 4.0).unwrap_err();
        assert!(matches!(err, ScatteringError::DegenerateBandEdge { .. }));
    }

    #[test]
    fn band_edge_tag_agrees_with_nearby_generic_values() {
        let p = params(2.0, 3.0, 2.0, 1.0, 1);
        let edge = scattering_amplitudes(&p, &make_point(&p, 0.0)).unwrap();
        let near = scattering_amplitudes(&p, &make_point(&p, 1e-8)).unwrap();
        assert_eq!(near.branch(), Branch::Generic);
        assert!((edge.r() - near.r()).norm() < 1e-6);
        assert!((edge.t() - near.t()).norm() < 1e-6);
    }

    #[test]
    fn mismatched_point_is_rejected() {
        let p = params(2.0, 3.0, 2.0, 1.0, 1);
        let other = params(2.5, 3.0, 2.0, 1.0, 1);
        let pt = make_point(&other, 1.0);
        assert!(matches!(
            scattering_amplitudes(&p, &pt),
            Err(ScatteringError::InvalidPoint { .. })
        ));
    }

    #[test]
    fn decoupled_emitter_is_transparent() {
        let p = RawModelParams {
            g_a: 0.0,
            ..RawModelParams::default()
        }
        .validate()
        .unwrap();
        let pt = make_point(&p, 1.1);
        let s = scattering_amplitudes(&p, &pt).unwrap();
        assert_eq!(s.t(), Complex64::ONE);
        assert_eq!(s.r(), Complex64::ZERO);
    }

    #[test]
    fn effective_potential_two_level_form() {
        let p = params(2.0, 3.0, 2.0, 1.0, 0);
        let pt = make_point(&p, PI / 2.0);
        // delta_a = 2, V = -g_a^2 / delta_a
        let v = effective_potential(&p, &pt).unwrap();
        assert!((v - (-0.5)).abs() < 1e-12);
    }

    #[test]
    fn effective_potential_resonant_single_photon() {
        // delta_a = 0, n = 1: V = -g_a^2 (E - omega_3) / g_b^2
        let p = params(2.0, 3.5, 2.0, 0.7, 1);
        let pt = make_point(&p, 2.0 * PI / 3.0);
        assert!(pt.delta_a().abs() < 1e-12);
        let v = effective_potential(&p, &pt).unwrap();
        let expected = -(pt.energy() - p.omega_3()) / (0.7 * 0.7);
        assert!((v - expected).abs() < 1e-10);

        // and with omega_32 = omega_b the scatterer switches off entirely
        let p0 = params(2.0, 3.0, 2.0, 0.7, 1);
        let pt0 = make_point(&p0, 2.0 * PI / 3.0);
        let v0 = effective_potential(&p0, &pt0).unwrap();
        assert!(v0.abs() < 1e-10);
    }

    #[test]
    fn effective_potential_pole_at_dressed_resonance() {
        // delta_a (delta_a + delta_b) = g_b^2 n makes the denominator vanish
        let omega_2 = 1.0 - 2.0 * 3.0f64.sqrt();
        let p = params(omega_2, omega_2 + 3.0, 2.0, 3.0f64.sqrt(), 1);
        let pt = make_point(&p, PI / 6.0);
        // residual is ~1e-16 because sqrt(3)^2 != 3 exactly; force the pole
        // by checking the reported marker on the exactly-degenerate product
        match effective_potential(&p, &pt) {
            Err(ScatteringError::PoleAtThisEnergy) => {}
            Ok(v) => assert!(
                v.abs() > 1e12,
                "near-pole potential should blow up, got {v}"
            ),
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    #[test]
    fn amplitudes_never_go_through_the_potential() {
        // right at the mirror point the amplitudes are exact even though V
        // has a pole there
        let s = amplitudes_from_detunings(1.0, 2.0, PI / 6.0, 1.0, 2.0, 3.0).unwrap();
        assert_eq!(s.reflection(), 1.0);
        assert_eq!(s.transmission(), 0.0);
    }

    #[test]
    fn transparency_momentum_for_matched_detunings() {
        let p = params(2.0, 3.0, 2.0, 1.0, 1); // delta_b = 0
        let k = solve_full_transmission_k(&p).unwrap();
        assert!((k - 2.0 * PI / 3.0).abs() < 1e-12);

        let narrow = params(10.0, 11.0, 1.0, 1.0, 1);
        assert!(matches!(
            solve_full_transmission_k(&narrow),
            Err(ScatteringError::NoInBandSolution { .. })
        ));

        let undriven = params(2.0, 3.0, 2.0, 1.0, 0);
        assert!(matches!(
            solve_full_transmission_k(&undriven),
            Err(ScatteringError::NoControlPhotons)
        ));
    }

    #[test]
    fn mirror_momenta_for_driven_emitter() {
        let omega_2 = 1.0 - 2.0 * 3.0f64.sqrt();
        let p = params(omega_2, omega_2 + 3.0, 2.0, 3.0f64.sqrt(), 1);
        let ks = solve_full_reflection_k(&p);
        assert_eq!(ks.len(), 2);
        assert!(ks.iter().any(|k| (k - PI / 6.0).abs() < 1e-10));
        // the partner root delta_a = -3 also lands in band here
        let other = ks
            .iter()
            .find(|k| (*k - PI / 6.0).abs() > 1e-6)
            .copied()
            .unwrap();
        let pt = make_point(&p, other);
        assert!(full_reflection_residual(&p, &pt).abs() < 1e-9);
    }

    #[test]
    fn mirror_momentum_two_level() {
        let p = params(2.0, 3.0, 2.0, 1.0, 0);
        let ks = solve_full_reflection_k(&p);
        assert_eq!(ks.len(), 1);
        assert!((ks[0] - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn reflected_and_transmitted_waves_stay_in_quadrature() {
        let p = params(1.2, 3.4, 1.5, 0.9, 2);
        for i in 1..30 {
            let k = 0.1 + 2.9 * (i as f64) / 30.0;
            let pt = make_point(&p, k);
            let s = scattering_amplitudes(&p, &pt).unwrap();
            let cross = s.t() * s.r().conj();
            if cross.norm() > 0.0 {
                assert!(cross.re.abs() < 1e-12 * cross.norm().max(1.0));
            }
        }
    }
}
