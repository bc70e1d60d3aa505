//! A single control photon flips the waveguide between opaque and
//! transparent: with the drive resonant (delta_b = 0) and one photon in the
//! control cavity the incident photon passes untouched at the resonant
//! momentum; empty the control cavity and the same photon is fully reflected.
//!
//!     cargo run -p wqed --example photon_switch

use wqed::model::{make_point, RawModelParams};
use wqed::scattering::{required_control_strength, scattering_amplitudes, solve_full_reflection_k};
use wqed::sweep::Preset;

fn main() {
    let k = 2.0 * std::f64::consts::PI / 3.0;

    // Drive resonant, one control photon: transparent.
    let on = Preset::Fig2a.params();
    let point_on = make_point(&on, k);
    let open = scattering_amplitudes(&on, &point_on).expect("in-band point");
    println!("switch ON  (n = 1, delta_b = 0) at k = 2 pi / 3:");
    println!(
        "  branch {:<16} T = {:.15}   R = {:.3e}",
        open.branch().to_string(),
        open.transmission(),
        open.reflection()
    );

    // Same momentum, control cavity empty: the bare two-level emitter sits
    // exactly on resonance (delta_a = 0) and acts as a perfect mirror.
    let off = RawModelParams {
        n: 0,
        ..RawModelParams::from(on)
    }
    .validate()
    .expect("valid parameters");
    let point_off = make_point(&off, k);
    let shut = scattering_amplitudes(&off, &point_off).expect("in-band point");
    println!("switch OFF (n = 0) at the same momentum:");
    println!(
        "  branch {:<16} T = {:.3e}   R = {:.15}",
        shut.branch().to_string(),
        shut.transmission(),
        shut.reflection()
    );

    assert!((open.transmission() - 1.0).abs() < 1e-12);
    assert!((shut.reflection() - 1.0).abs() < 1e-12);

    // The driven emitter can also be tuned into a perfect mirror: the drive
    // strength g_b^2 n it takes is fixed by the detunings alone.
    println!();
    let detuned = Preset::Fig3c.params();
    let k_mirror = std::f64::consts::PI / 6.0;
    let point = make_point(&detuned, k_mirror);
    match required_control_strength(&point) {
        Some(s) => {
            println!(
                "at k = pi / 6 with delta_a = {:.2}, delta_b = {:.2}: a mirror needs g_b^2 n = {s:.6}",
                point.delta_a(),
                point.delta_b()
            );
            let tuned = RawModelParams {
                g_b: s.sqrt(),
                n: 1,
                ..RawModelParams::from(detuned)
            }
            .validate()
            .expect("valid parameters");
            let mirrored = scattering_amplitudes(&tuned, &make_point(&tuned, k_mirror))
                .expect("in-band point");
            println!(
                "  tuned there: branch {:<16} R = {:.15}",
                mirrored.branch().to_string(),
                mirrored.reflection()
            );
        }
        None => {
            println!("detunings give a negative product; no drive strength makes a mirror here")
        }
    }

    // And conversely: holding the drive fixed, which momenta are mirrors?
    let mirrors = solve_full_reflection_k(&on);
    let rendered: Vec<String> = mirrors.iter().map(|k| format!("{k:.6}")).collect();
    println!();
    println!(
        "mirror momenta (k >= 0) for the switch-ON parameters: [{}]",
        rendered.join(", ")
    );
    for k_m in mirrors {
        if k_m.sin().abs() > 1e-9 {
            let res = scattering_amplitudes(&on, &make_point(&on, k_m)).expect("in-band point");
            println!("  R({k_m:.6}) = {:.15}", res.reflection());
        }
    }
}
