//! The waveguide band: cosine dispersion, band edges, and momentum inversion.
//!
//!     cargo run -p wqed --example dispersion_band

use wqed::model::{dispersion, make_point, reduce_k, RawModelParams};
use wqed::scattering::solve_full_transmission_k;

fn main() {
    let params = RawModelParams {
        omega_a: 5.0,
        omega_b: 1.0,
        omega_2: 6.0,
        omega_3: 7.0,
        xi: 2.0,
        g_a: 1.0,
        g_b: 1.0,
        n: 1,
    }
    .validate()
    .expect("valid parameters");

    println!(
        "band: Omega_k = omega_a - 2 xi cos k in [{}, {}] (omega_a = {}, xi = {})",
        params.band_min(),
        params.band_max(),
        params.omega_a(),
        params.xi()
    );
    println!();
    println!(
        "{:>10}  {:>12}  {:>12}",
        "k / pi", "Omega_k", "v_g = 2 xi sin k"
    );
    for i in 0..=8 {
        let k = -std::f64::consts::PI + f64::from(i) * std::f64::consts::PI / 4.0;
        let omega = dispersion(&params, k);
        let v_g = 2.0 * params.xi() * k.sin();
        println!(
            "{:>10.3}  {:>12.6}  {:>12.6}",
            k / std::f64::consts::PI,
            omega,
            v_g
        );
    }

    // Momenta live on a ring: any input folds back into (-pi, pi].
    println!();
    for k in [7.0, -7.0, 3.0 * std::f64::consts::PI] {
        println!("reduce_k({k:>6.3}) = {:>8.5}", reduce_k(k));
    }

    // A scattering point carries the derived energies of the incident photon.
    let k = 2.0 * std::f64::consts::PI / 3.0;
    let point = make_point(&params, k);
    println!();
    println!("at k = 2 pi / 3:");
    println!(
        "  Omega_k = {:.6}   E = n omega_b + Omega_k = {:.6}",
        point.omega_k(),
        point.energy()
    );
    println!("  delta_a = omega_2 - Omega_k = {:.6}", point.delta_a());
    println!(
        "  delta_b = (omega_3 - omega_2) - omega_b = {:.6}",
        point.delta_b()
    );

    // The band inverted: which momentum makes the photon pass with certainty?
    // The transparency condition pins Omega_k = omega_2 + delta_b.
    match solve_full_transmission_k(&params) {
        Ok(k_pass) => {
            let check = dispersion(&params, k_pass) - (params.omega_2() + params.delta_b());
            println!();
            println!("full transmission at k = {k_pass:.6} (band inversion residual {check:.2e})");
        }
        Err(err) => println!("no full-transmission momentum: {err}"),
    }
}
