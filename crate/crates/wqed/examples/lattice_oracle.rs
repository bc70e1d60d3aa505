//! The closed forms rechecked the hard way: build the single-excitation
//! Hamiltonian on a finite chain, impose scattering boundary conditions, and
//! solve the linear system. The fitted r and t land on the closed forms to
//! machine precision.
//!
//!     cargo run -p wqed --example lattice_oracle

use wqed::model::make_point;
use wqed::oracle::{solve_stationary, LatticeProblem};
use wqed::scattering::scattering_amplitudes;
use wqed::sweep::Preset;

fn main() {
    let params = Preset::Fig2a.params();
    let problem = LatticeProblem::new(params, 25).expect("half-length is enough");
    println!(
        "lattice: {} cavity sites, emitter levels {}, dimension {}",
        problem.site_count(),
        if problem.has_top_level() {
            "2 and 3"
        } else {
            "2 only"
        },
        problem.dimension()
    );

    println!();
    println!(
        "{:>8}  {:>13}  {:>13}  {:>10}  {:>12}",
        "k", "|r| closed", "|r| lattice", "|dr|", "interior"
    );
    for k in [0.6, 1.1, 1.7, 2.0943951023931953, 2.9] {
        let point = make_point(&params, k);
        let closed = scattering_amplitudes(&params, &point).expect("in-band point");
        let lattice = solve_stationary(&problem, k).expect("solvable off the band edges");
        println!(
            "{k:>8.4}  {:>13.9}  {:>13.9}  {:>10.2e}  {:>12.2e}",
            closed.r().norm(),
            lattice.r_fit().norm(),
            (lattice.r_fit() - closed.r()).norm(),
            lattice.interior_residual()
        );
    }

    // The solved state itself: plane waves outside, structure at the emitter.
    let k = 1.7;
    let solution = solve_stationary(&problem, k).expect("solvable");
    println!();
    println!("site amplitudes at k = {k} (chain runs -25..=25):");
    for j in [-25i32, -10, -2, -1, 0, 1, 2, 10, 25] {
        let alpha = solution.alpha()[(j + 25) as usize];
        println!(
            "  alpha_{j:>3} = {:>9.6} {:+.6}i   |alpha|^2 = {:.6}",
            alpha.re,
            alpha.im,
            alpha.norm_sqr()
        );
    }
    println!(
        "  emitter |beta|^2 = {:.6}, |zeta|^2 = {:.6}",
        solution.beta().norm_sqr(),
        solution.zeta().norm_sqr()
    );
    println!(
        "  fitted R = {:.12}, T = {:.12}, R + T = {:.12}",
        solution.reflection(),
        solution.transmission(),
        solution.reflection() + solution.transmission()
    );

    // Doubling the chain length changes nothing: the fit is already exact.
    let long = LatticeProblem::new(params, 60).expect("half-length is enough");
    let far = solve_stationary(&long, k).expect("solvable");
    println!();
    println!(
        "half-length 25 vs 60: |dr| = {:.2e}, |dt| = {:.2e}",
        (far.r_fit() - solution.r_fit()).norm(),
        (far.t_fit() - solution.t_fit()).norm()
    );
}
