//! The randomized cross-check suites at a demo scale: unitarity of the
//! closed forms, bare/dressed agreement, and the stationary lattice rerun.
//! The full-size suites sit behind `wqed verify`.
//!
//!     cargo run -p wqed --example verification_suite

use wqed::verify::{run_verify, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        seed: 7,
        unitarity_points: 20_000,
        equivalence_points: 2_000,
        stationary_points: 40,
        half_length: 25,
        with_wavepacket: false,
    };
    println!(
        "seed {}, {} + {} + {} random points",
        opts.seed, opts.unitarity_points, opts.equivalence_points, opts.stationary_points
    );
    println!();
    let report = run_verify(&opts);
    print!("{}", report.render());
    assert!(report.all_passed(), "verification failed");
}
