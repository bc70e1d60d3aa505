//! Momentum sweeps over the whole band for the ready-made parameter sets:
//! lineshapes, transparency dips and peaks, and what the control photon
//! number does to them.
//!
//!     cargo run -p wqed --example momentum_sweeps

use wqed::sweep::{run_sweep, Preset, RowOutcome};

fn main() {
    for preset in [Preset::Fig2a, Preset::Fig2b, Preset::Fig2e] {
        let spec = preset.spec();
        let table = run_sweep(&spec).expect("preset specs are valid");
        let summary = table.summary();
        println!("{} — {}", preset.name(), preset.describe());
        println!(
            "  {} rows, {} evaluated, {} band-edge; max |R + T - 1| = {:.2e}",
            summary.rows, summary.evaluated, summary.band_edge_rows, summary.max_unitarity_defect
        );
        if let (Some((k_min, t_min)), Some((k_max, t_max))) = (summary.min_t, summary.max_t) {
            println!("  T ranges from {t_min:.3e} (k = {k_min:.6}) to {t_max:.6} (k = {k_max:.6})");
        }
        let loci: Vec<String> = summary
            .transparent_at
            .iter()
            .map(|k| format!("{k:.6}"))
            .collect();
        println!("  full transmission rows: [{}]", loci.join(", "));
        let loci: Vec<String> = summary
            .mirror_at
            .iter()
            .map(|k| format!("{k:.6}"))
            .collect();
        println!("  full reflection rows:   [{}]", loci.join(", "));
        println!();
    }

    // The resonance rows themselves: fig2a (n = 1) and fig2b (n = 30) put
    // their transparency at the same momentum with the same T — on resonance
    // the drive photon number drops out.
    let k_res = 2.0 * std::f64::consts::PI / 3.0;
    let near = |table: &wqed::sweep::SweepTable| -> (f64, f64) {
        table
            .rows()
            .iter()
            .filter_map(|row| match &row.outcome {
                RowOutcome::Value { result, .. } => Some((row.axis_value, result.transmission())),
                RowOutcome::Failed { .. } => None,
            })
            .min_by(|a, b| {
                let da = (a.0 - k_res).abs();
                let db = (b.0 - k_res).abs();
                da.partial_cmp(&db).expect("finite")
            })
            .expect("nonempty sweep")
    };
    let one = run_sweep(&Preset::Fig2a.spec()).expect("valid");
    let thirty = run_sweep(&Preset::Fig2b.spec()).expect("valid");
    let (k1, t1) = near(&one);
    let (k30, t30) = near(&thirty);
    println!("resonance row n = 1:  k = {k1:.12}, T = {t1:.15}");
    println!("resonance row n = 30: k = {k30:.12}, T = {t30:.15}");
    println!("|T(n=1) - T(n=30)| = {:.3e}", (t1 - t30).abs());

    // Off resonance the photon number matters a great deal: compare the
    // red-detuned pair near the undriven dip.
    println!();
    let k_probe = 1.1;
    for preset in [Preset::Fig2c, Preset::Fig2d] {
        let params = preset.params();
        let point = wqed::model::make_point(&params, k_probe);
        let result = wqed::scattering::scattering_amplitudes(&params, &point).expect("in-band");
        println!(
            "{}: at k = {k_probe}, T = {:.6} (n = {})",
            preset.name(),
            result.transmission(),
            params.n()
        );
    }
}
