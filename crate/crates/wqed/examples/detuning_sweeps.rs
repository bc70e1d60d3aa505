//! Hold the incident momentum fixed and sweep the drive instead: first the
//! drive detuning delta_b, then the drive strength g_b^2 n. The transparency
//! and mirror loci land exactly where the closed-form conditions put them.
//!
//!     cargo run -p wqed --example detuning_sweeps

use wqed::model::make_point;
use wqed::scattering::required_control_strength;
use wqed::sweep::{run_sweep, Preset};

fn main() {
    // delta_b sweeps: transparency needs delta_a + delta_b = 0, a mirror
    // needs delta_a (delta_a + delta_b) = g_b^2 n.
    for preset in [Preset::Fig3a, Preset::Fig3b] {
        let spec = preset.spec();
        let k = spec.fixed_k.expect("detuning presets hold k fixed");
        let point = make_point(&spec.base, k);
        let predicted_pass = -point.delta_a();
        let predicted_mirror = spec.base.control_strength() / point.delta_a() - point.delta_a();

        let table = run_sweep(&spec).expect("preset specs are valid");
        let summary = table.summary();
        println!("{} — {}", preset.name(), preset.describe());
        println!(
            "  held momentum k = {k:.6}, delta_a = {:.6}",
            point.delta_a()
        );
        let loci: Vec<String> = summary
            .transparent_at
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect();
        println!(
            "  transparent rows delta_b = [{}]   (condition says {predicted_pass:.6})",
            loci.join(", ")
        );
        let loci: Vec<String> = summary
            .mirror_at
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect();
        println!(
            "  mirror rows      delta_b = [{}]   (condition says {predicted_mirror:.6})",
            loci.join(", ")
        );
        println!();
    }

    // Strength sweep: the mirror condition picks out one drive strength; far
    // beyond it the strongly driven emitter decouples and the chain clears up.
    let spec = Preset::Fig3c.spec();
    let k = spec.fixed_k.expect("strength preset holds k fixed");
    let point = make_point(&spec.base, k);
    let table = run_sweep(&spec).expect("preset specs are valid");
    let summary = table.summary();
    println!("{} — {}", Preset::Fig3c.name(), Preset::Fig3c.describe());
    println!(
        "  held momentum k = {k:.6}, delta_a = {:.6}, delta_b = {:.6}",
        point.delta_a(),
        point.delta_b()
    );
    let loci: Vec<String> = summary
        .mirror_at
        .iter()
        .map(|x| format!("{x:.6}"))
        .collect();
    println!(
        "  mirror rows g_b^2 n = [{}]   (condition says {:.6})",
        loci.join(", "),
        required_control_strength(&point).expect("positive product here")
    );
    if let Some((x, t)) = summary.max_t {
        println!("  strongest drive restores T = {t:.6} by g_b^2 n = {x:.1}");
    }

    // Tail of the strength sweep: the decoupling trend in numbers.
    println!();
    println!("  {:>10}  {:>12}", "g_b^2 n", "T");
    for target in [10.0, 50.0, 100.0, 200.0, 250.0] {
        let row = table
            .rows()
            .iter()
            .min_by(|a, b| {
                let da = (a.axis_value - target).abs();
                let db = (b.axis_value - target).abs();
                da.partial_cmp(&db).expect("finite")
            })
            .expect("nonempty sweep");
        if let wqed::sweep::RowOutcome::Value { result, .. } = &row.outcome {
            println!(
                "  {:>10.1}  {:>12.8}",
                row.axis_value,
                result.transmission()
            );
        }
    }
}
