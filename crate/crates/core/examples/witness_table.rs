//! Maximal family overlaps and witnesses for the four-qubit GHZ and
//! tetrahedron states.
//!
//! ```text
//! cargo run --release --example witness_table
//! ```

use symfam::{ghz, tetrahedron_state, witness_battery, OptimizerConfig};

fn main() -> symfam::Result<()> {
    let cfg = OptimizerConfig::default();
    for (name, psi) in [("GHZ_4", ghz(4)?), ("T_4", tetrahedron_state())] {
        println!("{name}");
        for w in witness_battery(&psi, &cfg)? {
            let detected = w.evaluate(&psi.projector())?;
            println!(
                "  {:<14} alpha = {:.10}  confidence = {:>3}  Tr(W psi) = {:+.6}",
                w.family.to_string(),
                w.alpha,
                w.confidence,
                detected
            );
        }
    }
    Ok(())
}
