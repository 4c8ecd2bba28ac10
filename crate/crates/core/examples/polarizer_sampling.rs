//! Mixed states inside a family: random convex sums, and the Monte Carlo
//! average over random orientations that approaches I/(N+1) for D_N.
//!
//! ```text
//! cargo run --release --example polarizer_sampling
//! ```

use symfam::sampler::{
    polarizer_mixture, sample_mixed_in_family, OrientationDistribution, SamplingSpec,
};
use symfam::{build_witness, ghz, tetrahedron_state, DensityMatrix, OptimizerConfig};

fn main() -> symfam::Result<()> {
    let n = 4;
    let d4 = "4".parse()?;
    let cfg = OptimizerConfig::default();
    let witnesses = [
        ("GHZ_4", build_witness(&ghz(n)?, &d4, &cfg)?),
        ("T_4", build_witness(&tetrahedron_state(), &d4, &cfg)?),
    ];

    let uniform = DensityMatrix::maximally_mixed(n)?;
    for samples in [100, 1_000, 10_000, 100_000] {
        let mc = polarizer_mixture(&d4, &OrientationDistribution::UniformSphere, samples, 0)?;
        println!(
            "{samples:>7} samples: distance to I/5 = {:.4}  half-split distance = {:.4}",
            mc.rho.trace_distance(&uniform)?,
            mc.half_trace_distance
        );
    }

    let spec = SamplingSpec {
        family: "3,1".parse()?,
        n_terms: 8,
        include_descendants: true,
        orientation_distribution: OrientationDistribution::UniformSphere,
        seed: 3,
    };
    let rho = sample_mixed_in_family(&spec, n)?;
    println!(
        "D_{{3,1}} mixture with descendants, rank {}",
        rho.rank(1e-9)
    );
    for (name, w) in &witnesses {
        println!(
            "  D_4 witness from {name}: Tr(W rho) = {:+.6}",
            w.evaluate(&rho)?
        );
    }
    Ok(())
}
