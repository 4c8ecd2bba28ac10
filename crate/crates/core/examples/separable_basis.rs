//! A separable product-state basis of the symmetric Hermitian operators,
//! and affine decompositions of a separable and an entangled state over it.
//!
//! ```text
//! cargo run --example separable_basis
//! ```

use symfam::sepbasis::{
    build_basis, choose_points, decompose, reconstruct, DEFAULT_CONDITION_THRESHOLD,
};
use symfam::{ghz, DensityMatrix};

fn main() -> symfam::Result<()> {
    let n = 4;
    let points = choose_points(n, 0, DEFAULT_CONDITION_THRESHOLD, 50)?;
    let basis = build_basis(n, &points)?;
    println!(
        "{} directions, condition number {:.3e}",
        points.len(),
        basis.condition_number()
    );

    for (name, rho) in [
        ("I/5", DensityMatrix::maximally_mixed(n)?),
        ("GHZ_4", ghz(n)?.projector()),
    ] {
        let x = decompose(&rho, &basis)?;
        let back = reconstruct(&x, &basis)?;
        let err = (back - rho.entries())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let min = x.iter().copied().fold(f64::INFINITY, f64::min);
        println!(
            "{name:<6} sum = {:.12}  min = {min:+.4}  negatives = {:>2}  round-trip error = {err:.1e}",
            x.iter().sum::<f64>(),
            x.iter().filter(|&&c| c < 0.0).count()
        );
    }
    Ok(())
}
