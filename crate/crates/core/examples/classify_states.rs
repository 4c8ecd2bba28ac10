//! Majorana constellations and entanglement families of some named and
//! random four-qubit states.
//!
//! ```text
//! cargo run --example classify_states
//! ```

use symfam::sampler::random_symmetric_pure;
use symfam::{dicke, ghz, tetrahedron_state, to_constellation, DEFAULT_COINCIDENCE_TOL};

fn main() -> symfam::Result<()> {
    let states = [
        ("|D_4^0>", dicke(4, 0)?),
        ("|D_4^1>", dicke(4, 1)?),
        ("|D_4^2>", dicke(4, 2)?),
        ("GHZ_4", ghz(4)?),
        ("T_4", tetrahedron_state()),
        ("random", random_symmetric_pure(4, 1)?),
    ];
    for (name, psi) in states {
        let c = to_constellation(&psi, DEFAULT_COINCIDENCE_TOL)?;
        println!("{name:<8} {}", c.degeneracy());
        for (p, m) in c.points() {
            println!("    theta = {:.6}  phi = {:.6}  x{m}", p.theta(), p.phi());
        }
    }
    Ok(())
}
