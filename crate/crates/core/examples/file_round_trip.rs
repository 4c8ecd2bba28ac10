//! Writing and reading the JSON state, density-matrix and basis files used
//! by the command-line tool.
//!
//! ```text
//! cargo run --example file_round_trip
//! ```

use symfam::io;
use symfam::sepbasis::{build_basis, choose_points};
use symfam::tetrahedron_state;

fn main() -> symfam::Result<()> {
    let dir = std::env::temp_dir().join("symfam-example");
    std::fs::create_dir_all(&dir)?;

    let psi = tetrahedron_state();
    let state_path = dir.join("t4.json");
    io::write_state(&state_path, &psi)?;
    assert_eq!(io::read_state(&state_path)?, psi);

    let rho = psi.projector();
    let rho_path = dir.join("t4_rho.json");
    io::write_density(&rho_path, &rho)?;
    assert_eq!(io::read_density(&rho_path)?, rho);

    let basis = build_basis(2, &choose_points(2, 0, 1e8, 50)?)?;
    let basis_path = dir.join("basis2.json");
    io::write_basis(&basis_path, &basis)?;
    assert_eq!(
        io::read_basis(&basis_path)?.directions(),
        basis.directions()
    );

    print!("{}", io::state_to_string(&psi));
    println!("files written to {}", dir.display());
    Ok(())
}
