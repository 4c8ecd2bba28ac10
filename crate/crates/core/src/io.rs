//! Text file formats (JSON documents).
//!
//! State:          `{"n_qubits": N, "amplitudes": [[re, im], ...]}` with N+1
//!                 Dicke-basis amplitudes, `k = 0..=N`.
//! Density matrix: `{"n_qubits": N, "entries": [[re, im], ...]}` with the
//!                 `(N+1)^2` entries in row-major order.
//! Basis:          `{"n_qubits": N, "directions": [[theta, phi], ...]}`; an
//!                 optional `condition_number` is informational only, since
//!                 `F` is rebuilt and revalidated on load.
//!
//! Floats are written in shortest round-trip form and parsed exactly, so
//! write-then-read reproduces every value bit for bit.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorana::BlochPoint;
use crate::sepbasis::{build_basis, SeparableBasis};
use crate::state::{DensityMatrix, SymmetricState, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub n_qubits: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub n_qubits: usize,
    pub directions: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_number: Option<f64>,
}

impl From<&SymmetricState> for StateFile {
    fn from(s: &SymmetricState) -> Self {
        StateFile {
            n_qubits: s.n_qubits(),
            amplitudes: s.amplitudes().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<StateFile> for SymmetricState {
    type Error = Error;

    fn try_from(f: StateFile) -> Result<Self> {
        if f.amplitudes.len() != f.n_qubits + 1 {
            return Err(Error::Format(format!(
                "expected {} amplitudes for n_qubits = {}, found {}",
                f.n_qubits + 1,
                f.n_qubits,
                f.amplitudes.len()
            )));
        }
        SymmetricState::new(
            f.amplitudes
                .iter()
                .map(|[re, im]| C64::new(*re, *im))
                .collect(),
        )
    }
}

impl From<&DensityMatrix> for DensityFile {
    fn from(rho: &DensityMatrix) -> Self {
        let m = rho.entries();
        let dim = m.nrows();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        DensityFile {
            n_qubits: rho.n_qubits(),
            entries,
        }
    }
}

impl TryFrom<DensityFile> for DensityMatrix {
    type Error = Error;

    fn try_from(f: DensityFile) -> Result<Self> {
        let dim = f.n_qubits + 1;
        if f.entries.len() != dim * dim {
            return Err(Error::Format(format!(
                "expected {} entries for n_qubits = {}, found {}",
                dim * dim,
                f.n_qubits,
                f.entries.len()
            )));
        }
        let m = DMatrix::from_row_iterator(
            dim,
            dim,
            f.entries.iter().map(|[re, im]| C64::new(*re, *im)),
        );
        DensityMatrix::new(m)
    }
}

impl From<&SeparableBasis> for BasisFile {
    fn from(b: &SeparableBasis) -> Self {
        BasisFile {
            n_qubits: b.n_qubits(),
            directions: b
                .directions()
                .iter()
                .map(|p| [p.theta(), p.phi()])
                .collect(),
            condition_number: Some(b.condition_number()),
        }
    }
}

impl TryFrom<BasisFile> for SeparableBasis {
    type Error = Error;

    fn try_from(f: BasisFile) -> Result<Self> {
        let points = f
            .directions
            .iter()
            .map(|[theta, phi]| BlochPoint::new(*theta, *phi))
            .collect::<Result<Vec<_>>>()?;
        build_basis(f.n_qubits, &points)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn state_to_string(s: &SymmetricState) -> String {
    render(&StateFile::from(s))
}

pub fn state_from_str(text: &str) -> Result<SymmetricState> {
    parse::<StateFile>(text)?.try_into()
}

pub fn density_to_string(rho: &DensityMatrix) -> String {
    render(&DensityFile::from(rho))
}

pub fn density_from_str(text: &str) -> Result<DensityMatrix> {
    parse::<DensityFile>(text)?.try_into()
}

pub fn basis_to_string(b: &SeparableBasis) -> String {
    render(&BasisFile::from(b))
}

pub fn basis_from_str(text: &str) -> Result<SeparableBasis> {
    parse::<BasisFile>(text)?.try_into()
}

pub fn read_state(path: impl AsRef<Path>) -> Result<SymmetricState> {
    state_from_str(&fs::read_to_string(path)?)
}

pub fn write_state(path: impl AsRef<Path>, s: &SymmetricState) -> Result<()> {
    Ok(fs::write(path, state_to_string(s))?)
}

pub fn read_density(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    density_from_str(&fs::read_to_string(path)?)
}

pub fn write_density(path: impl AsRef<Path>, rho: &DensityMatrix) -> Result<()> {
    Ok(fs::write(path, density_to_string(rho))?)
}

pub fn read_basis(path: impl AsRef<Path>) -> Result<SeparableBasis> {
    basis_from_str(&fs::read_to_string(path)?)
}

pub fn write_basis(path: impl AsRef<Path>, b: &SeparableBasis) -> Result<()> {
    Ok(fs::write(path, basis_to_string(b))?)
}
