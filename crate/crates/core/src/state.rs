//! Dicke-basis representation of symmetric pure states and density matrices.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance on the norm of a pure state and on trace and Hermiticity of a
/// density matrix.
pub const NORM_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on the total weight of a convex mixture.
pub const WEIGHT_TOL: f64 = 1e-10;

/// Binomial coefficient as a float. Exact for every N this crate supports.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// A symmetric N-qubit pure state, stored as its N+1 Dicke-basis amplitudes
/// `c_k` (coefficient of the Dicke state with k excitations).
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricState {
    amplitudes: DVector<C64>,
}

impl SymmetricState {
    /// Wraps amplitudes that are already normalized within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::domain(
                "a symmetric state needs at least N = 1 qubit",
            ));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!(
                "state is not normalized (squared norm {norm_sqr})"
            )));
        }
        Ok(SymmetricState {
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::domain(
                "a symmetric state needs at least N = 1 qubit",
            ));
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if !norm.is_finite() || norm < 1e-14 {
            return Err(Error::numerical(format!(
                "cannot normalize vector of norm {norm}"
            )));
        }
        Ok(SymmetricState {
            amplitudes: v.unscale(norm),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amplitudes.as_slice()
    }

    pub(crate) fn vector(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &SymmetricState) -> Result<C64> {
        check_same_n(self.n_qubits(), other.n_qubits())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// The rank-one density matrix `|self><self|`.
    pub fn projector(&self) -> DensityMatrix {
        let v = &self.amplitudes;
        let mut m = v * v.adjoint();
        hermitize(&mut m);
        DensityMatrix { entries: m }
    }

    /// Applies `u^{⊗N}` for a single-qubit operator `u` acting as
    /// `|0> -> u[(0,0)]|0> + u[(1,0)]|1>` and `|1> -> u[(0,1)]|0> + u[(1,1)]|1>`.
    ///
    /// The result is renormalized, so any invertible `u` is accepted.
    pub fn apply_local(&self, u: &Matrix2<C64>) -> Result<SymmetricState> {
        let n = self.n_qubits();
        // Homogeneous polynomial picture: the state is sum_k e_k x^{N-k} y^k
        // with e_k = sqrt(C(N,k)) c_k, and u substitutes x and y linearly.
        let x_img = [u[(0, 0)], u[(1, 0)]];
        let y_img = [u[(0, 1)], u[(1, 1)]];
        let mut out = vec![C64::new(0.0, 0.0); n + 1];
        for (k, c) in self.amplitudes.iter().enumerate() {
            let e = c * binomial(n, k).sqrt();
            if e == C64::new(0.0, 0.0) {
                continue;
            }
            let mut term = vec![C64::new(1.0, 0.0)];
            for _ in 0..n - k {
                term = poly_mul_linear(&term, x_img);
            }
            for _ in 0..k {
                term = poly_mul_linear(&term, y_img);
            }
            for (m, t) in term.iter().enumerate() {
                out[m] += e * t;
            }
        }
        for (m, o) in out.iter_mut().enumerate() {
            *o /= binomial(n, m).sqrt();
        }
        SymmetricState::normalized(out)
    }
}

// (p0 + p1 y + ...) * (a + b y), coefficients in powers of y.
fn poly_mul_linear(p: &[C64], [a, b]: [C64; 2]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * a;
        out[i + 1] += c * b;
    }
    out
}

pub(crate) fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::domain(format!("qubit numbers differ ({a} vs {b})")));
    }
    Ok(())
}

/// The Dicke state with `k` excitations out of `n`.
pub fn dicke(n: usize, k: usize) -> Result<SymmetricState> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if k > n {
        return Err(Error::domain(format!(
            "Dicke index {k} out of range 0..={n}"
        )));
    }
    let mut amps = vec![C64::new(0.0, 0.0); n + 1];
    amps[k] = C64::new(1.0, 0.0);
    SymmetricState::new(amps)
}

/// `(|0...0> + |1...1>) / sqrt(2)`.
pub fn ghz(n: usize) -> Result<SymmetricState> {
    if n < 2 {
        return Err(Error::domain("GHZ state needs N >= 2"));
    }
    let mut amps = vec![C64::new(0.0, 0.0); n + 1];
    amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[n] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    SymmetricState::new(amps)
}

/// Four-qubit state whose Majorana points form a regular tetrahedron:
/// `|D_4^(0)>/sqrt(3) + sqrt(2/3) |D_4^(3)>`.
pub fn tetrahedron_state() -> SymmetricState {
    let mut amps = vec![C64::new(0.0, 0.0); 5];
    amps[0] = C64::new((1.0f64 / 3.0).sqrt(), 0.0);
    amps[3] = C64::new((2.0f64 / 3.0).sqrt(), 0.0);
    SymmetricState::normalized(amps).expect("fixed amplitudes are non-zero")
}

/// A density operator on the symmetric subspace, in the Dicke basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() < 2 {
            return Err(Error::domain(
                "density matrix must be square with dimension N+1 >= 2",
            ));
        }
        let dim = entries.nrows();
        for i in 0..dim {
            for j in 0..=i {
                let d = entries[(i, j)] - entries[(j, i)].conj();
                if !d.norm().is_finite() || d.norm() > NORM_TOL {
                    return Err(Error::domain(format!(
                        "matrix is not Hermitian at ({i},{j})"
                    )));
                }
            }
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::domain(format!("trace is {tr}, expected 1")));
        }
        let mut herm = entries;
        hermitize(&mut herm);
        let min_eig = herm.clone().symmetric_eigenvalues().min();
        if min_eig < -PSD_TOL {
            return Err(Error::domain(format!(
                "matrix has negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix { entries: herm })
    }

    /// `1/(N+1)` times the identity on the symmetric subspace.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("N must be at least 1"));
        }
        let dim = n + 1;
        Ok(DensityMatrix {
            entries: DMatrix::from_diagonal_element(dim, dim, C64::new(1.0 / dim as f64, 0.0)),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// `<psi|rho|psi>`.
    pub fn expectation(&self, psi: &SymmetricState) -> Result<f64> {
        check_same_n(self.n_qubits(), psi.n_qubits())?;
        let v = psi.vector();
        Ok(v.dotc(&(&self.entries * v)).re)
    }

    /// Half the sum of absolute eigenvalues of `self - other`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        check_same_n(self.n_qubits(), other.n_qubits())?;
        let mut diff = &self.entries - &other.entries;
        hermitize(&mut diff);
        Ok(0.5
            * diff
                .symmetric_eigenvalues()
                .iter()
                .map(|e| e.abs())
                .sum::<f64>())
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().into_iter().filter(|e| *e > tol).count()
    }

    /// Builds a density matrix from an accumulated sum, forcing exact
    /// Hermiticity and unit trace before validation.
    pub(crate) fn from_accumulated(mut entries: DMatrix<C64>) -> Result<Self> {
        hermitize(&mut entries);
        let tr = entries.trace().re;
        if !(tr > 0.0) {
            return Err(Error::numerical(
                "accumulated matrix has non-positive trace",
            ));
        }
        entries.unscale_mut(tr);
        DensityMatrix::new(entries)
    }
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermitize(m: &mut DMatrix<C64>) {
    let dim = m.nrows();
    for i in 0..dim {
        m[(i, i)].im = 0.0;
        for j in 0..i {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
}

/// Convex combination `sum_i w_i rho_i`.
pub fn mix(terms: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::domain("mixture needs at least one term"));
    };
    let n = first.n_qubits();
    let mut total = 0.0;
    let mut acc = DMatrix::zeros(n + 1, n + 1);
    for (w, rho) in terms {
        if !(*w >= 0.0) {
            return Err(Error::domain(format!("negative mixture weight {w}")));
        }
        check_same_n(n, rho.n_qubits())?;
        total += w;
        acc += rho.entries.scale(*w);
    }
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::domain(format!(
            "mixture weights sum to {total}, expected 1"
        )));
    }
    hermitize(&mut acc);
    DensityMatrix::new(acc)
}
