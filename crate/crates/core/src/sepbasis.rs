//! Separable operator basis of the symmetric Hermitian operator space.
//!
//! The `(N+1)^2` operators
//!
//! ```text
//! sigma_k        = |D_k><D_k|
//! sigma^(r)_{kj} = |D_k><D_j| + |D_j><D_k|          (k < j)
//! sigma^(i)_{kj} = i (|D_k><D_j| - |D_j><D_k|)      (k < j)
//! ```
//!
//! span the Hermitian operators on the symmetric subspace. A product state
//! `|eps>^{⊗N}` expands over them with coefficients `f_lambda(theta, phi)`,
//! and `(N+1)^2` directions whose coefficient rows form an invertible matrix
//! `F` give a basis of separable projectors. Every trace-one operator is then
//! an affine combination of those projectors.

use nalgebra::{DMatrix, DVector, LU};
use rand::Rng;

use crate::error::{Error, Result};
use crate::majorana::BlochPoint;
use crate::rng::keyed;
use crate::state::{binomial, check_same_n, max_abs, DensityMatrix, C64};

/// Condition number above which `F` is treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;
/// Default acceptance threshold for [`choose_points`].
pub const DEFAULT_CONDITION_THRESHOLD: f64 = 1e8;
/// Tolerance on reproducing a product projector from its row of `F`.
pub const ROW_TOL: f64 = 1e-12;

/// Index `lambda` of a basis operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorIndex {
    Diagonal { k: usize },
    RealOffDiagonal { k: usize, j: usize },
    ImagOffDiagonal { k: usize, j: usize },
}

/// All indices for N qubits: diagonal `k = 0..=N`, then real off-diagonal
/// pairs in lexicographic `(k, j)` order, then imaginary ones in the same order.
pub fn operator_indices(n: usize) -> Vec<OperatorIndex> {
    let mut out: Vec<OperatorIndex> = (0..=n).map(|k| OperatorIndex::Diagonal { k }).collect();
    for k in 0..=n {
        for j in k + 1..=n {
            out.push(OperatorIndex::RealOffDiagonal { k, j });
        }
    }
    for k in 0..=n {
        for j in k + 1..=n {
            out.push(OperatorIndex::ImagOffDiagonal { k, j });
        }
    }
    out
}

fn dimension(n: usize) -> usize {
    (n + 1) * (n + 1)
}

/// The basis operator `sigma_lambda` as an `(N+1) x (N+1)` matrix.
pub fn sigma_matrix(n: usize, idx: OperatorIndex) -> Result<DMatrix<C64>> {
    let dim = n + 1;
    let valid = match idx {
        OperatorIndex::Diagonal { k } => k <= n,
        OperatorIndex::RealOffDiagonal { k, j } | OperatorIndex::ImagOffDiagonal { k, j } => {
            k < j && j <= n
        }
    };
    if n == 0 || !valid {
        return Err(Error::domain(format!(
            "invalid operator index {idx:?} for N = {n}"
        )));
    }
    let mut m = DMatrix::zeros(dim, dim);
    match idx {
        OperatorIndex::Diagonal { k } => m[(k, k)] = C64::new(1.0, 0.0),
        OperatorIndex::RealOffDiagonal { k, j } => {
            m[(k, j)] = C64::new(1.0, 0.0);
            m[(j, k)] = C64::new(1.0, 0.0);
        }
        OperatorIndex::ImagOffDiagonal { k, j } => {
            m[(k, j)] = C64::new(0.0, 1.0);
            m[(j, k)] = C64::new(0.0, -1.0);
        }
    }
    Ok(m)
}

/// Coordinates of a Hermitian matrix over the `sigma_lambda` basis.
pub fn coordinates(m: &DMatrix<C64>) -> Vec<f64> {
    let n = m.nrows() - 1;
    operator_indices(n)
        .into_iter()
        .map(|idx| match idx {
            OperatorIndex::Diagonal { k } => m[(k, k)].re,
            OperatorIndex::RealOffDiagonal { k, j } => m[(k, j)].re,
            OperatorIndex::ImagOffDiagonal { k, j } => m[(k, j)].im,
        })
        .collect()
}

/// `sum_lambda x_lambda sigma_lambda`.
pub fn from_coordinates(n: usize, x: &[f64]) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for (idx, v) in operator_indices(n).into_iter().zip(x) {
        match idx {
            OperatorIndex::Diagonal { k } => m[(k, k)] += C64::new(*v, 0.0),
            OperatorIndex::RealOffDiagonal { k, j } => {
                m[(k, j)] += C64::new(*v, 0.0);
                m[(j, k)] += C64::new(*v, 0.0);
            }
            OperatorIndex::ImagOffDiagonal { k, j } => {
                m[(k, j)] += C64::new(0.0, *v);
                m[(j, k)] += C64::new(0.0, -*v);
            }
        }
    }
    m
}

/// Coefficients `f_lambda(theta, phi)` of `|eps>^{⊗N}<eps|` over the basis:
/// real and imaginary parts of
/// `sqrt(C(N,k) C(N,j)) cos(theta/2)^{2N-k-j} sin(theta/2)^{k+j} e^{i(k-j)phi}`.
pub fn f_coeffs(n: usize, p: &BlochPoint) -> Vec<f64> {
    let (s, c) = (p.theta() / 2.0).sin_cos();
    let element = |k: usize, j: usize| {
        let magnitude = (binomial(n, k) * binomial(n, j)).sqrt()
            * c.powi((2 * n - k - j) as i32)
            * s.powi((k + j) as i32);
        C64::from_polar(magnitude, (k as f64 - j as f64) * p.phi())
    };
    operator_indices(n)
        .into_iter()
        .map(|idx| match idx {
            OperatorIndex::Diagonal { k } => element(k, k).re,
            OperatorIndex::RealOffDiagonal { k, j } => element(k, j).re,
            OperatorIndex::ImagOffDiagonal { k, j } => element(k, j).im,
        })
        .collect()
}

fn f_matrix(n: usize, points: &[BlochPoint]) -> DMatrix<f64> {
    let dim = dimension(n);
    let mut f = DMatrix::zeros(points.len(), dim);
    for (i, p) in points.iter().enumerate() {
        for (lambda, v) in f_coeffs(n, p).into_iter().enumerate() {
            f[(i, lambda)] = v;
        }
    }
    f
}

fn condition_number(f: &DMatrix<f64>) -> f64 {
    let sv = f.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

fn product_projector(n: usize, p: &BlochPoint) -> DMatrix<C64> {
    let (a, b) = p.spinor();
    let v = DVector::from_iterator(
        n + 1,
        (0..=n).map(|k| a.powi((n - k) as i32) * b.powi(k as i32) * binomial(n, k).sqrt()),
    );
    &v * v.adjoint()
}

/// Draws `(N+1)^2` uniform directions until `F` has condition number below
/// `cond_threshold`. Attempt `a` uses the random stream `(seed, a)`.
pub fn choose_points(
    n: usize,
    seed: u64,
    cond_threshold: f64,
    max_attempts: usize,
) -> Result<Vec<BlochPoint>> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if !(cond_threshold > 1.0) || max_attempts == 0 {
        return Err(Error::domain(
            "need cond_threshold > 1 and max_attempts >= 1",
        ));
    }
    let mut best = f64::INFINITY;
    for attempt in 0..max_attempts {
        let mut rng = keyed(seed, attempt as u64);
        let points: Vec<BlochPoint> = (0..dimension(n)).map(|_| uniform_point(&mut rng)).collect();
        let cond = condition_number(&f_matrix(n, &points));
        if cond < cond_threshold {
            return Ok(points);
        }
        best = best.min(cond);
    }
    Err(Error::Conditioning {
        attempts: max_attempts,
        best_condition: best,
    })
}

pub(crate) fn uniform_point<R: Rng>(rng: &mut R) -> BlochPoint {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    BlochPoint::from_angles(z.clamp(-1.0, 1.0).acos(), phi)
}

/// `(N+1)^2` product directions whose projectors span the symmetric
/// Hermitian operators, with a factorization of `F^T` ready for solves.
#[derive(Clone, Debug)]
pub struct SeparableBasis {
    n_qubits: usize,
    directions: Vec<BlochPoint>,
    f: DMatrix<f64>,
    condition_number: f64,
    lu_ft: LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl SeparableBasis {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn directions(&self) -> &[BlochPoint] {
        &self.directions
    }

    /// `F[i][lambda] = f_lambda(theta_i, phi_i)`.
    pub fn f_matrix(&self) -> &DMatrix<f64> {
        &self.f
    }

    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// `|eps_i>^{⊗N}<eps_i|`.
    pub fn projector(&self, i: usize) -> DMatrix<C64> {
        product_projector(self.n_qubits, &self.directions[i])
    }
}

/// Assembles `F` for the given directions and checks it.
pub fn build_basis(n: usize, points: &[BlochPoint]) -> Result<SeparableBasis> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if points.len() != dimension(n) {
        return Err(Error::domain(format!(
            "a basis for N = {n} needs {} directions, got {}",
            dimension(n),
            points.len()
        )));
    }
    let f = f_matrix(n, points);
    let cond = condition_number(&f);
    if !(cond <= SINGULAR_CONDITION) {
        return Err(Error::domain(format!(
            "F is singular (condition number {cond:.3e})"
        )));
    }
    for (i, p) in points.iter().enumerate() {
        let row: Vec<f64> = f.row(i).iter().copied().collect();
        let err = max_abs(&(from_coordinates(n, &row) - product_projector(n, p)));
        if err > ROW_TOL {
            return Err(Error::numerical(format!(
                "row {i} of F misses its projector by {err:e}"
            )));
        }
    }
    let lu_ft = f.transpose().lu();
    Ok(SeparableBasis {
        n_qubits: n,
        directions: points.to_vec(),
        f,
        condition_number: cond,
        lu_ft,
    })
}

/// Affine coordinates `x` with `rho = sum_i x_i |eps_i>^{⊗N}<eps_i|`.
///
/// For trace-one input the coordinates sum to one; they can be negative.
pub fn decompose(rho: &DensityMatrix, basis: &SeparableBasis) -> Result<Vec<f64>> {
    check_same_n(rho.n_qubits(), basis.n_qubits)?;
    decompose_operator(rho.entries(), basis)
}

/// [`decompose`] for any Hermitian operator of the right size.
pub fn decompose_operator(m: &DMatrix<C64>, basis: &SeparableBasis) -> Result<Vec<f64>> {
    check_same_n(m.nrows() - 1, basis.n_qubits)?;
    let r = DVector::from_vec(coordinates(m));
    let x = basis
        .lu_ft
        .solve(&r)
        .ok_or_else(|| Error::domain("separable basis is singular"))?;
    Ok(x.iter().copied().collect())
}

/// `sum_i x_i |eps_i>^{⊗N}<eps_i|`.
pub fn reconstruct(coeffs: &[f64], basis: &SeparableBasis) -> Result<DMatrix<C64>> {
    if coeffs.len() != basis.directions.len() {
        return Err(Error::domain(format!(
            "expected {} coefficients, got {}",
            basis.directions.len(),
            coeffs.len()
        )));
    }
    let n = basis.n_qubits;
    let mut lambda = vec![0.0; dimension(n)];
    for (i, x) in coeffs.iter().enumerate() {
        for (l, f) in lambda.iter_mut().zip(basis.f.row(i).iter()) {
            *l += x * f;
        }
    }
    Ok(from_coordinates(n, &lambda))
}
