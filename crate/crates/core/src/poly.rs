//! Dense complex polynomials, coefficients in ascending degree.

use nalgebra::{DMatrix, Schur};

use crate::state::C64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Value and derivative at `x`.
pub(crate) fn horner(coeffs: &[C64], x: C64) -> (C64, C64) {
    let mut p = zero();
    let mut dp = zero();
    for a in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Coefficients of `p(x + c)`, i.e. `p^(j)(c) / j!` for `j = 0..=deg`.
pub(crate) fn taylor_shift(coeffs: &[C64], c: C64) -> Vec<C64> {
    let mut a = coeffs.to_vec();
    let n = a.len().saturating_sub(1);
    for k in 0..n {
        for i in (k..n).rev() {
            let next = a[i + 1];
            a[i] += c * next;
        }
    }
    a
}

/// Same recursion on magnitudes: a running-error bound for [`taylor_shift`].
pub(crate) fn taylor_shift_abs(coeffs: &[C64], c_abs: f64) -> Vec<f64> {
    let mut a: Vec<f64> = coeffs.iter().map(|z| z.norm()).collect();
    let n = a.len().saturating_sub(1);
    for k in 0..n {
        for i in (k..n).rev() {
            let next = a[i + 1];
            a[i] += c_abs * next;
        }
    }
    a
}

/// All roots of a polynomial whose leading coefficient is non-zero.
///
/// Eigenvalues of the companion matrix (Aberth iteration when the Schur
/// decomposition stalls), followed by a few guarded Newton steps per root. Roots outside the unit disk are refined on the reversed
/// polynomial in `1/x`.
pub(crate) fn roots(coeffs: &[C64]) -> Vec<C64> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    debug_assert!(lead != zero());
    if degree == 1 {
        return vec![-coeffs[0] / lead];
    }

    let raw = companion_eigenvalues(coeffs).unwrap_or_else(|| aberth(coeffs));
    let reversed: Vec<C64> = coeffs.iter().rev().copied().collect();
    raw.into_iter()
        .map(|r| {
            if r.norm() <= 1.0 {
                polish(coeffs, r)
            } else {
                let w = polish(&reversed, r.inv());
                if w == zero() {
                    r
                } else {
                    w.inv()
                }
            }
        })
        .collect()
}

fn companion_eigenvalues(coeffs: &[C64]) -> Option<Vec<C64>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let mut companion = DMatrix::<C64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -coeffs[i] / lead;
    }
    // Unshifted-looking companions such as that of x^n - a can stall the
    // QR iteration, hence the iteration cap.
    let schur = Schur::try_new(companion, f64::EPSILON, 100 * degree)?;
    let (_, tri) = schur.unpack();
    let values: Vec<C64> = (0..degree).map(|i| tri[(i, i)]).collect();
    values
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(values)
}

/// Aberth-Ehrlich simultaneous iteration.
fn aberth(coeffs: &[C64]) -> Vec<C64> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree].norm();
    // Cauchy-style radius guess from the coefficient magnitudes.
    let radius = (0..degree)
        .map(|i| (coeffs[i].norm() / lead).powf(1.0 / (degree - i) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut z: Vec<C64> = (0..degree)
        .map(|k| {
            C64::from_polar(
                radius,
                std::f64::consts::TAU * (k as f64 + 0.25) / degree as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner(coeffs, z[i]);
            if p == zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn polish(coeffs: &[C64], mut x: C64) -> C64 {
    let (mut px, _) = horner(coeffs, x);
    for _ in 0..8 {
        let (p, dp) = horner(coeffs, x);
        if p == zero() || dp == zero() {
            break;
        }
        let candidate = x - p / dp;
        let (pc, _) = horner(coeffs, candidate);
        if !(pc.norm() < px.norm()) {
            break;
        }
        x = candidate;
        px = pc;
    }
    x
}
