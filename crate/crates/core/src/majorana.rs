//! Majorana constellations: conversion between Dicke amplitudes and the
//! multiset of Bloch-sphere points whose symmetrized product is the state.
//!
//! Convention: a point `(theta, phi)` is the spinor
//! `cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`. The Majorana polynomial of
//! a state with amplitudes `c_k` is
//!
//! ```text
//! Q(t) = sum_k (-1)^k sqrt(C(N,k)) c_k t^(N-k),
//! ```
//!
//! whose roots are the stereographic coordinates `t = tan(theta/2) e^{i phi}`
//! of the points. When the degree drops, the missing roots sit at `t = inf`,
//! the south pole `|1>`.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::families::DegeneracyConfiguration;
use crate::poly;
use crate::state::{binomial, SymmetricState, C64};

/// A point on the Bloch sphere, `theta` in `[0, pi]` and `phi` in `[0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochPoint {
    theta: f64,
    phi: f64,
}

impl BlochPoint {
    /// `|0>`.
    pub const NORTH: BlochPoint = BlochPoint {
        theta: 0.0,
        phi: 0.0,
    };
    /// `|1>`.
    pub const SOUTH: BlochPoint = BlochPoint {
        theta: PI,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::domain(format!(
                "invalid Bloch angles ({theta}, {phi})"
            )));
        }
        Ok(Self::canonical(theta, phi))
    }

    fn canonical(theta: f64, phi: f64) -> Self {
        if theta <= 0.0 {
            return Self::NORTH;
        }
        if theta >= PI {
            return Self::SOUTH;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        BlochPoint { theta, phi }
    }

    /// Point for arbitrary real angles, read geometrically (`theta` outside
    /// `[0, pi]` wraps over the poles).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::from_vector([st * cp, st * sp, ct])
    }

    /// Direction of a non-zero vector in R^3.
    pub fn from_vector([x, y, z]: [f64; 3]) -> Self {
        let rho = x.hypot(y);
        let theta = rho.atan2(z);
        let phi = if rho == 0.0 { 0.0 } else { y.atan2(x) };
        Self::canonical(theta, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(alpha, beta)` with `|eps> = alpha|0> + beta|1>`.
    pub fn spinor(&self) -> (C64, C64) {
        let (s, c) = (self.theta / 2.0).sin_cos();
        (C64::new(c, 0.0), C64::from_polar(s, self.phi))
    }

    /// Euclidean distance between the unit vectors.
    pub fn chordal_distance(&self, other: &BlochPoint) -> f64 {
        let a = self.to_vector();
        let b = other.to_vector();
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    /// Central angle between the two directions.
    pub fn angle_to(&self, other: &BlochPoint) -> f64 {
        let a = self.to_vector();
        let b = other.to_vector();
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        (cross[0].hypot(cross[1]).hypot(cross[2])).atan2(dot)
    }

    fn north_chart(&self) -> C64 {
        C64::from_polar((self.theta / 2.0).tan(), self.phi)
    }

    fn south_chart(&self) -> C64 {
        C64::from_polar(1.0 / (self.theta / 2.0).tan(), -self.phi)
    }

    fn from_north_chart(t: C64) -> Self {
        Self::canonical(2.0 * t.norm().atan(), t.arg())
    }

    fn from_south_chart(w: C64) -> Self {
        Self::canonical(PI - 2.0 * w.norm().atan(), -w.arg())
    }

    // Components below rounding level relative to the other snap to a pole.
    fn from_spinor(a: C64, b: C64) -> Self {
        if b.norm() <= f64::EPSILON * a.norm() {
            return Self::NORTH;
        }
        if a.norm() <= f64::EPSILON * b.norm() {
            return Self::SOUTH;
        }
        Self::canonical(2.0 * b.norm().atan2(a.norm()), b.arg() - a.arg())
    }
}

fn cmp_points(a: &(BlochPoint, usize), b: &(BlochPoint, usize)) -> Ordering {
    b.1.cmp(&a.1)
        .then(a.0.theta.total_cmp(&b.0.theta))
        .then(a.0.phi.total_cmp(&b.0.phi))
}

/// A multiset of Bloch points with multiplicities summing to N.
///
/// Points are kept in canonical order: multiplicity descending, then
/// `theta` ascending, then `phi` ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    n_qubits: usize,
    points: Vec<(BlochPoint, usize)>,
}

impl Constellation {
    /// Distinct points at chordal distance above the default coincidence tolerance.
    pub fn new(points: Vec<(BlochPoint, usize)>) -> Result<Self> {
        Self::with_tolerance(points, crate::DEFAULT_COINCIDENCE_TOL)
    }

    pub fn with_tolerance(mut points: Vec<(BlochPoint, usize)>, tol: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("constellation needs at least one point"));
        }
        if points.iter().any(|(_, m)| *m == 0) {
            return Err(Error::domain("multiplicities must be positive"));
        }
        for (i, (a, _)) in points.iter().enumerate() {
            for (b, _) in &points[i + 1..] {
                let d = a.chordal_distance(b);
                if d <= tol {
                    return Err(Error::domain(format!(
                        "points {a:?} and {b:?} coincide (chordal distance {d:e})"
                    )));
                }
            }
        }
        let n_qubits = points.iter().map(|(_, m)| m).sum();
        points.sort_by(cmp_points);
        Ok(Constellation { n_qubits, points })
    }

    /// Merges points closer than `tol` (single linkage, multiplicity-weighted
    /// spherical centroid) and returns the resulting constellation.
    pub fn clustered(points: &[(BlochPoint, usize)], tol: f64) -> Result<Self> {
        if points.iter().any(|(_, m)| *m == 0) {
            return Err(Error::domain("multiplicities must be positive"));
        }
        let mut pts = points.to_vec();
        loop {
            let groups = single_linkage(&pts, tol);
            if groups.len() == pts.len() {
                break;
            }
            pts = groups
                .iter()
                .map(|g| weighted_centroid(g.iter().map(|&i| pts[i])))
                .collect();
        }
        let n_qubits = pts.iter().map(|(_, m)| m).sum();
        if n_qubits == 0 {
            return Err(Error::domain("constellation needs at least one point"));
        }
        pts.sort_by(cmp_points);
        Ok(Constellation {
            n_qubits,
            points: pts,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn points(&self) -> &[(BlochPoint, usize)] {
        &self.points
    }

    /// Number of distinct points.
    pub fn diversity(&self) -> usize {
        self.points.len()
    }

    /// Multiplicities in non-increasing order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.points.iter().map(|(_, m)| *m).collect()
    }

    pub fn degeneracy(&self) -> DegeneracyConfiguration {
        DegeneracyConfiguration::new(self.multiplicities()).expect("multiplicities are positive")
    }

    /// Every point repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<BlochPoint> {
        self.points
            .iter()
            .flat_map(|(p, m)| std::iter::repeat_n(*p, *m))
            .collect()
    }
}

fn single_linkage(pts: &[(BlochPoint, usize)], radius: f64) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if pts[i].0.chordal_distance(&pts[j].0) < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn weighted_centroid(pts: impl Iterator<Item = (BlochPoint, usize)>) -> (BlochPoint, usize) {
    let mut acc = [0.0; 3];
    let mut total = 0;
    let mut first = None;
    for (p, m) in pts {
        first.get_or_insert(p);
        let v = p.to_vector();
        for (a, x) in acc.iter_mut().zip(v) {
            *a += m as f64 * x;
        }
        total += m;
    }
    let norm = acc.iter().map(|x| x * x).sum::<f64>().sqrt();
    // Antipodal cancellation cannot happen for clusters of nearby points.
    let point = if norm > 0.0 {
        BlochPoint::from_vector(acc)
    } else {
        first.unwrap()
    };
    (point, total)
}

/// Unnormalized Dicke amplitudes of the symmetrized product of the given spinors.
pub(crate) fn symmetrized_amplitudes(spinors: &[(C64, C64)]) -> Vec<C64> {
    let n = spinors.len();
    // prod_i (alpha_i + beta_i y) = sum_k e_k y^k, and c_k = e_k / sqrt(C(N,k)).
    let mut e = Vec::with_capacity(n + 1);
    e.push(C64::new(1.0, 0.0));
    for &(a, b) in spinors {
        e.push(C64::new(0.0, 0.0));
        for k in (0..e.len()).rev() {
            let lower = if k > 0 {
                e[k - 1] * b
            } else {
                C64::new(0.0, 0.0)
            };
            e[k] = e[k] * a + lower;
        }
    }
    e.iter()
        .enumerate()
        .map(|(k, x)| x / binomial(n, k).sqrt())
        .collect()
}

/// The normalized symmetric state with the given Majorana points.
pub fn from_constellation(c: &Constellation) -> Result<SymmetricState> {
    let spinors: Vec<_> = c.expanded().iter().map(BlochPoint::spinor).collect();
    SymmetricState::normalized(symmetrized_amplitudes(&spinors))
}

/// Relative size below which leading Majorana coefficients count as zero.
const LEADING_ZERO_TOL: f64 = 1e-12;
/// Slack, in units of machine epsilon, allowed on the Taylor coefficients of
/// a candidate multiple root.
const MULTIPLE_ROOT_SLACK: f64 = 1e3;
/// Coarsest cluster radius tried when resolving multiple roots.
const START_RADIUS: f64 = 0.5;

/// The Majorana constellation of `s`, with points closer than
/// `coincidence_tol` (chordal) merged.
///
/// Multiple roots are resolved before the final merge: groups of computed
/// roots that are consistent, to rounding level, with an exact multiple root
/// are replaced by that root. This keeps multiplicities exact even though the
/// individually computed roots of an m-fold root scatter by roughly
/// `eps^(1/m)`.
pub fn to_constellation(s: &SymmetricState, coincidence_tol: f64) -> Result<Constellation> {
    if !(coincidence_tol > 0.0 && coincidence_tol < 0.5) {
        return Err(Error::domain(format!(
            "coincidence tolerance {coincidence_tol} outside (0, 0.5)"
        )));
    }
    let norm_sqr: f64 = s.amplitudes().iter().map(|c| c.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > crate::state::NORM_TOL {
        return Err(Error::domain("state is not normalized"));
    }
    let n = s.n_qubits();

    // q[d] multiplies t^d, d = N - k.
    let mut q = vec![C64::new(0.0, 0.0); n + 1];
    for (k, c) in s.amplitudes().iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        q[n - k] = c * (sign * binomial(n, k).sqrt());
    }
    let scale = q.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut removed = vec![C64::new(0.0, 0.0); n + 1];
    let mut top = n;
    while q[top].norm() < LEADING_ZERO_TOL * scale {
        removed[top] = q[top];
        q[top] = C64::new(0.0, 0.0);
        top -= 1;
    }
    let at_infinity = n - top;
    let at_zero = q.iter().take_while(|z| **z == C64::new(0.0, 0.0)).count();

    let mut raw: Vec<(BlochPoint, usize)> = Vec::with_capacity(n);
    raw.extend(std::iter::repeat_n((BlochPoint::SOUTH, 1), at_infinity));
    raw.extend(std::iter::repeat_n((BlochPoint::NORTH, 1), at_zero));
    for t in poly::roots(&q[at_zero..=top]) {
        raw.push((BlochPoint::from_north_chart(t), 1));
    }
    if raw.len() != n {
        return Err(Error::numerical(format!(
            "found {} roots for degree {n}",
            raw.len()
        )));
    }

    let charts = Charts::new(q, removed);
    let resolved = resolve(&raw, START_RADIUS, coincidence_tol, &charts);
    let merged = Constellation::clustered(&resolved, coincidence_tol)?;
    let refined = refine_on_pattern(s.amplitudes(), merged.points());
    Constellation::clustered(&refined, coincidence_tol)
}

/// Gauss-Newton iterations allowed when refining on a fixed multiplicity pattern.
const REFINE_ITERATIONS: usize = 20;

// Coefficients of prod_j (a_j + b_j y)^{m_j}, skipping one copy of factor `skip`.
fn factor_product(spinors: &[(C64, C64)], mults: &[usize], skip: Option<usize>) -> Vec<C64> {
    let mut e = vec![C64::new(1.0, 0.0)];
    for (j, (&(a, b), &m)) in spinors.iter().zip(mults).enumerate() {
        let copies = if skip == Some(j) { m - 1 } else { m };
        for _ in 0..copies {
            e.push(C64::new(0.0, 0.0));
            for k in (0..e.len()).rev() {
                let lower = if k > 0 {
                    e[k - 1] * b
                } else {
                    C64::new(0.0, 0.0)
                };
                e[k] = e[k] * a + lower;
            }
        }
    }
    e
}

/// Refits the distinct points of a constellation to the amplitudes with the
/// multiplicities held fixed. With the pattern known, the points are well
/// conditioned functions of the amplitudes even where the polynomial roots
/// are not, e.g. a simple root next to a high-multiplicity one.
fn refine_on_pattern(amps: &[C64], points: &[(BlochPoint, usize)]) -> Vec<(BlochPoint, usize)> {
    use nalgebra::{DMatrix, DVector};

    let n = amps.len() - 1;
    let d = points.len();
    let mults: Vec<usize> = points.iter().map(|(_, m)| *m).collect();
    let target = DVector::from_iterator(
        n + 1,
        amps.iter()
            .enumerate()
            .map(|(k, c)| c * binomial(n, k).sqrt()),
    );
    let mut spinors: Vec<(C64, C64)> = points.iter().map(|(p, _)| p.spinor()).collect();
    let model = |spinors: &[(C64, C64)]| DVector::from_vec(factor_product(spinors, &mults, None));
    // Best complex scale s for s * F against the target.
    let fit = |f: &DVector<C64>| -> (C64, f64) {
        let scale = f.dotc(&target) / C64::new(f.norm_squared(), 0.0);
        (scale, (f * scale - &target).norm())
    };

    let (mut scale, mut residual) = fit(&model(&spinors));
    for _ in 0..REFINE_ITERATIONS {
        let f = model(&spinors);
        let mut jac = DMatrix::<C64>::zeros(n + 1, 2 * d + 1);
        jac.set_column(0, &f);
        for j in 0..d {
            let g = factor_product(&spinors, &mults, Some(j));
            let w = scale * mults[j] as f64;
            for (k, gk) in g.iter().enumerate() {
                jac[(k, 1 + 2 * j)] += gk * w;
                jac[(k + 1, 2 + 2 * j)] += gk * w;
            }
        }
        let r = &target - &f * scale;
        let Ok(step) = jac.svd(true, true).solve(&r, 1e-12 * (1.0 + scale.norm())) else {
            break;
        };
        let candidate: Vec<(C64, C64)> = spinors
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| {
                let (a, b) = (a + step[1 + 2 * j], b + step[2 + 2 * j]);
                let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
                (a / norm, b / norm)
            })
            .collect();
        let (new_scale, new_residual) = fit(&model(&candidate));
        if !(new_residual < residual) {
            break;
        }
        spinors = candidate;
        scale = new_scale;
        residual = new_residual;
    }
    spinors
        .iter()
        .zip(&mults)
        .map(|(&(a, b), &m)| (BlochPoint::from_spinor(a, b), m))
        .collect()
}

struct Charts {
    north: Vec<C64>,
    south: Vec<C64>,
    north_removed: Vec<C64>,
    south_removed: Vec<C64>,
    north_full: Vec<C64>,
    south_full: Vec<C64>,
}

impl Charts {
    fn new(q: Vec<C64>, removed: Vec<C64>) -> Self {
        let south: Vec<C64> = q.iter().rev().copied().collect();
        let south_removed: Vec<C64> = removed.iter().rev().copied().collect();
        let north_full: Vec<C64> = q.iter().zip(&removed).map(|(a, b)| a + b).collect();
        let south_full: Vec<C64> = north_full.iter().rev().copied().collect();
        Charts {
            north: q,
            south,
            north_removed: removed,
            south_removed,
            north_full,
            south_full,
        }
    }

    /// If the points look like one m-fold root, that root.
    fn multiple_root(&self, group: &[(BlochPoint, usize)], radius: f64) -> Option<BlochPoint> {
        let m: usize = group.iter().map(|(_, k)| k).sum();
        let (center, _) = weighted_centroid(group.iter().copied());
        let north = center.theta <= PI / 2.0;
        let (coeffs, removed, full) = if north {
            (&self.north, &self.north_removed, &self.north_full)
        } else {
            (&self.south, &self.south_removed, &self.south_full)
        };
        let mut c = if north {
            center.north_chart()
        } else {
            center.south_chart()
        };
        for _ in 0..30 {
            let t = poly::taylor_shift(coeffs, c);
            let lead = t[m];
            if lead == C64::new(0.0, 0.0) {
                return None;
            }
            let step = t[m - 1] / (lead * m as f64);
            c -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + c.norm()) {
                break;
            }
        }
        let t = poly::taylor_shift(coeffs, c);
        let bound = poly::taylor_shift_abs(full, c.norm());
        let cut = poly::taylor_shift_abs(removed, c.norm());
        let consistent = (0..m)
            .all(|j| t[j].norm() <= MULTIPLE_ROOT_SLACK * f64::EPSILON * bound[j] + 2.0 * cut[j]);
        if !consistent {
            return None;
        }
        let root = if north {
            BlochPoint::from_north_chart(c)
        } else {
            BlochPoint::from_south_chart(c)
        };
        (root.chordal_distance(&center) <= radius).then_some(root)
    }
}

fn resolve(
    pts: &[(BlochPoint, usize)],
    radius: f64,
    tol: f64,
    charts: &Charts,
) -> Vec<(BlochPoint, usize)> {
    let mut out = Vec::with_capacity(pts.len());
    for group in single_linkage(pts, radius) {
        let members: Vec<_> = group.iter().map(|&i| pts[i]).collect();
        if members.len() == 1 {
            out.push(members[0]);
        } else if let Some(root) = charts.multiple_root(&members, radius) {
            out.push((root, members.iter().map(|(_, m)| m).sum()));
        } else if radius / 2.0 >= tol {
            out.extend(resolve(&members, radius / 2.0, tol, charts));
        } else {
            out.extend(members);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{dicke, ghz, tetrahedron_state};

    fn same_up_to_phase(a: &SymmetricState, b: &SymmetricState, tol: f64) -> bool {
        (a.overlap(b).unwrap().norm() - 1.0).abs() < tol
    }

    #[test]
    fn point_canonicalization() {
        let p = BlochPoint::new(0.0, 1.3).unwrap();
        assert_eq!(p, BlochPoint::NORTH);
        let p = BlochPoint::new(PI, 5.0).unwrap();
        assert_eq!(p, BlochPoint::SOUTH);
        let p = BlochPoint::new(1.0, -0.5).unwrap();
        assert!((p.phi() - (TAU - 0.5)).abs() < 1e-15);
        assert!(BlochPoint::new(-0.1, 0.0).is_err());
        assert!(BlochPoint::new(1.0, f64::NAN).is_err());
        let q = BlochPoint::from_angles(-1.0, 0.0);
        assert!((q.theta() - 1.0).abs() < 1e-15 && (q.phi() - PI).abs() < 1e-15);
    }

    #[test]
    fn chart_round_trip() {
        let p = BlochPoint::new(2.5, 4.0).unwrap();
        assert!(BlochPoint::from_north_chart(p.north_chart()).chordal_distance(&p) < 1e-14);
        assert!(BlochPoint::from_south_chart(p.south_chart()).chordal_distance(&p) < 1e-14);
    }

    #[test]
    fn single_point_expands_like_a_product_state() {
        let (theta, phi) = (0.7, 2.1);
        let n = 5;
        let p = BlochPoint::new(theta, phi).unwrap();
        let s = from_constellation(&Constellation::new(vec![(p, n)]).unwrap()).unwrap();
        for (k, a) in s.amplitudes().iter().enumerate() {
            let expected = C64::from_polar(
                binomial(n, k).sqrt()
                    * (theta / 2.0).cos().powi((n - k) as i32)
                    * (theta / 2.0).sin().powi(k as i32),
                k as f64 * phi,
            );
            assert!((a - expected).norm() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn poles_give_dicke_states() {
        for n in 1..=6 {
            for k in 0..=n {
                let mut pts = Vec::new();
                if k > 0 {
                    pts.push((BlochPoint::SOUTH, k));
                }
                if k < n {
                    pts.push((BlochPoint::NORTH, n - k));
                }
                let s = from_constellation(&Constellation::new(pts).unwrap()).unwrap();
                assert!(same_up_to_phase(&s, &dicke(n, k).unwrap(), 1e-14));
            }
        }
    }

    #[test]
    fn dicke_and_ghz_constellations() {
        let c = to_constellation(&dicke(4, 1).unwrap(), 1e-6).unwrap();
        assert_eq!(c.multiplicities(), vec![3, 1]);
        assert_eq!(c.points()[0].0, BlochPoint::NORTH);
        assert_eq!(c.points()[1].0, BlochPoint::SOUTH);
        let c = to_constellation(&ghz(4).unwrap(), 1e-6).unwrap();
        assert_eq!(c.multiplicities(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn tetrahedron_constellation_is_regular() {
        let c = to_constellation(&tetrahedron_state(), 1e-6).unwrap();
        assert_eq!(c.multiplicities(), vec![1, 1, 1, 1]);
        let target = (-1.0f64 / 3.0).acos();
        let pts = c.expanded();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!((pts[i].angle_to(&pts[j]) - target).abs() < 1e-10);
            }
        }
        // Regular tetrahedron with a vertex at the north pole reproduces the state.
        let back = from_constellation(&c).unwrap();
        assert!(same_up_to_phase(&back, &tetrahedron_state(), 1e-12));
    }

    #[test]
    fn tetrahedron_from_vertices() {
        let theta = (-1.0f64 / 3.0).acos();
        let mut pts = vec![(BlochPoint::NORTH, 1)];
        // Orientation fixed by the constellation of the state itself.
        let phase0 = to_constellation(&tetrahedron_state(), 1e-6)
            .unwrap()
            .points()
            .iter()
            .find(|(p, _)| p.theta() > 0.1)
            .unwrap()
            .0
            .phi();
        for j in 0..3 {
            pts.push((
                BlochPoint::new(theta, phase0 + j as f64 * TAU / 3.0).unwrap(),
                1,
            ));
        }
        let s = from_constellation(&Constellation::new(pts).unwrap()).unwrap();
        assert!(same_up_to_phase(&s, &tetrahedron_state(), 1e-12));
    }

    #[test]
    fn global_phase_does_not_move_points() {
        let s = tetrahedron_state();
        let rotated = SymmetricState::new(
            s.amplitudes()
                .iter()
                .map(|a| a * C64::from_polar(1.0, 0.83))
                .collect(),
        )
        .unwrap();
        let a = to_constellation(&s, 1e-6).unwrap();
        let b = to_constellation(&rotated, 1e-6).unwrap();
        assert_eq!(a.multiplicities(), b.multiplicities());
        for (p, m) in a.points() {
            let nearest = b
                .points()
                .iter()
                .filter(|(_, k)| k == m)
                .map(|(q, _)| p.chordal_distance(q))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-12);
        }
    }

    #[test]
    fn high_multiplicity_roots_stay_exact() {
        let p = BlochPoint::new(1.1, 0.4).unwrap();
        let q = BlochPoint::new(2.6, 3.9).unwrap();
        for (a, b) in [(6, 0), (5, 1), (4, 2), (3, 3), (9, 1), (7, 3)] {
            let mut pts = vec![(p, a)];
            if b > 0 {
                pts.push((q, b));
            }
            let c = Constellation::new(pts).unwrap();
            let s = from_constellation(&c).unwrap();
            let back = to_constellation(&s, 1e-6).unwrap();
            assert_eq!(back.multiplicities(), c.multiplicities(), "({a},{b})");
            for ((x, _), (y, _)) in back.points().iter().zip(c.points()) {
                assert!(x.chordal_distance(y) < 1e-8, "({a},{b})");
            }
        }
    }

    #[test]
    fn constellation_validation() {
        let p = BlochPoint::new(1.0, 1.0).unwrap();
        assert!(Constellation::new(vec![(p, 1), (p, 2)]).is_err());
        assert!(Constellation::new(vec![(p, 0)]).is_err());
        assert!(Constellation::new(vec![]).is_err());
        let merged = Constellation::clustered(&[(p, 1), (p, 2)], 1e-6).unwrap();
        assert_eq!(merged.multiplicities(), vec![3]);
    }

    #[test]
    fn tolerance_bounds() {
        let s = ghz(3).unwrap();
        assert!(to_constellation(&s, 0.0).is_err());
        assert!(to_constellation(&s, 0.5).is_err());
    }
}
