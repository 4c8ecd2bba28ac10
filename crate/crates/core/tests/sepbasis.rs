mod common;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use symfam::sampler::random_symmetric_pure;
use symfam::sepbasis::{
    build_basis, choose_points, coordinates, decompose, decompose_operator, f_coeffs,
    from_coordinates, operator_indices, reconstruct, sigma_matrix, SeparableBasis,
    DEFAULT_CONDITION_THRESHOLD,
};
use symfam::{mix, DensityMatrix, Error, C64};

fn basis(n: usize) -> SeparableBasis {
    build_basis(
        n,
        &choose_points(n, 0, DEFAULT_CONDITION_THRESHOLD, 50).unwrap(),
    )
    .unwrap()
}

fn random_density(n: usize, seed: u64) -> DensityMatrix {
    let mut rng = common::rng(seed);
    let terms = rng.random_range(1..=n + 1);
    let weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let parts: Vec<(f64, DensityMatrix)> = weights
        .iter()
        .enumerate()
        .map(|(t, w)| {
            (
                w / total,
                random_symmetric_pure(n, seed * 31 + t as u64)
                    .unwrap()
                    .projector(),
            )
        })
        .collect();
    mix(&parts).unwrap()
}

fn random_traceless_hermitian<R: Rng>(n: usize, rng: &mut R) -> DMatrix<C64> {
    use rand_distr::{Distribution, StandardNormal};
    let dim = n + 1;
    let g = DMatrix::<C64>::from_fn(dim, dim, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let mut h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    let shift = h.trace() / C64::new(dim as f64, 0.0);
    for i in 0..dim {
        h[(i, i)] -= shift;
    }
    let norm = h.norm();
    h / C64::new(norm, 0.0)
}

#[test]
fn operator_basis_is_complete() {
    for n in 1..=6 {
        let idx = operator_indices(n);
        assert_eq!(idx.len(), (n + 1) * (n + 1));
        // Real vectorization: real and imaginary parts of every entry.
        let dim = n + 1;
        let mut m = DMatrix::<f64>::zeros(2 * dim * dim, idx.len());
        for (col, &i) in idx.iter().enumerate() {
            let s = sigma_matrix(n, i).unwrap();
            assert!(common::max_abs(&(&s - s.adjoint())) == 0.0);
            for (r, z) in s.iter().enumerate() {
                m[(2 * r, col)] = z.re;
                m[(2 * r + 1, col)] = z.im;
            }
        }
        assert_eq!(m.rank(1e-10), idx.len(), "N = {n}");
    }
}

#[test]
fn f_coefficients_expand_product_projectors() {
    let mut rng = common::rng(21);
    for n in 1..=6 {
        for _ in 0..100 {
            let p = common::uniform_point(&mut rng);
            let v = common::product_state_dicke(n, &p);
            let direct = &v * v.adjoint();
            let f = f_coeffs(n, &p);
            let mut sum = DMatrix::<C64>::zeros(n + 1, n + 1);
            for (fl, &idx) in f.iter().zip(&operator_indices(n)) {
                sum += sigma_matrix(n, idx).unwrap() * C64::new(*fl, 0.0);
            }
            assert!(common::max_abs(&(sum - &direct)) < 1e-12, "N = {n}");
            assert!(common::max_abs(&(from_coordinates(n, &f) - direct)) < 1e-12);
        }
    }
}

#[test]
fn coordinates_invert_from_coordinates() {
    let mut rng = common::rng(22);
    for n in 1..=5 {
        let h = random_traceless_hermitian(n, &mut rng);
        let x = coordinates(&h);
        assert!(common::max_abs(&(from_coordinates(n, &x) - &h)) < 1e-14);
    }
}

#[test]
fn decompose_reconstruct_round_trip() {
    for n in 1..=6 {
        let b = basis(n);
        assert_eq!(b.directions().len(), (n + 1) * (n + 1));
        assert!(b.condition_number() < DEFAULT_CONDITION_THRESHOLD);
        for s in 0..100 {
            let rho = random_density(n, 1_000 * n as u64 + s);
            let x = decompose(&rho, &b).unwrap();
            assert!((x.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            let back = reconstruct(&x, &b).unwrap();
            assert!(
                common::max_abs(&(back - rho.entries())) < 1e-9,
                "N = {n}, state {s}"
            );
        }
    }
}

#[test]
fn unit_coefficient_vectors_give_basis_projectors() {
    let n = 3;
    let b = basis(n);
    for i in [0, 7, 15] {
        let mut e = vec![0.0; 16];
        e[i] = 1.0;
        let got = reconstruct(&e, &b).unwrap();
        let v = common::product_state_dicke(n, &b.directions()[i]);
        assert!(common::max_abs(&(got - &v * v.adjoint())) < 1e-12);
        assert!(common::max_abs(&(b.projector(i) - &v * v.adjoint())) < 1e-12);
    }
    let zero = reconstruct(&[0.0; 16], &b).unwrap();
    assert_eq!(common::max_abs(&zero), 0.0);
}

fn barycenter(b: &SeparableBasis) -> DMatrix<C64> {
    let n = b.n_qubits();
    let count = b.directions().len();
    let mut bary = DMatrix::<C64>::zeros(n + 1, n + 1);
    for i in 0..count {
        bary += b.projector(i);
    }
    bary / C64::new(count as f64, 0.0)
}

// Random unit vector in coordinate space with zero trace component.
fn traceless_direction<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    let count = (n + 1) * (n + 1);
    let mut u: Vec<f64> = (0..count).map(|_| StandardNormal.sample(rng)).collect();
    let mean = u[..=n].iter().sum::<f64>() / (n + 1) as f64;
    for x in &mut u[..=n] {
        *x -= mean;
    }
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    u.iter().map(|x| x / norm).collect()
}

// Radius, in coordinate space, of a ball around the barycenter whose
// decompositions are all positive: 1/M over the largest row norm of F^{-T}.
fn certified_radius(b: &SeparableBasis) -> f64 {
    let count = b.directions().len();
    let inv_t = b.f_matrix().clone().try_inverse().unwrap().transpose();
    let worst = inv_t.row_iter().map(|r| r.norm()).fold(0.0, f64::max);
    1.0 / count as f64 / worst
}

fn perturbed_min_coefficient(b: &SeparableBasis, dir: &[f64], size: f64) -> f64 {
    let n = b.n_qubits();
    let step: Vec<f64> = dir.iter().map(|x| x * size).collect();
    let perturbed = barycenter(b) + from_coordinates(n, &step);
    let x = decompose_operator(&perturbed, b).unwrap();
    assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    x.iter().copied().fold(f64::INFINITY, f64::min)
}

#[test]
fn barycenter_decomposes_uniformly() {
    for n in 1..=6 {
        let b = basis(n);
        let count = b.directions().len() as f64;
        let x = decompose_operator(&barycenter(&b), &b).unwrap();
        assert!(
            x.iter().all(|&c| (c - 1.0 / count).abs() < 1e-9 && c > 0.0),
            "N = {n}"
        );
    }
}

#[test]
fn barycenter_ball_of_size_1e3_for_single_qubit_bases() {
    let mut rng = common::rng(23);
    for seed in 0..8 {
        let b = build_basis(
            1,
            &choose_points(1, seed, DEFAULT_CONDITION_THRESHOLD, 50).unwrap(),
        )
        .unwrap();
        for _ in 0..20 {
            let dir = traceless_direction(1, &mut rng);
            assert!(
                perturbed_min_coefficient(&b, &dir, 1e-3) > 0.0,
                "seed {seed}"
            );
        }
    }
}

#[test]
fn barycenter_ball_within_certified_radius() {
    let mut rng = common::rng(24);
    for n in 1..=6 {
        let b = basis(n);
        let r = certified_radius(&b);
        assert!(r > 0.0 && r.is_finite(), "N = {n}");
        for _ in 0..20 {
            let dir = traceless_direction(n, &mut rng);
            let min = perturbed_min_coefficient(&b, &dir, 0.5 * r);
            assert!(min > 0.0, "N = {n}: radius {r:e}, min coefficient {min:e}");
        }
    }
}

#[test]
fn entangled_projectors_need_negative_coefficients() {
    let b = basis(4);
    let x = decompose(&symfam::ghz(4).unwrap().projector(), &b).unwrap();
    assert!(x.iter().any(|&c| c < 0.0));
    let x = decompose(&DensityMatrix::maximally_mixed(4).unwrap(), &b).unwrap();
    assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-10);
}

#[test]
fn choose_points_is_deterministic_and_reports_failure() {
    let a = choose_points(3, 7, 1e8, 50).unwrap();
    let b = choose_points(3, 7, 1e8, 50).unwrap();
    assert_eq!(a, b);
    match choose_points(3, 7, 1.000001, 4) {
        Err(Error::Conditioning {
            attempts,
            best_condition,
        }) => {
            assert_eq!(attempts, 4);
            assert!(best_condition > 1.000001);
        }
        other => panic!("{other:?}"),
    }
    assert!(choose_points(0, 0, 1e8, 1).is_err());
}

#[test]
fn build_basis_rejects_degenerate_points() {
    let p = symfam::BlochPoint::new(0.4, 0.2).unwrap();
    assert!(build_basis(2, &[p; 9]).is_err());
    assert!(build_basis(2, &[p; 4]).is_err());
    let b = basis(2);
    let v = DVector::<f64>::zeros(3);
    assert!(reconstruct(v.as_slice(), &b).is_err());
}
