mod common;

use symfam::sampler::{
    polarizer_mixture, random_symmetric_pure, sample_constellation, sample_mixed_in_family,
    sample_pure_in_family, OrientationDistribution, SamplingSpec,
};
use symfam::{
    build_witness, classify_pure, descends, enumerate_partitions, BlochPoint,
    DegeneracyConfiguration, DensityMatrix, OptimizerConfig, DEFAULT_COINCIDENCE_TOL,
};

const UNIFORM: OrientationDistribution = OrientationDistribution::UniformSphere;

fn family(s: &str) -> DegeneracyConfiguration {
    s.parse().unwrap()
}

#[test]
fn sampled_pure_states_have_the_requested_family() {
    for n in 1..=6 {
        for d in enumerate_partitions(n).unwrap() {
            let mut rng = common::rng(n as u64 * 100 + d.diversity() as u64);
            for _ in 0..100 {
                let psi = sample_pure_in_family(&d, &UNIFORM, &mut rng).unwrap();
                assert_eq!(classify_pure(&psi, DEFAULT_COINCIDENCE_TOL).unwrap(), d);
            }
        }
    }
}

#[test]
fn random_pure_states_are_generic() {
    for n in 1..=8 {
        let generic = DegeneracyConfiguration::generic(n).unwrap();
        for seed in 0..100 {
            let psi = random_symmetric_pure(n, seed).unwrap();
            assert_eq!(
                classify_pure(&psi, DEFAULT_COINCIDENCE_TOL).unwrap(),
                generic
            );
        }
    }
    assert_ne!(
        random_symmetric_pure(3, 1).unwrap(),
        random_symmetric_pure(3, 2).unwrap()
    );
    assert!(random_symmetric_pure(0, 0).is_err());
}

#[test]
fn mixed_samples_are_deterministic_and_valid() {
    let spec = SamplingSpec {
        family: family("2,1,1"),
        n_terms: 6,
        include_descendants: true,
        orientation_distribution: UNIFORM,
        seed: 42,
    };
    let a = sample_mixed_in_family(&spec, 4).unwrap();
    let b = sample_mixed_in_family(&spec, 4).unwrap();
    assert_eq!(a, b);
    assert!(DensityMatrix::new(a.entries().clone()).is_ok());
    assert!(a.rank(1e-9) <= 6);
    let mut other = spec.clone();
    other.seed = 43;
    assert_ne!(sample_mixed_in_family(&other, 4).unwrap(), a);
}

#[test]
fn mixed_sampling_rejects_bad_specs() {
    let mut spec = SamplingSpec {
        family: family("3,1"),
        n_terms: 0,
        include_descendants: false,
        orientation_distribution: UNIFORM,
        seed: 0,
    };
    assert!(sample_mixed_in_family(&spec, 4).is_err());
    spec.n_terms = 2;
    assert!(sample_mixed_in_family(&spec, 5).is_err());
    spec.orientation_distribution = OrientationDistribution::Cap {
        theta: 0.3,
        phi: 0.0,
        angular_radius: 0.0,
    };
    assert!(sample_mixed_in_family(&spec, 4).is_err());
}

#[test]
fn cap_samples_stay_inside_the_cap() {
    let center = BlochPoint::new(2.0, 4.0).unwrap();
    let dist = OrientationDistribution::cap(center, 0.3).unwrap();
    let mut rng = common::rng(31);
    for _ in 0..2000 {
        assert!(dist.sample(&mut rng).angle_to(&center) <= 0.3 + 1e-12);
    }
    let c = sample_constellation(&family("2,1"), &dist, &mut rng).unwrap();
    assert_eq!(c.multiplicities(), vec![2, 1]);
    assert!(OrientationDistribution::cap(center, 3.5).is_err());
}

#[test]
fn uniform_sphere_has_zero_mean() {
    let mut rng = common::rng(32);
    let mut mean = [0.0; 3];
    let n = 20_000;
    for _ in 0..n {
        let v = UNIFORM.sample(&mut rng).to_vector();
        for i in 0..3 {
            mean[i] += v[i] / n as f64;
        }
    }
    // Standard error per component is about 1/sqrt(3n).
    assert!(mean.iter().all(|m| m.abs() < 0.02), "{mean:?}");
}

#[test]
fn polarizer_mixture_limits() {
    let single = polarizer_mixture(&family("3"), &UNIFORM, 1, 5).unwrap();
    assert_eq!(single.rho.rank(1e-9), 1);
    assert_eq!(single.half_trace_distance, 0.0);

    let mc = polarizer_mixture(&family("3"), &UNIFORM, 40_000, 5).unwrap();
    let uniform = DensityMatrix::maximally_mixed(3).unwrap();
    assert!(mc.rho.trace_distance(&uniform).unwrap() < 0.02);
    assert!(mc.half_trace_distance < 0.03);
    assert!(polarizer_mixture(&family("3"), &UNIFORM, 0, 5).is_err());
}

#[test]
fn descendant_samples_respect_ancestor_witnesses() {
    let cfg = OptimizerConfig::default();
    let reference = random_symmetric_pure(4, 77).unwrap();
    let all = enumerate_partitions(4).unwrap();
    for d in &all {
        if d.diversity() == 4 {
            continue;
        }
        let w = build_witness(&reference, d, &cfg).unwrap();
        for d2 in all.iter().filter(|x| descends(d, x).unwrap()) {
            for seed in 0..50 {
                let spec = SamplingSpec {
                    family: d2.clone(),
                    n_terms: 1 + seed as usize % 3,
                    include_descendants: false,
                    orientation_distribution: UNIFORM,
                    seed,
                };
                let rho = sample_mixed_in_family(&spec, 4).unwrap();
                assert!(
                    w.evaluate(&rho).unwrap() >= -1e-7,
                    "{d} witness on {d2} sample"
                );
            }
        }
    }
}

#[test]
fn spec_serializes() {
    let spec = SamplingSpec {
        family: family("2,2"),
        n_terms: 3,
        include_descendants: true,
        orientation_distribution: OrientationDistribution::Cap {
            theta: 1.0,
            phi: 2.0,
            angular_radius: 0.5,
        },
        seed: 9,
    };
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<SamplingSpec>(&text).unwrap(), spec);
}
