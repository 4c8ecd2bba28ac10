//! Constructive generation of states inside a prescribed family.
//!
//! A pure state of family `D` comes from drawing `diversity(D)` distinct
//! orientations and giving them the multiplicities of `D`, as when N
//! polarizers are set so that exactly those orientations repeat. Unknown
//! orientations within a prescribed distribution give a mixed state of the
//! family.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::DegeneracyConfiguration;
use crate::majorana::{from_constellation, BlochPoint, Constellation};
use crate::rng::keyed;
use crate::sepbasis::uniform_point;
use crate::state::{DensityMatrix, SymmetricState, C64};

/// Minimum chordal separation between distinct drawn orientations.
pub const MIN_SEPARATION: f64 = 1e-6;
/// Redraws allowed per constellation before giving up.
pub const MAX_REDRAWS: usize = 1000;

/// Distribution of a single orientation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrientationDistribution {
    UniformSphere,
    /// Uniform over the spherical cap of the given angular radius.
    Cap {
        theta: f64,
        phi: f64,
        angular_radius: f64,
    },
}

impl OrientationDistribution {
    pub fn cap(center: BlochPoint, angular_radius: f64) -> Result<Self> {
        if !(angular_radius > 0.0 && angular_radius <= std::f64::consts::PI) {
            return Err(Error::domain(format!(
                "cap radius {angular_radius} outside (0, pi]"
            )));
        }
        Ok(OrientationDistribution::Cap {
            theta: center.theta(),
            phi: center.phi(),
            angular_radius,
        })
    }

    fn validate(&self) -> Result<()> {
        if let OrientationDistribution::Cap {
            theta,
            phi,
            angular_radius,
        } = *self
        {
            BlochPoint::new(theta, phi)?;
            Self::cap(BlochPoint::new(theta, phi)?, angular_radius)?;
        }
        Ok(())
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> BlochPoint {
        match *self {
            OrientationDistribution::UniformSphere => uniform_point(rng),
            OrientationDistribution::Cap {
                theta,
                phi,
                angular_radius,
            } => {
                // Uniform in cos of the angle to the center, then rotate the
                // cap from the north pole onto the center.
                let cos_min = angular_radius.cos();
                let u: f64 = rng.random_range(0.0..=1.0);
                let cos_a = 1.0 - u * (1.0 - cos_min);
                let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
                let psi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let local = [sin_a * psi.cos(), sin_a * psi.sin(), cos_a];
                let (st, ct) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                // R_z(phi) R_y(theta) applied to the local vector.
                let x1 = ct * local[0] + st * local[2];
                let z1 = -st * local[0] + ct * local[2];
                let y1 = local[1];
                BlochPoint::from_vector([cp * x1 - sp * y1, sp * x1 + cp * y1, z1])
            }
        }
    }
}

/// Parameters of a mixed-state draw inside a family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    pub family: DegeneracyConfiguration,
    /// Number of pure projectors in the convex sum.
    pub n_terms: usize,
    /// Draw each term from the family or any of its descendants.
    pub include_descendants: bool,
    pub orientation_distribution: OrientationDistribution,
    pub seed: u64,
}

/// Draws one orientation per part of `d` (largest part first), redrawing
/// any orientation that lands within [`MIN_SEPARATION`] of an earlier one.
pub fn sample_constellation<R: Rng>(
    d: &DegeneracyConfiguration,
    dist: &OrientationDistribution,
    rng: &mut R,
) -> Result<Constellation> {
    dist.validate()?;
    let mut points: Vec<(BlochPoint, usize)> = Vec::with_capacity(d.diversity());
    let mut redraws = 0;
    for &part in d.parts() {
        loop {
            let p = dist.sample(rng);
            if points
                .iter()
                .all(|(q, _)| q.chordal_distance(&p) > MIN_SEPARATION)
            {
                points.push((p, part));
                break;
            }
            redraws += 1;
            if redraws >= MAX_REDRAWS {
                return Err(Error::numerical(format!(
                    "orientation distribution too narrow to draw {} distinct points",
                    d.diversity()
                )));
            }
        }
    }
    Constellation::with_tolerance(points, MIN_SEPARATION)
}

/// A pure state of family `d`.
pub fn sample_pure_in_family<R: Rng>(
    d: &DegeneracyConfiguration,
    dist: &OrientationDistribution,
    rng: &mut R,
) -> Result<SymmetricState> {
    from_constellation(&sample_constellation(d, dist, rng)?)
}

/// A convex sum of `n_terms` pure projectors drawn inside the family (or its
/// descendant closure), with weights uniform on the probability simplex.
///
/// Term `t` draws its weight, family and orientations from the stream
/// `(seed, t)`.
pub fn sample_mixed_in_family(spec: &SamplingSpec, n: usize) -> Result<DensityMatrix> {
    if spec.family.n_qubits() != n {
        return Err(Error::domain(format!(
            "{} is not a partition of N = {n}",
            spec.family
        )));
    }
    if spec.n_terms == 0 {
        return Err(Error::domain("need at least one term"));
    }
    let candidates = if spec.include_descendants {
        spec.family.closure()
    } else {
        vec![spec.family.clone()]
    };
    let mut weighted = Vec::with_capacity(spec.n_terms);
    for t in 0..spec.n_terms {
        let mut rng = keyed(spec.seed, t as u64);
        let w: f64 = Exp1.sample(&mut rng);
        let family = &candidates[rng.random_range(0..candidates.len())];
        let psi = sample_pure_in_family(family, &spec.orientation_distribution, &mut rng)?;
        weighted.push((w, psi));
    }
    let total: f64 = weighted.iter().map(|(w, _)| w).sum();
    let mut acc = DMatrix::<C64>::zeros(n + 1, n + 1);
    for (w, psi) in &weighted {
        acc += psi.projector().entries().scale(w / total);
    }
    DensityMatrix::from_accumulated(acc)
}

/// Monte Carlo average over random orientation sets.
#[derive(Clone, Debug)]
pub struct PolarizerMixture {
    pub rho: DensityMatrix,
    /// Trace distance between the averages over the first and second half of
    /// the samples; zero for a single sample.
    pub half_trace_distance: f64,
}

/// `(1/n) sum_s |psi_s><psi_s|` with `psi_s` drawn in family `d`; sample `s`
/// uses the stream `(seed, s)`.
pub fn polarizer_mixture(
    d: &DegeneracyConfiguration,
    dist: &OrientationDistribution,
    n_samples: usize,
    seed: u64,
) -> Result<PolarizerMixture> {
    if n_samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    let n = d.n_qubits();
    let half = n_samples / 2;
    let mut first = DMatrix::<C64>::zeros(n + 1, n + 1);
    let mut second = DMatrix::<C64>::zeros(n + 1, n + 1);
    for s in 0..n_samples {
        let mut rng = keyed(seed, s as u64);
        let psi = sample_pure_in_family(d, dist, &mut rng)?;
        let target = if s < half { &mut first } else { &mut second };
        *target += psi.projector().entries();
    }
    let half_trace_distance = if half == 0 {
        0.0
    } else {
        let a = DensityMatrix::from_accumulated(first.clone())?;
        let b = DensityMatrix::from_accumulated(second.clone())?;
        a.trace_distance(&b)?
    };
    let rho = DensityMatrix::from_accumulated(first + second)?;
    Ok(PolarizerMixture {
        rho,
        half_trace_distance,
    })
}

/// Haar-random symmetric pure state: N+1 independent complex Gaussian
/// amplitudes, normalized.
pub fn random_symmetric_pure(n: usize, seed: u64) -> Result<SymmetricState> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let mut rng = keyed(seed, 0);
    let amps: Vec<C64> = (0..=n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    SymmetricState::normalized(amps)
}
