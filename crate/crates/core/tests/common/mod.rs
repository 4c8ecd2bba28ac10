//! Test-only oracles and generators, independent of the library's algorithms.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symfam::{BlochPoint, Constellation, DegeneracyConfiguration};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of partitions of `n` with every part at most `max`, by recursion.
pub fn partition_count(n: usize, max: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|p| partition_count(n - p, p)).sum()
}

/// Strict coarsening by exhaustive search over all set partitions of the
/// parts of `from` into `to.len()` labelled blocks.
pub fn coarsens_brute_force(from: &[usize], to: &[usize]) -> bool {
    if from.len() <= to.len() {
        return false;
    }
    let blocks = to.len();
    let mut assignment = vec![0usize; from.len()];
    loop {
        let mut sums = vec![0usize; blocks];
        for (i, &b) in assignment.iter().enumerate() {
            sums[b] += from[i];
        }
        sums.sort_unstable_by(|a, b| b.cmp(a));
        if sums == to {
            return true;
        }
        // Next assignment in base `blocks`.
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return false;
            }
            assignment[i] += 1;
            if assignment[i] < blocks {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// `|eps>^{⊗N}` written out in the full 2^N-dimensional space and projected
/// onto the Dicke basis.
pub fn product_state_dicke(n: usize, p: &BlochPoint) -> DVector<C64> {
    let (a, b) = p.spinor();
    let mut full = vec![C64::new(1.0, 0.0)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(full.len() * 2);
        for amp in &full {
            next.push(amp * a);
            next.push(amp * b);
        }
        full = next;
    }
    let mut out = DVector::zeros(n + 1);
    let mut counts = vec![0usize; n + 1];
    for (index, amp) in full.iter().enumerate() {
        let k = (index as u64).count_ones() as usize;
        out[k] += amp;
        counts[k] += 1;
    }
    for k in 0..=n {
        out[k] /= (counts[k] as f64).sqrt();
    }
    out
}

/// Full-space symmetrized product of the given points, projected onto the
/// Dicke basis and normalized. Exponential cost; use for small N only.
pub fn symmetrize_brute_force(points: &[BlochPoint]) -> DVector<C64> {
    let n = points.len();
    let dim = 1usize << n;
    let mut full = vec![C64::new(0.0, 0.0); dim];
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |perm| {
        for (index, slot) in full.iter_mut().enumerate() {
            let mut amp = C64::new(1.0, 0.0);
            for (qubit, &which) in perm.iter().enumerate() {
                let (a, b) = points[which].spinor();
                let bit = (index >> (n - 1 - qubit)) & 1;
                amp *= if bit == 0 { a } else { b };
            }
            *slot += amp;
        }
    });
    let mut out = DVector::zeros(n + 1);
    let mut counts = vec![0usize; n + 1];
    for (index, amp) in full.iter().enumerate() {
        let k = (index as u64).count_ones() as usize;
        out[k] += amp;
        counts[k] += 1;
    }
    for k in 0..=n {
        out[k] /= (counts[k] as f64).sqrt();
    }
    let norm = out.norm();
    out / C64::new(norm, 0.0)
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

pub fn uniform_point<R: Rng>(rng: &mut R) -> BlochPoint {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    BlochPoint::new(z.acos(), phi).unwrap()
}

/// Random partition of `n`, built from random part sizes.
pub fn random_partition<R: Rng>(n: usize, rng: &mut R) -> DegeneracyConfiguration {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.random_range(1..=left);
        parts.push(p);
        left -= p;
    }
    DegeneracyConfiguration::new(parts).unwrap()
}

/// Random constellation with the given multiplicities whose distinct points
/// are pairwise at chordal distance at least `separation`.
pub fn random_separated_constellation<R: Rng>(
    d: &DegeneracyConfiguration,
    separation: f64,
    rng: &mut R,
) -> Constellation {
    let mut pts: Vec<(BlochPoint, usize)> = Vec::new();
    for &m in d.parts() {
        loop {
            let p = uniform_point(rng);
            if pts
                .iter()
                .all(|(q, _)| q.chordal_distance(&p) >= separation)
            {
                pts.push((p, m));
                break;
            }
        }
    }
    Constellation::new(pts).unwrap()
}

/// Largest chordal mismatch after matching points greedily, or infinity if
/// the multiplicity patterns differ.
pub fn constellation_mismatch(a: &Constellation, b: &Constellation) -> f64 {
    if a.multiplicities() != b.multiplicities() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.points().len()];
    let mut worst = 0.0f64;
    for (p, m) in a.points() {
        let best = b
            .points()
            .iter()
            .enumerate()
            .filter(|(j, (_, k))| !used[*j] && k == m)
            .map(|(j, (q, _))| (j, p.chordal_distance(q)))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((j, dist)) => {
                used[j] = true;
                worst = worst.max(dist);
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Random SU(2) matrix from a normalized Gaussian quaternion.
pub fn random_su2<R: Rng>(rng: &mut R) -> nalgebra::Matrix2<C64> {
    use rand_distr::{Distribution, StandardNormal};
    let q: Vec<f64> = (0..4).map(|_| StandardNormal.sample(rng)).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = C64::new(q[0], q[1]) / norm;
    let b = C64::new(q[2], q[3]) / norm;
    nalgebra::Matrix2::new(a, -b.conj(), b, a.conj())
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
