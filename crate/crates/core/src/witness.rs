//! Projector-based family witnesses `W = alpha_D * 1 - |psi><psi|`, where
//! `alpha_D` is the largest squared overlap of `psi` with any pure state in
//! the closure of family `D` (the family and all its descendants).
//!
//! `alpha_D` comes from a multi-start simplex ascent over the positions of the
//! family's distinct Majorana points. Points may coincide during the search,
//! which is what makes the search domain the closure of the family. Global
//! optimality is not certified; [`OverlapOptimum::confidence`] reports how
//! many independent starts reached the best value.

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{classify_pure, descends, enumerate_partitions, DegeneracyConfiguration};
use crate::majorana::{symmetrized_amplitudes, to_constellation, BlochPoint, Constellation};
use crate::rng::keyed;
use crate::simplex::{minimize, SimplexOptions};
use crate::state::{DensityMatrix, SymmetricState, C64};

/// Two start values within this distance count as the same optimum.
pub const REPRODUCTION_TOL: f64 = 1e-8;
/// Starts that must reach the best value before the search stops doubling.
pub const REQUIRED_AGREEMENT: usize = 3;
/// The number of starts doubles at most until it reaches this multiple of
/// `n_starts`.
pub const MAX_START_GROWTH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub n_starts: usize,
    /// Simplex iterations per local run.
    pub max_iterations: usize,
    /// Local runs stop when the objective spread drops below this.
    pub convergence_tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            n_starts: 64,
            max_iterations: 500,
            convergence_tol: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        OptimizerConfig {
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_starts == 0 || self.max_iterations == 0 || !(self.convergence_tol > 0.0) {
            return Err(Error::domain("optimizer settings must be positive"));
        }
        Ok(())
    }
}

/// Best overlap found by [`max_overlap`].
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapOptimum {
    pub alpha: f64,
    /// Maximizing constellation, with coincident points merged.
    pub argmax: Constellation,
    /// Number of starts whose value is within [`REPRODUCTION_TOL`] of `alpha`.
    pub confidence: usize,
    /// Total number of starts evaluated.
    pub starts: usize,
}

// |<phi(x)|psi>|^2 / <phi(x)|phi(x)> for the family state with points x.
fn overlap_objective(
    x: &[f64],
    parts: &[usize],
    psi: &[C64],
    spinors: &mut Vec<(C64, C64)>,
) -> f64 {
    spinors.clear();
    for (j, &m) in parts.iter().enumerate() {
        let (s, c) = (x[2 * j] / 2.0).sin_cos();
        let spinor = (C64::new(c, 0.0), C64::from_polar(s, x[2 * j + 1]));
        spinors.extend(std::iter::repeat_n(spinor, m));
    }
    let phi = symmetrized_amplitudes(spinors);
    let mut inner = C64::new(0.0, 0.0);
    let mut norm = 0.0;
    for (a, b) in phi.iter().zip(psi) {
        inner += a.conj() * b;
        norm += a.norm_sqr();
    }
    inner.norm_sqr() / norm
}

fn start_point(seed: u64, index: usize, d: usize) -> Vec<f64> {
    let mut rng = keyed(seed, index as u64);
    let mut x = Vec::with_capacity(2 * d);
    for _ in 0..d {
        let cos_theta: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        x.push(cos_theta.clamp(-1.0, 1.0).acos());
        x.push(phi);
    }
    x
}

struct StartOutcome {
    value: f64,
    x: Vec<f64>,
}

/// Largest `|<phi|psi>|^2` over pure states `phi` in the closure of family `d`.
///
/// Deterministic in `cfg.seed`: start `i` always uses the same random stream,
/// and ties between starts go to the lowest index.
pub fn max_overlap(
    psi: &SymmetricState,
    d: &DegeneracyConfiguration,
    cfg: &OptimizerConfig,
) -> Result<OverlapOptimum> {
    cfg.validate()?;
    let n = psi.n_qubits();
    if d.n_qubits() != n {
        return Err(Error::domain(format!("{d} is not a partition of N = {n}")));
    }
    if d.diversity() == n {
        // The closure of the generic family is the whole symmetric subspace.
        return Ok(OverlapOptimum {
            alpha: 1.0,
            argmax: to_constellation(psi, crate::DEFAULT_COINCIDENCE_TOL)?,
            confidence: cfg.n_starts,
            starts: 0,
        });
    }

    let parts = d.parts();
    let amps = psi.amplitudes();
    let opts = SimplexOptions {
        step: 0.4,
        max_iterations: cfg.max_iterations,
        ftol: cfg.convergence_tol,
        max_restarts: 4,
    };
    let run = |i: usize| -> StartOutcome {
        let x0 = start_point(cfg.seed, i, parts.len());
        let mut buf = Vec::with_capacity(n);
        let r = minimize(|x| -overlap_objective(x, parts, amps, &mut buf), &x0, &opts);
        StartOutcome {
            value: -r.value,
            x: r.x,
        }
    };

    let cap = cfg.n_starts * MAX_START_GROWTH;
    let mut target = cfg.n_starts;
    let mut outcomes: Vec<StartOutcome> = Vec::new();
    loop {
        let fresh: Vec<StartOutcome> = (outcomes.len()..target).into_par_iter().map(run).collect();
        outcomes.extend(fresh);
        let best = best_index(&outcomes)?;
        let confidence = agreement(&outcomes, outcomes[best].value);
        if confidence >= REQUIRED_AGREEMENT || target >= cap {
            break;
        }
        target = (target * 2).min(cap);
    }

    let best = best_index(&outcomes)?;
    let winner = &outcomes[best];
    let points: Vec<(BlochPoint, usize)> = parts
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            (
                BlochPoint::from_angles(winner.x[2 * j], winner.x[2 * j + 1]),
                m,
            )
        })
        .collect();
    Ok(OverlapOptimum {
        alpha: winner.value.min(1.0),
        argmax: Constellation::clustered(&points, crate::DEFAULT_COINCIDENCE_TOL)?,
        confidence: agreement(&outcomes, winner.value),
        starts: outcomes.len(),
    })
}

fn best_index(outcomes: &[StartOutcome]) -> Result<usize> {
    let mut best: Option<usize> = None;
    for (i, o) in outcomes.iter().enumerate() {
        if !o.value.is_finite() {
            continue;
        }
        if best.is_none_or(|b| o.value > outcomes[b].value) {
            best = Some(i);
        }
    }
    best.ok_or_else(|| Error::numerical("every optimization start produced a non-finite value"))
}

fn agreement(outcomes: &[StartOutcome], best: f64) -> usize {
    outcomes
        .iter()
        .filter(|o| (o.value - best).abs() <= REPRODUCTION_TOL)
        .count()
}

/// A witness for the complement of a family: non-negative on every mixed
/// state of the family, negative on at least the reference state when the
/// reference lies outside the family's closure.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub reference_state: SymmetricState,
    pub family: DegeneracyConfiguration,
    pub alpha: f64,
    pub argmax_constellation: Constellation,
    pub confidence: usize,
}

impl Witness {
    /// `Tr(W rho) = alpha - <psi|rho|psi>`; negative values detect states
    /// outside the family.
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<f64> {
        Ok(self.alpha - rho.expectation(&self.reference_state)?)
    }

    /// The operator `alpha * 1 - |psi><psi|` on the symmetric subspace.
    pub fn operator(&self) -> DMatrix<C64> {
        let dim = self.reference_state.n_qubits() + 1;
        let identity = DMatrix::<C64>::identity(dim, dim).scale(self.alpha);
        identity - self.reference_state.projector().entries()
    }

    /// True when the reference state itself belongs to the closure of the
    /// family, in which case the witness detects nothing.
    pub fn is_vacuous(&self) -> Result<bool> {
        let own = classify_pure(&self.reference_state, crate::DEFAULT_COINCIDENCE_TOL)?;
        Ok(own == self.family || descends(&self.family, &own)?)
    }
}

/// Builds the witness `alpha_D * 1 - |psi><psi|`.
///
/// Logs a warning when `psi` lies in the closure of `d`, since the witness is
/// then vacuous.
pub fn build_witness(
    psi: &SymmetricState,
    d: &DegeneracyConfiguration,
    cfg: &OptimizerConfig,
) -> Result<Witness> {
    let opt = max_overlap(psi, d, cfg)?;
    let witness = Witness {
        reference_state: psi.clone(),
        family: d.clone(),
        alpha: opt.alpha,
        argmax_constellation: opt.argmax,
        confidence: opt.confidence,
    };
    if witness.is_vacuous()? {
        log::warn!("reference state lies in the closure of {d}; the witness detects nothing");
    }
    Ok(witness)
}

/// One witness per family other than the generic one, ordered by diversity
/// degree, highest first.
pub fn witness_battery(psi: &SymmetricState, cfg: &OptimizerConfig) -> Result<Vec<Witness>> {
    let n = psi.n_qubits();
    let mut families: Vec<DegeneracyConfiguration> = enumerate_partitions(n)?
        .into_iter()
        .filter(|d| d.diversity() < n)
        .collect();
    families.sort_by_key(|d| std::cmp::Reverse(d.diversity()));
    families
        .iter()
        .map(|d| build_witness(psi, d, cfg))
        .collect()
}
