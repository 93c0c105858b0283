use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StandardUniform};

use super::chain::ChainState;
use super::prior::{log_prior_locations_unchecked, PriorSpec};
use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::Result;
use crate::likelihood::{grad_log_likelihood_with, log_likelihood_with, Execution};

/// A differentiable potential energy `U(q) = -log target(q)`.
pub trait Potential {
    fn dim(&self) -> usize;

    /// `U(q)`; `+inf` where the target density is zero.
    fn value(&self, q: &[f64]) -> f64;

    /// Writes `grad U(q)` into `grad`.
    fn gradient(&self, q: &[f64], grad: &mut [f64]);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeapfrogError {
    /// Leapfrog step (1-based) at which a non-finite gradient appeared.
    pub step: usize,
}

/// `K(p) = p.p / 2`
pub fn kinetic_energy(p: &[f64]) -> f64 {
    0.5 * p.iter().map(|v| v * v).sum::<f64>()
}

/// Integrates Hamilton's equations for `steps` leapfrog steps of size
/// `epsilon` (half kick, drift, half kick), updating `q` and `p` in place.
///
/// `potential_grad(q, g)` must write `grad U(q)` into `g`. A non-finite
/// gradient aborts the trajectory.
pub fn leapfrog<G>(
    q: &mut [f64],
    p: &mut [f64],
    epsilon: f64,
    steps: usize,
    mut potential_grad: G,
) -> Result<(), LeapfrogError>
where
    G: FnMut(&[f64], &mut [f64]),
{
    assert_eq!(q.len(), p.len(), "position and momentum must have the same shape");
    if steps == 0 {
        return Ok(());
    }
    let mut g = vec![0.0; q.len()];
    let mut eval = |q: &[f64], g: &mut [f64], step: usize| {
        potential_grad(q, g);
        if g.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(LeapfrogError { step })
        }
    };
    eval(q, &mut g, 1)?;
    for step in 1..=steps {
        for (pi, gi) in p.iter_mut().zip(&g) {
            *pi -= 0.5 * epsilon * gi;
        }
        for (qi, pi) in q.iter_mut().zip(p.iter()) {
            *qi += epsilon * pi;
        }
        eval(q, &mut g, step)?;
        for (pi, gi) in p.iter_mut().zip(&g) {
            *pi -= 0.5 * epsilon * gi;
        }
    }
    Ok(())
}

/// `H(q0, p0) - H(q1, p1)`, the log Metropolis-Hastings-Green acceptance
/// ratio for a move from `(q0, p0)` to `(q1, p1)`.
pub fn log_acceptance_ratio<P: Potential + ?Sized>(
    potential: &P,
    q0: &[f64],
    p0: &[f64],
    q1: &[f64],
    p1: &[f64],
) -> f64 {
    (potential.value(q0) + kinetic_energy(p0)) - (potential.value(q1) + kinetic_energy(p1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HmcOutcome {
    pub accepted: bool,
    pub divergent: bool,
    /// `H(start) - H(proposal)`; `-inf` for aborted trajectories.
    pub log_accept_ratio: f64,
}

/// Trajectories whose energy error exceeds this are rejected as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1000.0;

/// One HMC transition with identity mass matrix. `q` is replaced by the
/// proposal on acceptance.
pub fn hmc_transition<P, R>(
    potential: &P,
    q: &mut [f64],
    epsilon: f64,
    steps: usize,
    rng: &mut R,
) -> HmcOutcome
where
    P: Potential + ?Sized,
    R: Rng + ?Sized,
{
    let p0: Vec<f64> = (0..q.len()).map(|_| StandardNormal.sample(rng)).collect();
    let h0 = potential.value(q) + kinetic_energy(&p0);
    let mut q1 = q.to_vec();
    let mut p1 = p0.clone();
    let u: f64 = rng.sample(StandardUniform);
    let rejected = HmcOutcome { accepted: false, divergent: true, log_accept_ratio: f64::NEG_INFINITY };
    if leapfrog(&mut q1, &mut p1, epsilon, steps, |x, g| potential.gradient(x, g)).is_err() {
        return rejected;
    }
    let h1 = potential.value(&q1) + kinetic_energy(&p1);
    let log_ratio = h0 - h1;
    if !h1.is_finite() || !log_ratio.is_finite() || log_ratio.abs() > DIVERGENCE_THRESHOLD {
        return HmcOutcome { log_accept_ratio: log_ratio, ..rejected };
    }
    let accepted = u.ln() < log_ratio;
    if accepted {
        q.copy_from_slice(&q1);
    }
    HmcOutcome { accepted, divergent: false, log_accept_ratio: log_ratio }
}

/// Negative log conditional posterior of the latent locations with `sigma2`
/// held fixed.
pub struct ModelPotential<'a> {
    pub delta: &'a DissimMatrix,
    pub scheme: CouplingScheme,
    pub sigma2: f64,
    pub priors: &'a PriorSpec,
    pub dim: usize,
    pub exec: Execution,
}

impl ModelPotential<'_> {
    fn config(&self, q: &[f64]) -> Option<LatentConfig> {
        LatentConfig::new(q.len() / self.dim, self.dim, q.to_vec()).ok()
    }
}

impl Potential for ModelPotential<'_> {
    fn dim(&self) -> usize {
        self.delta.n_objects() * self.dim
    }

    fn value(&self, q: &[f64]) -> f64 {
        let Some(x) = self.config(q) else { return f64::INFINITY };
        match log_likelihood_with(self.exec, self.delta, &x, self.sigma2, self.scheme) {
            Ok(ll) => -(ll + log_prior_locations_unchecked(q, self.priors)),
            Err(_) => f64::INFINITY,
        }
    }

    fn gradient(&self, q: &[f64], grad: &mut [f64]) {
        let Some(x) = self.config(q) else {
            grad.fill(f64::NAN);
            return;
        };
        match grad_log_likelihood_with(self.exec, self.delta, &x, self.sigma2, self.scheme) {
            Ok(g) => {
                grad.copy_from_slice(g.as_slice());
                self.priors.add_location_gradient(q, grad);
                grad.iter_mut().for_each(|v| *v = -*v);
            }
            Err(_) => grad.fill(f64::NAN),
        }
    }
}

/// One HMC update of all latent locations in `state`, using its step size
/// and leapfrog count.
pub fn hmc_step(
    state: &mut ChainState,
    delta: &DissimMatrix,
    scheme: CouplingScheme,
    priors: &PriorSpec,
    leapfrog_steps: usize,
) -> HmcOutcome {
    let potential = ModelPotential {
        delta,
        scheme,
        sigma2: state.sigma2,
        priors,
        dim: state.x.dim(),
        exec: state.exec,
    };
    let eps = state.location_scale;
    let outcome = hmc_transition(&potential, state.x.as_mut_slice(), eps, leapfrog_steps, &mut state.rng);
    state.record_location(u32::from(outcome.accepted), 1);
    if outcome.divergent {
        state.counts.divergences += 1;
    }
    outcome
}
