//! Open-system dynamics: amplitude damping acting during the protocol.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::noise::{apply_all_qubits, kraus_ops, NoiseKind};
use crate::protocol::{measure_outcome, PreparedTemplate};
use crate::qmat::{
    apply_local_left, apply_local_right_adjoint, c64, hermitian_eig, DensityMatrix, Operator, TensorSpace,
};
use crate::tolerance;

/// Default RK4 step in units of `1/g`.
pub const DEFAULT_STEP: f64 = 0.005;

/// Minimum eigenvalue accepted for integrated states.
const MIN_EIGENVALUE: f64 = -1e-7;

/// `|0⟩⟨1|`, taking a qubit to its ground state.
pub fn lowering() -> Operator {
    let mut l = Operator::zeros(2, 2);
    l[(0, 1)] = c64(1.0, 0.0);
    l
}

/// Hamiltonian, amplitude-damped factors and step of a master equation
/// `dρ/dt = −i[H,ρ] + γ Σ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`.
#[derive(Debug, Clone)]
pub struct LindbladSetup {
    pub hamiltonian: Operator,
    pub space: TensorSpace,
    /// Tensor factors carrying a dissipator.
    pub damped: Vec<usize>,
    pub gamma: f64,
    pub dt: f64,
    norm: f64,
}

impl LindbladSetup {
    pub fn new(hamiltonian: Operator, space: TensorSpace, damped: Vec<usize>, gamma: f64, dt: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::RateOutOfRange(gamma));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::StepTooLarge { dt, norm: f64::NAN });
        }
        if hamiltonian.nrows() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: hamiltonian.nrows(),
            });
        }
        if let Some(&bad) = damped.iter().find(|&&k| k >= space.factor_dims().len() || space.factor_dims()[k] != 2) {
            return Err(Error::Invariant(format!("factor {bad} is not a qubit")));
        }
        let norm = hermitian_eig(&hamiltonian)?.spectral_norm();
        Ok(Self {
            hamiltonian,
            space,
            damped,
            gamma,
            dt,
            norm,
        })
    }

    /// Pure amplitude damping on `n` qubits with no Hamiltonian.
    pub fn damping_only(n: usize, gamma: f64, dt: f64) -> Result<Self> {
        let space = TensorSpace::new(vec![2; n])?;
        let dim = space.dim();
        Self::new(Operator::zeros(dim, dim), space, (0..n).collect(), gamma, dt)
    }

    /// Spectral norm of the Hamiltonian.
    pub fn hamiltonian_norm(&self) -> f64 {
        self.norm
    }

    /// Largest step passing the stability guard.
    pub fn max_stable_step(&self) -> f64 {
        if self.norm > 0.0 {
            tolerance::RK4_STABILITY / self.norm
        } else {
            f64::INFINITY
        }
    }

    pub fn with_step(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }
}

/// Right-hand side of the master equation.
pub fn gksl_rhs(rho: &Operator, setup: &LindbladSetup) -> Operator {
    let h_rho = &setup.hamiltonian * rho;
    let mut out = (&h_rho - h_rho.adjoint()) * c64(0.0, -1.0);
    if setup.gamma > 0.0 {
        let l = lowering();
        let excited = l.adjoint() * &l;
        for &k in &setup.damped {
            let jump = apply_local_right_adjoint(&l, k, &setup.space, &apply_local_left(&l, k, &setup.space, rho));
            let left = apply_local_left(&excited, k, &setup.space, rho);
            let anti = &left + left.adjoint();
            out += (jump - anti * c64(0.5, 0.0)) * c64(setup.gamma, 0.0);
        }
    }
    out
}

fn rk4_step(rho: &Operator, setup: &LindbladSetup, h: f64) -> Operator {
    let half = c64(h / 2.0, 0.0);
    let k1 = gksl_rhs(rho, setup);
    let k2 = gksl_rhs(&(rho + &k1 * half), setup);
    let k3 = gksl_rhs(&(rho + &k2 * half), setup);
    let k4 = gksl_rhs(&(rho + &k3 * c64(h, 0.0)), setup);
    let next = rho + (k1 + (k2 + k3) * c64(2.0, 0.0) + k4) * c64(h / 6.0, 0.0);
    (&next + next.adjoint()) * c64(0.5, 0.0)
}

fn check_step(setup: &LindbladSetup) -> Result<()> {
    if setup.dt * setup.norm > tolerance::RK4_STABILITY {
        return Err(Error::StepTooLarge {
            dt: setup.dt,
            norm: setup.norm,
        });
    }
    Ok(())
}

fn validated(rho: Operator) -> Result<DensityMatrix> {
    DensityMatrix::with_tolerance(rho, tolerance::LINDBLAD_TRACE, MIN_EIGENVALUE)
}

/// Advances the raw matrix by `duration` in equal steps no longer than `dt`.
fn advance(rho: Operator, setup: &LindbladSetup, duration: f64) -> Operator {
    if duration <= 0.0 {
        return rho;
    }
    let steps = (duration / setup.dt).ceil().max(1.0) as usize;
    let h = duration / steps as f64;
    (0..steps).fold(rho, |r, _| rk4_step(&r, setup, h))
}

/// Fixed-step RK4 integration over `duration`.
pub fn integrate(rho0: &DensityMatrix, setup: &LindbladSetup, duration: f64) -> Result<DensityMatrix> {
    check_step(setup)?;
    if rho0.dim() != setup.space.dim() {
        return Err(Error::DimensionMismatch {
            expected: setup.space.dim(),
            found: rho0.dim(),
        });
    }
    if duration == 0.0 {
        return Ok(rho0.clone());
    }
    validated(advance(rho0.matrix().clone(), setup, duration))
}

/// States at every requested time (non-decreasing, starting from 0), from a
/// single integration.
pub fn integrate_to_times(rho0: &DensityMatrix, setup: &LindbladSetup, times: &[f64]) -> Result<Vec<DensityMatrix>> {
    check_step(setup)?;
    if times.windows(2).any(|w| w[1] < w[0]) || times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::Invariant("output times must be non-negative and sorted".into()));
    }
    let mut rho = rho0.matrix().clone();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        rho = advance(rho, setup, t - now);
        now = t;
        out.push(validated(rho.clone())?);
    }
    Ok(out)
}

/// How the state entering the protocol is prepared from `|Ψ₀⟩⟨Ψ₀|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreNoise {
    /// Kraus channel of rate `q` on every qubit.
    Kraus { kind: NoiseKind, q: f64 },
    /// Amplitude damping at rate `gamma` for time `t1`, without Hamiltonian.
    Lindblad { gamma: f64, t1: f64 },
}

/// One `(θ, Δt)` cell of a resilient-noise map.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedPoint {
    pub theta: f64,
    pub phi: f64,
    pub window: f64,
    pub outcome_probs: Vec<f64>,
    pub success_rate: f64,
    pub fidelity: f64,
    pub branch_fidelity: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimedResult {
    pub gamma: f64,
    pub pre_noise: PreNoise,
    /// Step actually used after the stability clamp.
    pub dt: f64,
    pub points: Vec<TimedPoint>,
}

/// Noisy initial system state for the resilient experiment.
pub fn prepare_initial(prepared: &PreparedTemplate, theta: f64, phi: f64, pre_noise: &PreNoise, dt: f64) -> Result<DensityMatrix> {
    let pure = DensityMatrix::pure(&prepared.target(theta, phi));
    let n = prepared.template.code.n_qubits;
    match *pre_noise {
        PreNoise::Kraus { kind, q } => apply_all_qubits(&pure, &kraus_ops(kind, q)?, n),
        PreNoise::Lindblad { gamma, t1 } => integrate(&pure, &LindbladSetup::damping_only(n, gamma, dt)?, t1),
    }
}

/// Runs the protocol under concurrent amplitude damping of rate `gamma` on
/// every system qubit for each window `Δt`, and post-selects on `i ≥ 1`.
///
/// The step is clamped to the stability bound of the assembled Hamiltonian.
pub fn resilient_experiment(
    prepared: &PreparedTemplate,
    pre_noise: &PreNoise,
    gamma: f64,
    dt: f64,
    thetas: &[f64],
    phi: f64,
    windows: &[f64],
) -> Result<TimedResult> {
    let coefficients = prepared.coefficients(0)?;
    let n = prepared.template.code.n_qubits;
    let mut order: Vec<usize> = (0..windows.len()).collect();
    order.sort_by(|&a, &b| windows[a].total_cmp(&windows[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| windows[k]).collect();

    let rows: Vec<(f64, Vec<TimedPoint>)> = thetas
        .par_iter()
        .map(|&theta| {
            let setup = prepared.setup(theta, phi, &coefficients)?;
            let space = TensorSpace::qubits_with_auxiliary(n, setup.space.aux_dim());
            let open = LindbladSetup::new(setup.hamiltonian.clone(), space, (0..n).collect(), gamma, dt)?;
            let step = dt.min(open.max_stable_step());
            let open = open.with_step(step);
            let rho_s = prepare_initial(prepared, theta, phi, pre_noise, step)?;
            let rho_sa = rho_s.with_auxiliary_ground(setup.space.aux_dim());
            let states = integrate_to_times(&rho_sa, &open, &sorted)?;
            let mut points = vec![None; windows.len()];
            for (state, &k) in states.iter().zip(&order) {
                let out = measure_outcome(state.matrix(), &setup.space, &setup.target, windows[k])?;
                points[k] = Some(TimedPoint {
                    theta,
                    phi,
                    window: windows[k],
                    outcome_probs: out.outcome_probs,
                    success_rate: out.success_rate,
                    fidelity: out.post_selected_fidelity,
                    branch_fidelity: out.branch_fidelity,
                });
            }
            Ok((step, points.into_iter().map(Option::unwrap).collect()))
        })
        .collect::<Result<_>>()?;
    let dt_used = rows.iter().map(|(s, _)| *s).fold(dt, f64::min);
    Ok(TimedResult {
        gamma,
        pre_noise: *pre_noise,
        dt: dt_used,
        points: rows.into_iter().flat_map(|(_, p)| p).collect(),
    })
}
