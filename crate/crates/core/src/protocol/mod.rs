//! Joint system-auxiliary evolution, auxiliary measurement and post-selection.

pub mod archetype;
pub mod interaction;
pub mod sweep;

pub use archetype::{
    archetype_coefficients, contributing_sets, make_archetype, resolve_coefficients, ArchetypeMode, ArchetypeRule,
};
pub use interaction::{
    build_interaction_qubit_p1, build_interaction_qubit_p2, build_interaction_qudit, uniform_combined_archetype,
    AuxiliaryKind, AuxiliarySpec,
};
pub use sweep::{sweep, PreparedTemplate, ProtocolTemplate, SweepGrid, SweepRow};

use crate::codes::SpectrumDecomposition;
use crate::error::{Error, Result};
use crate::qmat::{
    auxiliary_block, hermitian_deviation, identity, kron, unitarity_deviation, DensityMatrix, Ket, Operator,
    SpectralPropagator, TensorSpace,
};
use crate::tolerance;

/// A fully assembled protocol: system, auxiliary, interaction and the
/// eigensystem of the total Hamiltonian.
#[derive(Debug, Clone)]
pub struct ProtocolSetup {
    pub system_hamiltonian: Operator,
    pub spectrum: SpectrumDecomposition,
    pub target: Ket,
    pub archetypes: Vec<Ket>,
    pub auxiliary: AuxiliarySpec,
    pub interaction: Operator,
    pub hamiltonian: Operator,
    pub space: TensorSpace,
    propagator: SpectralPropagator,
}

impl ProtocolSetup {
    /// Qudit auxiliary with `H_A = Σ E_i |e_i⟩⟨e_i|`.
    pub fn qudit(
        system_hamiltonian: Operator,
        spectrum: SpectrumDecomposition,
        target: Ket,
        archetypes: Vec<Ket>,
        couplings: Vec<f64>,
    ) -> Result<Self> {
        let h_sa = build_interaction_qudit(&target, &archetypes, &couplings, &spectrum)?;
        let auxiliary = AuxiliarySpec {
            kind: AuxiliaryKind::Qudit,
            levels: archetypes.len() + 1,
            energies: spectrum.energies(),
            couplings,
        };
        Self::assemble(system_hamiltonian, spectrum, target, archetypes, auxiliary, h_sa)
    }

    /// Qubit auxiliary, all subspaces coupled to `|e₁⟩`; `E′` defaults to `E₁`.
    pub fn qubit_p1(
        system_hamiltonian: Operator,
        spectrum: SpectrumDecomposition,
        target: Ket,
        archetypes: Vec<Ket>,
        couplings: Vec<f64>,
        e_prime: Option<f64>,
    ) -> Result<Self> {
        let e_prime = match e_prime {
            Some(e) => e,
            None => spectrum.excited().first().ok_or(Error::EmptySubspace(1))?.energy,
        };
        let (h_sa, _) = build_interaction_qubit_p1(&target, &archetypes, &couplings, e_prime, &spectrum)?;
        let auxiliary = AuxiliarySpec {
            kind: AuxiliaryKind::QubitPrescription1,
            levels: 2,
            energies: vec![0.0, e_prime],
            couplings,
        };
        Self::assemble(system_hamiltonian, spectrum, target, archetypes, auxiliary, h_sa)
    }

    /// Qubit auxiliary coupled to one archetype spanning all excited subspaces.
    pub fn qubit_p2(
        system_hamiltonian: Operator,
        spectrum: SpectrumDecomposition,
        target: Ket,
        combined: Ket,
        g: f64,
    ) -> Result<Self> {
        let (h_sa, _, e_prime) = build_interaction_qubit_p2(&target, &combined, g, &spectrum)?;
        let auxiliary = AuxiliarySpec {
            kind: AuxiliaryKind::QubitPrescription2,
            levels: 2,
            energies: vec![0.0, e_prime],
            couplings: vec![g],
        };
        Self::assemble(system_hamiltonian, spectrum, target, vec![combined], auxiliary, h_sa)
    }

    fn assemble(
        system_hamiltonian: Operator,
        spectrum: SpectrumDecomposition,
        target: Ket,
        archetypes: Vec<Ket>,
        auxiliary: AuxiliarySpec,
        interaction: Operator,
    ) -> Result<Self> {
        let s = system_hamiltonian.nrows();
        if target.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                found: target.len(),
            });
        }
        let a = auxiliary.levels;
        let space = TensorSpace::system_with_auxiliary(s, a);
        let hamiltonian =
            kron(&system_hamiltonian, &identity(a)) + kron(&identity(s), &auxiliary.hamiltonian()) + &interaction;
        let deviation = hermitian_deviation(&hamiltonian);
        if deviation > tolerance::ASSEMBLED_HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        let propagator = SpectralPropagator::new(&hamiltonian)?;
        let deviation = unitarity_deviation(&propagator.eigensystem().vectors);
        if deviation > tolerance::UNITARY {
            return Err(Error::Invariant(format!(
                "eigenvectors of the total Hamiltonian deviate from unitarity by {deviation:e}"
            )));
        }
        Ok(Self {
            system_hamiltonian,
            spectrum,
            target,
            archetypes,
            auxiliary,
            interaction,
            hamiltonian,
            space,
            propagator,
        })
    }

    pub fn propagator(&self) -> &SpectralPropagator {
        &self.propagator
    }

    /// `exp(-iHt)` on the joint space.
    pub fn unitary(&self, t: f64) -> Operator {
        self.propagator.unitary(t)
    }
}

/// Measurement statistics and post-selected states at one evolution time.
#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    pub time: f64,
    /// `p̃_i` for every auxiliary level.
    pub outcome_probs: Vec<f64>,
    /// Renormalized system state per level, `None` for vanishing branches.
    pub conditional_states: Vec<Option<DensityMatrix>>,
    /// `P = Σ_{i≥1} p̃_i`.
    pub success_rate: f64,
    /// `⟨Ψ₀|ρ_i|Ψ₀⟩` per level, `None` for vanishing branches.
    pub branch_fidelity: Vec<Option<f64>>,
    /// Probability-weighted fidelity over successful branches; NaN when `P` vanishes.
    pub post_selected_fidelity: f64,
}

impl ProtocolOutcome {
    /// Unnormalized mixture `Σ_{i≥1} p̃_i ρ_i / P`, `None` when `P` vanishes.
    pub fn post_selected_state(&self) -> Option<DensityMatrix> {
        if self.success_rate < tolerance::NEGLIGIBLE_BRANCH {
            return None;
        }
        let dim = self.conditional_states.iter().flatten().next()?.dim();
        let mixture = self
            .conditional_states
            .iter()
            .zip(&self.outcome_probs)
            .skip(1)
            .filter_map(|(s, &p)| s.as_ref().map(|s| s.matrix().scale(p)))
            .fold(Operator::zeros(dim, dim), |acc, m| acc + m);
        Some(DensityMatrix::from_trusted(mixture.unscale(self.success_rate)))
    }
}

/// Post-selection statistics of an already evolved joint state.
pub fn measure_outcome(rho_sa: &Operator, space: &TensorSpace, target: &Ket, time: f64) -> Result<ProtocolOutcome> {
    let a = space.aux_dim();
    let mut outcome_probs = Vec::with_capacity(a);
    let mut conditional_states = Vec::with_capacity(a);
    let mut branch_fidelity = Vec::with_capacity(a);
    for i in 0..a {
        let block = auxiliary_block(rho_sa, space, i);
        let p = block.trace().re;
        outcome_probs.push(p);
        if p >= tolerance::ZERO_BRANCH {
            let state = DensityMatrix::from_trusted(block.unscale(p));
            branch_fidelity.push(Some(state.expectation_pure(target)));
            conditional_states.push(Some(state));
        } else {
            branch_fidelity.push(None);
            conditional_states.push(None);
        }
    }
    let total: f64 = outcome_probs.iter().sum();
    if (total - 1.0).abs() > tolerance::PROBABILITY_SUM {
        return Err(Error::Invariant(format!(
            "auxiliary outcome probabilities sum to {total}"
        )));
    }
    let success_rate: f64 = outcome_probs[1..].iter().sum();
    let mut weighted = 0.0;
    let mut weight = 0.0;
    for (p, f) in outcome_probs.iter().zip(&branch_fidelity).skip(1) {
        if let Some(f) = f {
            if *p > tolerance::NEGLIGIBLE_BRANCH {
                weighted += p * f;
                weight += p;
            }
        }
    }
    let post_selected_fidelity = if weight > 0.0 { weighted / weight } else { f64::NAN };
    Ok(ProtocolOutcome {
        time,
        outcome_probs,
        conditional_states,
        success_rate,
        branch_fidelity,
        post_selected_fidelity,
    })
}

/// Evolves `ρ_S ⊗ |e₀⟩⟨e₀|` for time `t`, measures the auxiliary and post-selects.
pub fn run_protocol(rho_s0: &DensityMatrix, setup: &ProtocolSetup, t: f64) -> Result<ProtocolOutcome> {
    let s = setup.space.system_dim();
    if rho_s0.dim() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            found: rho_s0.dim(),
        });
    }
    let a = setup.space.aux_dim();
    let columns: Vec<usize> = (0..s).map(|k| k * a).collect();
    let w = setup.propagator.unitary_columns(t, &columns);
    let rho_sa = &w * rho_s0.matrix() * w.adjoint();
    measure_outcome(&rho_sa, &setup.space, &setup.target, t)
}
