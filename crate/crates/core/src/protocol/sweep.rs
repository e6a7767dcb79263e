//! Parameter sweeps over code setups.

use rayon::prelude::*;

use super::archetype::{resolve_coefficients, ArchetypeMode};
use super::interaction::{uniform_combined_archetype, AuxiliaryKind};
use super::{run_protocol, ProtocolSetup};
use crate::codes::{build_hamiltonian, canonical_basis, logical_state_in, BasisVariant, CodeKind, CodeSpec, SpectrumDecomposition};
use crate::error::Result;
use crate::noise::{apply_all_qubits, kraus_ops, NoiseKind};
use crate::qmat::{DensityMatrix, Ket, Operator};

/// Everything about a code experiment except the swept parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTemplate {
    pub code: CodeSpec,
    pub noise: NoiseKind,
    pub auxiliary: AuxiliaryKind,
    pub archetype: ArchetypeMode,
    /// Common coupling `g` for every transition.
    pub coupling: f64,
    /// Auxiliary excitation energy for the first qubit prescription; `E₁` when unset.
    pub e_prime: Option<f64>,
    /// Index `γ` of the target logical state.
    pub target_index: usize,
}

impl ProtocolTemplate {
    pub fn new(code: CodeSpec, noise: NoiseKind) -> Self {
        Self {
            code,
            noise,
            auxiliary: AuxiliaryKind::Qudit,
            archetype: ArchetypeMode::EqualContributing,
            coupling: 1.0,
            e_prime: None,
            target_index: 0,
        }
    }

    /// The five-qubit code uses its phase-flip adapted basis under phase flips.
    pub fn basis_variant(&self) -> BasisVariant {
        if self.code.kind == CodeKind::FiveQubitPerfect && self.noise == NoiseKind::PhaseFlip {
            BasisVariant::PhaseFlip
        } else {
            BasisVariant::BitFlip
        }
    }

    pub fn prepare(&self) -> Result<PreparedTemplate> {
        self.code.validate()?;
        Ok(PreparedTemplate {
            template: self.clone(),
            system_hamiltonian: build_hamiltonian(&self.code)?,
            basis: canonical_basis(&self.code, self.basis_variant())?,
        })
    }
}

/// A template with its Hamiltonian and eigenbasis materialized.
#[derive(Debug, Clone)]
pub struct PreparedTemplate {
    pub template: ProtocolTemplate,
    pub system_hamiltonian: Operator,
    pub basis: SpectrumDecomposition,
}

impl PreparedTemplate {
    pub fn target(&self, theta: f64, phi: f64) -> Ket {
        logical_state_in(&self.basis.ground().basis, theta, phi, self.template.target_index)
    }

    /// Archetype coefficients for archetype sample `sample`.
    pub fn coefficients(&self, sample: usize) -> Result<Vec<Vec<f64>>> {
        let t = &self.template;
        resolve_coefficients(&self.basis, &t.archetype, t.noise, t.code.n_qubits, sample)
    }

    pub fn setup(&self, theta: f64, phi: f64, coefficients: &[Vec<f64>]) -> Result<ProtocolSetup> {
        let t = &self.template;
        let target = self.target(theta, phi);
        let d = self.basis.excited_count();
        let archetypes: Vec<Ket> = self
            .basis
            .excited()
            .iter()
            .zip(coefficients)
            .map(|(s, b)| s.combine(b))
            .collect();
        let h_s = self.system_hamiltonian.clone();
        let spectrum = self.basis.clone();
        match t.auxiliary {
            AuxiliaryKind::Qudit => ProtocolSetup::qudit(h_s, spectrum, target, archetypes, vec![t.coupling; d]),
            AuxiliaryKind::QubitPrescription1 => {
                ProtocolSetup::qubit_p1(h_s, spectrum, target, archetypes, vec![t.coupling; d], t.e_prime)
            }
            AuxiliaryKind::QubitPrescription2 => {
                let combined = uniform_combined_archetype(&self.basis);
                ProtocolSetup::qubit_p2(h_s, spectrum, target, combined, t.coupling)
            }
        }
    }

    /// `Λ_q^{⊗N}(|Ψ_{0,γ}⟩⟨Ψ_{0,γ}|)`.
    pub fn noisy_state(&self, theta: f64, phi: f64, q: f64) -> Result<DensityMatrix> {
        let pure = DensityMatrix::pure(&self.target(theta, phi));
        apply_all_qubits(&pure, &kraus_ops(self.template.noise, q)?, self.template.code.n_qubits)
    }
}

/// Cartesian grid of swept parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub qs: Vec<f64>,
    pub ts: Vec<f64>,
    /// Number of archetype samples; only random modes use more than one.
    pub samples: usize,
}

impl SweepGrid {
    pub fn len(&self) -> usize {
        self.thetas.len() * self.phis.len() * self.qs.len() * self.ts.len() * self.samples
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub phi: f64,
    pub q: f64,
    pub t: f64,
    pub sample: usize,
    pub coefficients: Vec<Vec<f64>>,
    pub outcome_probs: Vec<f64>,
    pub success_rate: f64,
    pub fidelity: f64,
}

/// Runs every grid point, in parallel over `(θ, φ, sample)`, and returns the
/// rows ordered by `θ`, `φ`, sample, `q`, `t`.
pub fn sweep(prepared: &PreparedTemplate, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    let mut outer = Vec::with_capacity(grid.thetas.len() * grid.phis.len() * grid.samples);
    for &theta in &grid.thetas {
        for &phi in &grid.phis {
            for sample in 0..grid.samples {
                outer.push((theta, phi, sample));
            }
        }
    }
    let blocks: Vec<Vec<SweepRow>> = outer
        .into_par_iter()
        .map(|(theta, phi, sample)| {
            let coefficients = prepared.coefficients(sample)?;
            let setup = prepared.setup(theta, phi, &coefficients)?;
            let mut rows = Vec::with_capacity(grid.qs.len() * grid.ts.len());
            for &q in &grid.qs {
                let rho = prepared.noisy_state(theta, phi, q)?;
                for &t in &grid.ts {
                    let out = run_protocol(&rho, &setup, t)?;
                    rows.push(SweepRow {
                        theta,
                        phi,
                        q,
                        t,
                        sample,
                        coefficients: coefficients.clone(),
                        outcome_probs: out.outcome_probs,
                        success_rate: out.success_rate,
                        fidelity: out.post_selected_fidelity,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}
