//! System-auxiliary interaction Hamiltonians.

use crate::codes::SpectrumDecomposition;
use crate::error::{Error, Result};
use crate::qmat::{basis_ket, kron_ket, real, Ket, Operator};
use crate::tolerance;

/// Kind of auxiliary and how its transitions are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxiliaryKind {
    /// One auxiliary level per excited subspace.
    Qudit,
    /// Qubit auxiliary, every subspace coupled to the same excited level.
    QubitPrescription1,
    /// Qubit auxiliary coupled to one combined archetype over all subspaces.
    QubitPrescription2,
}

impl std::fmt::Display for AuxiliaryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AuxiliaryKind::Qudit => "qudit",
            AuxiliaryKind::QubitPrescription1 => "qubit_p1",
            AuxiliaryKind::QubitPrescription2 => "qubit_p2",
        })
    }
}

impl std::str::FromStr for AuxiliaryKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "qudit" => Ok(AuxiliaryKind::Qudit),
            "qubit_p1" => Ok(AuxiliaryKind::QubitPrescription1),
            "qubit_p2" => Ok(AuxiliaryKind::QubitPrescription2),
            other => Err(format!("unknown auxiliary `{other}` (expected qudit, qubit_p1 or qubit_p2)")),
        }
    }
}

/// Auxiliary levels, their energies and the couplings attached to them.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliarySpec {
    pub kind: AuxiliaryKind,
    pub levels: usize,
    pub energies: Vec<f64>,
    pub couplings: Vec<f64>,
}

impl AuxiliarySpec {
    pub fn hamiltonian(&self) -> Operator {
        Operator::from_diagonal(&self.energies.iter().map(|&e| real(e)).collect::<Vec<_>>().into())
    }

    /// `E_i − E′` for every excited subspace, meaningful for qubit kinds.
    pub fn detunings(&self, spectrum: &SpectrumDecomposition) -> Vec<f64> {
        let e_prime = self.energies.get(1).copied().unwrap_or(0.0);
        spectrum.excited().iter().map(|s| s.energy - e_prime).collect()
    }
}

/// `g (|t e_to⟩⟨s e_from| + h.c.)`.
fn add_transition(h: &mut Operator, target: &Ket, to: usize, source: &Ket, from: usize, aux: usize, g: f64) {
    if g == 0.0 {
        return;
    }
    let upper = kron_ket(target, &basis_ket(aux, to));
    let lower = kron_ket(source, &basis_ket(aux, from));
    let term = &upper * lower.adjoint() * real(g);
    *h += &term;
    *h += term.adjoint();
}

fn check_archetypes(archetypes: &[Ket], couplings: &[f64], spectrum: &SpectrumDecomposition) -> Result<()> {
    let d = spectrum.excited_count();
    if archetypes.len() != d {
        return Err(Error::BadCoefficientCount {
            expected: d,
            found: archetypes.len(),
        });
    }
    if couplings.len() != d {
        return Err(Error::BadCoefficientCount {
            expected: d,
            found: couplings.len(),
        });
    }
    for (subspace, psi) in spectrum.excited().iter().zip(archetypes) {
        let residual = subspace.membership_residual(psi);
        if residual > tolerance::SUBSPACE_MEMBERSHIP {
            return Err(Error::ArchetypeNotInSubspace {
                index: subspace.index,
                residual,
            });
        }
    }
    Ok(())
}

/// `Σ_i g_i (|Ψ₀ e_i⟩⟨Ψ_i e₀| + h.c.)` with a `D+1` level auxiliary.
pub fn build_interaction_qudit(
    target: &Ket,
    archetypes: &[Ket],
    couplings: &[f64],
    spectrum: &SpectrumDecomposition,
) -> Result<Operator> {
    check_archetypes(archetypes, couplings, spectrum)?;
    let aux = archetypes.len() + 1;
    let dim = target.len() * aux;
    let mut h = Operator::zeros(dim, dim);
    for (i, (psi, &g)) in archetypes.iter().zip(couplings).enumerate() {
        add_transition(&mut h, target, i + 1, psi, 0, aux, g);
    }
    Ok(h)
}

/// `Σ_i g_i (|Ψ₀ e₁⟩⟨Ψ_i e₀| + h.c.)` and `H_A = E′|1⟩⟨1|`.
pub fn build_interaction_qubit_p1(
    target: &Ket,
    archetypes: &[Ket],
    couplings: &[f64],
    e_prime: f64,
    spectrum: &SpectrumDecomposition,
) -> Result<(Operator, Operator)> {
    check_archetypes(archetypes, couplings, spectrum)?;
    let dim = target.len() * 2;
    let mut h = Operator::zeros(dim, dim);
    for (psi, &g) in archetypes.iter().zip(couplings) {
        add_transition(&mut h, target, 1, psi, 0, 2, g);
    }
    Ok((h, qubit_hamiltonian(e_prime)))
}

/// `(1/√D) Σ_i (1/√d_i) Σ_α |E_{i,α}⟩`.
pub fn uniform_combined_archetype(spectrum: &SpectrumDecomposition) -> Ket {
    let excited = spectrum.excited();
    let weight = 1.0 / (excited.len() as f64).sqrt();
    excited.iter().fold(Ket::zeros(spectrum.dim()), |acc, s| {
        let b = vec![weight / (s.degeneracy() as f64).sqrt(); s.degeneracy()];
        acc + s.combine(&b)
    })
}

/// `g (|Ψ₀ e₁⟩⟨Ψ_{1..D} e₀| + h.c.)` with `E′ = ⟨Ψ_{1..D}|H_S|Ψ_{1..D}⟩`.
pub fn build_interaction_qubit_p2(
    target: &Ket,
    combined: &Ket,
    g: f64,
    spectrum: &SpectrumDecomposition,
) -> Result<(Operator, Operator, f64)> {
    if spectrum.excited_count() == 0 {
        return Err(Error::EmptySubspace(1));
    }
    let residual = spectrum.ground().projector() * combined;
    if residual.norm() > tolerance::SUBSPACE_MEMBERSHIP {
        return Err(Error::ArchetypeNotInSubspace {
            index: 0,
            residual: residual.norm(),
        });
    }
    let e_prime = spectrum
        .excited()
        .iter()
        .map(|s| {
            let weight: f64 = s.basis.iter().map(|v| v.dotc(combined).norm_sqr()).sum();
            weight * s.energy
        })
        .sum::<f64>()
        / combined.norm_squared();
    let dim = target.len() * 2;
    let mut h = Operator::zeros(dim, dim);
    add_transition(&mut h, target, 1, combined, 0, 2, g);
    Ok((h, qubit_hamiltonian(e_prime), e_prime))
}

fn qubit_hamiltonian(e_prime: f64) -> Operator {
    let mut h = Operator::zeros(2, 2);
    h[(1, 1)] = real(e_prime);
    h
}
