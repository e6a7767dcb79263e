//! Archetype states: designed superpositions inside one excited subspace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::codes::{EnergySubspace, SpectrumDecomposition};
use crate::error::{Error, Result};
use crate::noise::{apply_all_qubits, kraus_ops, NoiseKind};
use crate::qmat::{DensityMatrix, Ket};
use crate::tolerance;

/// How the coefficients `b_α` of one archetype are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ArchetypeRule {
    /// `b_α = 1/√d_i` for every basis vector.
    EqualAll,
    /// `b_α = 1/√|C|` on the listed indices, zero elsewhere.
    EqualContributing(Vec<usize>),
    /// Caller-provided real coefficients, normalized on use.
    Explicit(Vec<f64>),
    /// Independent standard-normal draws, normalized.
    RandomGaussian(u64),
}

/// Coefficient choice for every excited subspace of a setup.
#[derive(Debug, Clone, PartialEq)]
pub enum ArchetypeMode {
    EqualContributing,
    EqualAll,
    Explicit(Vec<Vec<f64>>),
    RandomGaussian { seed: u64 },
}

impl ArchetypeMode {
    pub fn is_random(&self) -> bool {
        matches!(self, ArchetypeMode::RandomGaussian { .. })
    }
}

pub fn archetype_coefficients(subspace: &EnergySubspace, rule: &ArchetypeRule) -> Result<Vec<f64>> {
    let d = subspace.degeneracy();
    if d == 0 {
        return Err(Error::EmptySubspace(subspace.index));
    }
    if let ArchetypeRule::Explicit(b) = rule {
        if b.len() != d {
            return Err(Error::BadCoefficientCount {
                expected: d,
                found: b.len(),
            });
        }
        return normalized(b.clone(), subspace.index);
    }
    if d == 1 {
        return Ok(vec![1.0]);
    }
    match rule {
        ArchetypeRule::EqualAll => Ok(vec![1.0 / (d as f64).sqrt(); d]),
        ArchetypeRule::EqualContributing(indices) => {
            if indices.is_empty() {
                return Err(Error::EmptySubspace(subspace.index));
            }
            if let Some(&bad) = indices.iter().find(|&&a| a >= d) {
                return Err(Error::BadCoefficientCount {
                    expected: d,
                    found: bad + 1,
                });
            }
            let mut b = vec![0.0; d];
            let weight = 1.0 / (indices.len() as f64).sqrt();
            for &a in indices {
                b[a] = weight;
            }
            Ok(b)
        }
        ArchetypeRule::RandomGaussian(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let b: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
            normalized(b, subspace.index)
        }
        ArchetypeRule::Explicit(_) => unreachable!(),
    }
}

fn normalized(mut b: Vec<f64>, index: usize) -> Result<Vec<f64>> {
    let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Invariant(format!(
            "archetype coefficients for subspace {index} have zero norm"
        )));
    }
    b.iter_mut().for_each(|x| *x /= norm);
    Ok(b)
}

/// `|Ψ_i⟩ = Σ_α b_α |E_{i,α}⟩`.
pub fn make_archetype(subspace: &EnergySubspace, rule: &ArchetypeRule) -> Result<Ket> {
    Ok(subspace.combine(&archetype_coefficients(subspace, rule)?))
}

/// SplitMix64 finalizer, used to derive independent per-sample seeds.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, sample: usize, subspace: usize) -> u64 {
    splitmix(splitmix(base ^ splitmix(sample as u64)) ^ subspace as u64)
}

/// Basis vectors of each excited subspace that a noise model populates.
///
/// The test state is the noisy image of the maximally mixed logical state at
/// rate ½, so the sets do not depend on the particular logical state or rate.
pub fn contributing_sets(basis: &SpectrumDecomposition, noise: NoiseKind, n_qubits: usize) -> Result<Vec<Vec<usize>>> {
    let mixed = DensityMatrix::from_trusted(basis.ground().projector().unscale(basis.ground().degeneracy() as f64));
    let noisy = apply_all_qubits(&mixed, &kraus_ops(noise, 0.5)?, n_qubits)?;
    Ok(basis
        .excited()
        .iter()
        .map(|s| {
            s.basis
                .iter()
                .enumerate()
                .filter(|(_, v)| noisy.expectation_pure(v) > tolerance::CONTRIBUTING_POPULATION)
                .map(|(a, _)| a)
                .collect()
        })
        .collect())
}

/// Per-subspace coefficients for `mode`. Subspaces that the noise never
/// populates fall back to the equal superposition of all basis vectors.
pub fn resolve_coefficients(
    basis: &SpectrumDecomposition,
    mode: &ArchetypeMode,
    noise: NoiseKind,
    n_qubits: usize,
    sample: usize,
) -> Result<Vec<Vec<f64>>> {
    let excited = basis.excited();
    match mode {
        ArchetypeMode::EqualAll => excited
            .iter()
            .map(|s| archetype_coefficients(s, &ArchetypeRule::EqualAll))
            .collect(),
        ArchetypeMode::EqualContributing => {
            let sets = contributing_sets(basis, noise, n_qubits)?;
            excited
                .iter()
                .zip(sets)
                .map(|(s, set)| {
                    let rule = if set.is_empty() {
                        ArchetypeRule::EqualAll
                    } else {
                        ArchetypeRule::EqualContributing(set)
                    };
                    archetype_coefficients(s, &rule)
                })
                .collect()
        }
        ArchetypeMode::Explicit(lists) => {
            if lists.len() != excited.len() {
                return Err(Error::BadCoefficientCount {
                    expected: excited.len(),
                    found: lists.len(),
                });
            }
            excited
                .iter()
                .zip(lists)
                .map(|(s, b)| archetype_coefficients(s, &ArchetypeRule::Explicit(b.clone())))
                .collect()
        }
        ArchetypeMode::RandomGaussian { seed } => excited
            .iter()
            .map(|s| archetype_coefficients(s, &ArchetypeRule::RandomGaussian(derive_seed(*seed, sample, s.index))))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{canonical_basis, BasisVariant, CodeSpec};

    fn basis(spec: &CodeSpec, variant: BasisVariant) -> SpectrumDecomposition {
        canonical_basis(spec, variant).unwrap()
    }

    #[test]
    fn nondegenerate_subspace_gives_its_vector() {
        let b = basis(&CodeSpec::heisenberg(2), BasisVariant::BitFlip);
        for rule in [ArchetypeRule::EqualAll, ArchetypeRule::RandomGaussian(7)] {
            let psi = make_archetype(&b.subspaces[1], &rule).unwrap();
            assert!((psi - &b.subspaces[1].basis[0]).norm() < 1e-15);
        }
    }

    #[test]
    fn equal_all_on_repetition_code() {
        let b = basis(&CodeSpec::three_qubit(), BasisVariant::BitFlip);
        let coeffs = archetype_coefficients(&b.subspaces[1], &ArchetypeRule::EqualAll).unwrap();
        assert!(coeffs.iter().all(|&x| (x - 1.0 / 6f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn random_is_reproducible_and_normalized() {
        let b = basis(&CodeSpec::five_qubit(), BasisVariant::BitFlip);
        let a1 = make_archetype(&b.subspaces[2], &ArchetypeRule::RandomGaussian(42)).unwrap();
        let a2 = make_archetype(&b.subspaces[2], &ArchetypeRule::RandomGaussian(42)).unwrap();
        let a3 = make_archetype(&b.subspaces[2], &ArchetypeRule::RandomGaussian(43)).unwrap();
        assert_eq!(a1, a2);
        assert!((&a1 - &a3).norm() > 1e-3);
        assert!((a1.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coefficient_errors() {
        let b = basis(&CodeSpec::three_qubit(), BasisVariant::BitFlip);
        assert!(matches!(
            archetype_coefficients(&b.subspaces[1], &ArchetypeRule::Explicit(vec![1.0; 5])),
            Err(Error::BadCoefficientCount { expected: 6, found: 5 })
        ));
        assert!(matches!(
            archetype_coefficients(&b.subspaces[1], &ArchetypeRule::EqualContributing(vec![])),
            Err(Error::EmptySubspace(1))
        ));
        let empty = EnergySubspace {
            index: 3,
            energy: 1.0,
            basis: vec![],
        };
        assert!(matches!(
            archetype_coefficients(&empty, &ArchetypeRule::EqualAll),
            Err(Error::EmptySubspace(3))
        ));
    }

    #[test]
    fn contributing_sets_match_expected_choices() {
        let four = basis(&CodeSpec::four_qubit(), BasisVariant::BitFlip);
        let bf = contributing_sets(&four, NoiseKind::BitFlip, 4).unwrap();
        assert_eq!(bf, vec![vec![1, 2, 3, 4], vec![3, 4], vec![]]);
        let pf = contributing_sets(&four, NoiseKind::PhaseFlip, 4).unwrap();
        assert_eq!(pf[0], vec![0, 5]);

        let three = basis(&CodeSpec::three_qubit(), BasisVariant::BitFlip);
        assert_eq!(contributing_sets(&three, NoiseKind::BitFlip, 3).unwrap(), vec![(0..6).collect::<Vec<_>>()]);
        assert_eq!(contributing_sets(&three, NoiseKind::PhaseFlip, 3).unwrap(), vec![Vec::<usize>::new()]);

        let five = basis(&CodeSpec::five_qubit(), BasisVariant::BitFlip);
        let sets = contributing_sets(&five, NoiseKind::BitFlip, 5).unwrap();
        let sizes: Vec<usize> = sets.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![8, 12, 8, 2]);
    }

    #[test]
    fn resolved_equal_contributing_for_four_qubit_bit_flip() {
        let four = basis(&CodeSpec::four_qubit(), BasisVariant::BitFlip);
        let b = resolve_coefficients(&four, &ArchetypeMode::EqualContributing, NoiseKind::BitFlip, 4, 0).unwrap();
        assert_eq!(b[0], vec![0.0, 0.5, 0.5, 0.5, 0.5, 0.0]);
        let s = 1.0 / 2f64.sqrt();
        assert_eq!(b[1], vec![0.0, 0.0, 0.0, s, s, 0.0]);
        assert_eq!(b[2], vec![s, s]);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0, 1), derive_seed(1, 1, 1));
        assert_ne!(derive_seed(1, 0, 1), derive_seed(1, 0, 2));
        assert_eq!(derive_seed(9, 3, 2), derive_seed(9, 3, 2));
    }
}
