//! Local Kraus channels applied independently to every system qubit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmat::{apply_local_left, apply_local_right_adjoint, identity, max_abs, real, DensityMatrix, Operator, Pauli, TensorSpace};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    BitFlip,
    PhaseFlip,
    AmplitudeDamping,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::AmplitudeDamping];
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseKind::BitFlip => "bit_flip",
            NoiseKind::PhaseFlip => "phase_flip",
            NoiseKind::AmplitudeDamping => "amplitude_damping",
        })
    }
}

impl FromStr for NoiseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bit_flip" | "bf" => Ok(NoiseKind::BitFlip),
            "phase_flip" | "pf" => Ok(NoiseKind::PhaseFlip),
            "amplitude_damping" | "ad" => Ok(NoiseKind::AmplitudeDamping),
            other => Err(format!("unknown noise model '{other}'")),
        }
    }
}

/// A single-qubit channel `ρ ↦ K₀ρK₀† + K₁ρK₁†`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub kind: NoiseKind,
    pub rate: f64,
    pub ops: [Operator; 2],
}

impl KrausChannel {
    /// `max |Σ K†K - I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self.ops.iter().fold(Operator::zeros(2, 2), |acc, k| acc + k.adjoint() * k);
        max_abs(&(sum - identity(2)))
    }

    /// Applies the channel to qubit `qubit` (1-based) of an `n`-qubit state.
    fn apply_to_qubit(&self, rho: &Operator, qubit: usize, space: &TensorSpace) -> Operator {
        self.ops.iter().fold(Operator::zeros(rho.nrows(), rho.ncols()), |acc, k| {
            let left = apply_local_left(k, qubit - 1, space, rho);
            acc + apply_local_right_adjoint(k, qubit - 1, space, &left)
        })
    }
}

pub fn kraus_ops(kind: NoiseKind, q: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::RateOutOfRange(q));
    }
    let keep = (1.0 - q).sqrt();
    let flip = q.sqrt();
    let ops = match kind {
        NoiseKind::BitFlip => [identity(2).scale(keep), Pauli::X.matrix().scale(flip)],
        NoiseKind::PhaseFlip => [identity(2).scale(keep), Pauli::Z.matrix().scale(flip)],
        NoiseKind::AmplitudeDamping => {
            let mut k0 = identity(2);
            k0[(1, 1)] = real(keep);
            let mut k1 = Operator::zeros(2, 2);
            k1[(0, 1)] = real(flip);
            [k0, k1]
        }
    };
    Ok(KrausChannel { kind, rate: q, ops })
}

fn check_dim(rho: &DensityMatrix, n_qubits: usize) -> Result<TensorSpace> {
    let expected = 1usize << n_qubits;
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: rho.dim(),
        });
    }
    TensorSpace::new(vec![2; n_qubits])
}

/// Applies the same channel to every qubit, `ρ ↦ Σ_k K_k ρ K_k†` with
/// `K_k = ⊗_i K_{k_i}`, one qubit at a time.
pub fn apply_all_qubits(rho: &DensityMatrix, channel: &KrausChannel, n_qubits: usize) -> Result<DensityMatrix> {
    apply_in_order(rho, channel, &(1..=n_qubits).collect::<Vec<_>>(), n_qubits)
}

/// Applies `channel` to the listed qubits in the given order.
pub fn apply_in_order(rho: &DensityMatrix, channel: &KrausChannel, qubits: &[usize], n_qubits: usize) -> Result<DensityMatrix> {
    let space = check_dim(rho, n_qubits)?;
    let mut m = rho.matrix().clone();
    for &q in qubits {
        m = channel.apply_to_qubit(&m, q, &space);
    }
    debug_assert!((m.trace().re - 1.0).abs() < 1e-12);
    Ok(DensityMatrix::from_trusted(m))
}

/// Independent channels of one kind with a separate rate per qubit.
pub fn apply_heterogeneous(rho: &DensityMatrix, kind: NoiseKind, rates: &[f64]) -> Result<DensityMatrix> {
    let space = check_dim(rho, rates.len())?;
    let mut m = rho.matrix().clone();
    for (k, &q) in rates.iter().enumerate() {
        m = kraus_ops(kind, q)?.apply_to_qubit(&m, k + 1, &space);
    }
    Ok(DensityMatrix::from_trusted(m))
}

/// Whether the completeness relation holds for `channel`.
pub fn is_complete(channel: &KrausChannel) -> bool {
    channel.completeness_deviation() <= tolerance::KRAUS_COMPLETENESS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{canonical_basis, logical_state, BasisVariant, CodeSpec};
    use crate::qmat::{bitstring_ket, hermitian_eig, kron, pauli_word, Ket};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn close(a: &Operator, b: &Operator, tol: f64) -> bool {
        max_abs(&(a - b)) <= tol
    }

    /// Sum over all 2^N Kraus words, materialized.
    fn apply_by_words(rho: &Operator, channel: &KrausChannel, n: usize) -> Operator {
        let mut out = Operator::zeros(rho.nrows(), rho.ncols());
        for k in 0..(1usize << n) {
            let word = (0..n).fold(identity(1), |acc, i| {
                let bit = (k >> (n - 1 - i)) & 1;
                kron(&acc, &channel.ops[bit])
            });
            out += &word * rho * word.adjoint();
        }
        out
    }

    #[test]
    fn kraus_examples() {
        let bf = kraus_ops(NoiseKind::BitFlip, 0.0).unwrap();
        assert!(close(&bf.ops[0], &identity(2), 0.0));
        assert!(close(&bf.ops[1], &Operator::zeros(2, 2), 0.0));

        let ad = kraus_ops(NoiseKind::AmplitudeDamping, 1.0).unwrap();
        let mut k0 = Operator::zeros(2, 2);
        k0[(0, 0)] = real(1.0);
        let mut k1 = Operator::zeros(2, 2);
        k1[(0, 1)] = real(1.0);
        assert!(close(&ad.ops[0], &k0, 0.0) && close(&ad.ops[1], &k1, 0.0));

        let pf = kraus_ops(NoiseKind::PhaseFlip, 0.5).unwrap();
        let s = 0.5_f64.sqrt();
        assert!(close(&pf.ops[0], &identity(2).scale(s), 1e-15));
        assert!(close(&pf.ops[1], &Pauli::Z.matrix().scale(s), 1e-15));
    }

    #[test]
    fn rate_out_of_range() {
        assert!(matches!(kraus_ops(NoiseKind::BitFlip, 1.5), Err(Error::RateOutOfRange(_))));
        assert!(matches!(kraus_ops(NoiseKind::PhaseFlip, -0.1), Err(Error::RateOutOfRange(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::pure(&bitstring_ket("00"));
        let ch = kraus_ops(NoiseKind::BitFlip, 0.2).unwrap();
        assert!(matches!(apply_all_qubits(&rho, &ch, 3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_rate_is_identity_channel() {
        let psi = logical_state(&CodeSpec::four_qubit(), 1.1, 0.4, 0).unwrap();
        let rho = DensityMatrix::pure(&psi);
        for kind in NoiseKind::ALL {
            let out = apply_all_qubits(&rho, &kraus_ops(kind, 0.0).unwrap(), 4).unwrap();
            assert!(close(out.matrix(), rho.matrix(), 1e-15));
        }
    }

    #[test]
    fn three_qubit_amplitude_damping_elements() {
        let (theta, q) = (1.3, 0.37);
        let psi = logical_state(&CodeSpec::three_qubit(), theta, 0.0, 0).unwrap();
        let out = apply_all_qubits(&DensityMatrix::pure(&psi), &kraus_ops(NoiseKind::AmplitudeDamping, q).unwrap(), 3).unwrap();
        let m = out.matrix();
        let s2 = (theta / 2.0).sin().powi(2);
        assert!((m[(7, 7)].re - (1.0 - q).powi(3) * s2).abs() < 1e-14);
        assert!((m[(0, 7)].re - 0.5 * (1.0 - q).powf(1.5) * theta.sin()).abs() < 1e-14);
        assert!((m[(0, 0)].re - ((theta / 2.0).cos().powi(2) + q.powi(3) * s2)).abs() < 1e-14);
        for k in [1, 2, 3, 4, 5, 6] {
            let weight = if [3, 5, 6].contains(&k) { q * (1.0 - q).powi(2) } else { q * q * (1.0 - q) };
            assert!((m[(k, k)].re - weight * s2).abs() < 1e-14);
        }
    }

    #[test]
    fn two_qubit_heisenberg_damping_stays_logical() {
        let spec = CodeSpec::heisenberg(2);
        let ground = canonical_basis(&spec, BasisVariant::BitFlip).unwrap();
        let ground = ground.ground();
        let psi = logical_state(&spec, 1.9, 0.7, 0).unwrap();
        let ch = kraus_ops(NoiseKind::AmplitudeDamping, 0.4).unwrap();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let word = kron(&ch.ops[a], &ch.ops[b]);
            let branch: Ket = &word * &psi;
            if (a, b) == (1, 1) {
                assert!(branch.norm() < 1e-15);
            } else {
                assert!(ground.membership_residual(&branch) < 1e-14);
            }
        }
    }

    #[test]
    fn full_bit_flip_on_repetition_code_is_logical() {
        let psi = logical_state(&CodeSpec::three_qubit(), 0.8, 2.0, 0).unwrap();
        let out = apply_all_qubits(&DensityMatrix::pure(&psi), &kraus_ops(NoiseKind::BitFlip, 1.0).unwrap(), 3).unwrap();
        let pi0 = canonical_basis(&CodeSpec::three_qubit(), BasisVariant::BitFlip).unwrap().ground().projector();
        assert!(close(&(&pi0 * out.matrix() * &pi0), out.matrix(), 1e-12));
        let expected = pauli_word(3, &[(1, Pauli::X), (2, Pauli::X), (3, Pauli::X)]) * &psi;
        assert!((out.expectation_pure(&expected) - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn channels_are_complete(q in 0.0..=1.0f64) {
            for kind in NoiseKind::ALL {
                prop_assert!(is_complete(&kraus_ops(kind, q).unwrap()));
            }
        }

        #[test]
        fn sequential_matches_kraus_words(theta in 0.0..PI, phi in 0.0..2.0 * PI, q in 0.0..=1.0f64, k in 0usize..3) {
            let kind = NoiseKind::ALL[k];
            let psi = logical_state(&CodeSpec::four_qubit(), theta, phi, 0).unwrap();
            let rho = DensityMatrix::pure(&psi);
            let ch = kraus_ops(kind, q).unwrap();
            let out = apply_all_qubits(&rho, &ch, 4).unwrap();
            prop_assert!(close(out.matrix(), &apply_by_words(rho.matrix(), &ch, 4), 1e-13));
            prop_assert!((out.trace() - 1.0).abs() < 1e-12);
            let lowest = hermitian_eig(out.matrix()).unwrap().values[0];
            prop_assert!(lowest >= tolerance::POSITIVITY);
        }

        #[test]
        fn qubit_order_is_irrelevant(theta in 0.0..PI, q in 0.0..=1.0f64, k in 0usize..3, perm in Just(vec![1usize, 2, 3, 4, 5]).prop_shuffle()) {
            let psi = logical_state(&CodeSpec::five_qubit(), theta, 0.3, 0).unwrap();
            let rho = DensityMatrix::pure(&psi);
            let ch = kraus_ops(NoiseKind::ALL[k], q).unwrap();
            let a = apply_all_qubits(&rho, &ch, 5).unwrap();
            let b = apply_in_order(&rho, &ch, &perm, 5).unwrap();
            prop_assert!(close(a.matrix(), b.matrix(), 1e-12));
        }

        #[test]
        fn phase_flip_never_leaves_repetition_ground(theta in 0.0..PI, phi in 0.0..2.0 * PI, q in 0.0..=1.0f64) {
            let psi = logical_state(&CodeSpec::three_qubit(), theta, phi, 0).unwrap();
            let out = apply_all_qubits(&DensityMatrix::pure(&psi), &kraus_ops(NoiseKind::PhaseFlip, q).unwrap(), 3).unwrap();
            let pi0 = canonical_basis(&CodeSpec::three_qubit(), BasisVariant::BitFlip).unwrap().ground().projector();
            prop_assert!(close(&(&pi0 * out.matrix() * &pi0), out.matrix(), 1e-12));
        }

        #[test]
        fn heterogeneous_rates_reduce_to_uniform(q in 0.0..=1.0f64) {
            let psi = logical_state(&CodeSpec::three_qubit(), 1.0, 0.5, 0).unwrap();
            let rho = DensityMatrix::pure(&psi);
            let a = apply_heterogeneous(&rho, NoiseKind::AmplitudeDamping, &[q, q, q]).unwrap();
            let b = apply_all_qubits(&rho, &kraus_ops(NoiseKind::AmplitudeDamping, q).unwrap(), 3).unwrap();
            prop_assert!(close(a.matrix(), b.matrix(), 1e-15));
        }
    }
}
