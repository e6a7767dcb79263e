//! Dense complex linear algebra: tensor products, Hermitian eigensystems,
//! spectral propagators and projective measurement of the auxiliary factor.
//!
//! Tensor ordering is fixed throughout the crate: qubit 1 is the most
//! significant factor and the auxiliary, when present, is the last factor.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex64;

/// Dense square complex matrix (Hamiltonians, propagators, Kraus operators).
pub type Operator = DMatrix<C64>;

/// Dense complex state vector.
pub type Ket = DVector<C64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> Operator {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

pub fn identity(dim: usize) -> Operator {
    DMatrix::identity(dim, dim)
}

/// Computational basis ket `|index⟩` in a space of dimension `dim`.
pub fn basis_ket(dim: usize, index: usize) -> Ket {
    let mut v = DVector::zeros(dim);
    v[index] = real(1.0);
    v
}

/// Ket for a bit string such as `"0110"`, qubit 1 leftmost.
pub fn bitstring_ket(bits: &str) -> Ket {
    let n = bits.len();
    let index = usize::from_str_radix(bits, 2).expect("bit string of 0/1 characters");
    basis_ket(1 << n, index)
}

/// Kronecker product, left factor most significant.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

pub fn kron_ket(a: &Ket, b: &Ket) -> Ket {
    a.kronecker(b)
}

/// Tensor product of single-qubit Paulis on an `n`-qubit register.
///
/// `word` lists `(qubit, pauli)` pairs with 1-based qubit labels; qubits not
/// mentioned carry the identity.
pub fn pauli_word(n: usize, word: &[(usize, Pauli)]) -> Operator {
    let mut factors = vec![Pauli::I; n];
    for &(q, p) in word {
        assert!((1..=n).contains(&q), "qubit label {q} out of range 1..={n}");
        factors[q - 1] = p;
    }
    factors
        .into_iter()
        .fold(identity(1), |acc, p| kron(&acc, &p.matrix()))
}

/// Embeds a single-qubit operator on qubit `qubit` (1-based) of `n` qubits.
pub fn embed_qubit(op: &Operator, qubit: usize, n: usize) -> Operator {
    assert!((1..=n).contains(&qubit));
    let left = identity(1 << (qubit - 1));
    let right = identity(1 << (n - qubit));
    kron(&kron(&left, op), &right)
}

/// Ordered tensor factorization labelling a Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSpace {
    factor_dims: Vec<usize>,
}

impl TensorSpace {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::Invariant(format!(
                "tensor factors must be positive, got {factor_dims:?}"
            )));
        }
        Ok(Self { factor_dims })
    }

    /// `n` qubits followed by one auxiliary of dimension `aux_dim`.
    pub fn qubits_with_auxiliary(n: usize, aux_dim: usize) -> Self {
        let mut factor_dims = vec![2; n];
        factor_dims.push(aux_dim);
        Self { factor_dims }
    }

    /// A system of dimension `system_dim` followed by an auxiliary.
    pub fn system_with_auxiliary(system_dim: usize, aux_dim: usize) -> Self {
        Self {
            factor_dims: vec![system_dim, aux_dim],
        }
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    pub fn aux_dim(&self) -> usize {
        *self.factor_dims.last().unwrap()
    }

    pub fn system_dim(&self) -> usize {
        self.dim() / self.aux_dim()
    }

    /// Product of the dimensions of the factors after `factor`.
    fn stride(&self, factor: usize) -> usize {
        self.factor_dims[factor + 1..].iter().product()
    }
}

/// Applies a local operator on one tensor factor from the left, `(I ⊗ O ⊗ I) M`,
/// without materializing the embedded operator.
pub fn apply_local_left(op: &Operator, factor: usize, space: &TensorSpace, m: &Operator) -> Operator {
    let d = space.factor_dims[factor];
    assert_eq!(op.nrows(), d);
    assert_eq!(m.nrows(), space.dim());
    let stride = space.stride(factor);
    let block = d * stride;
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for col in 0..m.ncols() {
        for outer in (0..space.dim()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for a in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..d {
                        let o = op[(a, b)];
                        if o.re != 0.0 || o.im != 0.0 {
                            acc += o * m[(base + b * stride, col)];
                        }
                    }
                    out[(base + a * stride, col)] = acc;
                }
            }
        }
    }
    out
}

/// `M (I ⊗ O ⊗ I)†`, the right-hand counterpart of [`apply_local_left`].
pub fn apply_local_right_adjoint(op: &Operator, factor: usize, space: &TensorSpace, m: &Operator) -> Operator {
    apply_local_left(op, factor, space, &m.adjoint()).adjoint()
}

/// Largest entrywise deviation `max |A - A†|`.
pub fn hermitian_deviation(a: &Operator) -> f64 {
    assert!(a.is_square());
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(a: &Operator) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// `max |U†U - I|`.
pub fn unitarity_deviation(u: &Operator) -> f64 {
    max_abs(&(u.adjoint() * u - identity(u.nrows())))
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Operator,
}

impl Eigensystem {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> Operator {
        let mut scaled = self.vectors.clone();
        for (k, &l) in self.values.iter().enumerate() {
            scaled.column_mut(k).scale_mut(l);
        }
        scaled * self.vectors.adjoint()
    }

    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn hermitian_eig(h: &Operator) -> Result<Eigensystem> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            found: h.ncols(),
        });
    }
    let deviation = hermitian_deviation(h);
    if deviation > tolerance::HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }
    let symmetric = (h + h.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(symmetric);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = eig.eigenvectors.select_columns(&order);
    Ok(Eigensystem { values, vectors })
}

/// Time-evolution generator for a fixed Hermitian `H`; the eigensystem is
/// computed once and reused for every requested time.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    eigen: Eigensystem,
}

impl SpectralPropagator {
    pub fn new(h: &Operator) -> Result<Self> {
        Ok(Self {
            eigen: hermitian_eig(h)?,
        })
    }

    pub fn eigensystem(&self) -> &Eigensystem {
        &self.eigen
    }

    pub fn dim(&self) -> usize {
        self.eigen.values.len()
    }

    fn phases(&self, t: f64) -> Vec<C64> {
        self.eigen
            .values
            .iter()
            .map(|&l| C64::from_polar(1.0, -l * t))
            .collect()
    }

    /// `exp(-iHt)`.
    pub fn unitary(&self, t: f64) -> Operator {
        let v = &self.eigen.vectors;
        let mut scaled = v.clone();
        for (k, p) in self.phases(t).into_iter().enumerate() {
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= p);
        }
        scaled * v.adjoint()
    }

    /// The selected columns of `exp(-iHt)`, computed in `O(n² k)`.
    pub fn unitary_columns(&self, t: f64, columns: &[usize]) -> Operator {
        let v = &self.eigen.vectors;
        let mut right = v.select_rows(columns).adjoint();
        for (k, p) in self.phases(t).into_iter().enumerate() {
            right.row_mut(k).iter_mut().for_each(|z| *z *= p);
        }
        v * right
    }
}

/// Spectral matrix exponential `exp(-iHt)` of a Hermitian generator.
pub fn expm_spectral(h: &Operator, t: f64) -> Result<Operator> {
    Ok(SpectralPropagator::new(h)?.unitary(t))
}

/// Positive, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: Operator,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity at the default tolerances.
    pub fn new(data: Operator) -> Result<Self> {
        Self::with_tolerance(data, tolerance::TRACE, tolerance::POSITIVITY)
    }

    pub fn with_tolerance(data: Operator, trace_tol: f64, min_eigenvalue: f64) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::InvalidState("matrix is not square".into()));
        }
        let deviation = hermitian_deviation(&data);
        if deviation > tolerance::HERMITIAN {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {deviation:e})"
            )));
        }
        let trace = data.trace();
        if (trace.re - 1.0).abs() > trace_tol || trace.im.abs() > trace_tol {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let lowest = hermitian_eig(&data)?.values[0];
        if lowest < min_eigenvalue {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { data })
    }

    /// Wraps a matrix known to be a valid state by construction.
    pub(crate) fn from_trusted(data: Operator) -> Self {
        Self { data }
    }

    pub fn pure(psi: &Ket) -> Self {
        Self {
            data: psi * psi.adjoint(),
        }
    }

    pub fn matrix(&self) -> &Operator {
        &self.data
    }

    pub fn into_matrix(self) -> Operator {
        self.data
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.data.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.data * &self.data).trace().re
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_pure(&self, psi: &Ket) -> f64 {
        (psi.adjoint() * &self.data * psi)[(0, 0)].re
    }

    /// `ρ ⊗ |e₀⟩⟨e₀|` with the auxiliary in its ground level.
    pub fn with_auxiliary_ground(&self, aux_dim: usize) -> DensityMatrix {
        let mut e0 = DMatrix::zeros(aux_dim, aux_dim);
        e0[(0, 0)] = real(1.0);
        Self::from_trusted(kron(&self.data, &e0))
    }
}

/// Outcome of projecting the auxiliary onto one of its basis levels.
#[derive(Debug, Clone)]
pub struct AuxMeasurement {
    pub outcome: usize,
    pub probability: f64,
    state: Option<DensityMatrix>,
}

impl AuxMeasurement {
    /// The renormalized system state of this branch.
    pub fn conditional_state(&self) -> Result<&DensityMatrix> {
        self.state.as_ref().ok_or(Error::ZeroProbabilityBranch {
            outcome: self.outcome,
            probability: self.probability,
        })
    }

    pub fn into_conditional_state(self) -> Result<DensityMatrix> {
        let (outcome, probability) = (self.outcome, self.probability);
        self.state
            .ok_or(Error::ZeroProbabilityBranch { outcome, probability })
    }
}

/// Unnormalized system block `⟨e_i|ρ_SA|e_i⟩`.
pub fn auxiliary_block(rho_sa: &Operator, space: &TensorSpace, outcome: usize) -> Operator {
    let a = space.aux_dim();
    let s = space.system_dim();
    DMatrix::from_fn(s, s, |r, c| rho_sa[(r * a + outcome, c * a + outcome)])
}

/// Probabilities of every auxiliary level.
pub fn auxiliary_probabilities(rho_sa: &Operator, space: &TensorSpace) -> Vec<f64> {
    let a = space.aux_dim();
    let mut probs = vec![0.0; a];
    for k in 0..rho_sa.nrows() {
        probs[k % a] += rho_sa[(k, k)].re;
    }
    probs
}

/// Reduced auxiliary state `Tr_S ρ_SA`.
pub fn partial_trace_system(rho_sa: &Operator, space: &TensorSpace) -> Operator {
    let a = space.aux_dim();
    let s = space.system_dim();
    DMatrix::from_fn(a, a, |i, j| {
        (0..s).map(|k| rho_sa[(k * a + i, k * a + j)]).sum()
    })
}

/// Measures the auxiliary (last tensor factor) in its level basis and returns
/// the branch probability together with the conditional system state.
pub fn measure_auxiliary(rho_sa: &DensityMatrix, space: &TensorSpace, outcome: usize) -> Result<AuxMeasurement> {
    if rho_sa.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: rho_sa.dim(),
        });
    }
    if outcome >= space.aux_dim() {
        return Err(Error::OutcomeOutOfRange {
            index: outcome,
            dim: space.aux_dim(),
        });
    }
    let block = auxiliary_block(rho_sa.matrix(), space, outcome);
    let probability = block.trace().re;
    let state = (probability >= tolerance::ZERO_BRANCH)
        .then(|| DensityMatrix::from_trusted(block.unscale(probability)));
    Ok(AuxMeasurement {
        outcome,
        probability,
        state,
    })
}
