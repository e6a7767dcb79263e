//! Code Hamiltonians, their degenerate energy subspaces and the logical
//! resource states living in the zero-energy subspace.

use std::fmt;

use crate::error::{Error, Result};
use crate::qmat::{
    bitstring_ket, hermitian_eig, identity, max_abs, pauli_word, real, Ket, Operator, Pauli, C64,
};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    ThreeQubitRepetition,
    FourQubitGrassl,
    FiveQubitPerfect,
    HeisenbergChain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub n_qubits: usize,
    /// Overall energy scale J.
    pub coupling: f64,
    /// Longitudinal field h, Heisenberg chains only.
    pub field: Option<f64>,
}

impl CodeSpec {
    pub fn three_qubit() -> Self {
        Self::stabilizer(CodeKind::ThreeQubitRepetition, 3)
    }

    pub fn four_qubit() -> Self {
        Self::stabilizer(CodeKind::FourQubitGrassl, 4)
    }

    pub fn five_qubit() -> Self {
        Self::stabilizer(CodeKind::FiveQubitPerfect, 5)
    }

    fn stabilizer(kind: CodeKind, n_qubits: usize) -> Self {
        Self {
            kind,
            n_qubits,
            coupling: 1.0,
            field: None,
        }
    }

    /// Even-length chain at the field where the ground level is doubly degenerate.
    pub fn heisenberg(n_qubits: usize) -> Self {
        Self {
            kind: CodeKind::HeisenbergChain,
            n_qubits,
            coupling: 1.0,
            field: Some(degenerate_field(n_qubits)),
        }
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coupling > 0.0 && self.coupling.is_finite()) {
            return Err(Error::UnsupportedSpec(format!(
                "coupling J must be positive, got {}",
                self.coupling
            )));
        }
        let expected = match self.kind {
            CodeKind::ThreeQubitRepetition => Some(3),
            CodeKind::FourQubitGrassl => Some(4),
            CodeKind::FiveQubitPerfect => Some(5),
            CodeKind::HeisenbergChain => None,
        };
        match expected {
            Some(n) if n != self.n_qubits => Err(Error::UnsupportedSpec(format!(
                "{:?} has {n} qubits, not {}",
                self.kind, self.n_qubits
            ))),
            Some(_) if self.field.is_some() => Err(Error::UnsupportedSpec(
                "a field applies to Heisenberg chains only".into(),
            )),
            None if self.n_qubits < 2 || !self.n_qubits.is_multiple_of(2) => Err(Error::UnsupportedSpec(
                format!("Heisenberg chain needs an even N >= 2, got {}", self.n_qubits),
            )),
            None if self.n_qubits > 10 => Err(Error::UnsupportedSpec(format!(
                "Heisenberg chain of {} qubits exceeds the dense-matrix limit",
                self.n_qubits
            ))),
            None if self.field.is_none() => Err(Error::UnsupportedSpec(
                "Heisenberg chain needs a field".into(),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CodeKind::ThreeQubitRepetition => write!(f, "three_qubit"),
            CodeKind::FourQubitGrassl => write!(f, "four_qubit"),
            CodeKind::FiveQubitPerfect => write!(f, "five_qubit"),
            CodeKind::HeisenbergChain => write!(f, "heisenberg{}", self.n_qubits),
        }
    }
}

/// Field at which an even chain has a doubly degenerate ground level.
pub fn degenerate_field(n_qubits: usize) -> f64 {
    if n_qubits == 2 {
        1.0
    } else {
        2.0
    }
}

/// Stabilizer generators of the three stabilizer codes.
pub fn stabilizers(spec: &CodeSpec) -> Option<Vec<Operator>> {
    use Pauli::{X, Z};
    let words: Vec<Vec<(usize, Pauli)>> = match spec.kind {
        CodeKind::ThreeQubitRepetition => vec![
            vec![(1, Z), (2, Z)],
            vec![(2, Z), (3, Z)],
            vec![(1, Z), (3, Z)],
        ],
        CodeKind::FourQubitGrassl => vec![
            vec![(1, X), (2, X), (3, X), (4, X)],
            vec![(3, Z), (4, Z)],
            vec![(1, Z), (2, Z)],
        ],
        CodeKind::FiveQubitPerfect => vec![
            vec![(1, X), (2, Z), (3, Z), (4, X)],
            vec![(2, X), (3, Z), (4, Z), (5, X)],
            vec![(1, X), (3, X), (4, Z), (5, Z)],
            vec![(1, Z), (2, X), (4, X), (5, Z)],
        ],
        CodeKind::HeisenbergChain => return None,
    };
    Some(words.iter().map(|w| pauli_word(spec.n_qubits, w)).collect())
}

/// Distinct nearest-neighbour bonds of a closed chain. A two-site ring has a
/// single bond.
fn chain_bonds(n: usize) -> Vec<(usize, usize)> {
    if n == 2 {
        vec![(1, 2)]
    } else {
        (1..=n).map(|j| (j, j % n + 1)).collect()
    }
}

/// The system Hamiltonian, shifted so that its ground energy is zero.
pub fn build_hamiltonian(spec: &CodeSpec) -> Result<Operator> {
    spec.validate()?;
    let n = spec.n_qubits;
    let j = spec.coupling;
    if let Some(stabs) = stabilizers(spec) {
        let count = stabs.len() as f64;
        let sum = stabs.iter().fold(Operator::zeros(spec.dim(), spec.dim()), |acc, s| acc + s);
        return Ok((identity(spec.dim()).scale(count) - sum).scale(j));
    }

    let h = spec.field.expect("validated");
    let bonds = chain_bonds(n);
    let mut ham = Operator::zeros(spec.dim(), spec.dim());
    for &(a, b) in &bonds {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            ham += pauli_word(n, &[(a, p), (b, p)]).scale(0.25);
        }
    }
    for site in 1..=n {
        ham -= pauli_word(n, &[(site, Pauli::Z)]).scale(h / 2.0);
    }
    let ground = if h == degenerate_field(n) {
        // The fully polarized state is a ground state at the degenerate field.
        0.25 * bonds.len() as f64 - 0.5 * h * n as f64
    } else {
        hermitian_eig(&ham)?.values[0]
    };
    ham -= identity(spec.dim()).scale(ground);
    Ok(ham.scale(j))
}

/// One degenerate eigenvalue together with an orthonormal basis of its eigenspace.
#[derive(Debug, Clone)]
pub struct EnergySubspace {
    pub index: usize,
    pub energy: f64,
    pub basis: Vec<Ket>,
}

impl EnergySubspace {
    pub fn degeneracy(&self) -> usize {
        self.basis.len()
    }

    pub fn projector(&self) -> Operator {
        let dim = self.basis[0].len();
        self.basis
            .iter()
            .fold(Operator::zeros(dim, dim), |acc, v| acc + v * v.adjoint())
    }

    /// `|v - Π v|`, zero when `v` lies in the subspace.
    pub fn membership_residual(&self, v: &Ket) -> f64 {
        let mut r = v.clone();
        for b in &self.basis {
            let overlap = b.dotc(v);
            r -= b * overlap;
        }
        r.norm()
    }

    /// `Σ_α coeffs[α] |E_{i,α}⟩`.
    pub fn combine(&self, coeffs: &[f64]) -> Ket {
        assert_eq!(coeffs.len(), self.degeneracy());
        self.basis
            .iter()
            .zip(coeffs)
            .fold(Ket::zeros(self.basis[0].len()), |acc, (v, &b)| acc + v * real(b))
    }
}

/// Orthogonal decomposition of the Hilbert space into energy subspaces,
/// ordered by ascending energy with the ground energy at zero.
#[derive(Debug, Clone)]
pub struct SpectrumDecomposition {
    pub subspaces: Vec<EnergySubspace>,
}

impl SpectrumDecomposition {
    /// Number of excited subspaces `D`.
    pub fn excited_count(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn ground(&self) -> &EnergySubspace {
        &self.subspaces[0]
    }

    pub fn excited(&self) -> &[EnergySubspace] {
        &self.subspaces[1..]
    }

    pub fn energies(&self) -> Vec<f64> {
        self.subspaces.iter().map(|s| s.energy).collect()
    }

    pub fn degeneracies(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.degeneracy()).collect()
    }

    pub fn dim(&self) -> usize {
        self.subspaces[0].basis[0].len()
    }

    /// `Σ_i E_i Π_i`.
    pub fn hamiltonian(&self) -> Operator {
        self.subspaces
            .iter()
            .fold(Operator::zeros(self.dim(), self.dim()), |acc, s| acc + s.projector().scale(s.energy))
    }
}

fn gram_schmidt(vectors: Vec<Ket>) -> Vec<Ket> {
    let mut out: Vec<Ket> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        for _ in 0..2 {
            for u in &out {
                let overlap = u.dotc(&v);
                v -= u * overlap;
            }
        }
        let norm = v.norm();
        out.push(v.unscale(norm));
    }
    out
}

/// Clusters the spectrum of `h` into degenerate subspaces.
pub fn decompose_spectrum(h: &Operator, group_tol: f64) -> Result<SpectrumDecomposition> {
    let eig = hermitian_eig(h)?;
    let threshold = tolerance::GROUP_GAP_FACTOR * group_tol;
    let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
    for k in 1..eig.values.len() {
        let gap = eig.values[k] - eig.values[k - 1];
        if gap <= group_tol {
            clusters.last_mut().unwrap().push(k);
        } else if gap < threshold {
            return Err(Error::AmbiguousClustering { gap, threshold });
        } else {
            clusters.push(vec![k]);
        }
    }
    let mean = |c: &[usize]| c.iter().map(|&k| eig.values[k]).sum::<f64>() / c.len() as f64;
    let ground = mean(&clusters[0]);
    let subspaces = clusters
        .iter()
        .enumerate()
        .map(|(index, c)| EnergySubspace {
            index,
            energy: if index == 0 { 0.0 } else { mean(c) - ground },
            basis: gram_schmidt(c.iter().map(|&k| eig.vectors.column(k).into_owned()).collect()),
        })
        .collect();
    Ok(SpectrumDecomposition { subspaces })
}

/// Which standard excited-state basis to use where a code has several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisVariant {
    /// Bases adapted to bit-flip errors (also used for amplitude damping).
    #[default]
    BitFlip,
    /// The five-qubit basis adapted to phase-flip errors.
    PhaseFlip,
}

/// `coefficient · word |E_{0,logical}⟩`.
struct BasisWord {
    coefficient: C64,
    word: &'static [(usize, Pauli)],
    logical: usize,
}

const fn w(word: &'static [(usize, Pauli)], logical: usize) -> BasisWord {
    BasisWord {
        coefficient: C64::new(1.0, 0.0),
        word,
        logical,
    }
}

const fn wi(word: &'static [(usize, Pauli)], logical: usize) -> BasisWord {
    BasisWord {
        coefficient: C64::new(0.0, 1.0),
        word,
        logical,
    }
}

const fn wmi(word: &'static [(usize, Pauli)], logical: usize) -> BasisWord {
    BasisWord {
        coefficient: C64::new(0.0, -1.0),
        word,
        logical,
    }
}

use Pauli::{X, Y, Z};

const THREE_QUBIT_EXCITED: [&[BasisWord]; 1] = [&[
    w(&[(1, X)], 0), // |100⟩
    w(&[(2, X)], 0), // |010⟩
    w(&[(3, X)], 0), // |001⟩
    w(&[(1, X)], 1), // |011⟩
    w(&[(3, X)], 1), // |110⟩
    w(&[(2, X)], 1), // |101⟩
]];

// |E_{1,0}⟩ acts on |E_{0,1}⟩: applied to |E_{0,0}⟩ it would coincide with -|E_{1,5}⟩.
const FOUR_QUBIT_EXCITED: [&[BasisWord]; 3] = [
    &[
        wmi(&[(3, X), (4, Y)], 1),
        w(&[(4, X)], 0),
        w(&[(2, X)], 0),
        w(&[(3, X)], 0),
        w(&[(2, X)], 1),
        w(&[(3, Z)], 1),
    ],
    &[
        w(&[(3, X), (4, Z)], 1),
        w(&[(3, Z), (4, X)], 1),
        wi(&[(2, Y)], 0),
        w(&[(2, X), (3, X)], 1),
        w(&[(2, X), (3, X)], 0),
        w(&[(2, X), (3, Z)], 1),
    ],
    &[wi(&[(2, Y), (3, X)], 1), wi(&[(2, Y), (3, X)], 0)],
];

const FIVE_QUBIT_BIT_FLIP: [&[BasisWord]; 4] = [
    &[
        w(&[(1, X)], 0),
        w(&[(2, X)], 0),
        w(&[(1, X)], 1),
        w(&[(2, X)], 1),
        w(&[(2, X), (3, X)], 0),
        w(&[(1, X), (5, X)], 0),
        w(&[(2, X), (3, X)], 1),
        w(&[(1, X), (5, X)], 1),
    ],
    &[
        w(&[(3, X)], 0),
        w(&[(4, X)], 0),
        w(&[(5, X)], 0),
        w(&[(3, X)], 1),
        w(&[(4, X)], 1),
        w(&[(5, X)], 1),
        w(&[(1, X), (2, X)], 0),
        w(&[(3, X), (4, X)], 0),
        w(&[(4, X), (5, X)], 0),
        w(&[(1, X), (2, X)], 1),
        w(&[(3, X), (4, X)], 1),
        w(&[(4, X), (5, X)], 1),
    ],
    &[
        w(&[(1, X), (3, X)], 0),
        w(&[(1, X), (4, X)], 0),
        w(&[(2, X), (4, X)], 0),
        w(&[(2, X), (5, X)], 0),
        w(&[(1, X), (3, X)], 1),
        w(&[(1, X), (4, X)], 1),
        w(&[(2, X), (4, X)], 1),
        w(&[(2, X), (5, X)], 1),
    ],
    &[w(&[(3, X), (5, X)], 0), w(&[(3, X), (5, X)], 1)],
];

// |E_{2,10}⟩ pairs with |E_{2,7}⟩ (σᶻ₂σᶻ₄); σᶻ₃σᶻ₄ lands in the third subspace.
const FIVE_QUBIT_PHASE_FLIP: [&[BasisWord]; 4] = [
    &[
        w(&[(3, Z)], 0),
        w(&[(5, Z)], 0),
        w(&[(3, Z)], 1),
        w(&[(5, Z)], 1),
        w(&[(1, Z), (3, Z)], 0),
        w(&[(2, Z), (5, Z)], 0),
        w(&[(1, Z), (3, Z)], 1),
        w(&[(2, Z), (5, Z)], 1),
    ],
    &[
        w(&[(1, Z)], 0),
        w(&[(2, Z)], 0),
        w(&[(4, Z)], 0),
        w(&[(1, Z)], 1),
        w(&[(2, Z)], 1),
        w(&[(4, Z)], 1),
        w(&[(1, Z), (4, Z)], 0),
        w(&[(2, Z), (4, Z)], 0),
        w(&[(3, Z), (5, Z)], 0),
        w(&[(1, Z), (4, Z)], 1),
        w(&[(2, Z), (4, Z)], 1),
        w(&[(3, Z), (5, Z)], 1),
    ],
    &[
        w(&[(1, Z), (5, Z)], 0),
        w(&[(2, Z), (3, Z)], 0),
        w(&[(3, Z), (4, Z)], 0),
        w(&[(4, Z), (5, Z)], 0),
        w(&[(1, Z), (5, Z)], 1),
        w(&[(2, Z), (3, Z)], 1),
        w(&[(3, Z), (4, Z)], 1),
        w(&[(4, Z), (5, Z)], 1),
    ],
    &[w(&[(1, Z), (2, Z)], 0), w(&[(1, Z), (2, Z)], 1)],
];

/// Signed computational-basis terms of the five-qubit |E_{0,0}⟩ (overall factor -1/4).
const FIVE_QUBIT_GROUND_TERMS: [(f64, &str); 16] = [
    (1.0, "00001"),
    (1.0, "00010"),
    (1.0, "00100"),
    (1.0, "00111"),
    (1.0, "01000"),
    (-1.0, "01011"),
    (-1.0, "01101"),
    (1.0, "01110"),
    (1.0, "10000"),
    (1.0, "10011"),
    (-1.0, "10101"),
    (-1.0, "10110"),
    (1.0, "11001"),
    (-1.0, "11010"),
    (1.0, "11100"),
    (-1.0, "11111"),
];

fn superpose(terms: &[(f64, &str)], scale: f64) -> Ket {
    terms
        .iter()
        .fold(Ket::zeros(1 << terms[0].1.len()), |acc, &(c, bits)| {
            acc + bitstring_ket(bits) * real(c * scale)
        })
}

/// The two standard zero-energy basis states `|E_{0,0}⟩, |E_{0,1}⟩`.
pub fn ground_basis(spec: &CodeSpec) -> Result<[Ket; 2]> {
    spec.validate()?;
    let s = 0.5_f64.sqrt();
    Ok(match spec.kind {
        CodeKind::ThreeQubitRepetition => [bitstring_ket("000"), bitstring_ket("111")],
        CodeKind::FourQubitGrassl => [
            superpose(&[(1.0, "0000"), (1.0, "1111")], s),
            superpose(&[(1.0, "0011"), (1.0, "1100")], s),
        ],
        CodeKind::FiveQubitPerfect => {
            let e00 = superpose(&FIVE_QUBIT_GROUND_TERMS, -0.25);
            let all_x: Vec<(usize, Pauli)> = (1..=5).map(|q| (q, X)).collect();
            let e01 = pauli_word(5, &all_x) * &e00;
            [e00, e01]
        }
        CodeKind::HeisenbergChain => {
            if spec.field != Some(degenerate_field(spec.n_qubits)) {
                return Err(Error::NoCanonicalBasis(format!(
                    "{spec} away from the degenerate field"
                )));
            }
            let n = spec.n_qubits;
            let polarized = Ket::from_element(spec.dim(), real(0.0));
            let mut polarized = polarized;
            polarized[0] = real(1.0);
            // (1/√N) Σ_j (-1)^j σˣ_j |0…0⟩
            let mut magnon = Ket::zeros(spec.dim());
            for j in 1..=n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                magnon[1 << (n - j)] = real(sign / (n as f64).sqrt());
            }
            [polarized, magnon]
        }
    })
}

fn materialize(n: usize, ground: &[Ket; 2], table: &[&[BasisWord]]) -> Vec<Vec<Ket>> {
    table
        .iter()
        .map(|words| {
            words
                .iter()
                .map(|bw| pauli_word(n, bw.word) * &ground[bw.logical] * bw.coefficient)
                .collect()
        })
        .collect()
}

/// Completes a basis for an eigenspace of `h` deterministically by projecting
/// computational basis states onto it.
fn projected_basis(projector: &Operator, degeneracy: usize) -> Vec<Ket> {
    let dim = projector.nrows();
    let mut basis: Vec<Ket> = Vec::with_capacity(degeneracy);
    for k in 0..dim {
        if basis.len() == degeneracy {
            break;
        }
        let mut v = projector.column(k).into_owned();
        for _ in 0..2 {
            for u in &basis {
                let overlap = u.dotc(&v);
                v -= u * overlap;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v.unscale(norm));
        }
    }
    basis
}

/// The standard energy eigenbasis of a code, materialized from operator words
/// and checked against the Hamiltonian.
pub fn canonical_basis(spec: &CodeSpec, variant: BasisVariant) -> Result<SpectrumDecomposition> {
    let h = build_hamiltonian(spec)?;
    let ground = ground_basis(spec)?;
    let n = spec.n_qubits;
    let j = spec.coupling;
    if variant == BasisVariant::PhaseFlip && spec.kind != CodeKind::FiveQubitPerfect {
        return Err(Error::NoCanonicalBasis(format!(
            "{spec} has no phase-flip specific basis"
        )));
    }
    let (energies, excited): (Vec<f64>, Vec<Vec<Ket>>) = match spec.kind {
        CodeKind::ThreeQubitRepetition => (vec![4.0 * j], materialize(n, &ground, &THREE_QUBIT_EXCITED)),
        CodeKind::FourQubitGrassl => (
            vec![2.0 * j, 4.0 * j, 6.0 * j],
            materialize(n, &ground, &FOUR_QUBIT_EXCITED),
        ),
        CodeKind::FiveQubitPerfect => {
            let table: &[&[BasisWord]] = match variant {
                BasisVariant::BitFlip => &FIVE_QUBIT_BIT_FLIP,
                BasisVariant::PhaseFlip => &FIVE_QUBIT_PHASE_FLIP,
            };
            (vec![2.0 * j, 4.0 * j, 6.0 * j, 8.0 * j], materialize(n, &ground, table))
        }
        CodeKind::HeisenbergChain if n == 2 => {
            let s = 0.5_f64.sqrt();
            (
                vec![j, 2.0 * j],
                vec![
                    vec![superpose(&[(1.0, "01"), (1.0, "10")], s)],
                    vec![bitstring_ket("11")],
                ],
            )
        }
        CodeKind::HeisenbergChain => {
            let numeric = decompose_spectrum(&h, tolerance::GROUP * j)?;
            let energies = numeric.excited().iter().map(|s| s.energy).collect();
            let bases = numeric
                .excited()
                .iter()
                .map(|s| projected_basis(&s.projector(), s.degeneracy()))
                .collect();
            (energies, bases)
        }
    };

    let mut subspaces = vec![EnergySubspace {
        index: 0,
        energy: 0.0,
        basis: ground.to_vec(),
    }];
    for (k, (energy, basis)) in energies.into_iter().zip(excited).enumerate() {
        subspaces.push(EnergySubspace {
            index: k + 1,
            energy,
            basis,
        });
    }
    let decomposition = SpectrumDecomposition { subspaces };
    validate_basis(&h, &decomposition)?;
    Ok(decomposition)
}

/// Checks eigen-equations, orthonormality and completeness of a decomposition.
pub fn validate_basis(h: &Operator, decomposition: &SpectrumDecomposition) -> Result<()> {
    let scale = max_abs(h).max(1.0);
    let all: Vec<(String, &Ket)> = decomposition
        .subspaces
        .iter()
        .flat_map(|s| {
            s.basis
                .iter()
                .enumerate()
                .map(move |(a, v)| (format!("E_{{{},{}}}", s.index, a), v))
        })
        .collect();
    for s in &decomposition.subspaces {
        for (a, v) in s.basis.iter().enumerate() {
            let residual = (h * v - v * real(s.energy)).norm();
            if residual > tolerance::EIGEN_RESIDUAL * scale {
                return Err(Error::CanonicalBasisInvalid {
                    label: format!("E_{{{},{}}}", s.index, a),
                    reason: format!("eigen-equation residual {residual:e} at energy {}", s.energy),
                });
            }
        }
    }
    for (x, (lx, vx)) in all.iter().enumerate() {
        for (ly, vy) in all.iter().skip(x) {
            let expected = if lx == ly { 1.0 } else { 0.0 };
            let overlap = vx.dotc(vy);
            if (overlap - real(expected)).norm() > tolerance::ORTHONORMAL {
                return Err(Error::CanonicalBasisInvalid {
                    label: lx.clone(),
                    reason: format!("overlap with {ly} is {overlap}"),
                });
            }
        }
    }
    if all.len() != h.nrows() {
        return Err(Error::CanonicalBasisInvalid {
            label: "basis".into(),
            reason: format!("{} vectors for dimension {}", all.len(), h.nrows()),
        });
    }
    Ok(())
}

/// `|Ψ_{0,β}⟩` built from a two-dimensional ground basis.
pub fn logical_state_in(ground: &[Ket], theta: f64, phi: f64, beta: usize) -> Ket {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let phase = C64::from_polar(1.0, phi);
    match beta {
        0 => &ground[0] * real(c) + &ground[1] * (phase * s),
        1 => &ground[0] * real(s) - &ground[1] * (phase * c),
        _ => panic!("logical index must be 0 or 1, got {beta}"),
    }
}

/// `|Ψ_{0,0}⟩ = cos(θ/2)|E_{0,0}⟩ + e^{iφ} sin(θ/2)|E_{0,1}⟩` and its orthogonal partner.
pub fn logical_state(spec: &CodeSpec, theta: f64, phi: f64, beta: usize) -> Result<Ket> {
    Ok(logical_state_in(&ground_basis(spec)?, theta, phi, beta))
}
