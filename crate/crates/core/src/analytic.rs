//! Closed-form success rates.
//!
//! Archetype coefficient lists are indexed like the canonical bases in
//! [`crate::codes::canonical_basis`]: `b[i][α]` multiplies `|E_{i+1,α}⟩`.

use crate::codes::{CodeKind, CodeSpec};
use crate::noise::NoiseKind;

/// The quadratic forms `U₊`, `U₋`, `V`, `W` evaluated at one `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uvw {
    pub u_plus: f64,
    pub u_minus: f64,
    pub v: f64,
    pub w: f64,
}

pub fn helper_uvw(x: f64, y: f64, theta: f64, phi: f64) -> Uvw {
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    let cross = x * y * theta.sin() * phi.cos();
    Uvw {
        u_plus: x * x * c2 + cross + y * y * s2,
        u_minus: x * x * c2 - cross + y * y * s2,
        v: x * x * s2 + cross + y * y * c2,
        w: x * x + 2.0 * cross + y * y,
    }
}

fn sin2(x: f64) -> f64 {
    x.sin().powi(2)
}

/// One qubit with `ρ₁₁ = 1 − r`.
pub fn p_single_qubit(r: f64, g: f64, t: f64) -> f64 {
    sin2(g * t) * (1.0 - r)
}

/// Repetition code under bit flips, pairs `(b_α, b_{α+3})`.
pub fn p3_bf_general(theta: f64, phi: f64, q: f64, g: f64, t: f64, b: &[f64; 6]) -> f64 {
    let (mut a1, mut a2) = (0.0, 0.0);
    for alpha in 0..3 {
        let h = helper_uvw(b[alpha], b[alpha + 3], theta, phi);
        a1 += h.u_plus;
        a2 += h.v;
    }
    sin2(g * t) * (a1 * q * (1.0 - q).powi(2) + a2 * q * q * (1.0 - q))
}

/// Repetition code under bit flips with `b_α = 1/√6`.
pub fn p3_bf_equal(theta: f64, phi: f64, q: f64, g: f64, t: f64) -> f64 {
    sin2(g * t) * q * (1.0 - q) * (1.0 + theta.sin() * phi.cos()) / 2.0
}

/// Repetition code under amplitude damping.
pub fn p3_ad_general(theta: f64, q: f64, g: f64, t: f64, b: &[f64; 6]) -> f64 {
    let low: f64 = b[..3].iter().map(|x| x * x).sum();
    let high: f64 = b[3..].iter().map(|x| x * x).sum();
    sin2(g * t) * sin2(theta / 2.0) * (q * q * (1.0 - q) * low + q * (1.0 - q).powi(2) * high)
}

pub fn p3_ad_equal(theta: f64, q: f64, g: f64, t: f64) -> f64 {
    0.5 * q * (1.0 - q) * sin2(g * t) * sin2(theta / 2.0)
}

fn single_flip_weight(q: f64) -> f64 {
    q - 3.0 * q * q + 4.0 * q.powi(3) - 2.0 * q.powi(4)
}

#[allow(clippy::too_many_arguments)]
/// Four-qubit code under bit flips; uses `b₁[1..=4]` and `b₂[3], b₂[4]`.
pub fn p4_bf(theta: f64, phi: f64, q: f64, g1: f64, g2: f64, t: f64, b1: &[f64], b2: &[f64]) -> f64 {
    let w1: f64 = (1..=2).map(|a| helper_uvw(b1[a], b1[a + 2], theta, phi).w).sum();
    let w2 = helper_uvw(b2[3], b2[4], theta, phi).w;
    single_flip_weight(q) * sin2(g1 * t) * w1 + 2.0 * q * q * (1.0 - q).powi(2) * w2 * sin2(g2 * t)
}

/// Four-qubit bit flips with equal superpositions of the populated vectors.
pub fn p4_bf_equal(theta: f64, phi: f64, q: f64, g1: f64, g2: f64, t: f64) -> f64 {
    (1.0 + theta.sin() * phi.cos())
        * (single_flip_weight(q) * sin2(g1 * t) + 2.0 * q * q * (1.0 - q).powi(2) * sin2(g2 * t))
}

/// The commonly quoted success rate for equal superpositions of every basis vector.
///
/// Substituting `b = 1/√6` into [`p4_bf`] gives twice this, and the numeric
/// engine agrees with the substitution.
pub fn p4_bf_equal_all_quoted(theta: f64, phi: f64, q: f64, g: f64, t: f64) -> f64 {
    sin2(g * t) * (1.0 + theta.sin() * phi.cos()) * (q - 2.0 * q * q + 2.0 * q.powi(3) - q.powi(4)) / 3.0
}

/// Four-qubit code under phase flips.
pub fn p4_pf(theta: f64, q: f64, g1: f64, t: f64, b10: f64, b15: f64) -> f64 {
    4.0 * single_flip_weight(q) * sin2(g1 * t) * (b10 * b10 * (theta / 2.0).cos().powi(2) + b15 * b15 * sin2(theta / 2.0))
}

/// The commonly quoted equal-superposition line, `4(q−3q²+4q³−2q⁴) sin²g₁t`.
///
/// Substituting `b₁₀² = b₁₅² = ½` into [`p4_pf`] gives half of this, and the
/// numeric engine agrees with the substitution.
pub fn p4_pf_equal_quoted(q: f64, g1: f64, t: f64) -> f64 {
    4.0 * single_flip_weight(q) * sin2(g1 * t)
}

fn five_qubit_sums(theta: f64, phi: f64, g: &[f64; 4], t: f64, b: &[Vec<f64>], pick: fn(&Uvw) -> f64) -> [f64; 4] {
    let s: Vec<f64> = g.iter().map(|gi| sin2(gi * t)).collect();
    let form = |i: usize, x: usize, y: usize| helper_uvw(b[i][x], b[i][y], theta, phi);
    let sum = |i: usize, range: std::ops::RangeInclusive<usize>, shift: usize, f: &dyn Fn(&Uvw) -> f64| -> f64 {
        range.map(|a| f(&form(i, a, a + shift))).sum()
    };
    let plus = |h: &Uvw| h.u_plus;
    let other = |h: &Uvw| pick(h);
    [
        s[0] * sum(0, 0..=1, 2, &plus) + s[1] * sum(1, 0..=2, 3, &plus),
        s[0] * sum(0, 0..=1, 2, &other) + s[1] * sum(1, 0..=2, 3, &other),
        s[0] * sum(0, 4..=5, 2, &plus)
            + s[1] * sum(1, 6..=8, 3, &plus)
            + s[2] * sum(2, 0..=3, 4, &plus)
            + s[3] * form(3, 0, 1).u_plus,
        s[0] * sum(0, 4..=5, 2, &other)
            + s[1] * sum(1, 6..=8, 3, &other)
            + s[2] * sum(2, 0..=3, 4, &other)
            + s[3] * other(&form(3, 0, 1)),
    ]
}

fn five_qubit_polynomial(q: f64, [a1, a2, b1, b2]: [f64; 4]) -> f64 {
    let p = 1.0 - q;
    a1 * q * p.powi(4) + b1 * q * q * p.powi(3) + b2 * q.powi(3) * p * p + a2 * q.powi(4) * p
}

/// Five-qubit code under bit flips, bit-flip adapted basis.
pub fn p5_bf(theta: f64, phi: f64, q: f64, g: &[f64; 4], t: f64, b: &[Vec<f64>]) -> f64 {
    five_qubit_polynomial(q, five_qubit_sums(theta, phi, g, t, b, |h| h.v))
}

/// Five-qubit code under phase flips, phase-flip adapted basis.
pub fn p5_pf(theta: f64, phi: f64, q: f64, g: &[f64; 4], t: f64, b: &[Vec<f64>]) -> f64 {
    five_qubit_polynomial(q, five_qubit_sums(theta, phi, g, t, b, |h| h.u_minus))
}

pub fn p5_bf_equal(theta: f64, phi: f64, q: f64, g: f64, t: f64) -> f64 {
    let p = 1.0 - q;
    0.5 * sin2(g * t)
        * (1.0 + theta.sin() * phi.cos())
        * (q * p.powi(4) + q.powi(4) * p + 3.0 * q * q * p.powi(3) + 3.0 * q.powi(3) * p * p)
}

pub fn p5_pf_equal(theta: f64, phi: f64, q: f64, g: f64, t: f64) -> f64 {
    let p = 1.0 - q;
    let s = theta.sin() * phi.cos();
    0.5 * sin2(g * t)
        * ((1.0 + s) * (q * p.powi(4) + 3.0 * q * q * p.powi(3)) + (1.0 - s) * (q.powi(4) * p + 3.0 * q.powi(3) * p * p))
}

/// Two-qubit Heisenberg encoding under bit flips.
pub fn p_heis2_bf(theta: f64, q: f64, g1: f64, g2: f64, t: f64) -> f64 {
    q * (1.0 - q) * (theta / 2.0).cos().powi(2) * sin2(g1 * t) + q * (sin2(theta / 2.0) + q * theta.cos()) * sin2(g2 * t)
}

/// Two-qubit Heisenberg encoding under phase flips.
pub fn p_heis2_pf(theta: f64, q: f64, g1: f64, t: f64) -> f64 {
    2.0 * q * (1.0 - q) * sin2(theta / 2.0) * sin2(g1 * t)
}

fn six(b: &[f64]) -> Option<&[f64; 6]> {
    b.try_into().ok()
}

/// Whether [`closed_form`] covers `code` under `noise`.
pub fn has_closed_form(code: &CodeSpec, noise: NoiseKind) -> bool {
    use CodeKind::*;
    use NoiseKind::*;
    matches!(
        (code.kind, code.n_qubits, noise),
        (ThreeQubitRepetition, _, BitFlip | AmplitudeDamping)
            | (FourQubitGrassl, _, BitFlip | PhaseFlip)
            | (FiveQubitPerfect, _, BitFlip | PhaseFlip)
            | (HeisenbergChain, 2, BitFlip | PhaseFlip)
    )
}

#[allow(clippy::too_many_arguments)]
/// Closed-form `P` for a code setup with a qudit auxiliary, when one exists.
///
/// `couplings` holds `g_i` per excited subspace and `b` the archetype
/// coefficients per excited subspace.
pub fn closed_form(
    code: &CodeSpec,
    noise: NoiseKind,
    theta: f64,
    phi: f64,
    q: f64,
    couplings: &[f64],
    t: f64,
    b: &[Vec<f64>],
) -> Option<f64> {
    use CodeKind::*;
    use NoiseKind::*;
    let g = |i: usize| couplings.get(i).copied();
    match (code.kind, code.n_qubits, noise) {
        (ThreeQubitRepetition, _, BitFlip) => Some(p3_bf_general(theta, phi, q, g(0)?, t, six(b.first()?)?)),
        (ThreeQubitRepetition, _, AmplitudeDamping) => Some(p3_ad_general(theta, q, g(0)?, t, six(b.first()?)?)),
        (FourQubitGrassl, _, BitFlip) => Some(p4_bf(theta, phi, q, g(0)?, g(1)?, t, b.first()?, b.get(1)?)),
        (FourQubitGrassl, _, PhaseFlip) => {
            let b1 = b.first()?;
            Some(p4_pf(theta, q, g(0)?, t, b1[0], b1[5]))
        }
        (FiveQubitPerfect, _, BitFlip | PhaseFlip) => {
            let g4 = [g(0)?, g(1)?, g(2)?, g(3)?];
            if b.len() != 4 {
                return None;
            }
            Some(if noise == BitFlip {
                p5_bf(theta, phi, q, &g4, t, b)
            } else {
                p5_pf(theta, phi, q, &g4, t, b)
            })
        }
        (HeisenbergChain, 2, BitFlip) => Some(p_heis2_bf(theta, q, g(0)?, g(1)?, t)),
        (HeisenbergChain, 2, PhaseFlip) => Some(p_heis2_pf(theta, q, g(0)?, t)),
        _ => None,
    }
}
