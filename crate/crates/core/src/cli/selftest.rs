//! Channel and evolution invariants checked on small instances.

use std::fmt;

use super::config::{parse_code, CODE_NAMES};
use crate::error::Result;
use crate::lindblad::{integrate, LindbladSetup, DEFAULT_STEP};
use crate::noise::{kraus_ops, NoiseKind};
use crate::protocol::{run_protocol, ProtocolTemplate};
use crate::qmat::{unitarity_deviation, DensityMatrix};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// Largest deviation observed.
    pub value: f64,
    pub bound: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.bound
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{status:6} {:48} {:.3e} <= {:.0e}", self.name, self.value, self.bound)
    }
}

const RATES: [f64; 5] = [0.0, 0.1, 0.5, 0.9, 1.0];
const TIMES: [f64; 3] = [0.3, 1.7, 9.4];

/// Kraus completeness, trace preservation, unitarity of the joint propagator
/// and completeness of the auxiliary outcome probabilities.
pub fn selftest() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for kind in NoiseKind::ALL {
        let mut worst = 0.0f64;
        for q in RATES {
            worst = worst.max(kraus_ops(kind, q)?.completeness_deviation());
        }
        checks.push(Check {
            name: format!("kraus completeness, {kind}"),
            value: worst,
            bound: tolerance::KRAUS_COMPLETENESS,
        });
    }

    for name in CODE_NAMES {
        let code = parse_code(name).expect("listed codes parse");
        let mut trace = 0.0f64;
        let mut unitary = 0.0f64;
        let mut probs = 0.0f64;
        for noise in NoiseKind::ALL {
            let prepared = ProtocolTemplate::new(code.clone(), noise).prepare()?;
            let (theta, phi) = (1.1, 0.4);
            let setup = prepared.setup(theta, phi, &prepared.coefficients(0)?)?;
            for t in TIMES {
                unitary = unitary.max(unitarity_deviation(&setup.unitary(t)));
            }
            for q in RATES {
                let rho = prepared.noisy_state(theta, phi, q)?;
                trace = trace.max((rho.trace() - 1.0).abs());
                for t in TIMES {
                    let out = run_protocol(&rho, &setup, t)?;
                    probs = probs.max((out.outcome_probs.iter().sum::<f64>() - 1.0).abs());
                }
            }
        }
        checks.push(Check {
            name: format!("trace preservation, {name}"),
            value: trace,
            bound: tolerance::TRACE,
        });
        checks.push(Check {
            name: format!("unitarity, {name}"),
            value: unitary,
            bound: tolerance::UNITARY,
        });
        checks.push(Check {
            name: format!("outcome probabilities, {name}"),
            value: probs,
            bound: tolerance::PROBABILITY_SUM,
        });
    }

    let prepared = ProtocolTemplate::new(parse_code("three_qubit").expect("known code"), NoiseKind::AmplitudeDamping).prepare()?;
    let rho = DensityMatrix::pure(&prepared.target(2.0, 0.3));
    let damping = LindbladSetup::damping_only(3, 0.2, DEFAULT_STEP)?;
    let mut drift = 0.0f64;
    for t in [1.0, 4.0] {
        drift = drift.max((integrate(&rho, &damping, t)?.trace() - 1.0).abs());
    }
    checks.push(Check {
        name: "master equation trace drift, three_qubit".into(),
        value: drift,
        bound: tolerance::LINDBLAD_TRACE,
    });
    Ok(checks)
}
