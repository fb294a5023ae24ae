//! Hardware cost models.
//!
//! Photonic: number of orbital-angular-momentum beam splitters (OAM-BS) in a
//! heralded two-qudit phase gate, and its dimension-independent success
//! probability. Trapped ions: compound error of a sequence of entangling
//! gates, each costed in units of a qubit CNOT.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Ratio;

fn floor_log2(x: usize) -> u32 {
    usize::BITS - 1 - x.leading_zeros()
}

/// Upper bound on OAM-BS elements for a two-qudit gate between dimensions
/// `d1` and `d2`: `2·(⌊log₂(d1−1)⌋ + ⌊log₂(d2−1)⌋) + 2`.
pub fn photonic_oam_bs_count(d1: usize, d2: usize) -> Result<usize> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidArgument(format!("dimensions ({d1}, {d2}) must be at least 2")));
    }
    Ok(2 * (floor_log2(d1 - 1) + floor_log2(d2 - 1)) as usize + 2)
}

/// Heralding success probability of one photonic gate, for any dimension.
pub fn photonic_success_probability() -> Ratio {
    Ratio::new(1, 4)
}

/// Success probability of `n` independent photonic gates.
pub fn photonic_sequence_success(n: u32) -> Ratio {
    let p = photonic_success_probability();
    Ratio::new(p.numer().pow(n), p.denom().pow(n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhotonicEstimate {
    pub d1: usize,
    pub d2: usize,
    pub oam_bs: usize,
    pub p_success: [u64; 2],
}

pub fn photonic_estimate(d1: usize, d2: usize) -> Result<PhotonicEstimate> {
    let p = photonic_success_probability();
    Ok(PhotonicEstimate { d1, d2, oam_bs: photonic_oam_bs_count(d1, d2)?, p_success: [*p.numer(), *p.denom()] })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IonErrorModel {
    /// Error of one qubit CNOT.
    pub base_error: f64,
    /// Error multiplier for a qubit gate embedded in a qudit register.
    pub embed_factor: f64,
}

impl Default for IonErrorModel {
    fn default() -> Self {
        IonErrorModel { base_error: 0.01, embed_factor: 2.0 }
    }
}

impl IonErrorModel {
    pub fn validate(&self) -> Result<()> {
        if self.base_error > 0.0 && self.embed_factor > 0.0 && self.base_error.is_finite() && self.embed_factor.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument("ion model parameters must be positive".into()))
        }
    }
}

/// One entangling gate: its rotation content in qubit-CNOT units and its
/// platform error multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IonGate {
    pub angle_multiple: f64,
    pub embed_factor: f64,
}

impl IonGate {
    pub const QUBIT: IonGate = IonGate { angle_multiple: 1.0, embed_factor: 1.0 };
}

/// `1 − ∏ (1 − base·angle·factor)`, clamped to `[0, 1]`.
pub fn ion_circuit_error(gates: &[IonGate], base_error: f64) -> Result<f64> {
    if !(base_error > 0.0) {
        return Err(Error::InvalidArgument("base error must be positive".into()));
    }
    let mut survive = 1.0;
    for g in gates {
        if !(g.angle_multiple > 0.0 && g.embed_factor > 0.0) {
            return Err(Error::InvalidArgument("angle multiples and factors must be positive".into()));
        }
        survive *= (1.0 - base_error * g.angle_multiple * g.embed_factor).clamp(0.0, 1.0);
    }
    Ok((1.0 - survive).clamp(0.0, 1.0))
}

/// Named four-qubit phase-flip implementation on trapped ions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IonScenario {
    pub name: &'static str,
    pub description: &'static str,
    pub nonlocal_gates: usize,
    /// Per-gate angle multiples; `None` where no value is known.
    pub angle_multiples: Option<Vec<f64>>,
    /// Whether the gates are qubit gates embedded in qudits.
    pub embedded: bool,
}

pub fn ion_scenarios() -> Vec<IonScenario> {
    vec![
        IonScenario {
            name: "qubit-13",
            description: "four qubits, 6 CNOT + 7 controlled-T",
            nonlocal_gates: 13,
            angle_multiples: Some(vec![1.0; 13]),
            embedded: false,
        },
        IonScenario {
            name: "aux-qubit-5",
            description: "four qubits with one auxiliary level each; larger rotation angles, multiples unassigned",
            nonlocal_gates: 5,
            angle_multiples: None,
            embedded: false,
        },
        IonScenario {
            name: "qudit-1",
            description: "two 5-level qudits, one two-level entangling gate with four qubit-gate angles",
            nonlocal_gates: 1,
            angle_multiples: Some(vec![4.0]),
            embedded: false,
        },
    ]
}

pub fn ion_scenario(name: &str) -> Result<IonScenario> {
    ion_scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown ion scenario `{name}`")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IonEstimate {
    pub scenario: String,
    pub gates: usize,
    /// `None` when the scenario's angle multiples are unassigned.
    pub error: Option<f64>,
    pub model: IonModelDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IonModelDoc {
    pub base_error: f64,
    pub embed_factor: f64,
    pub embedded: bool,
    pub angle_multiples: Option<Vec<f64>>,
}

/// Error estimate for a scenario; `angles` overrides the scenario's angle
/// multiples and must have one entry per gate.
pub fn ion_estimate(scenario: &IonScenario, model: &IonErrorModel, angles: Option<&[f64]>) -> Result<IonEstimate> {
    model.validate()?;
    let angles = match angles {
        Some(a) if a.len() != scenario.nonlocal_gates => {
            return Err(Error::InvalidArgument(format!(
                "scenario {} has {} gates, got {} angle multiples",
                scenario.name,
                scenario.nonlocal_gates,
                a.len()
            )))
        }
        Some(a) => Some(a.to_vec()),
        None => scenario.angle_multiples.clone(),
    };
    let factor = if scenario.embedded { model.embed_factor } else { 1.0 };
    let error = match &angles {
        Some(a) => {
            let gates: Vec<IonGate> = a.iter().map(|&angle_multiple| IonGate { angle_multiple, embed_factor: factor }).collect();
            Some(ion_circuit_error(&gates, model.base_error)?)
        }
        None => None,
    };
    Ok(IonEstimate {
        scenario: scenario.name.to_string(),
        gates: scenario.nonlocal_gates,
        error,
        model: IonModelDoc {
            base_error: model.base_error,
            embed_factor: model.embed_factor,
            embedded: scenario.embedded,
            angle_multiples: angles,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oam_bs_examples() {
        assert_eq!(photonic_oam_bs_count(8, 8).unwrap(), 10);
        assert_eq!(photonic_oam_bs_count(2, 2).unwrap(), 2);
        assert_eq!(photonic_oam_bs_count(4, 4).unwrap(), 6);
        assert!(photonic_oam_bs_count(1, 4).is_err());
    }

    #[test]
    fn success_probability_is_a_quarter() {
        assert_eq!(photonic_success_probability(), Ratio::new(1, 4));
        assert_eq!(photonic_estimate(8, 8).unwrap().p_success, [1, 4]);
        assert_eq!(photonic_estimate(3, 17).unwrap().p_success, [1, 4]);
        assert_eq!(photonic_sequence_success(3), Ratio::new(1, 64));
        assert_eq!(photonic_sequence_success(0), Ratio::new(1, 1));
    }

    #[test]
    fn ion_error_examples() {
        let thirteen = ion_circuit_error(&[IonGate::QUBIT; 13], 0.01).unwrap();
        assert!((thirteen - (1.0 - 0.99f64.powi(13))).abs() < 1e-12);
        assert!((thirteen - 0.1225).abs() < 5e-4);
        let one = ion_circuit_error(&[IonGate { angle_multiple: 4.0, embed_factor: 1.0 }], 0.01).unwrap();
        assert!((one - 0.04).abs() < 1e-12);
        assert_eq!(ion_circuit_error(&[], 0.01).unwrap(), 0.0);
        assert!(ion_circuit_error(&[IonGate { angle_multiple: 0.0, embed_factor: 1.0 }], 0.01).is_err());
        assert!(ion_circuit_error(&[], 0.0).is_err());
    }

    #[test]
    fn error_is_clamped() {
        let e = ion_circuit_error(&[IonGate { angle_multiple: 200.0, embed_factor: 1.0 }], 0.01).unwrap();
        assert_eq!(e, 1.0);
    }

    #[test]
    fn scenarios() {
        let counts: Vec<_> = ion_scenarios().iter().map(|s| (s.name, s.nonlocal_gates)).collect();
        assert_eq!(counts, vec![("qubit-13", 13), ("aux-qubit-5", 5), ("qudit-1", 1)]);
        let model = IonErrorModel::default();
        let aux = ion_estimate(&ion_scenario("aux-qubit-5").unwrap(), &model, None).unwrap();
        assert_eq!(aux.error, None);
        let aux = ion_estimate(&ion_scenario("aux-qubit-5").unwrap(), &model, Some(&[1.5; 5])).unwrap();
        assert!(aux.error.unwrap() > 0.0);
        assert!(ion_estimate(&ion_scenario("aux-qubit-5").unwrap(), &model, Some(&[1.0; 4])).is_err());
        assert!(ion_scenario("nope").is_err());
    }

    #[test]
    fn qudit_beats_qubit_with_defaults() {
        let model = IonErrorModel::default();
        let q13 = ion_estimate(&ion_scenario("qubit-13").unwrap(), &model, None).unwrap().error.unwrap();
        let q1 = ion_estimate(&ion_scenario("qudit-1").unwrap(), &model, None).unwrap().error.unwrap();
        assert!(q1 < q13);
    }
}
