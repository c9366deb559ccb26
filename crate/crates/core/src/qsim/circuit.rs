//! Gate lists with parameter slots, and the layered random ansatz.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::{check_qubits, StateVector};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    Cnot,
    Cz,
}

impl GateKind {
    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz => 2,
            _ => 1,
        }
    }
}

/// One gate record. For CNOT `qubits = [control, target]`. Rotations carry
/// either a parameter slot or a fixed angle in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    pub gate: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(default)]
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterizedCircuit {
    pub n_qubits: usize,
    pub n_params: usize,
    pub gates: Vec<GateOp>,
}

fn rotation_matrix(kind: GateKind, theta: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let z = Complex64::new(0.0, 0.0);
    match kind {
        GateKind::Rx => [
            [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
            [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
        ],
        GateKind::Ry => [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]],
        GateKind::Rz => [[Complex64::new(c, -s), z], [z, Complex64::new(c, s)]],
        _ => unreachable!("not a rotation"),
    }
}

fn fixed_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let r = |x: f64| Complex64::new(x, 0.0);
    let z = r(0.0);
    match kind {
        GateKind::H => [[r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)], [r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)]],
        GateKind::X => [[z, r(1.0)], [r(1.0), z]],
        GateKind::Y => [[z, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), z]],
        GateKind::Z => [[r(1.0), z], [z, r(-1.0)]],
        _ => unreachable!("not a fixed single-qubit gate"),
    }
}

impl ParameterizedCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            n_params: 0,
            gates: Vec::new(),
        }
    }

    fn push(&mut self, gate: GateKind, qubits: Vec<usize>, param: Option<usize>, angle: Option<f64>, layer: usize) -> &mut Self {
        if let Some(p) = param {
            self.n_params = self.n_params.max(p + 1);
        }
        self.gates.push(GateOp {
            gate,
            qubits,
            param,
            angle,
            layer,
        });
        self
    }

    /// Non-parameterized single- or two-qubit gate.
    pub fn gate(&mut self, gate: GateKind, qubits: &[usize], layer: usize) -> &mut Self {
        self.push(gate, qubits.to_vec(), None, None, layer)
    }

    /// Rotation bound to parameter slot `slot`.
    pub fn rotation(&mut self, gate: GateKind, qubit: usize, slot: usize, layer: usize) -> &mut Self {
        self.push(gate, vec![qubit], Some(slot), None, layer)
    }

    /// Rotation by a fixed angle.
    pub fn fixed_rotation(&mut self, gate: GateKind, qubit: usize, angle: f64, layer: usize) -> &mut Self {
        self.push(gate, vec![qubit], None, Some(angle), layer)
    }

    /// Checks qubit ranges, gate shapes and that slots are exactly 0..n_params.
    pub fn validate(&self) -> Result<()> {
        check_qubits(self.n_qubits)?;
        let mut used = vec![false; self.n_params];
        for (i, g) in self.gates.iter().enumerate() {
            if g.qubits.len() != g.gate.arity() {
                return Err(Error::Arity(format!("gate {i} ({:?}) has {} qubits", g.gate, g.qubits.len())));
            }
            if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.n_qubits) {
                return Err(Error::Arity(format!("gate {i} addresses qubit {q} of {}", self.n_qubits)));
            }
            if g.gate.arity() == 2 && g.qubits[0] == g.qubits[1] {
                return Err(Error::Arity(format!("gate {i} repeats qubit {}", g.qubits[0])));
            }
            match (g.gate.is_rotation(), g.param, g.angle) {
                (true, Some(p), None) if p < self.n_params => used[p] = true,
                (true, None, Some(a)) if a.is_finite() => {}
                (false, None, None) => {}
                _ => return Err(Error::Arity(format!("gate {i} has an invalid parameter binding"))),
            }
        }
        if let Some(p) = used.iter().position(|u| !u) {
            return Err(Error::Arity(format!("parameter slot {p} is never used")));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serializes")
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.gate == kind).count()
    }

    pub fn parameterized_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.param.is_some()).count()
    }

    /// Indices of gates bound to `slot`.
    pub fn gates_with_param(&self, slot: usize) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.param == Some(slot))
            .map(|(i, _)| i)
            .collect()
    }

    /// Mean number of qubits each gate touches.
    pub fn mean_gate_support(&self) -> f64 {
        if self.gates.is_empty() {
            return 1.0;
        }
        self.gates.iter().map(|g| g.qubits.len() as f64).sum::<f64>() / self.gates.len() as f64
    }
}

/// Runs the circuit, optionally adding `shift` to the angle of one gate.
pub(crate) fn run_shifted(
    c: &ParameterizedCircuit,
    theta: &[f64],
    input: &StateVector,
    shift: Option<(usize, f64)>,
) -> Result<StateVector> {
    if theta.len() != c.n_params {
        return Err(Error::Arity(format!("circuit takes {} parameters, got {}", c.n_params, theta.len())));
    }
    if input.n_qubits() != c.n_qubits {
        return Err(Error::Arity(format!(
            "circuit acts on {} qubits, input has {}",
            c.n_qubits,
            input.n_qubits()
        )));
    }
    let mut s = input.clone();
    for (i, g) in c.gates.iter().enumerate() {
        match g.gate {
            GateKind::Cnot => s.apply_cnot(g.qubits[0], g.qubits[1]),
            GateKind::Cz => s.apply_cz(g.qubits[0], g.qubits[1]),
            k if k.is_rotation() => {
                let mut angle = match (g.param, g.angle) {
                    (Some(p), _) => theta[p],
                    (None, Some(a)) => a,
                    (None, None) => return Err(Error::Arity(format!("rotation {i} has no angle"))),
                };
                if let Some((gi, delta)) = shift {
                    if gi == i {
                        angle += delta;
                    }
                }
                s.apply_single(g.qubits[0], rotation_matrix(k, angle));
            }
            k => s.apply_single(g.qubits[0], fixed_matrix(k)),
        }
    }
    Ok(s)
}

/// Applies the gates in order to `input`.
pub fn run_circuit(c: &ParameterizedCircuit, theta: &[f64], input: &StateVector) -> Result<StateVector> {
    run_shifted(c, theta, input, None)
}

/// Inverse circuit: reversed gate order with negated angles.
pub fn inverse(c: &ParameterizedCircuit) -> ParameterizedCircuit {
    let mut out = ParameterizedCircuit::new(c.n_qubits);
    out.n_params = c.n_params;
    for g in c.gates.iter().rev() {
        let mut g = g.clone();
        match g.gate {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                if let Some(a) = g.angle {
                    g.angle = Some(-a);
                }
            }
            _ => {}
        }
        out.gates.push(g);
    }
    out
}

/// Layered hardware-efficient ansatz.
///
/// A fixed RY(π/4) layer prepares every qubit first (so no parameterized
/// rotation acts trivially on |0⟩). Each of the `depth` layers then applies
/// one parameterized rotation per qubit with axis drawn uniformly from
/// {RX, RY, RZ}, followed by a CNOT ladder (q, q+1). Parameters are numbered
/// layer-major, qubit-minor.
pub fn random_layered_circuit(n: usize, depth: usize, rng: &SeededRng) -> Result<ParameterizedCircuit> {
    check_qubits(n)?;
    if depth == 0 {
        return Err(Error::Arity("depth must be at least 1".into()));
    }
    let mut stream = rng.stream();
    let mut c = ParameterizedCircuit::new(n);
    for q in 0..n {
        c.fixed_rotation(GateKind::Ry, q, FRAC_PI_4, 0);
    }
    for layer in 0..depth {
        for q in 0..n {
            let axis = match stream.random_range(0..3u8) {
                0 => GateKind::Rx,
                1 => GateKind::Ry,
                _ => GateKind::Rz,
            };
            c.rotation(axis, q, layer * n + q, layer + 1);
        }
        for q in 0..n.saturating_sub(1) {
            c.gate(GateKind::Cnot, &[q, q + 1], layer + 1);
        }
    }
    Ok(c)
}

/// Parameters drawn uniformly from [0, 2π).
pub fn random_parameters<R: Rng>(n_params: usize, rng: &mut R) -> Vec<f64> {
    (0..n_params).map(|_| rng.random::<f64>() * 2.0 * PI).collect()
}
