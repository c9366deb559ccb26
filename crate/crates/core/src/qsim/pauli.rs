use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::StateVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `coeff · P_0 ⊗ P_1 ⊗ …` where character `q` of the text form acts on qubit `q`.
///
/// Text form: an optional `<coefficient>*` prefix followed by one letter per
/// qubit, e.g. `ZZI` or `-0.5*XYZ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub coeff: f64,
    pub ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self { coeff: 1.0, ops }
    }

    /// Z on every qubit.
    pub fn global_z(n: usize) -> Self {
        Self::new(vec![Pauli::Z; n])
    }

    /// Z on qubit 0 only.
    pub fn local_z(n: usize) -> Self {
        let mut ops = vec![Pauli::I; n];
        ops[0] = Pauli::Z;
        Self::new(ops)
    }

    /// Single-qubit factors at the given positions, identity elsewhere.
    pub fn from_sparse(n: usize, factors: &[(usize, Pauli)]) -> Self {
        let mut ops = vec![Pauli::I; n];
        for &(q, p) in factors {
            ops[q] = p;
        }
        Self::new(ops)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (coeff, letters) = match s.rsplit_once('*') {
            Some((c, l)) => (
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Format(format!("bad Pauli coefficient {c:?}")))?,
                l.trim(),
            ),
            None => (1.0, s),
        };
        if letters.is_empty() {
            return Err(Error::Format("empty Pauli string".into()));
        }
        let ops = letters
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Format(format!("bad Pauli letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if !coeff.is_finite() {
            return Err(Error::Format("non-finite Pauli coefficient".into()));
        }
        Ok(Self { coeff, ops })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1.0 {
            write!(f, "{}*", self.coeff)?;
        }
        for p in &self.ops {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// ⟨ψ|P|ψ⟩ for a Pauli string whose length matches the register.
pub fn expectation(s: &StateVector, obs: &PauliString) -> Result<f64> {
    if obs.len() != s.n_qubits() {
        return Err(Error::Format(format!(
            "Pauli string of length {} on {} qubits",
            obs.len(),
            s.n_qubits()
        )));
    }
    let (mut xmask, mut zmask, mut ny) = (0usize, 0usize, 0u32);
    for (q, p) in obs.ops.iter().enumerate() {
        match p {
            Pauli::I => {}
            Pauli::X => xmask |= 1 << q,
            Pauli::Y => {
                xmask |= 1 << q;
                zmask |= 1 << q;
                ny += 1;
            }
            Pauli::Z => zmask |= 1 << q,
        }
    }
    // P|i> = i^ny (-1)^{popcount(i & zmask)} |i ^ xmask>
    let global = Complex64::i().powu(ny);
    let amps = s.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, a) in amps.iter().enumerate() {
        let sign = if (i & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        acc += amps[i ^ xmask].conj() * a * sign;
    }
    Ok(obs.coeff * (global * acc).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::circuit::{run_circuit, GateKind, ParameterizedCircuit};

    fn prep(n: usize, build: impl Fn(&mut ParameterizedCircuit)) -> StateVector {
        let mut c = ParameterizedCircuit::new(n);
        build(&mut c);
        run_circuit(&c, &[], &StateVector::zero(n).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let p: PauliString = "-0.5*XyZ".parse().unwrap();
        assert_eq!(p.coeff, -0.5);
        assert_eq!(p.ops, vec![Pauli::X, Pauli::Y, Pauli::Z]);
        assert_eq!(p.to_string(), "-0.5*XYZ");
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
        assert!("a*ZZ".parse::<PauliString>().is_err());
    }

    #[test]
    fn basic_expectations() {
        let zero = StateVector::zero(1).unwrap();
        assert_eq!(expectation(&zero, &"Z".parse().unwrap()).unwrap(), 1.0);
        let plus = prep(1, |c| {
            c.gate(GateKind::H, &[0], 0);
        });
        assert!((expectation(&plus, &"X".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let bell = prep(2, |c| {
            c.gate(GateKind::H, &[0], 0).gate(GateKind::Cnot, &[0, 1], 0);
        });
        assert!((expectation(&bell, &"ZZ".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!(expectation(&bell, &"ZI".parse().unwrap()).unwrap().abs() < 1e-12);
        assert!((expectation(&bell, &"YY".parse().unwrap()).unwrap() + 1.0).abs() < 1e-12);
        assert!(expectation(&bell, &"ZZZ".parse().unwrap()).is_err());
    }

    #[test]
    fn y_eigenstate() {
        // S H |0> = |+i>, built as RX(-pi/2)|0>
        let s = prep(1, |c| {
            c.fixed_rotation(GateKind::Rx, 0, -std::f64::consts::FRAC_PI_2, 0);
        });
        assert!((expectation(&s, &"Y".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }
}
