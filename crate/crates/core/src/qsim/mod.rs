//! Dense statevector simulation, feature maps and parameterized circuits.

pub mod circuit;
pub mod density;
pub mod encode;
pub mod pauli;
pub mod state;

pub use circuit::{random_layered_circuit, random_parameters, run_circuit, GateKind, GateOp, ParameterizedCircuit};
pub use density::{partial_trace, DensityMatrix};
pub use encode::{embed_dataset, encode, required_qubits, EncodingKind, FeatureMap};
pub use pauli::{expectation, Pauli, PauliString};
pub use state::{StateVector, MAX_QUBITS};
