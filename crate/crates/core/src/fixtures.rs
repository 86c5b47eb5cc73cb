//! Generated benchmark-style circuits.

use alloc::format;

use crate::circuit::CircuitIR;

/// Trotterised transverse-field Ising chain on `width` qubits.
///
/// Each step applies `cx(i,i+1) rz(i+1) cx(i,i+1)` along the chain followed by
/// an `rx` layer, after an initial Hadamard layer.
pub fn ising_chain(width: usize, steps: usize) -> CircuitIR {
    let mut circ = CircuitIR::new(&format!("ising_n{width}_s{steps}"), width);
    for q in 0..width {
        circ.push("h", &[q], &[]);
    }
    for _ in 0..steps {
        for q in 0..width.saturating_sub(1) {
            circ.push("cx", &[q, q + 1], &[]);
            circ.push("rz", &[q + 1], &[0.1]);
            circ.push("cx", &[q, q + 1], &[]);
        }
        for q in 0..width {
            circ.push("rx", &[q], &[0.2]);
        }
    }
    circ
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_counts() {
        let c = ising_chain(5, 2);
        assert_eq!(c.two_qubit_gate_count(), 2 * 2 * 4);
        assert_eq!(c.gates.len(), 5 + 2 * (3 * 4 + 5));
        assert!(c.validate().is_ok());
    }
}
