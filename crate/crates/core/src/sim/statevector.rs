use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::gates::{self, Mat2, Mat4};
use super::SimError;
use crate::circuit::{CircuitIR, GateApp};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 20;

/// Dense state vector; bit `q` of a basis index is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, SimError> {
        if num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits {
                qubits: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply_1q(&mut self, q: usize, m: &Mat2) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Applies `m` with `q0` as the high bit of the matrix index.
    pub fn apply_2q(&mut self, q0: usize, q1: usize, m: &Mat4) {
        let (b0, b1) = (1 << q0, 1 << q1);
        for i in 0..self.amps.len() {
            if i & b0 == 0 && i & b1 == 0 {
                let idx = [i, i | b1, i | b0, i | b0 | b1];
                let v = idx.map(|k| self.amps[k]);
                for (row, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|col| m[row][col] * v[col]).sum();
                }
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &GateApp) -> Result<(), SimError> {
        match *gate.operands.as_slice() {
            [q] => {
                let m = gates::one_qubit(&gate.kind, &gate.params)
                    .ok_or_else(|| SimError::UnsupportedGate(gate.kind.clone()))?;
                self.apply_1q(q, &m);
            }
            [a, b] => {
                let m = gates::two_qubit(&gate.kind, &gate.params)
                    .ok_or_else(|| SimError::UnsupportedGate(gate.kind.clone()))?;
                self.apply_2q(a, b, &m);
            }
            _ => return Err(SimError::UnsupportedGate(gate.kind.clone())),
        }
        Ok(())
    }

    /// Splits into the unnormalised `q = 0` and `q = 1` projections.
    pub fn project(&self, q: usize) -> (StateVector, StateVector) {
        let bit = 1 << q;
        let mut zero = self.clone();
        let mut one = self.clone();
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                one.amps[i] = C64::new(0.0, 0.0);
            } else {
                zero.amps[i] = C64::new(0.0, 0.0);
            }
        }
        (zero, one)
    }

    /// `Σ_s f(s)·|⟨s|ψ⟩|²` for a diagonal observable.
    pub fn expectation_diag(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(s, a)| f(s) * a.norm_sqr())
            .sum()
    }
}

/// Runs `circuit` from the basis state `initial`.
pub fn simulate_statevector(circuit: &CircuitIR, initial: usize) -> Result<StateVector, SimError> {
    let mut sv = StateVector::basis(circuit.num_qubits, initial)?;
    for g in &circuit.gates {
        sv.apply_gate(g)?;
    }
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::gates::{kron_full, mat_vec};

    #[test]
    fn hadamard_on_zero() {
        let mut c = CircuitIR::new("h", 1);
        c.push("h", &[0], &[]);
        let sv = simulate_statevector(&c, 0).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((sv.amplitudes()[0].re - h).abs() < 1e-12);
        assert!((sv.amplitudes()[1].re - h).abs() < 1e-12);
    }

    #[test]
    fn bell_zz() {
        let mut c = CircuitIR::new("bell", 2);
        c.push("h", &[0], &[]).push("cx", &[0, 1], &[]);
        let sv = simulate_statevector(&c, 0).unwrap();
        let zz = sv.expectation_diag(|s| if (s.count_ones() % 2) == 0 { 1.0 } else { -1.0 });
        assert!((zz - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_many_qubits() {
        assert!(matches!(
            StateVector::basis(21, 0),
            Err(SimError::TooManyQubits { .. })
        ));
    }

    #[test]
    fn matches_dense_matrix_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 8;
        let mut c = CircuitIR::new("rand", n);
        for layer in 0..4 {
            for q in 0..n {
                c.push(
                    "u3",
                    &[q],
                    &[
                        rng.random::<f64>() * 6.0,
                        rng.random::<f64>() * 6.0,
                        rng.random::<f64>(),
                    ],
                );
            }
            for q in (layer % 2..n - 1).step_by(2) {
                c.push(
                    if layer % 3 == 0 { "rzz" } else { "cx" },
                    &[q, q + 1],
                    &[rng.random::<f64>()],
                );
            }
            c.push("cx", &[n - 1, 0], &[]);
        }
        let sv = simulate_statevector(&c, 0).unwrap();
        let mut v = vec![C64::new(0.0, 0.0); 1 << n];
        v[0] = C64::new(1.0, 0.0);
        for g in &c.gates {
            v = mat_vec(&kron_full(g, n), &v);
        }
        for (a, b) in sv.amplitudes().iter().zip(&v) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
