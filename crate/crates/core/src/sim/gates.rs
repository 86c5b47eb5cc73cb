//! Unitary matrices of the supported gate set.
//!
//! Two-qubit matrices index basis states as `2·b0 + b1`, where `b0` is the
//! bit of the first operand.

use num_complex::Complex64 as C64;

use crate::math::{cos, sin, sqrt};

pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn phase(theta: f64) -> C64 {
    C64::new(cos(theta), sin(theta))
}

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Mat2 {
    [[ZERO, -I], [I, ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

pub fn hadamard() -> Mat2 {
    let h = r(1.0 / sqrt(2.0));
    [[h, h], [h, -h]]
}

pub fn phase_gate(lambda: f64) -> Mat2 {
    [[ONE, ZERO], [ZERO, phase(lambda)]]
}

pub fn u3(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (c, s) = (cos(theta / 2.0), sin(theta / 2.0));
    [
        [r(c), -phase(lambda) * s],
        [phase(phi) * s, phase(phi + lambda) * c],
    ]
}

pub fn rx(theta: f64) -> Mat2 {
    let (c, s) = (cos(theta / 2.0), sin(theta / 2.0));
    [[r(c), -I * s], [-I * s, r(c)]]
}

pub fn ry(theta: f64) -> Mat2 {
    let (c, s) = (cos(theta / 2.0), sin(theta / 2.0));
    [[r(c), r(-s)], [r(s), r(c)]]
}

pub fn rz(theta: f64) -> Mat2 {
    [[phase(-theta / 2.0), ZERO], [ZERO, phase(theta / 2.0)]]
}

/// `exp(i·θ·Z)`.
pub fn z_rotation_exp(theta: f64) -> Mat2 {
    [[phase(theta), ZERO], [ZERO, phase(-theta)]]
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger2(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn one_qubit(name: &str, params: &[f64]) -> Option<Mat2> {
    use core::f64::consts::PI;
    let p = |k: usize| params.get(k).copied().unwrap_or(0.0);
    Some(match name {
        "id" => identity2(),
        "x" => pauli_x(),
        "y" => pauli_y(),
        "z" => pauli_z(),
        "h" => hadamard(),
        "s" => phase_gate(PI / 2.0),
        "sdg" => phase_gate(-PI / 2.0),
        "t" => phase_gate(PI / 4.0),
        "tdg" => phase_gate(-PI / 4.0),
        "sx" => {
            let (a, b) = (C64::new(0.5, 0.5), C64::new(0.5, -0.5));
            [[a, b], [b, a]]
        }
        "sxdg" => {
            let (a, b) = (C64::new(0.5, -0.5), C64::new(0.5, 0.5));
            [[a, b], [b, a]]
        }
        "rx" => rx(p(0)),
        "ry" => ry(p(0)),
        "rz" => rz(p(0)),
        "u1" | "p" => phase_gate(p(0)),
        "u2" => u3(PI / 2.0, p(0), p(1)),
        "u3" => u3(p(0), p(1), p(2)),
        _ => return None,
    })
}

fn controlled(u: Mat2) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = ONE;
    m[2][2] = u[0][0];
    m[2][3] = u[0][1];
    m[3][2] = u[1][0];
    m[3][3] = u[1][1];
    m
}

fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    m
}

/// `exp(−i·θ/2·P⊗P)`.
fn pauli_pair_rotation(p: &Mat2, theta: f64) -> Mat4 {
    let pp = kron(p, p);
    let (c, s) = (cos(theta / 2.0), sin(theta / 2.0));
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = -I * s * pp[i][j];
        }
        m[i][i] += r(c);
    }
    m
}

pub fn two_qubit(name: &str, params: &[f64]) -> Option<Mat4> {
    let p = |k: usize| params.get(k).copied().unwrap_or(0.0);
    Some(match name {
        "cx" => controlled(pauli_x()),
        "cy" => controlled(pauli_y()),
        "cz" => controlled(pauli_z()),
        "ch" => controlled(hadamard()),
        "crx" => controlled(rx(p(0))),
        "cry" => controlled(ry(p(0))),
        "crz" => controlled(rz(p(0))),
        "cu1" | "cp" => controlled(phase_gate(p(0))),
        "cu3" => controlled(u3(p(0), p(1), p(2))),
        "swap" => {
            let mut m = [[ZERO; 4]; 4];
            m[0][0] = ONE;
            m[1][2] = ONE;
            m[2][1] = ONE;
            m[3][3] = ONE;
            m
        }
        "rxx" => pauli_pair_rotation(&pauli_x(), p(0)),
        "ryy" => pauli_pair_rotation(&pauli_y(), p(0)),
        "rzz" => pauli_pair_rotation(&pauli_z(), p(0)),
        _ => return None,
    })
}

/// Full `2^n × 2^n` matrix of a gate, built element by element.
#[cfg(test)]
pub(crate) fn kron_full(
    gate: &crate::circuit::GateApp,
    n: usize,
) -> alloc::vec::Vec<alloc::vec::Vec<C64>> {
    let dim = 1usize << n;
    let ops = &gate.operands;
    let mask: usize = ops.iter().map(|&q| 1usize << q).sum();
    let local = |s: usize| -> usize { ops.iter().fold(0, |acc, &q| 2 * acc + ((s >> q) & 1)) };
    let m1 = one_qubit(&gate.kind, &gate.params);
    let m2 = two_qubit(&gate.kind, &gate.params);
    let mut out = alloc::vec![alloc::vec![ZERO; dim]; dim];
    for (row, line) in out.iter_mut().enumerate() {
        for (col, cell) in line.iter_mut().enumerate() {
            if row & !mask != col & !mask {
                continue;
            }
            let (a, b) = (local(row), local(col));
            *cell = match (&m1, &m2) {
                (Some(m), _) => m[a][b],
                (_, Some(m)) => m[a][b],
                _ => panic!("unknown gate"),
            };
        }
    }
    out
}

#[cfg(test)]
pub(crate) fn mat_vec(m: &[alloc::vec::Vec<C64>], v: &[C64]) -> alloc::vec::Vec<C64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
