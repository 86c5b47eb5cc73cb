//! Quasiprobability decompositions of cut channels and their process
//! matrices.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::gates::{self, dagger2, mul2, Mat2};
use crate::graph::{CutKind, CutWeight};
use crate::math::{cos, sin};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    /// Unitary taking this basis to the computational basis.
    pub fn to_z(self) -> Mat2 {
        match self {
            Basis::Z => gates::identity2(),
            Basis::X => gates::hadamard(),
            Basis::Y => mul2(&gates::hadamard(), &gates::phase_gate(-PI / 2.0)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prep {
    Zero,
    One,
    Plus,
    Minus,
    PlusI,
    MinusI,
}

impl Prep {
    /// Unitary preparing this state from `|0⟩`.
    pub fn from_zero(self) -> Mat2 {
        let h = gates::hadamard();
        let x = gates::pauli_x();
        match self {
            Prep::Zero => gates::identity2(),
            Prep::One => x,
            Prep::Plus => h,
            Prep::Minus => mul2(&h, &x),
            Prep::PlusI => mul2(&gates::phase_gate(PI / 2.0), &h),
            Prep::MinusI => mul2(&gates::phase_gate(-PI / 2.0), &h),
        }
    }
}

/// Operation applied to one side of a cut.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalOp {
    Unitary(Mat2),
    /// Projective measurement keeping the post-measurement state; a signed
    /// measurement weights the second outcome by −1.
    Measure {
        basis: Basis,
        signed: bool,
    },
    /// Measure, discard the qubit and prepare a fresh state.
    MeasurePrepare {
        basis: Basis,
        signed: bool,
        prep: Prep,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: f64,
    /// One operation list per qubit the decomposed channel acts on.
    pub sides: Vec<Vec<LocalOp>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionSpec {
    pub kind: CutKind,
    /// Gate being cut, for space-like decompositions.
    pub gate: Option<(String, Vec<f64>)>,
    pub terms: Vec<Term>,
}

impl DecompositionSpec {
    pub fn kappa(&self) -> f64 {
        self.terms.iter().map(|t| t.coef.abs()).sum()
    }

    pub fn tau(&self) -> f64 {
        self.terms.iter().map(|t| t.coef * t.coef).sum()
    }

    pub fn weight(&self) -> CutWeight {
        CutWeight {
            kappa: self.kappa(),
            tau: self.tau(),
        }
    }

    pub fn arity(&self) -> usize {
        self.terms.first().map_or(0, |t| t.sides.len())
    }

    /// Channel the decomposition should reproduce.
    pub fn target(&self) -> ProcessMatrix {
        match &self.gate {
            None => ProcessMatrix::identity(self.arity()),
            Some((name, params)) => {
                let u = gates::two_qubit(name, params).expect("decomposed gates are known");
                let flat: Vec<C64> = u.iter().flatten().copied().collect();
                ProcessMatrix::unitary(&flat, 4)
            }
        }
    }
}

/// Measure-and-prepare decomposition of the single-qubit identity channel.
pub fn time_like_identity() -> DecompositionSpec {
    let term = |coef: f64, basis: Basis, signed: bool, prep: Prep| Term {
        coef,
        sides: vec![vec![LocalOp::MeasurePrepare {
            basis,
            signed,
            prep,
        }]],
    };
    DecompositionSpec {
        kind: CutKind::TimeLike,
        gate: None,
        terms: vec![
            term(0.5, Basis::Z, false, Prep::Zero),
            term(0.5, Basis::Z, false, Prep::One),
            term(0.5, Basis::X, true, Prep::Plus),
            term(-0.5, Basis::X, true, Prep::Minus),
            term(0.5, Basis::Y, true, Prep::PlusI),
            term(-0.5, Basis::Y, true, Prep::MinusI),
            term(0.5, Basis::Z, true, Prep::Zero),
            term(-0.5, Basis::Z, true, Prep::One),
        ],
    }
}

/// Six-term local decomposition of `exp(iθ Z⊗Z)`.
fn zz_terms(theta: f64) -> Vec<Term> {
    let (c, s) = (cos(theta), sin(theta));
    let z = LocalOp::Unitary(gates::pauli_z());
    let m = LocalOp::Measure {
        basis: Basis::Z,
        signed: true,
    };
    let sp = LocalOp::Unitary(gates::z_rotation_exp(PI / 4.0));
    let sm = LocalOp::Unitary(gates::z_rotation_exp(-PI / 4.0));
    let t = |coef: f64, a: Vec<LocalOp>, b: Vec<LocalOp>| Term {
        coef,
        sides: vec![a, b],
    };
    vec![
        t(c * c, vec![], vec![]),
        t(s * s, vec![z.clone()], vec![z]),
        t(c * s, vec![m.clone()], vec![sp.clone()]),
        t(-c * s, vec![m.clone()], vec![sm.clone()]),
        t(c * s, vec![sp], vec![m.clone()]),
        t(-c * s, vec![sm], vec![m]),
    ]
}

/// Space-like decomposition for `cx`, `cz` or `rzz(φ)`.
pub fn space_like_gate(name: &str, params: &[f64]) -> Option<DecompositionSpec> {
    let sm = || LocalOp::Unitary(gates::z_rotation_exp(-PI / 4.0));
    let h = || LocalOp::Unitary(gates::hadamard());
    let terms = match name {
        "rzz" => zz_terms(-params.first().copied()? / 2.0),
        "cz" | "cx" => {
            let mut terms = zz_terms(PI / 4.0);
            for t in &mut terms {
                t.sides[0].push(sm());
                t.sides[1].push(sm());
                if name == "cx" {
                    t.sides[1].insert(0, h());
                    t.sides[1].push(h());
                }
            }
            terms
        }
        _ => return None,
    };
    Some(DecompositionSpec {
        kind: CutKind::SpaceLike,
        gate: Some((name.into(), params.to_vec())),
        terms,
    })
}

/// Superoperator in the basis of matrix units: column `i·d + j` holds
/// `Φ(|i⟩⟨j|)` flattened row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessMatrix {
    pub dim: usize,
    pub data: Vec<C64>,
}

impl ProcessMatrix {
    fn from_map(dim: usize, map: impl Fn(&[C64]) -> Vec<C64>) -> Self {
        let d2 = dim * dim;
        let mut data = vec![C64::new(0.0, 0.0); d2 * d2];
        for col in 0..d2 {
            let mut unit = vec![C64::new(0.0, 0.0); d2];
            unit[col] = C64::new(1.0, 0.0);
            for (row, v) in map(&unit).into_iter().enumerate() {
                data[row * d2 + col] = v;
            }
        }
        Self { dim, data }
    }

    pub fn identity(qubits: usize) -> Self {
        Self::from_map(1 << qubits, |rho| rho.to_vec())
    }

    /// `ρ ↦ UρU†` for a row-major `dim × dim` unitary.
    pub fn unitary(u: &[C64], dim: usize) -> Self {
        Self::from_map(dim, |rho| conjugate(u, rho, dim))
    }

    pub fn max_abs_diff(&self, other: &ProcessMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn matmul(a: &[C64], b: &[C64], d: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

fn dagger(a: &[C64], d: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = a[i * d + j].conj();
        }
    }
    out
}

fn conjugate(u: &[C64], rho: &[C64], d: usize) -> Vec<C64> {
    matmul(&matmul(u, rho, d), &dagger(u, d), d)
}

/// Embeds a one-qubit operator at `pos` of an `n`-qubit register, with
/// position 0 as the most significant bit.
fn embed(m: &Mat2, pos: usize, n: usize) -> Vec<C64> {
    let d = 1 << n;
    let shift = n - 1 - pos;
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            if (i & !(1 << shift)) == (j & !(1 << shift)) {
                out[i * d + j] = m[(i >> shift) & 1][(j >> shift) & 1];
            }
        }
    }
    out
}

fn basis_projector(basis: Basis, outcome: usize) -> Mat2 {
    let v = basis.to_z();
    let vd = dagger2(&v);
    let mut p = [[C64::new(0.0, 0.0); 2]; 2];
    p[outcome][outcome] = C64::new(1.0, 0.0);
    mul2(&mul2(&vd, &p), &v)
}

fn apply_op(op: &LocalOp, pos: usize, n: usize, rho: &[C64]) -> Vec<C64> {
    let d = 1 << n;
    match op {
        LocalOp::Unitary(u) => conjugate(&embed(u, pos, n), rho, d),
        LocalOp::Measure { basis, signed } => {
            let mut out = vec![C64::new(0.0, 0.0); d * d];
            for k in 0..2 {
                let p = embed(&basis_projector(*basis, k), pos, n);
                let sign = if *signed && k == 1 { -1.0 } else { 1.0 };
                for (o, v) in out.iter_mut().zip(conjugate(&p, rho, d)) {
                    *o += v * sign;
                }
            }
            out
        }
        LocalOp::MeasurePrepare {
            basis,
            signed,
            prep,
        } => {
            assert_eq!(n, 1, "measure-and-prepare acts on single-qubit channels");
            let mut weight = C64::new(0.0, 0.0);
            for k in 0..2 {
                let p = basis_projector(*basis, k);
                let pr = matmul(&[p[0][0], p[0][1], p[1][0], p[1][1]], rho, 2);
                let sign = if *signed && k == 1 { -1.0 } else { 1.0 };
                weight += (pr[0] + pr[3]) * sign;
            }
            let u = prep.from_zero();
            let psi = [u[0][0], u[1][0]];
            let mut out = vec![C64::new(0.0, 0.0); 4];
            for i in 0..2 {
                for j in 0..2 {
                    out[i * 2 + j] = weight * psi[i] * psi[j].conj();
                }
            }
            out
        }
    }
}

/// `Σ_terms a · (⊗_sides Φ_side)` as a process matrix.
pub fn reconstruct_channel(spec: &DecompositionSpec) -> ProcessMatrix {
    let n = spec.arity();
    let dim = 1 << n;
    ProcessMatrix::from_map(dim, |rho| {
        let mut total = vec![C64::new(0.0, 0.0); dim * dim];
        for term in &spec.terms {
            let mut state = rho.to_vec();
            for (pos, ops) in term.sides.iter().enumerate() {
                for op in ops {
                    state = apply_op(op, pos, n, &state);
                }
            }
            for (t, v) in total.iter_mut().zip(state) {
                *t += v * term.coef;
            }
        }
        total
    })
}

/// `κ = 1 + 2|sin φ|` for `rzz(φ)`, the closed form of the six-term weights.
pub fn rzz_kappa(phi: f64) -> f64 {
    1.0 + 2.0 * sin(phi).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_like_reproduces_identity() {
        let spec = time_like_identity();
        let diff = reconstruct_channel(&spec).max_abs_diff(&spec.target());
        assert!(diff <= 1e-10, "diff = {diff}");
        assert_eq!(spec.weight(), CutWeight::TIME_LIKE);
    }

    #[test]
    fn space_like_gates_reproduce_targets() {
        for (name, params) in [("cx", vec![]), ("cz", vec![]), ("rzz", vec![PI / 2.0])] {
            let spec = space_like_gate(name, &params).unwrap();
            let diff = reconstruct_channel(&spec).max_abs_diff(&spec.target());
            assert!(diff <= 1e-10, "{name}: diff = {diff}");
            assert!((spec.kappa() - 3.0).abs() < 1e-12 && (spec.tau() - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn general_rzz_angle() {
        for phi in [0.3, -1.2, 2.5] {
            let spec = space_like_gate("rzz", &[phi]).unwrap();
            assert!(reconstruct_channel(&spec).max_abs_diff(&spec.target()) <= 1e-10);
            assert!((spec.kappa() - rzz_kappa(phi)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_unitary_term() {
        let spec = DecompositionSpec {
            kind: CutKind::TimeLike,
            gate: None,
            terms: vec![Term {
                coef: 1.0,
                sides: vec![vec![LocalOp::Unitary(gates::pauli_z())]],
            }],
        };
        let z = gates::pauli_z();
        let flat = [z[0][0], z[0][1], z[1][0], z[1][1]];
        let diff = reconstruct_channel(&spec).max_abs_diff(&ProcessMatrix::unitary(&flat, 2));
        assert!(diff <= 1e-12);
        assert!(ProcessMatrix::identity(1).max_abs_diff(&reconstruct_channel(&spec)) > 0.5);
    }
}
