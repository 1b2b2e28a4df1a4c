//! Standard gate matrices. Qubit 0 is the leftmost tensor factor.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;

use crate::matrix::CMatrix;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_fn(2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)])
}

pub fn hadamard() -> CMatrix {
    CMatrix::from_fn(2, |i, j| {
        if i == 1 && j == 1 {
            c(-FRAC_1_SQRT_2, 0.0)
        } else {
            c(FRAC_1_SQRT_2, 0.0)
        }
    })
}

/// `diag(1, e^{iφ})`.
pub fn phase_gate(phi: f64) -> CMatrix {
    CMatrix::from_diag(&[c(1.0, 0.0), C64::from_polar(1.0, phi)])
}

/// The Clifford phase gate `diag(1, i)`.
pub fn s_gate() -> CMatrix {
    CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 1.0)])
}

/// `diag(1, e^{iπ/4})`.
pub fn t_gate() -> CMatrix {
    phase_gate(PI / 4.0)
}

/// `diag(1, e^{iπ/8})`, the square root of `T`.
pub fn sqrt_t_gate() -> CMatrix {
    phase_gate(PI / 8.0)
}

/// `gate` acting on `qubit` of an `m`-qubit register.
pub fn on_qubit(gate: &CMatrix, qubit: usize, m: usize) -> CMatrix {
    assert!(qubit < m);
    (0..m).fold(CMatrix::identity(1), |acc, q| {
        if q == qubit {
            acc.kron(gate)
        } else {
            acc.kron(&CMatrix::identity(2))
        }
    })
}

/// Bit of `qubit` in basis index `x` of an `m`-qubit register.
#[inline]
pub fn bit(x: usize, qubit: usize, m: usize) -> usize {
    (x >> (m - 1 - qubit)) & 1
}

/// CNOT with the given control and target on `m` qubits.
pub fn cnot(control: usize, target: usize, m: usize) -> CMatrix {
    assert!(control != target && control < m && target < m);
    let n = 1 << m;
    CMatrix::from_fn(n, |i, j| {
        let image = if bit(j, control, m) == 1 {
            j ^ (1 << (m - 1 - target))
        } else {
            j
        };
        if i == image {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}
