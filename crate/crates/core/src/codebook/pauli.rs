//! Heisenberg–Weyl basis and the projective Pauli group.

use num_complex::Complex64 as C64;

use super::gates::{pauli_x, pauli_z};
use super::{Codebook, DedupIndex, Kind};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::DEFAULT_QUANTUM;

/// Binary label `c = (a, b)` of a Heisenberg–Weyl matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HWLabel {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

impl HWLabel {
    /// Label number `t ∈ [0, 4^m)`: the high `m` bits are `a`, the low `m`
    /// bits are `b`, qubit 0 most significant.
    pub fn from_index(t: usize, m: usize) -> Self {
        let a_bits = t >> m;
        let b_bits = t & ((1 << m) - 1);
        let unpack = |v: usize| (0..m).map(|q| ((v >> (m - 1 - q)) & 1) as u8).collect();
        Self {
            a: unpack(a_bits),
            b: unpack(b_bits),
        }
    }

    pub fn index(&self) -> usize {
        let m = self.a.len();
        let pack = |v: &[u8]| v.iter().fold(0usize, |acc, &x| (acc << 1) | x as usize);
        (pack(&self.a) << m) | pack(&self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    /// Componentwise sum over F₂.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x ^ y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x ^ y).collect(),
        }
    }

    fn a_dot_b(&self) -> u32 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(&x, &y)| (x & y) as u32)
            .sum()
    }
}

/// `D(a, b) = X^{a₁}Z^{b₁} ⊗ … ⊗ X^{a_m}Z^{b_m}`.
pub fn displacement(label: &HWLabel) -> CMatrix {
    let x = pauli_x();
    let z = pauli_z();
    label
        .a
        .iter()
        .zip(&label.b)
        .fold(CMatrix::identity(1), |acc, (&a, &b)| {
            let mut f = CMatrix::identity(2);
            if a == 1 {
                f = &f * &x;
            }
            if b == 1 {
                f = &f * &z;
            }
            acc.kron(&f)
        })
}

/// `E(c) = i^{aᵀb}·D(a, b)`, a Hermitian involution.
pub fn hw_matrix(label: &HWLabel) -> CMatrix {
    let phase = match label.a_dot_b() % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    displacement(label).scale(phase)
}

/// All `4^m` normalized matrices `Ẽ(c) = E(c)/√n`, in label-index order.
pub fn heisenberg_weyl_basis(m: usize) -> Vec<(HWLabel, CMatrix)> {
    let n = 1usize << m;
    let norm = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    (0..n * n)
        .map(|t| {
            let label = HWLabel::from_index(t, m);
            let e = hw_matrix(&label).scale(norm);
            (label, e)
        })
        .collect()
}

/// The projective Pauli group `{E(c)}` on `m ∈ {1, 2, 3}` qubits.
pub fn pauli_codebook(m: usize) -> Result<Codebook> {
    if !(1..=3).contains(&m) {
        return Err(Error::Unsupported(format!(
            "Pauli codebook needs m in 1..=3, got {m}"
        )));
    }
    let n = 1usize << m;
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    for t in 0..n * n {
        let (fresh, _) = index.insert(&hw_matrix(&HWLabel::from_index(t, m)))?;
        if !fresh {
            return Err(Error::Consistency(format!(
                "Pauli label {t} duplicates an earlier class"
            )));
        }
    }
    Codebook::from_index(Kind::Pauli, m, None, index, true)
}

/// `|Σ_c Tr(Mᴴ Ẽ(c)ᴴ M Ẽ(c)) − |Tr M|²|`, zero by completeness of the basis.
pub fn completeness_check(mat: &CMatrix, m: usize) -> Result<f64> {
    let n = 1usize << m;
    if mat.dim() != n {
        return Err(Error::DimensionMismatch {
            left: mat.dim(),
            right: n,
        });
    }
    let mh = mat.adjoint();
    let sum: C64 = heisenberg_weyl_basis(m)
        .iter()
        .map(|(_, e)| {
            let left = &(&mh * &e.adjoint()) * mat;
            (&left * e).trace()
        })
        .sum();
    Ok((sum - mat.trace().norm_sqr()).norm())
}

/// `Tr(Gᴴ Ẽ(c) G Ẽ(c))` for a single label.
pub fn conjugation_overlap(g: &CMatrix, e_normalized: &CMatrix) -> C64 {
    let left = &(&g.adjoint() * e_normalized) * g;
    (&left * e_normalized).trace()
}
