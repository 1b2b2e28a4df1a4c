use num_complex::Complex64 as C64;

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::{distance_from_overlap, PhaseClass};

/// Codebook entries packed contiguously for trace scans.
///
/// `|Tr(CᴴQ)| = |Σ conj(c_ij)·q_ij|`, so each codeword is stored conjugated
/// and a scan is one dot product per entry.
#[derive(Clone, Debug)]
pub struct FlatCodebook {
    n: usize,
    len: usize,
    conj: Vec<C64>,
}

impl FlatCodebook {
    pub fn new(cb: &Codebook) -> Result<Self> {
        if cb.is_empty() {
            return Err(Error::EmptyCodebook);
        }
        let n = cb.n();
        let conj = cb
            .elements()
            .iter()
            .flat_map(|e| e.matrix().as_slice().iter().map(|z| z.conj()))
            .collect();
        Ok(Self {
            n,
            len: cb.len(),
            conj,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `|Tr(C_iᴴ Q)|` given the row-major entries of `Q`.
    #[inline]
    pub fn overlap(&self, i: usize, q: &[C64]) -> f64 {
        let nn = self.n * self.n;
        self.conj[i * nn..(i + 1) * nn]
            .iter()
            .zip(q)
            .map(|(c, z)| c * z)
            .sum::<C64>()
            .norm()
    }

    /// Index of the largest overlap with `Q` (lowest index on ties) and the
    /// distance to it.
    pub fn nearest(&self, q: &CMatrix) -> Result<(usize, f64)> {
        if q.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: q.dim(),
                right: self.n,
            });
        }
        let q = q.as_slice();
        let mut best = (0, self.overlap(0, q));
        for i in 1..self.len {
            let t = self.overlap(i, q);
            if t > best.1 {
                best = (i, t);
            }
        }
        Ok((best.0, distance_from_overlap(best.1, self.n)))
    }
}

/// Brute-force nearest codeword to `Q` under the phase-invariant metric.
pub fn nearest_codeword(cb: &Codebook, q: &PhaseClass) -> Result<(usize, f64)> {
    FlatCodebook::new(cb)?.nearest(q.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{clifford_codebook, gates, pauli_codebook};
    use crate::pu::{canonicalize, DEFAULT_QUANTUM};
    use std::f64::consts::PI;

    #[test]
    fn member_is_its_own_nearest() {
        let cb = clifford_codebook(1).unwrap();
        for (i, e) in cb.elements().iter().enumerate() {
            let (j, d) = nearest_codeword(&cb, e).unwrap();
            assert_eq!(j, i);
            assert!(d < 1e-7);
        }
    }

    #[test]
    fn t_gate_against_single_qubit_cliffords() {
        let cb = clifford_codebook(1).unwrap();
        let t = canonicalize(&gates::t_gate(), DEFAULT_QUANTUM).unwrap();
        let (j, d) = nearest_codeword(&cb, &t).unwrap();
        assert!((d - (1.0 - (PI / 8.0).cos()).sqrt()).abs() < 1e-12);
        // I and S tie at |Tr| = 2cos(π/8); the lower index wins.
        let ids: Vec<usize> = cb
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let tr = e.matrix().inner(t.matrix()).norm();
                (tr - 2.0 * (PI / 8.0).cos()).abs() < 1e-9
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ids.len(), 2);
        assert_eq!(j, ids[0]);
    }

    #[test]
    fn errors() {
        let cb = pauli_codebook(1).unwrap();
        let q = PhaseClass::identity(4);
        assert!(matches!(
            nearest_codeword(&cb, &q),
            Err(Error::DimensionMismatch { .. })
        ));
        let empty = Codebook::custom(1, &[], DEFAULT_QUANTUM).unwrap();
        assert!(matches!(
            nearest_codeword(&empty, &q),
            Err(Error::EmptyCodebook)
        ));
    }
}
