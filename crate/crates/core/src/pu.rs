//! Elements of the projective unitary group and the phase-invariant metric
//! `d(U, V) = sqrt(1 − |Tr(UᴴV)| / n)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Entry grid used for dedup keys unless a caller asks otherwise.
pub const DEFAULT_QUANTUM: f64 = 1e-8;

/// Below this `|Tr M|` the canonical phase is taken from the dominant entry.
pub const TRACE_PHASE_THRESHOLD: f64 = 1e-6;

/// Entries within this of the largest magnitude count as tied.
pub const DOMINANT_TIE_TOL: f64 = 1e-9;

/// Unitarity tolerance per unit of dimension.
pub const UNITARY_TOL_PER_DIM: f64 = 1e-10;

/// A square matrix checked to be unitary within `1e-10 · n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let tolerance = UNITARY_TOL_PER_DIM * m.dim() as f64;
        let residual = m.unitarity_residual();
        if residual.is_nan() || residual > tolerance {
            return Err(Error::NotUnitary {
                residual,
                tolerance,
            });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix the caller already knows to be unitary.
    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        debug_assert!(m.unitarity_residual() <= 1e-8 * m.dim() as f64);
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Product of two unitaries; unitarity is preserved up to roundoff.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self(&self.0 * &rhs.0)
    }

    pub fn scale_phase(&self, phi: f64) -> Self {
        Self(self.0.scale(C64::from_polar(1.0, phi)))
    }
}

/// A class of `PU_n`: a canonical representative plus its quantized key.
#[derive(Clone, Debug)]
pub struct PhaseClass {
    rep: UnitaryMatrix,
    key: Vec<u8>,
}

impl PhaseClass {
    #[inline]
    pub fn rep(&self) -> &UnitaryMatrix {
        &self.rep
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        self.rep.matrix()
    }

    #[inline]
    pub fn key(&self) -> &[u8] {
        &self.key
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn identity(n: usize) -> Self {
        canonicalize_unitary(&UnitaryMatrix::identity(n), DEFAULT_QUANTUM)
    }

    /// Class of the product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        canonicalize_unitary(&self.rep.compose(&rhs.rep), DEFAULT_QUANTUM)
    }

    pub fn adjoint(&self) -> Self {
        canonicalize_unitary(&self.rep.adjoint(), DEFAULT_QUANTUM)
    }
}

impl PartialEq for PhaseClass {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for PhaseClass {}

/// Validates `m` as unitary and returns its canonical class.
pub fn canonicalize(m: &CMatrix, quantum: f64) -> Result<PhaseClass> {
    if !(quantum > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quantum must be positive, got {quantum}"
        )));
    }
    let u = UnitaryMatrix::new(m.clone())?;
    Ok(canonicalize_unitary(&u, quantum))
}

/// The phase `e^{−iφ}` that the canonical rule multiplies `m` by.
pub fn canonical_phase(m: &CMatrix) -> C64 {
    let tr = m.trace();
    let anchor = if tr.norm() > TRACE_PHASE_THRESHOLD {
        tr
    } else {
        m.dominant_entry(DOMINANT_TIE_TOL).1
    };
    anchor.conj() / anchor.norm()
}

/// Canonicalizes a matrix already known to be unitary.
pub fn canonicalize_unitary(u: &UnitaryMatrix, quantum: f64) -> PhaseClass {
    let rep = u.matrix().scale(canonical_phase(u.matrix()));
    let key = quantized_key(&rep, quantum);
    PhaseClass {
        rep: UnitaryMatrix(rep),
        key,
    }
}

fn quantized_key(m: &CMatrix, quantum: f64) -> Vec<u8> {
    let mut key = Vec::with_capacity(m.as_slice().len() * 16);
    for z in m.as_slice() {
        for x in [z.re, z.im] {
            // -0.0 casts to 0, so signed zeros share a key.
            let q = (x / quantum).round() as i64;
            key.extend_from_slice(&q.to_le_bytes());
        }
    }
    key
}

/// `d` from an already-computed `|Tr(UᴴV)|`, clamped at zero under the root.
#[inline]
pub fn distance_from_overlap(abs_trace: f64, n: usize) -> f64 {
    (1.0 - abs_trace / n as f64).max(0.0).sqrt()
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// Phase-invariant distance between two matrices of equal dimension.
pub fn matrix_distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    check_dims(u.dim(), v.dim())?;
    Ok(distance_from_overlap(u.inner(v).norm(), u.dim()))
}

/// Phase-invariant distance in `[0, 1]`.
pub fn phase_distance(u: &PhaseClass, v: &PhaseClass) -> Result<f64> {
    matrix_distance(u.matrix(), v.matrix())
}

/// `min_φ ‖U − e^{iφ}V‖_F = sqrt(2n − 2|Tr(UᴴV)|)`, equal to `sqrt(2n)·d`.
pub fn chordal_frobenius_distance(u: &PhaseClass, v: &PhaseClass) -> Result<f64> {
    check_dims(u.dim(), v.dim())?;
    let n = u.dim() as f64;
    let t = u.matrix().inner(v.matrix()).norm();
    Ok((2.0 * n - 2.0 * t).max(0.0).sqrt())
}
