//! Haar sampling on `U_n`, and by projection on `PU_n`.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::{canonicalize_unitary, PhaseClass, UnitaryMatrix, DEFAULT_QUANTUM};

/// Draws a Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// columns of `Q` rotated so that `diag(R)` is real positive.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    let g = CMatrix::from_fn(n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let (q, r) = g.qr();
    let phases: Vec<C64> = (0..n)
        .map(|j| {
            let d = r.get(j, j);
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    let q = CMatrix::from_fn(n, |i, j| q.get(i, j) * phases[j]);
    UnitaryMatrix::new_unchecked(q)
}

/// A Haar-random class of `PU_n`. The quotient of the Haar measure on `U_n`
/// by the phase circle is the Haar measure on `PU_n`.
pub fn haar_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PhaseClass> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    Ok(canonicalize_unitary(&haar_unitary(n, rng), DEFAULT_QUANTUM))
}
