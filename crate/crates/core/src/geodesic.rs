//! Eigenphases of `UᴴV` and the geodesic midpoint between two classes.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::{
    canonical_phase, canonicalize_unitary, PhaseClass, UnitaryMatrix, DEFAULT_QUANTUM,
};

/// Maximum `‖Ω·diag(e^{iθ})·Ωᴴ − W‖_F` accepted from the eigensolver.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

/// Spectral decomposition `W = Ω·diag(e^{iθ_j})·Ωᴴ` of a unitary `W`.
#[derive(Clone, Debug)]
pub struct EigenphaseSet {
    /// Eigenphases in `(−π, π]`.
    pub thetas: Vec<f64>,
    /// Unitary eigenbasis, eigenvectors as columns.
    pub vecs: CMatrix,
}

impl EigenphaseSet {
    /// `|Σ_j e^{iθ_j}|`, which equals `|Tr W|`.
    pub fn phase_sum_modulus(&self) -> f64 {
        self.thetas
            .iter()
            .map(|&t| C64::from_polar(1.0, t))
            .sum::<C64>()
            .norm()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let l: Vec<C64> = self
            .thetas
            .iter()
            .map(|&t| C64::from_polar(1.0, t))
            .collect();
        &(&self.vecs * &CMatrix::from_diag(&l)) * &self.vecs.adjoint()
    }
}

/// Principal argument in `(−π, π]`.
#[inline]
pub fn principal_arg(z: C64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Decomposes a unitary matrix via the complex Schur form. For a normal
/// matrix the triangular factor is diagonal and the Schur vectors are an
/// orthonormal eigenbasis, including inside degenerate clusters.
pub fn unitary_eigen(w: &CMatrix) -> Result<EigenphaseSet> {
    let n = w.dim();
    let m = DMatrix::from_fn(n, n, |i, j| w.get(i, j));
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigen("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let thetas: Vec<f64> = (0..n).map(|i| principal_arg(t[(i, i)])).collect();
    let vecs = CMatrix::from_fn(n, |i, j| q[(i, j)]);
    let set = EigenphaseSet { thetas, vecs };
    let residual = set.reconstruct().sub(w).frobenius_norm();
    if !(residual <= EIGEN_RESIDUAL_TOL) {
        return Err(Error::Eigen(format!(
            "reconstruction residual {residual:.3e} exceeds {EIGEN_RESIDUAL_TOL:.0e}"
        )));
    }
    Ok(set)
}

/// Eigenphases of `W = UᴴV` for the stored representatives.
pub fn eigenphases(u: &PhaseClass, v: &PhaseClass) -> Result<EigenphaseSet> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let w = &u.matrix().adjoint() * v.matrix();
    unitary_eigen(&w)
}

/// Geodesic midpoint `M = U·Ω·sqrt(L)·Ωᴴ` with principal square roots.
///
/// `W = UᴴV` is first brought to the canonical phase of its class, so the
/// result depends only on the classes of `U` and `V`. With a real positive
/// trace the eigenphases of `W` cluster around zero and the principal branch
/// follows the short geodesic.
pub fn geodesic_midpoint(u: &PhaseClass, v: &PhaseClass) -> Result<PhaseClass> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let w = &u.matrix().adjoint() * v.matrix();
    let w = w.scale(canonical_phase(&w));
    let eig = unitary_eigen(&w)?;
    let half: Vec<C64> = eig
        .thetas
        .iter()
        .map(|&t| C64::from_polar(1.0, t / 2.0))
        .collect();
    let root = &(&eig.vecs * &CMatrix::from_diag(&half)) * &eig.vecs.adjoint();
    let m = u.matrix() * &root;
    Ok(canonicalize_unitary(
        &UnitaryMatrix::new(m)?,
        DEFAULT_QUANTUM,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pu::{canonicalize, phase_distance};
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn diag(d: &[C64]) -> PhaseClass {
        canonicalize(&CMatrix::from_diag(d), DEFAULT_QUANTUM).unwrap()
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn eigenphases_of_z() {
        let i = PhaseClass::identity(2);
        let z = diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let t = sorted(eigenphases(&i, &z).unwrap().thetas);
        assert!(t[0].abs() < 1e-15);
        assert!((t[1] - PI).abs() < 1e-15);
    }

    #[test]
    fn eigenphases_of_s() {
        let i = PhaseClass::identity(2);
        // S has trace 1+i, so its canonical representative is e^{-iπ/4}·S.
        // Raw S is used here to match the eigenvalues {1, i}.
        let s = CMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let t = sorted(unitary_eigen(&(&i.matrix().adjoint() * &s)).unwrap().thetas);
        assert!(t[0].abs() < 1e-15);
        assert!((t[1] - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn midpoint_identity_z_is_s() {
        let i = PhaseClass::identity(2);
        let z = diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let s = diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let m = geodesic_midpoint(&i, &z).unwrap();
        assert!(phase_distance(&m, &s).unwrap() < 1e-7);
        let expected = (1.0 - SQRT_2 / 2.0).sqrt();
        assert!((phase_distance(&i, &m).unwrap() - expected).abs() < 1e-12);
        assert!((phase_distance(&m, &z).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn principal_arg_closes_upper_boundary() {
        assert_eq!(principal_arg(C64::new(-1.0, -0.0)), PI);
        assert_eq!(principal_arg(C64::new(-1.0, 0.0)), PI);
    }
}
