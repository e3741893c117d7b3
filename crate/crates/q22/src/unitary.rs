//! U(2) utilities: Haar sampling and the phase–SU(2) decomposition A = e^{iθ}U.

use crate::matrix::{cis, Mat2};
use crate::sample::{gaussian_c64, seeded_rng};
use crate::tolerance::Tolerance;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum UnitaryError {
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitaryGroup {
    U2,
    Su2,
}

/// Split a unitary A as e^{iθ}U with U ∈ SU(2) and θ ∈ [0, π).
///
/// θ is half the principal argument of det A; a negative half-angle is folded
/// into [0, π) by absorbing −1 into U. θ = 0 exactly when A ∈ ±SU(2), i.e.
/// when the graph line of A is a twistor fibre.
pub fn unitary_phase_split(a: &Mat2, tol: &Tolerance) -> Result<(f64, Mat2), UnitaryError> {
    let res = a.unitary_residual();
    if res >= tol.eq_abs {
        return Err(UnitaryError::NotUnitary(res));
    }
    let d = a.det();
    let mut theta = 0.5 * d.arg(); // in (−π/2, π/2]
    if theta < 0.0 {
        theta += std::f64::consts::PI;
    }
    let u = a.scale(cis(-theta));
    Ok((theta, u))
}

/// Deterministic Haar-style sample from U(2) or SU(2).
///
/// Two independent complex-Gaussian columns are orthonormalized; for SU(2) the
/// first column is divided by √det to fix the determinant.
pub fn haar_unitary(seed: u64, group: UnitaryGroup) -> Mat2 {
    let mut rng = seeded_rng(seed);
    haar_unitary_from(&mut rng, group)
}

/// Same construction, drawing from a caller-owned stream.
pub fn haar_unitary_from(rng: &mut ChaCha8Rng, group: UnitaryGroup) -> Mat2 {
    loop {
        let c0 = [gaussian_c64(rng), gaussian_c64(rng)];
        let c1 = [gaussian_c64(rng), gaussian_c64(rng)];
        let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
        if n0 < 1e-6 {
            continue;
        }
        let e0 = [c0[0] / n0, c0[1] / n0];
        let proj = e0[0].conj() * c1[0] + e0[1].conj() * c1[1];
        let r1 = [c1[0] - proj * e0[0], c1[1] - proj * e0[1]];
        let n1 = (r1[0].norm_sqr() + r1[1].norm_sqr()).sqrt();
        if n1 < 1e-6 {
            continue;
        }
        let e1 = [r1[0] / n1, r1[1] / n1];
        let mut u = Mat2::new([[e0[0], e1[0]], [e0[1], e1[1]]]);
        if group == UnitaryGroup::Su2 {
            // det is unimodular here, so rescaling the first column by it
            // keeps the matrix unitary and fixes det = 1
            let d = u.det();
            u = Mat2::new([
                [u.m[0][0] / d, u.m[0][1]],
                [u.m[1][0] / d, u.m[1][1]],
            ]);
        }
        return u;
    }
}
