//! Quaternions in the complex pair representation q = p₀ + j·p₁.
//!
//! The multiplication convention is fixed by j·a = ā·j for complex a, so that
//! the twistor fibre relation q₁ = q·q₀ holds with left multiplication. All
//! downstream fibre parametrizations depend on this single choice.

use crate::matrix::{C64, Mat2, ONE, ZERO};
use crate::tolerance::Tolerance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuatError {
    #[error("matrix is not in SU(2) (residual {0:.3e})")]
    NotSu2(f64),
    #[error("division by a zero quaternion")]
    DivisionByZero,
}

/// q = p0 + j·p1 with p0, p1 ∈ ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub p0: C64,
    pub p1: C64,
}

impl Quat {
    pub fn new(p0: C64, p1: C64) -> Self {
        Quat { p0, p1 }
    }

    pub fn zero() -> Self {
        Quat::new(ZERO, ZERO)
    }

    pub fn one() -> Self {
        Quat::new(ONE, ZERO)
    }

    /// The quaternion unit j itself.
    pub fn j() -> Self {
        Quat::new(ZERO, ONE)
    }

    pub fn from_complex(c: C64) -> Self {
        Quat::new(c, ZERO)
    }

    /// (a0 + j a1)(b0 + j b1) = (a0 b0 − ā1 b1) + j(a1 b0 + ā0 b1).
    pub fn mul(&self, o: &Quat) -> Quat {
        Quat::new(
            self.p0 * o.p0 - self.p1.conj() * o.p1,
            self.p1 * o.p0 + self.p0.conj() * o.p1,
        )
    }

    /// q̄ = p̄0 − j p1.
    pub fn conj(&self) -> Quat {
        Quat::new(self.p0.conj(), -self.p1)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.p0.norm_sqr() + self.p1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, t: f64) -> Quat {
        Quat::new(self.p0 * t, self.p1 * t)
    }

    pub fn inverse(&self) -> Result<Quat, QuatError> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(QuatError::DivisionByZero);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn approx_eq(&self, o: &Quat, eq_abs: f64) -> bool {
        (self.p0 - o.p0).norm() < eq_abs && (self.p1 - o.p1).norm() < eq_abs
    }
}

/// The unit quaternion associated with x ∈ SU(2) under the identification
/// SU(2) ≅ S³ used throughout: for x = [[α, β], [−β̄, ᾱ]] the value is
/// q = α − j β̄, which makes the fibre basepoint map the identity under this
/// bridge (the fibre over q is the graph line of x). In particular
/// tr(x) = 2 Re p0.
pub fn su2_to_quat(x: &Mat2, tol: &Tolerance) -> Result<Quat, QuatError> {
    let res = su2_residual(x);
    if res >= tol.eq_abs {
        return Err(QuatError::NotSu2(res));
    }
    let alpha = x.m[0][0];
    let beta = x.m[0][1];
    Ok(Quat::new(alpha, -beta.conj()))
}

/// Inverse of [`su2_to_quat`]: q = p0 + j p1 with |q| = 1 maps to
/// [[p0, −p̄1], [p1, p̄0]].
pub fn quat_to_su2(q: &Quat) -> Mat2 {
    Mat2::new([[q.p0, -q.p1.conj()], [q.p1, q.p0.conj()]])
}

/// Deviation of x from the SU(2) pattern [[α, β], [−β̄, ᾱ]] with unit norm.
pub fn su2_residual(x: &Mat2) -> f64 {
    let pattern = (x.m[1][0] + x.m[0][1].conj()).norm().max((x.m[1][1] - x.m[0][0].conj()).norm());
    let unit = (x.m[0][0].norm_sqr() + x.m[0][1].norm_sqr() - 1.0).abs();
    pattern.max(unit).max(x.unitary_residual())
}
