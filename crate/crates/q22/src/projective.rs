//! CP³ points, the Hermitian form h, the involution j, the twistor projection
//! to S⁴ (both the ℝ⁵ formula and the affine quaternion chart), Q^{2,2}
//! membership, and twistor-fibre parametrization.
//!
//! Conventions: H = diag(1, 1, −1, −1), h(z, w) = z*Hw, and the quaternionic
//! structure J(z) = Sz̄ with S = diag-block(J₀, J₀), whose projectivization is
//! j[z₀:z₁:z₂:z₃] = [−z̄₁ : z̄₀ : −z̄₃ : z̄₂].

use crate::matrix::{v4_inner, v4_norm, v4_scale, C64, Vec4C, ZERO};
use crate::quat::Quat;
use crate::sample::{gaussian_c64, seeded_rng};
use crate::tolerance::Tolerance;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProjError {
    #[error("zero vector does not define a projective point")]
    ZeroVector,
    #[error("zero covector does not define a hyperplane")]
    ZeroCovector,
}

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

/// A point of CP³, stored through its canonical representative: unit norm,
/// with the first coordinate of magnitude > eq_abs rotated to be real
/// positive. This makes the representative total and deterministic, which
/// downstream code uses for hashing-style comparisons and lexicographic
/// tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    z: Vec4C,
}

impl ProjPoint {
    pub fn new(z: Vec4C, tol: &Tolerance) -> Result<Self, ProjError> {
        let n = v4_norm(&z);
        if n == 0.0 {
            return Err(ProjError::ZeroVector);
        }
        let mut w = v4_scale(&z, C64::new(1.0 / n, 0.0));
        let lead = w
            .iter()
            .position(|c| c.norm() > tol.eq_abs)
            .expect("unit vector has a coordinate above tolerance");
        let phase = w[lead] / w[lead].norm();
        w = v4_scale(&w, phase.conj());
        w[lead] = C64::new(w[lead].re.abs(), 0.0); // clear rounding in Im
        Ok(ProjPoint { z: w })
    }

    /// Convenience constructor from real coordinates.
    pub fn from_re(x: [f64; 4], tol: &Tolerance) -> Result<Self, ProjError> {
        Self::new(
            [
                C64::new(x[0], 0.0),
                C64::new(x[1], 0.0),
                C64::new(x[2], 0.0),
                C64::new(x[3], 0.0),
            ],
            tol,
        )
    }

    /// The canonical unit-norm representative.
    pub fn rep(&self) -> &Vec4C {
        &self.z
    }

    /// Projective equality: |⟨z_p, z_q⟩| ≥ (1 − eq_abs)·‖z_p‖‖z_q‖.
    pub fn proj_eq(&self, other: &ProjPoint, tol: &Tolerance) -> bool {
        v4_inner(&self.z, &other.z).norm() >= 1.0 - tol.eq_abs
    }

    /// Lexicographic comparison of canonical representatives, coordinatewise
    /// on (re, im) pairs. Deterministic total order used for branch labeling.
    pub fn lex_cmp(&self, other: &ProjPoint) -> std::cmp::Ordering {
        for k in 0..4 {
            let ord = self.z[k]
                .re
                .total_cmp(&other.z[k].re)
                .then(self.z[k].im.total_cmp(&other.z[k].im));
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// h(z, w) = z*Hw with H = diag(1, 1, −1, −1).
pub fn hermitian_h(z: &Vec4C, w: &Vec4C) -> C64 {
    z[0].conj() * w[0] + z[1].conj() * w[1] - z[2].conj() * w[2] - z[3].conj() * w[3]
}

/// Scale-invariant membership residual h(z, z)/‖z‖²; the point lies on
/// Q^{2,2} exactly when this vanishes.
pub fn q22_residual(p: &ProjPoint) -> f64 {
    // canonical representative has unit norm
    hermitian_h(p.rep(), p.rep()).re
}

pub fn in_q22(p: &ProjPoint, tol: &Tolerance) -> bool {
    q22_residual(p).abs() < tol.eq_abs
}

/// The involution j[z₀:z₁:z₂:z₃] = [−z̄₁ : z̄₀ : −z̄₃ : z̄₂].
pub fn apply_j(p: &ProjPoint, tol: &Tolerance) -> ProjPoint {
    let z = p.rep();
    ProjPoint::new(j_vec(z), tol).expect("J of a nonzero vector is nonzero")
}

/// J(z) = Sz̄ on representatives.
pub fn j_vec(z: &Vec4C) -> Vec4C {
    [-z[1].conj(), z[0].conj(), -z[3].conj(), z[2].conj()]
}

// ---------------------------------------------------------------------------
// hyperplanes
// ---------------------------------------------------------------------------

/// A hyperplane Π_v = {v·z = 0}, stored through a unit-norm covector. The
/// derived h-normal is n_v = (v̄₀, v̄₁, −v̄₂, −v̄₃), so that Π_v = (n_v)^{⊥_h}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperplaneDual {
    v: Vec4C,
}

impl HyperplaneDual {
    pub fn new(v: Vec4C) -> Result<Self, ProjError> {
        let n = v4_norm(&v);
        if n == 0.0 {
            return Err(ProjError::ZeroCovector);
        }
        Ok(HyperplaneDual {
            v: v4_scale(&v, C64::new(1.0 / n, 0.0)),
        })
    }

    pub fn covector(&self) -> &Vec4C {
        &self.v
    }

    /// n_v = (v̄₀, v̄₁, −v̄₂, −v̄₃).
    pub fn h_normal(&self) -> Vec4C {
        [
            self.v[0].conj(),
            self.v[1].conj(),
            -self.v[2].conj(),
            -self.v[3].conj(),
        ]
    }

    /// v · z (plain bilinear pairing).
    pub fn pair(&self, z: &Vec4C) -> C64 {
        self.v[0] * z[0] + self.v[1] * z[1] + self.v[2] * z[2] + self.v[3] * z[3]
    }

    pub fn contains(&self, p: &ProjPoint, tol: &Tolerance) -> bool {
        self.pair(p.rep()).norm() < tol.eq_abs
    }
}

// ---------------------------------------------------------------------------
// the two projection charts
// ---------------------------------------------------------------------------

/// A point of S⁴ ⊂ ℝ⁵ in the coordinate order (x₁, …, x₅) fixed by the
/// projection formula; Σ is the slice {x₁ = 0}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S4Point {
    pub x: [f64; 5],
}

impl S4Point {
    pub fn on_sigma(&self, tol: &Tolerance) -> bool {
        self.x[0].abs() < tol.eq_abs
    }

    /// Inverse stereographic image of an affine quaternion,
    /// q ↦ ((1 − |q|²), 2·q-components)/(1 + |q|²); ∞ ↦ (−1, 0, 0, 0, 0).
    pub fn from_quat(q: &QuatOrInf) -> S4Point {
        match q {
            QuatOrInf::Inf => S4Point {
                x: [-1.0, 0.0, 0.0, 0.0, 0.0],
            },
            QuatOrInf::Finite(q) => {
                let n2 = q.norm_sqr();
                let d = 1.0 + n2;
                S4Point {
                    x: [
                        (1.0 - n2) / d,
                        2.0 * q.p0.re / d,
                        2.0 * q.p0.im / d,
                        2.0 * q.p1.re / d,
                        2.0 * q.p1.im / d,
                    ],
                }
            }
        }
    }

    /// Stereographic chart: the quaternion with components x₂..₅/(1 + x₁).
    pub fn to_quat(&self) -> QuatOrInf {
        let d = 1.0 + self.x[0];
        if d.abs() < 1e-14 {
            return QuatOrInf::Inf;
        }
        QuatOrInf::Finite(Quat::new(
            C64::new(self.x[1] / d, self.x[2] / d),
            C64::new(self.x[3] / d, self.x[4] / d),
        ))
    }
}

/// Affine quaternion chart value of the twistor projection; the chart
/// boundary ∞ is a tagged variant, never an encoded large number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuatOrInf {
    Finite(Quat),
    Inf,
}

impl QuatOrInf {
    pub fn finite(&self) -> Option<&Quat> {
        match self {
            QuatOrInf::Finite(q) => Some(q),
            QuatOrInf::Inf => None,
        }
    }

    /// |q| = 1 marks the distinguished 3-sphere Σ; ∞ is not on Σ.
    pub fn on_sigma(&self, tol: &Tolerance) -> bool {
        match self {
            QuatOrInf::Finite(q) => (q.norm() - 1.0).abs() < tol.eq_abs,
            QuatOrInf::Inf => false,
        }
    }

    pub fn approx_eq(&self, other: &QuatOrInf, eq_abs: f64) -> bool {
        match (self, other) {
            (QuatOrInf::Inf, QuatOrInf::Inf) => true,
            (QuatOrInf::Finite(a), QuatOrInf::Finite(b)) => a.approx_eq(b, eq_abs),
            _ => false,
        }
    }
}

/// Intermediates of the ℝ⁵ projection formula: A = |z₀|²+|z₁|²,
/// B = |z₂|²+|z₃|², and the components (α, β) of q₁q̄₀ for q₀ = z₀+jz₁,
/// q₁ = z₂+jz₃, namely α = z₂z̄₀ + z₁z̄₃ and β = z₃z̄₀ − z₁z̄₂. They satisfy
/// (A−B)² + 4|α|² + 4|β|² = (A+B)² identically.
pub fn r5_intermediates(z: &Vec4C) -> (f64, f64, C64, C64) {
    let a = z[0].norm_sqr() + z[1].norm_sqr();
    let b = z[2].norm_sqr() + z[3].norm_sqr();
    let alpha = z[2] * z[0].conj() + z[1] * z[3].conj();
    let beta = z[3] * z[0].conj() - z[1] * z[2].conj();
    (a, b, alpha, beta)
}

/// Twistor projection in ℝ⁵ coordinates:
/// π(z) = (A−B, 2Reα, 2Imα, 2Reβ, 2Imβ)/(A+B).
pub fn project_r5(p: &ProjPoint) -> S4Point {
    let (a, b, alpha, beta) = r5_intermediates(p.rep());
    let d = a + b;
    S4Point {
        x: [
            (a - b) / d,
            2.0 * alpha.re / d,
            2.0 * alpha.im / d,
            2.0 * beta.re / d,
            2.0 * beta.im / d,
        ],
    }
}

/// Twistor projection in the affine quaternion chart:
/// q = (z₂ + jz₃)(z₀ + jz₁)⁻¹, with ∞ exactly when z₀ = z₁ = 0.
pub fn project_quat(p: &ProjPoint, tol: &Tolerance) -> QuatOrInf {
    let z = p.rep();
    let den = Quat::new(z[0], z[1]);
    if den.norm() < tol.eq_abs {
        return QuatOrInf::Inf;
    }
    let num = Quat::new(z[2], z[3]);
    QuatOrInf::Finite(num.mul(&den.inverse().expect("nonzero denominator")))
}

// ---------------------------------------------------------------------------
// fibres
// ---------------------------------------------------------------------------

/// Parametrization of the twistor fibre over a base point: for finite
/// q = p₀ + jp₁ the map is (z₀, z₁) ↦ [z₀ : z₁ : p₀z₀ − p̄₁z₁ : p₁z₀ + p̄₀z₁];
/// over ∞ it is (z₂, z₃) ↦ [0 : 0 : z₂ : z₃]. The image is a j-invariant
/// projective line projecting to {base}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreParam {
    pub base: QuatOrInf,
}

impl FibreParam {
    /// Representative vector of the parametrized point; (c0, c1) ≠ (0, 0).
    pub fn point_vec(&self, c0: C64, c1: C64) -> Vec4C {
        match &self.base {
            QuatOrInf::Finite(q) => [
                c0,
                c1,
                q.p0 * c0 - q.p1.conj() * c1,
                q.p1 * c0 + q.p0.conj() * c1,
            ],
            QuatOrInf::Inf => [ZERO, ZERO, c0, c1],
        }
    }

    pub fn point(&self, c0: C64, c1: C64, tol: &Tolerance) -> Result<ProjPoint, ProjError> {
        ProjPoint::new(self.point_vec(c0, c1), tol)
    }

    /// Deterministic sample of points along the fibre.
    pub fn sample_points(&self, count: usize, seed: u64, tol: &Tolerance) -> Vec<ProjPoint> {
        let mut rng = seeded_rng(seed);
        (0..count)
            .map(|_| loop {
                let c0 = gaussian_c64(&mut rng);
                let c1 = gaussian_c64(&mut rng);
                if c0.norm() + c1.norm() > 1e-6 {
                    return self.point(c0, c1, tol).expect("nonzero parameters");
                }
            })
            .collect()
    }
}

/// The fibre over a given base point.
pub fn fibre_over(base: QuatOrInf) -> FibreParam {
    FibreParam { base }
}

/// The fibre through a point, i.e. the line spanned by {z, Jz}; both p and
/// j(p) lie on it.
pub fn fibre_through(p: &ProjPoint, tol: &Tolerance) -> FibreParam {
    fibre_over(project_quat(p, tol))
}

// ---------------------------------------------------------------------------
// samplers
// ---------------------------------------------------------------------------

/// Random point of Q^{2,2}: a random point on the fibre over a random unit
/// quaternion (the fibres over Σ fill out Q^{2,2} exactly).
pub fn sample_q22_point(rng: &mut ChaCha8Rng, tol: &Tolerance) -> ProjPoint {
    let q = crate::sample::unit_quat(rng);
    let fibre = fibre_over(QuatOrInf::Finite(q));
    loop {
        let c0 = gaussian_c64(rng);
        let c1 = gaussian_c64(rng);
        if c0.norm() + c1.norm() > 1e-6 {
            return fibre.point(c0, c1, tol).expect("nonzero parameters");
        }
    }
}

/// Random point of CP³ with Gaussian coordinates.
pub fn sample_proj_point(rng: &mut ChaCha8Rng, tol: &Tolerance) -> ProjPoint {
    loop {
        let z = crate::sample::gaussian_vec4(rng);
        if v4_norm(&z) > 1e-6 {
            return ProjPoint::new(z, tol).expect("nonzero vector");
        }
    }
}
