//! j-invariant quadrics and their discriminant geometry.
//!
//! A quadric {zᵀQz = 0} is j-invariant iff SᵀQ̄S = λQ with |λ| = 1; rescaling
//! by e^{i·arg(λ)/2} normalizes to SᵀQ̄S = Q, whose solutions form the
//! 10-real-parameter pattern below. The explicit family
//! Q_{a,r} (a ∈ ℝ, r > 0) has det = r⁴ and discriminant locus
//! D_{a,r} = {p₁ = 0, 1 − 2a·Re p₀ + (a²−r²)|p₀|² = 0}: a circle of center
//! a/(a²−r²) and radius r/|a²−r²| (a line Re z = 1/(2a) when a² = r²). Its
//! position against the unit circle is classified by the inversive distance
//! I = |a² − r² − 1|/(2r).

use crate::matrix::{re, C64, Mat4, ZERO};
use crate::projective::QuatOrInf;
use crate::quat::Quat;
use crate::tolerance::Tolerance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadricError {
    #[error("matrix is not symmetric (residual {0:.3e})")]
    NotSymmetric(f64),
    #[error("quadric is not j-invariant (residual {0:.3e})")]
    NotJInvariant(f64),
    #[error("family radius must be positive")]
    InvalidRadius,
}

/// A complex symmetric 4×4 matrix defining a quadric surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricSym4 {
    pub q: Mat4,
}

impl QuadricSym4 {
    pub fn new(q: Mat4, tol: &Tolerance) -> Result<Self, QuadricError> {
        let res = q.symmetry_residual();
        if res >= tol.eq_abs * q.norm_max().max(1.0) {
            return Err(QuadricError::NotSymmetric(res));
        }
        Ok(QuadricSym4 { q })
    }

    /// The quadratic form zᵀQz.
    pub fn eval_vec(&self, z: &[C64; 4]) -> C64 {
        let qz = self.q.mul_vec(z);
        z[0] * qz[0] + z[1] * qz[1] + z[2] * qz[2] + z[3] * qz[3]
    }

    /// Scale-invariant membership residual |zᵀQz|/(‖Q‖‖z‖²) at a point.
    pub fn residual(&self, p: &crate::projective::ProjPoint) -> f64 {
        self.eval_vec(p.rep()).norm() / self.q.norm_max().max(1e-300)
    }

    pub fn contains(&self, p: &crate::projective::ProjPoint, tol: &Tolerance) -> bool {
        self.residual(p) < tol.eq_abs * 10.0
    }

    /// The Segre quadric z₀z₃ − z₁z₂ = 0.
    pub fn segre() -> Self {
        let one = re(1.0);
        QuadricSym4 {
            q: Mat4::new([
                [ZERO, ZERO, ZERO, one],
                [ZERO, ZERO, -one, ZERO],
                [ZERO, -one, ZERO, ZERO],
                [one, ZERO, ZERO, ZERO],
            ]),
        }
    }
}

/// Parameters of the family quadric Q_{a,r}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub a: f64,
    pub r: f64,
}

impl FamilyParams {
    pub fn new(a: f64, r: f64) -> Result<Self, QuadricError> {
        if !(r > 0.0) {
            return Err(QuadricError::InvalidRadius);
        }
        Ok(FamilyParams { a, r })
    }

    /// c = a² − r², the coefficient pairing z₂z₃ in the family equation.
    pub fn c(&self) -> f64 {
        self.a * self.a - self.r * self.r
    }
}

/// The matrix of Q_{a,r}; zᵀQ_{a,r}z = 2(z₀z₁ − a(z₀z₃ + z₁z₂) + c·z₂z₃)
/// with c = a² − r², det Q_{a,r} = r⁴, and SᵀQ̄_{a,r}S = −Q_{a,r}.
pub fn family_quadric(fp: &FamilyParams) -> QuadricSym4 {
    let a = re(-fp.a);
    let c = re(fp.c());
    let one = re(1.0);
    QuadricSym4 {
        q: Mat4::new([
            [ZERO, one, ZERO, a],
            [one, ZERO, a, ZERO],
            [ZERO, a, ZERO, c],
            [a, ZERO, c, ZERO],
        ]),
    }
}

/// Normalize a j-invariant quadric: find the unimodular λ with SᵀQ̄S = λQ
/// and return it with Qn = e^{i·arg(λ)/2}·Q, which satisfies SᵀQ̄ₙS = Qn and
/// matches the 10-parameter pattern.
pub fn jinv_normalize(
    q: &QuadricSym4,
    tol: &Tolerance,
) -> Result<(C64, QuadricSym4), QuadricError> {
    let s = Mat4::s_form();
    let t = s.transpose().mul(&q.q.conj()).mul(&s);
    let (i, j) = q.q.argmax_entry();
    let denom = q.q.m[i][j];
    if denom.norm() == 0.0 {
        return Err(QuadricError::NotJInvariant(f64::INFINITY));
    }
    let lambda = t.m[i][j] / denom;
    let scale = q.q.norm_max();
    let res = t.sub(&q.q.scale(lambda)).norm_max();
    if res >= tol.eq_abs * scale.max(1.0) || (lambda.norm() - 1.0).abs() >= tol.eq_abs * 10.0 {
        return Err(QuadricError::NotJInvariant(res));
    }
    let mu = C64::from_polar(1.0, 0.5 * lambda.arg());
    let qn = QuadricSym4 {
        q: q.q.scale(mu),
    };
    Ok((lambda, qn))
}

/// Residual of Q against the normalized j-invariant pattern
/// [[a, ib, c, d], [ib, ā, −d̄, c̄], [c, −d̄, e, if], [d, c̄, if, ē]]
/// with a, c, d, e ∈ ℂ and b, f ∈ ℝ.
pub fn jinv_pattern_residual(q: &Mat4) -> f64 {
    let m = &q.m;
    let mut res: f64 = q.symmetry_residual();
    res = res.max((m[1][1] - m[0][0].conj()).norm()); // q11 = ā
    res = res.max(m[0][1].re.abs()); // q01 purely imaginary
    res = res.max((m[1][3] - m[0][2].conj()).norm()); // q13 = c̄
    res = res.max((m[1][2] + m[0][3].conj()).norm()); // q12 = −d̄
    res = res.max((m[3][3] - m[2][2].conj()).norm()); // q33 = ē
    res = res.max(m[2][3].re.abs()); // q23 purely imaginary
    res
}

/// The restriction of a quadric to a twistor fibre: the binary quadratic
/// α·z₀² + 2β·z₀z₁ + γ·z₁² obtained by substituting the fibre
/// parametrization into zᵀQz/2, with discriminant Δ = β² − αγ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreQuadratic {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
}

/// How a twistor fibre meets the quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibreType {
    /// Two distinct intersection points.
    Two,
    /// A double point (the fibre is tangent).
    Tangent,
    /// The fibre lies inside the quadric.
    Contained,
}

impl FibreQuadratic {
    pub fn disc(&self) -> C64 {
        self.beta * self.beta - self.alpha * self.gamma
    }

    pub fn coeff_max(&self) -> f64 {
        self.alpha.norm().max(self.beta.norm()).max(self.gamma.norm())
    }

    pub fn fibre_type(&self, tol: &Tolerance) -> FibreType {
        if self.coeff_max() < tol.disc_zero {
            FibreType::Contained
        } else if self.disc().norm() < tol.disc_zero {
            FibreType::Tangent
        } else {
            FibreType::Two
        }
    }
}

/// Substitute the fibre over q into the quadric. For finite q the fibre is
/// z₂ = p₀z₀ − p̄₁z₁, z₃ = p₁z₀ + p̄₀z₁; over ∞ the coefficients are read
/// from the lower-right 2×2 block.
pub fn restrict_to_fibre(q: &QuadricSym4, base: &QuatOrInf) -> FibreQuadratic {
    let (col0, col1): ([C64; 4], [C64; 4]) = match base {
        QuatOrInf::Finite(p) => (
            [re(1.0), ZERO, p.p0, p.p1],
            [ZERO, re(1.0), -p.p1.conj(), p.p0.conj()],
        ),
        QuatOrInf::Inf => ([ZERO, ZERO, re(1.0), ZERO], [ZERO, ZERO, ZERO, re(1.0)]),
    };
    let q0 = q.q.mul_vec(&col0);
    let q1 = q.q.mul_vec(&col1);
    let dot = |a: &[C64; 4], b: &[C64; 4]| -> C64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
    };
    FibreQuadratic {
        alpha: dot(&col0, &q0) * 0.5,
        beta: dot(&col0, &q1) * 0.5,
        gamma: dot(&col1, &q1) * 0.5,
    }
}

/// Closed-form fibre restriction of the family quadric (used as an
/// independent check of the generic substitution).
pub fn family_fibre_quadratic(fp: &FamilyParams, p: &Quat) -> FibreQuadratic {
    let c = fp.c();
    let alpha = (re(c) * p.p0 - re(fp.a)) * p.p1;
    let gamma = (re(fp.a) - re(c) * p.p0.conj()) * p.p1.conj();
    let two_beta = 1.0 - fp.a * (p.p0 + p.p0.conj()).re + c * (p.p0.norm_sqr() - p.p1.norm_sqr());
    FibreQuadratic {
        alpha,
        beta: re(0.5 * two_beta),
        gamma,
    }
}

/// The discriminant locus of a family quadric in the planar slice
/// {p₁ = 0} ≃ ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscriminantCircle {
    Circle { center: f64, radius: f64 },
    /// The compactified line {Re z = re_equals} ∪ {∞} (case a² = r²).
    Line { re_equals: f64 },
    /// The locus is the unit circle itself (contained case).
    ContainedUnitCircle,
}

impl DiscriminantCircle {
    /// Residual of the defining equation 1 − 2a·Re z + (a²−r²)|z|² at z.
    pub fn equation_residual(fp: &FamilyParams, z: C64) -> f64 {
        (1.0 - 2.0 * fp.a * z.re + fp.c() * z.norm_sqr()).abs()
    }

    /// Sample `count` points of the locus (for the line, a symmetric window
    /// is used; the point at ∞ is not emitted).
    pub fn sample(&self, count: usize) -> Vec<C64> {
        match self {
            DiscriminantCircle::Circle { center, radius } => (0..count)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * (k as f64) / (count as f64);
                    C64::new(center + radius * t.cos(), radius * t.sin())
                })
                .collect(),
            DiscriminantCircle::ContainedUnitCircle => (0..count)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * (k as f64) / (count as f64);
                    C64::new(t.cos(), t.sin())
                })
                .collect(),
            DiscriminantCircle::Line { re_equals } => (0..count)
                .map(|k| {
                    let t = -2.5 + 5.0 * (k as f64) / ((count - 1).max(1) as f64);
                    C64::new(*re_equals, t)
                })
                .collect(),
        }
    }
}

/// Relative position of the discriminant circle against the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Contained,
    TwoPoints,
    Tangent,
    Disjoint,
}

/// Relative-position report: the inversive distance I, the position class,
/// and the branch points Γ = D ∩ S¹ (empty for contained — the branch locus
/// is then the whole circle — and for disjoint).
#[derive(Debug, Clone, PartialEq)]
pub struct RelPosition {
    pub position: Position,
    pub inversive_distance: f64,
    pub branch_points: Vec<C64>,
}

/// I = |a² − r² − 1|/(2r), Coxeter's inversive distance of D_{a,r} from the
/// unit circle; I < 1, = 1, > 1 correspond to two, one, zero intersection
/// points.
pub fn inversive_distance(fp: &FamilyParams) -> f64 {
    (fp.c() - 1.0).abs() / (2.0 * fp.r)
}

/// Discriminant circle and relative position of the family quadric.
///
/// Containment (center ≈ 0, radius ≈ 1) is tested before the I-trichotomy:
/// (0, 1) has I = 1 by the formula yet is the contained case.
pub fn classify_family(fp: &FamilyParams, tol: &Tolerance) -> (DiscriminantCircle, RelPosition) {
    let c = fp.c();
    let circle = if c.abs() < tol.containment {
        // a² = r² forces a ≠ 0 (r > 0)
        DiscriminantCircle::Line {
            re_equals: 1.0 / (2.0 * fp.a),
        }
    } else {
        let center = fp.a / c;
        let radius = fp.r / c.abs();
        if center.abs() < tol.containment && (radius - 1.0).abs() < tol.containment {
            DiscriminantCircle::ContainedUnitCircle
        } else {
            DiscriminantCircle::Circle { center, radius }
        }
    };

    let i = inversive_distance(fp);
    let (position, branch_points) = match &circle {
        DiscriminantCircle::ContainedUnitCircle => (Position::Contained, Vec::new()),
        _ => {
            let branch_points = branch_points(fp, tol);
            let position = if (i - 1.0).abs() <= tol.containment {
                Position::Tangent
            } else if i < 1.0 {
                Position::TwoPoints
            } else {
                Position::Disjoint
            };
            (position, branch_points)
        }
    };

    (
        circle,
        RelPosition {
            position,
            inversive_distance: i,
            branch_points,
        },
    )
}

/// Γ = D_{a,r} ∩ S¹, solved exactly: on |z| = 1 the defining equation
/// becomes 1 + c − 2a·Re z = 0, so Re z = (1 + c)/(2a).
pub fn branch_points(fp: &FamilyParams, tol: &Tolerance) -> Vec<C64> {
    let c = fp.c();
    if fp.a.abs() < 1e-300 {
        // equation reads 1 + c = 0 on the unit circle: either all of S¹
        // (contained, handled upstream) or nothing
        return Vec::new();
    }
    let x = (1.0 + c) / (2.0 * fp.a);
    if x.abs() > 1.0 + tol.containment {
        return Vec::new();
    }
    let clamped = x.clamp(-1.0, 1.0);
    let y = (1.0 - clamped * clamped).sqrt();
    if y < tol.containment {
        return vec![C64::new(clamped, 0.0)];
    }
    vec![C64::new(clamped, y), C64::new(clamped, -y)]
}
