//! Hyperplane sections Π ∩ Q^{2,2}: smooth spherical versus tangent
//! Levi-flat, graph sections over Σ, and the Levi-flat leaves of tangent
//! sections.
//!
//! A section is tangent exactly when Δ(Π) = 0; the singular point is then
//! [n_v], the whole twistor fibre through it lies in Π, and the smooth locus
//! is foliated by the complex lines L_ϑ. For Δ ≠ 0 every fibre over Σ meets
//! the section once, so the section is a graph over Σ.

use crate::lines::{line_from_unitary, LineU2};
use crate::matrix::{cis, C64, Mat2, ONE};
use crate::projective::{fibre_over, HyperplaneDual, ProjPoint, QuatOrInf};
use crate::quat::Quat;
use crate::symmetry::{classify_hyperplane, OrbitClass, Witness};
use crate::tolerance::Tolerance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SectionError {
    #[error("zero covector does not define a hyperplane")]
    ZeroCovector,
    #[error("base point must lie on Σ (|q| = 1)")]
    NotOnSigma,
    #[error("plane is tangent along this fibre; the graph point is undefined")]
    TangentPlane,
    #[error("operation requires a tangent hyperplane (Δ = 0)")]
    NotTangent,
    #[error("operation requires a smooth hyperplane section (Δ ≠ 0)")]
    NotSmooth,
    #[error("leaf image is not a graph line")]
    DegenerateLeaf,
}

/// Classification of Π ∩ Q^{2,2}.
#[derive(Debug, Clone, PartialEq)]
pub enum SectionKind {
    /// Δ ≠ 0: a smooth spherical CR 3-sphere.
    SmoothSpherical { class: OrbitClass },
    /// Δ = 0: singular at [n_v], Levi-flat away from it.
    TangentLeviFlat { singular_point: ProjPoint },
}

/// Classify the section by the sign of Δ; in the tangent case the singular
/// point [n_v] lies on Q^{2,2} ∩ Π and the full fibre through it stays in Π.
pub fn section_kind(v: &HyperplaneDual, tol: &Tolerance) -> SectionKind {
    let (class, _) = classify_hyperplane(v, tol);
    match class {
        OrbitClass::Tangent => SectionKind::TangentLeviFlat {
            singular_point: ProjPoint::new(v.h_normal(), tol).expect("covector is nonzero"),
        },
        other => SectionKind::SmoothSpherical { class: other },
    }
}

/// The unique point of fibre_over(q) ∩ Π for a smooth plane and |q| = 1.
///
/// On the fibre [z₀ : z₁ : p₀z₀ − p̄₁z₁ : p₁z₀ + p̄₀z₁] the plane equation
/// becomes a·z₀ + b·z₁ = 0 with a = v₀ + v₂p₀ + v₃p₁ and
/// b = v₁ − v₂p̄₁ + v₃p̄₀, solved by the parameters [−b : a].
pub fn section_graph_point(
    v: &HyperplaneDual,
    q: &Quat,
    tol: &Tolerance,
) -> Result<ProjPoint, SectionError> {
    if (q.norm() - 1.0).abs() >= tol.eq_abs * 10.0 {
        return Err(SectionError::NotOnSigma);
    }
    let c = v.covector();
    let a = c[0] + c[2] * q.p0 + c[3] * q.p1;
    let b = c[1] - c[2] * q.p1.conj() + c[3] * q.p0.conj();
    if (a.norm_sqr() + b.norm_sqr()).sqrt() < tol.eq_abs {
        return Err(SectionError::TangentPlane);
    }
    fibre_over(QuatOrInf::Finite(*q))
        .point(-b, a, tol)
        .map_err(|_| SectionError::TangentPlane)
}

/// A Levi-flat leaf of a tangent section, parametrized by the phase ϑ.
///
/// In canonical coordinates on Π₀ the leaves are the lines
/// {(ζ₀, ζ₁, ζ₀, e^{iϑ}ζ₁)}; a general tangent plane is reached through the
/// classification witness, which maps Π₀ ∩ Q^{2,2} onto Π_v ∩ Q^{2,2}. The
/// result is returned as the graph line ℓ_B ⊂ Q^{2,2}; every leaf passes
/// through the singular point.
pub fn tangent_leaf(
    v: &HyperplaneDual,
    theta: f64,
    tol: &Tolerance,
) -> Result<LineU2, SectionError> {
    let (class, witness) = classify_hyperplane(v, tol);
    if class != OrbitClass::Tangent {
        return Err(SectionError::NotTangent);
    }
    leaf_through_witness(&witness, theta, tol)
}

fn leaf_through_witness(
    witness: &Witness,
    theta: f64,
    tol: &Tolerance,
) -> Result<LineU2, SectionError> {
    // canonical leaf: graph of A_ϑ = diag(1, e^{iϑ}) on Π₀
    let a_theta = Mat2::diag(ONE, cis(theta));
    // image under the witness g: {g·(z, A_ϑ z)} is the graph of
    // (g₂₁ + g₂₂A)(g₁₁ + g₁₂A)⁻¹
    let g = &witness.g;
    let p = g.block(0, 0).add(&g.block(0, 1).mul(&a_theta));
    let r = g.block(1, 0).add(&g.block(1, 1).mul(&a_theta));
    let pinv = p.inverse().ok_or(SectionError::DegenerateLeaf)?;
    let b = r.mul(&pinv);
    line_from_unitary(&b, &Tolerance::with_eq_abs(tol.eq_abs * 100.0))
        .map_err(|_| SectionError::DegenerateLeaf)
}

/// Representative vector of a canonical-leaf point mapped to the plane of
/// the witness; used by tests to cross-check the graph form.
pub fn leaf_point_vec(witness: &Witness, theta: f64, zeta: &[C64; 2]) -> [C64; 4] {
    let z = [zeta[0], zeta[1], zeta[0], cis(theta) * zeta[1]];
    witness.g.mul_vec(&z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::line_contains;
    use crate::matrix::re;
    use crate::projective::{apply_j, in_q22, project_quat, q22_residual};
    use crate::sample::{seeded_rng, unit_quat};
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn plane(v: [f64; 4]) -> HyperplaneDual {
        HyperplaneDual::new([re(v[0]), re(v[1]), re(v[2]), re(v[3])]).unwrap()
    }

    #[test]
    fn kind_examples() {
        assert!(matches!(
            section_kind(&plane([1.0, 0.0, 0.0, 0.0]), &tol()),
            SectionKind::SmoothSpherical {
                class: OrbitClass::Positive
            }
        ));
        assert!(matches!(
            section_kind(&plane([0.0, 1.0, 0.0, 0.0]), &tol()),
            SectionKind::SmoothSpherical {
                class: OrbitClass::Positive
            }
        ));
        match section_kind(&plane([1.0, 0.0, -1.0, 0.0]), &tol()) {
            SectionKind::TangentLeviFlat { singular_point } => {
                let expect = ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap();
                assert!(singular_point.proj_eq(&expect, &tol()));
                assert!(in_q22(&singular_point, &tol()));
                assert!(plane([1.0, 0.0, -1.0, 0.0]).contains(&singular_point, &tol()));
            }
            _ => panic!("Δ = 0 must give the tangent kind"),
        }
    }

    #[test]
    fn tangent_case_contains_whole_fibre() {
        let v = plane([1.0, 0.0, -1.0, 0.0]);
        let SectionKind::TangentLeviFlat { singular_point } = section_kind(&v, &tol()) else {
            panic!("tangent expected");
        };
        let fibre = crate::projective::fibre_through(&singular_point, &tol());
        for p in fibre.sample_points(10, 3, &tol()) {
            assert!(v.contains(&p, &tol()));
            assert!(in_q22(&p, &tol()));
        }
    }

    #[test]
    fn graph_point_examples() {
        // v = (0,0,1,0), q = 1 → a = 1, b = 0 → [0:1:0:1]
        let p = section_graph_point(&plane([0.0, 0.0, 1.0, 0.0]), &Quat::one(), &tol()).unwrap();
        assert!(p.proj_eq(
            &ProjPoint::from_re([0.0, 1.0, 0.0, 1.0], &tol()).unwrap(),
            &tol()
        ));
        // v = (1,0,0,0), q = 1 → same target
        let p = section_graph_point(&plane([1.0, 0.0, 0.0, 0.0]), &Quat::one(), &tol()).unwrap();
        assert!(p.proj_eq(
            &ProjPoint::from_re([0.0, 1.0, 0.0, 1.0], &tol()).unwrap(),
            &tol()
        ));
    }

    #[test]
    fn graph_point_consistency_sweep() {
        let mut rng = seeded_rng(61);
        let mut done = 0;
        while done < 1000 {
            let raw = crate::sample::gaussian_vec4(&mut rng);
            let Ok(v) = HyperplaneDual::new(raw) else {
                continue;
            };
            if hyperplane_abs_delta(&v) < 1e-3 {
                continue; // stay clearly in the smooth regime
            }
            let q = unit_quat(&mut rng);
            let p = section_graph_point(&v, &q, &tol()).unwrap();
            assert!(v.contains(&p, &tol()));
            assert!(in_q22(&p, &tol()));
            match project_quat(&p, &tol()) {
                QuatOrInf::Finite(qp) => assert!(qp.approx_eq(&q, 1e-8)),
                QuatOrInf::Inf => panic!("graph points lie over finite bases"),
            }
            done += 1;
        }
    }

    fn hyperplane_abs_delta(v: &HyperplaneDual) -> f64 {
        crate::symmetry::hyperplane_delta(v).abs()
    }

    #[test]
    fn graph_section_inverts_projection() {
        // the §-diffeomorphism at sample scale: q ↦ graph point ↦ q
        let v = plane([0.7, 0.0, 0.3, 0.0]);
        let mut rng = seeded_rng(67);
        for _ in 0..1000 {
            let q = unit_quat(&mut rng);
            let p = section_graph_point(&v, &q, &tol()).unwrap();
            match project_quat(&p, &tol()) {
                QuatOrInf::Finite(qp) => assert!(qp.approx_eq(&q, 1e-9)),
                QuatOrInf::Inf => panic!("finite base expected"),
            }
        }
    }

    #[test]
    fn tangent_leaf_examples() {
        let v = plane([1.0, 0.0, -1.0, 0.0]);
        // ϑ = 0: the line through [1:0:1:0] and [0:1:0:1] (= the fibre)
        let leaf = tangent_leaf(&v, 0.0, &tol()).unwrap();
        assert!(line_contains(
            &leaf,
            &ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap(),
            &tol()
        ));
        assert!(line_contains(
            &leaf,
            &ProjPoint::from_re([0.0, 1.0, 0.0, 1.0], &tol()).unwrap(),
            &tol()
        ));
        // ϑ = π: through [1:0:1:0] and [0:1:0:−1]
        let leaf = tangent_leaf(&v, PI, &tol()).unwrap();
        assert!(line_contains(
            &leaf,
            &ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap(),
            &tol()
        ));
        assert!(line_contains(
            &leaf,
            &ProjPoint::from_re([0.0, 1.0, 0.0, -1.0], &tol()).unwrap(),
            &tol()
        ));
        // smooth planes are rejected
        assert_eq!(
            tangent_leaf(&plane([1.0, 0.0, 0.0, 0.0]), 0.0, &tol()),
            Err(SectionError::NotTangent)
        );
    }

    #[test]
    fn leaves_are_lines_in_section_through_singular_point() {
        let mut rng = seeded_rng(71);
        let mut done = 0;
        while done < 20 {
            // random tangent plane: v = (x̄, ȳ with matched norms, sign flip)
            let x = [
                crate::sample::gaussian_c64(&mut rng),
                crate::sample::gaussian_c64(&mut rng),
            ];
            let y = [
                crate::sample::gaussian_c64(&mut rng),
                crate::sample::gaussian_c64(&mut rng),
            ];
            let nx = (x[0].norm_sqr() + x[1].norm_sqr()).sqrt();
            let ny = (y[0].norm_sqr() + y[1].norm_sqr()).sqrt();
            if nx < 1e-3 || ny < 1e-3 {
                continue;
            }
            // n = (x/nx, y/ny) has h(n, n) = 0; v with n_v = n is
            // (conj of upper, −conj of lower)
            let v = HyperplaneDual::new([
                (x[0] / nx).conj(),
                (x[1] / nx).conj(),
                -(y[0] / ny).conj(),
                -(y[1] / ny).conj(),
            ])
            .unwrap();
            let SectionKind::TangentLeviFlat { singular_point } = section_kind(&v, &tol())
            else {
                panic!("constructed plane must be tangent");
            };
            let theta = 2.0 * PI * rand::Rng::random::<f64>(&mut rng);
            let leaf = tangent_leaf(&v, theta, &tol()).unwrap();
            assert!(line_contains(&leaf, &singular_point, &Tolerance::with_eq_abs(1e-7)));
            for p in leaf.sample_points(10, 100 + done, &tol()) {
                assert!(q22_residual(&p).abs() < 1e-8);
                assert!(v.pair(p.rep()).norm() < 1e-7);
            }
            done += 1;
        }
    }

    #[test]
    fn leaf_union_covers_section() {
        // every point of the canonical tangent section lies on the leaf of
        // its phase; route a few random section points through the witness
        let v = plane([1.0, 0.0, -1.0, 0.0]);
        let (_, w) = classify_hyperplane(&v, &tol());
        let mut rng = seeded_rng(73);
        for k in 0..50 {
            let zeta = [
                crate::sample::gaussian_c64(&mut rng),
                crate::sample::gaussian_c64(&mut rng),
            ];
            if zeta[1].norm() < 1e-3 {
                continue;
            }
            let theta = 2.0 * PI * rand::Rng::random::<f64>(&mut rng);
            let vecp = leaf_point_vec(&w, theta, &zeta);
            let p = ProjPoint::new(vecp, &tol()).unwrap();
            assert!(v.contains(&p, &tol()));
            assert!(in_q22(&p, &tol()));
            let leaf = tangent_leaf(&v, theta, &tol()).unwrap();
            assert!(line_contains(&leaf, &p, &Tolerance::with_eq_abs(1e-7)));
            let _ = k;
        }
    }

    #[test]
    fn j_conjugate_graph_points_swap_planes() {
        // j maps the graph point of Π_v over q to a point of Π_{v∘J}; for the
        // self-paired plane (0,0,1,0) representing Π₋ the section is not
        // j-invariant pointwise, but stays inside Q^{2,2}
        let v = plane([0.0, 0.0, 1.0, 0.0]);
        let mut rng = seeded_rng(79);
        for _ in 0..50 {
            let q = unit_quat(&mut rng);
            let p = section_graph_point(&v, &q, &tol()).unwrap();
            assert!(in_q22(&apply_j(&p, &tol()), &tol()));
        }
    }
}
