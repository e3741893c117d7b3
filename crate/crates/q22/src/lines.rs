//! The U(2) line calculus on Q^{2,2}.
//!
//! Projective lines contained in Q^{2,2} are exactly the graphs
//! ℓ_A = {[z : Az]} for unique A ∈ U(2). Writing A = e^{iθ}U with U ∈ SU(2),
//! the line is a twistor fibre iff θ = 0 (A ∈ SU(2)); otherwise it projects
//! to the round 2-sphere Σ_A = U·C_θ in SU(2) ≅ S³, where
//! C_θ = {tr y = 2cosθ}. Two lines meet iff det(A − B) = 0 iff
//! tr(V⁻¹U) = 2cos(θ − φ), which reads downstairs as oriented sphere
//! tangency.

use crate::matrix::{cis, C64, Mat2, Vec2C, ONE};
use crate::projective::ProjPoint;
use crate::quat::{su2_to_quat, Quat};
use crate::sample::{gaussian_c64, seeded_rng};
use crate::tolerance::Tolerance;
use crate::unitary::{haar_unitary_from, unitary_phase_split, UnitaryGroup};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LineError {
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("incidence criteria disagree (det route {det:.3e}, trace route {trace:.3e}); tolerance miscalibration")]
    CriteriaDisagree { det: f64, trace: f64 },
    #[error("operation requires non-fibre lines, got a twistor fibre")]
    FibreInput,
    #[error("matrix is not in SU(2)")]
    NotSu2,
    #[error("need at least two projectively distinct points with independent (z0, z1) parts")]
    DegenerateConfiguration,
    #[error("points do not lie on a common graph line (residual {0:.3e})")]
    NotOnCommonLine(f64),
    #[error("point is not on Q^{{2,2}} (residual {0:.3e})")]
    NotOnQ22(f64),
}

/// A projective line ℓ_A ⊂ Q^{2,2}, stored by its unitary graph matrix
/// together with the phase split A = e^{iθ}U.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineU2 {
    a: Mat2,
    theta: f64,
    u: Mat2,
}

impl LineU2 {
    pub fn matrix(&self) -> &Mat2 {
        &self.a
    }

    /// Phase θ ∈ [0, π) of the split A = e^{iθ}U.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// SU(2) part of the split.
    pub fn su2_part(&self) -> &Mat2 {
        &self.u
    }

    /// Representative vector [z : Az] for a parameter z ∈ ℂ².
    pub fn point_vec(&self, z: &Vec2C) -> [C64; 4] {
        let w = self.a.mul_vec(z);
        [z[0], z[1], w[0], w[1]]
    }

    pub fn point(&self, z: &Vec2C, tol: &Tolerance) -> ProjPoint {
        ProjPoint::new(self.point_vec(z), tol).expect("nonzero parameter")
    }

    /// Deterministic point samples along the line.
    pub fn sample_points(&self, count: usize, seed: u64, tol: &Tolerance) -> Vec<ProjPoint> {
        let mut rng = seeded_rng(seed);
        (0..count)
            .map(|_| loop {
                let z = [gaussian_c64(&mut rng), gaussian_c64(&mut rng)];
                if z[0].norm() + z[1].norm() > 1e-6 {
                    return self.point(&z, tol);
                }
            })
            .collect()
    }
}

/// Either the single base point of a fibre or the round 2-sphere
/// {x ∈ SU(2) : tr(U⁻¹x) = 2cosθ} a transverse line projects to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereOrPoint {
    Point(Mat2),
    Sphere { center: Mat2, radius: f64 },
}

/// The line ℓ_A = {[z : Az]}; rejects non-unitary matrices.
pub fn line_from_unitary(a: &Mat2, tol: &Tolerance) -> Result<LineU2, LineError> {
    let (theta, u) = unitary_phase_split(a, tol).map_err(|_| {
        LineError::NotUnitary(a.unitary_residual())
    })?;
    Ok(LineU2 { a: *a, theta, u })
}

/// Whether p lies on ℓ, i.e. (z₂, z₃) = A(z₀, z₁) up to the global scale
/// already fixed by canonicalization.
pub fn line_contains(l: &LineU2, p: &ProjPoint, tol: &Tolerance) -> bool {
    let z = p.rep();
    let img = l.a.mul_vec(&[z[0], z[1]]);
    let res = ((z[2] - img[0]).norm_sqr() + (z[3] - img[1]).norm_sqr()).sqrt();
    res < tol.eq_abs * 10.0
}

/// Twistor-fibre test: A ∈ SU(2), cross-checked against AJ₀ = J₀Ā.
///
/// For unitary A the two residuals are exactly proportional
/// (‖AJ₀ − J₀Ā‖_F = √2·|det A − 1|), so the criteria can only disagree at
/// floating-point boundary noise; a disagreement signals miscalibration.
pub fn is_fibre(l: &LineU2, tol: &Tolerance) -> Result<bool, LineError> {
    let det_res = (l.a.det() - ONE).norm();
    let j0 = Mat2::j0();
    let comm_res = l.a.mul(&j0).sub(&j0.mul(&l.a.conj())).norm_fro();
    let by_det = det_res < tol.eq_abs;
    let by_comm = comm_res < std::f64::consts::SQRT_2 * tol.eq_abs;
    if by_det != by_comm {
        return Err(LineError::CriteriaDisagree {
            det: det_res,
            trace: comm_res,
        });
    }
    Ok(by_det)
}

/// The j-conjugate line: j(ℓ_{e^{iθ}U}) = ℓ_{e^{−iθ}U}.
pub fn j_line(l: &LineU2, tol: &Tolerance) -> LineU2 {
    let a = l.u.scale(cis(-l.theta));
    line_from_unitary(&a, tol).expect("conjugate of a unitary is unitary")
}

/// The projection of the line to S³: a point for fibres, the sphere
/// Σ_A = U·C_θ of radius θ about U otherwise. Membership in Σ_A is
/// equivalently |det(A − x)| = 0 or tr(U⁻¹x) = 2cosθ.
pub fn line_sphere(l: &LineU2, tol: &Tolerance) -> Result<SphereOrPoint, LineError> {
    if is_fibre(l, tol)? {
        // the SU(2) representative of ±A with det 1 is ±U; both name the
        // same fibre, so return the split's U part
        Ok(SphereOrPoint::Point(l.u))
    } else {
        Ok(SphereOrPoint::Sphere {
            center: l.u,
            radius: l.theta,
        })
    }
}

/// Membership residuals of x ∈ SU(2) in Σ_A, by both routes.
pub fn sphere_membership_residuals(l: &LineU2, x: &Mat2) -> (f64, f64) {
    let det_res = l.a.sub(x).det().norm();
    let trace_res = match l.u.inverse() {
        Some(uinv) => (uinv.mul(x).trace().re - 2.0 * l.theta.cos()).abs(),
        None => f64::INFINITY,
    };
    (det_res, trace_res)
}

pub fn sphere_contains(l: &LineU2, x: &Mat2, tol: &Tolerance) -> Result<bool, LineError> {
    let (det_res, trace_res) = sphere_membership_residuals(l, x);
    let by_det = det_res < tol.disc_zero;
    let by_trace = trace_res < tol.disc_zero;
    if by_det != by_trace {
        return Err(LineError::CriteriaDisagree {
            det: det_res,
            trace: trace_res,
        });
    }
    Ok(by_det)
}

/// Incidence of two lines: det(A − B) = 0, cross-checked against the trace
/// criterion tr(V⁻¹U) = 2cos(θ − φ). The two quantities agree exactly in
/// magnitude, so the thresholds are shared.
pub fn lines_meet(l1: &LineU2, l2: &LineU2, tol: &Tolerance) -> Result<bool, LineError> {
    let det_res = l1.a.sub(&l2.a).det().norm();
    let trace_res = match l2.u.inverse() {
        Some(vinv) => {
            (vinv.mul(&l1.u).trace().re - 2.0 * (l1.theta - l2.theta).cos()).abs()
        }
        None => f64::INFINITY,
    };
    let by_det = det_res < tol.disc_zero;
    let by_trace = trace_res < tol.disc_zero;
    if by_det != by_trace {
        return Err(LineError::CriteriaDisagree {
            det: det_res,
            trace: trace_res,
        });
    }
    Ok(by_det)
}

/// Oriented tangency type of the spheres Σ_{l1}, Σ_{l2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangencyRelation {
    /// l1 meets l2: spheres tangent with compatible orientation.
    Compatible,
    /// l1 meets j(l2): spheres tangent with opposite orientation.
    Opposite,
    Both,
    None,
}

pub fn tangency_relation(
    l1: &LineU2,
    l2: &LineU2,
    tol: &Tolerance,
) -> Result<TangencyRelation, LineError> {
    if is_fibre(l1, tol)? || is_fibre(l2, tol)? {
        return Err(LineError::FibreInput);
    }
    let compatible = lines_meet(l1, l2, tol)?;
    let opposite = lines_meet(l1, &j_line(l2, tol), tol)?;
    Ok(match (compatible, opposite) {
        (true, true) => TangencyRelation::Both,
        (true, false) => TangencyRelation::Compatible,
        (false, true) => TangencyRelation::Opposite,
        (false, false) => TangencyRelation::None,
    })
}

/// Base point of the fibre ℓ_x, as a unit quaternion: the twistor projection
/// of any point of the graph line of x ∈ SU(2).
pub fn fibre_basepoint(x: &Mat2, tol: &Tolerance) -> Result<Quat, LineError> {
    su2_to_quat(x, tol).map_err(|_| LineError::NotSu2)
}

/// Recover the graph matrix from ≥ 2 points of a common line in Q^{2,2}.
///
/// Solves A from the two best-conditioned points (largest |det| of the
/// (z₀, z₁) pair matrix), verifies the remaining points, and certifies
/// unitarity within 10·eq_abs — failure of that certificate signals the
/// inputs do not lie on a common line inside Q^{2,2}.
pub fn recover_line(points: &[ProjPoint], tol: &Tolerance) -> Result<LineU2, LineError> {
    if points.len() < 2 {
        return Err(LineError::DegenerateConfiguration);
    }
    for p in points {
        let r = crate::projective::q22_residual(p);
        if r.abs() >= tol.eq_abs * 10.0 {
            return Err(LineError::NotOnQ22(r));
        }
    }
    // pick the pair with the best-conditioned parameter matrix
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let zi = points[i].rep();
            let zj = points[j].rep();
            let m = Mat2::new([[zi[0], zj[0]], [zi[1], zj[1]]]);
            let d = m.det().norm();
            if best.map_or(true, |(_, _, bd)| d > bd) {
                best = Some((i, j, d));
            }
        }
    }
    let (i, j, d) = best.unwrap();
    if d < tol.eq_abs {
        return Err(LineError::DegenerateConfiguration);
    }
    let zi = points[i].rep();
    let zj = points[j].rep();
    let z = Mat2::new([[zi[0], zj[0]], [zi[1], zj[1]]]);
    let w = Mat2::new([[zi[2], zj[2]], [zi[3], zj[3]]]);
    let a = w.mul(&z.inverse().expect("conditioned above tolerance"));
    // verify the solution on all inputs
    for p in points {
        let zp = p.rep();
        let img = a.mul_vec(&[zp[0], zp[1]]);
        let res = ((zp[2] - img[0]).norm_sqr() + (zp[3] - img[1]).norm_sqr()).sqrt();
        if res >= tol.eq_abs * 100.0 {
            return Err(LineError::NotOnCommonLine(res));
        }
    }
    let ures = a.unitary_residual();
    if ures >= tol.eq_abs * 10.0 {
        return Err(LineError::NotUnitary(ures));
    }
    // the matrix is unitary to certificate precision; split it on a cleaned
    // copy so the stored phase data is consistent
    let (theta, u) = unitary_phase_split(&a, &Tolerance::with_eq_abs(tol.eq_abs * 100.0))
        .map_err(|_| LineError::NotUnitary(ures))?;
    Ok(LineU2 { a, theta, u })
}

/// A point of C_θ = {y ∈ SU(2) : tr y = 2cosθ}, built as V·diag(e^{iθ},
/// e^{−iθ})·V* for Haar V ∈ SU(2) — exact trace by construction.
pub fn sample_c_theta(theta: f64, rng: &mut ChaCha8Rng) -> Mat2 {
    let v = haar_unitary_from(rng, UnitaryGroup::Su2);
    let d = Mat2::diag(cis(theta), cis(-theta));
    v.mul(&d).mul(&v.adjoint())
}

/// A point of Σ_A = U·C_θ for a non-fibre line.
pub fn sample_sphere_point(l: &LineU2, rng: &mut ChaCha8Rng) -> Mat2 {
    l.u.mul(&sample_c_theta(l.theta, rng))
}

/// A pair of lines arranged to meet exactly: the incidence locus has measure
/// zero, so tests sample it by choosing eigenangles so that
/// tr(V⁻¹U) = 2cos(θ − φ) holds by construction.
pub fn constructed_tangent_pair(rng: &mut ChaCha8Rng) -> (LineU2, LineU2) {
    use rand::Rng;
    let tol = Tolerance::default();
    let u = haar_unitary_from(rng, UnitaryGroup::Su2);
    let theta = std::f64::consts::PI * rng.random::<f64>();
    let phi = std::f64::consts::PI * rng.random::<f64>();
    let r = haar_unitary_from(rng, UnitaryGroup::Su2);
    let w = r
        .mul(&Mat2::diag(cis(theta - phi), cis(-(theta - phi))))
        .mul(&r.adjoint());
    let v = u.mul(&w.inverse().expect("SU(2) is invertible"));
    let a = u.scale(cis(theta));
    let b = v.scale(cis(phi));
    (
        line_from_unitary(&a, &tol).unwrap(),
        line_from_unitary(&b, &tol).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{re, I, ZERO};
    use crate::projective::apply_j;
    use crate::quat::quat_to_su2;
    use crate::projective::{in_q22, project_quat, QuatOrInf};
    use crate::unitary::haar_unitary;
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn line(a: Mat2) -> LineU2 {
        line_from_unitary(&a, &tol()).unwrap()
    }

    fn pt(x: [f64; 4]) -> ProjPoint {
        ProjPoint::from_re(x, &tol()).unwrap()
    }

    #[test]
    fn line_from_unitary_examples() {
        let l = line(Mat2::identity());
        assert!(line_contains(&l, &pt([1.0, 0.0, 1.0, 0.0]), &tol()));
        assert!(line_contains(&l, &pt([0.0, 1.0, 0.0, 1.0]), &tol()));

        let l = line(Mat2::identity().scale(I));
        let p = ProjPoint::new([ONE, ZERO, I, ZERO], &tol()).unwrap();
        assert!(line_contains(&l, &p, &tol()));

        assert!(matches!(
            line_from_unitary(&Mat2::diag(re(2.0), ONE), &tol()),
            Err(LineError::NotUnitary(_))
        ));
    }

    #[test]
    fn lines_lie_in_q22() {
        let mut rng = seeded_rng(3);
        for k in 0..50 {
            let l = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            for p in l.sample_points(5, k, &tol()) {
                assert!(in_q22(&p, &tol()));
            }
        }
    }

    #[test]
    fn line_contains_examples() {
        let l = line(Mat2::identity());
        assert!(line_contains(&l, &pt([1.0, 1.0, 1.0, 1.0]), &tol()));
        assert!(!line_contains(&l, &pt([1.0, 0.0, 0.0, 1.0]), &tol()));
        let l = line(Mat2::identity().scale(I));
        let p = ProjPoint::new([ZERO, ONE, ZERO, I], &tol()).unwrap();
        assert!(line_contains(&l, &p, &tol()));
    }

    #[test]
    fn fibre_detection() {
        assert!(is_fibre(&line(Mat2::identity()), &tol()).unwrap());
        assert!(is_fibre(&line(Mat2::identity().scale(-ONE)), &tol()).unwrap());
        assert!(!is_fibre(&line(Mat2::identity().scale(I)), &tol()).unwrap());
    }

    #[test]
    fn j_line_examples() {
        let l = line(Mat2::identity());
        let jl = j_line(&l, &tol());
        assert!(jl.matrix().sub(l.matrix()).norm_max() < 1e-15);

        let l = line(Mat2::identity().scale(cis(PI / 3.0)));
        let jl = j_line(&l, &tol());
        let expect = Mat2::identity().scale(cis(-PI / 3.0));
        assert!(jl.matrix().sub(&expect).norm_max() < 1e-14);

        // pointwise: j of sampled points of ℓ_A lies on j(ℓ_A)
        let mut rng = seeded_rng(5);
        for k in 0..20 {
            let l = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            let jl = j_line(&l, &tol());
            for p in l.sample_points(5, 100 + k, &tol()) {
                assert!(line_contains(&jl, &apply_j(&p, &tol()), &tol()));
            }
        }
    }

    #[test]
    fn j_line_is_involutive() {
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let l = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            let jjl = j_line(&j_line(&l, &tol()), &tol());
            assert!(jjl.matrix().sub(l.matrix()).norm_max() < 1e-12);
        }
    }

    #[test]
    fn fibre_iff_j_invariant() {
        let mut rng = seeded_rng(9);
        for _ in 0..1000 {
            let l = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            let jl = j_line(&l, &tol());
            let invariant = jl.matrix().sub(l.matrix()).norm_max() < tol().eq_abs;
            assert_eq!(is_fibre(&l, &tol()).unwrap(), invariant);
        }
    }

    #[test]
    fn line_sphere_examples() {
        match line_sphere(&line(Mat2::identity()), &tol()).unwrap() {
            SphereOrPoint::Point(x) => {
                assert!(x.sub(&Mat2::identity()).norm_max() < 1e-15)
            }
            _ => panic!("fibre must project to a point"),
        }

        // ℓ_{iI} projects to the equatorial sphere {tr x = 0}
        match line_sphere(&line(Mat2::identity().scale(I)), &tol()).unwrap() {
            SphereOrPoint::Sphere { center, radius } => {
                assert!(center.sub(&Mat2::identity()).norm_max() < 1e-14);
                assert!((radius - PI / 2.0).abs() < 1e-14);
            }
            _ => panic!("transverse line must project to a sphere"),
        }

        // ℓ_{e^{iθ}I} projects to C_θ = {tr x = 2cosθ}
        let theta = 0.83;
        let l = line(Mat2::identity().scale(cis(theta)));
        let mut rng = seeded_rng(11);
        for _ in 0..50 {
            let y = sample_c_theta(theta, &mut rng);
            assert!((y.trace().re - 2.0 * theta.cos()).abs() < 1e-12);
            assert!(sphere_contains(&l, &y, &tol()).unwrap());
        }
    }

    #[test]
    fn sphere_solutions_project_to_line_basepoints(){
        // points of Σ_A correspond to fibres meeting ℓ_A: the kernel point of
        // A − x lies on both lines, and its projection is the basepoint of x
        let mut rng = seeded_rng(13);
        for _ in 0..50 {
            let a = haar_unitary_from(&mut rng, UnitaryGroup::U2);
            let l = line(a);
            if is_fibre(&l, &tol()).unwrap() {
                continue;
            }
            let x = sample_sphere_point(&l, &mut rng);
            assert!(sphere_contains(&l, &x, &tol()).unwrap());
            let z = l.a.sub(&x).kernel_vector();
            let p = l.point(&z, &tol());
            let q = fibre_basepoint(&x, &Tolerance::with_eq_abs(1e-7)).unwrap();
            match project_quat(&p, &tol()) {
                QuatOrInf::Finite(qp) => assert!(qp.approx_eq(&q, 1e-7)),
                QuatOrInf::Inf => panic!("graph-line points have (z0, z1) ≠ 0"),
            }
        }
    }

    #[test]
    fn lines_meet_examples() {
        // paper compatible-tangency pair
        let a = line(Mat2::identity().scale(cis(PI / 3.0)));
        let b = line(Mat2::diag(cis(PI / 6.0), cis(-PI / 6.0)).scale(cis(PI / 6.0)));
        assert!(lines_meet(&a, &b, &tol()).unwrap());

        let l1 = line(Mat2::identity());
        let l2 = line(Mat2::identity().scale(-ONE));
        assert!(!lines_meet(&l1, &l2, &tol()).unwrap());

        assert!(lines_meet(&a, &a, &tol()).unwrap());
    }

    #[test]
    fn tangency_examples() {
        // (iii): compatible
        let a = line(Mat2::identity().scale(cis(PI / 3.0)));
        let b = line(Mat2::diag(cis(PI / 6.0), cis(-PI / 6.0)).scale(cis(PI / 6.0)));
        assert_eq!(
            tangency_relation(&a, &b, &tol()).unwrap(),
            TangencyRelation::Compatible
        );

        // (iv): opposite
        let a = line(Mat2::identity().scale(cis(PI / 4.0)));
        let b = line(Mat2::diag(I, -I).scale(cis(PI / 4.0)));
        assert_eq!(
            tangency_relation(&a, &b, &tol()).unwrap(),
            TangencyRelation::Opposite
        );

        // no tangency: tr(I) = 2 vs 2cos(π/4), 2cos(3π/4)
        let a = line(Mat2::identity().scale(cis(PI / 2.0)));
        let b = line(Mat2::identity().scale(cis(PI / 4.0)));
        assert_eq!(
            tangency_relation(&a, &b, &tol()).unwrap(),
            TangencyRelation::None
        );

        // fibres are rejected
        let f = line(Mat2::identity());
        assert_eq!(
            tangency_relation(&f, &b, &tol()),
            Err(LineError::FibreInput)
        );
    }

    #[test]
    fn fibre_basepoint_examples() {
        let q = fibre_basepoint(&Mat2::identity(), &tol()).unwrap();
        assert!(q.approx_eq(&Quat::one(), 1e-15));

        // x = diag(i, −i) ↦ project_quat([1:0:i:0]) = i
        let q = fibre_basepoint(&Mat2::diag(I, -I), &tol()).unwrap();
        assert!(q.approx_eq(&Quat::from_complex(I), 1e-15));

        // all points of ℓ_x project to the same base
        let mut rng = seeded_rng(17);
        for k in 0..100 {
            let x = haar_unitary_from(&mut rng, UnitaryGroup::Su2);
            let q = fibre_basepoint(&x, &tol()).unwrap();
            assert!((q.norm() - 1.0).abs() < 1e-9);
            let l = line(x);
            for p in l.sample_points(5, 31 + k, &tol()) {
                match project_quat(&p, &tol()) {
                    QuatOrInf::Finite(qp) => assert!(qp.approx_eq(&q, 1e-8)),
                    QuatOrInf::Inf => panic!("graph-line points are finite"),
                }
            }
        }
        // consistency with the quaternion bridge
        let x = haar_unitary(99, UnitaryGroup::Su2);
        let direct = quat_to_su2(&fibre_basepoint(&x, &tol()).unwrap());
        assert!(direct.sub(&x).norm_max() < 1e-12);
    }

    #[test]
    fn recover_line_examples() {
        let pts = [
            pt([1.0, 0.0, 1.0, 0.0]),
            pt([0.0, 1.0, 0.0, 1.0]),
            pt([1.0, 1.0, 1.0, 1.0]),
        ];
        let l = recover_line(&pts, &tol()).unwrap();
        assert!(l.matrix().sub(&Mat2::identity()).norm_max() < 1e-12);

        // A = diag(1, −1) is unitary with det −1: accepted, not a fibre
        let pts = [pt([1.0, 0.0, 1.0, 0.0]), pt([0.0, 1.0, 0.0, -1.0])];
        let l = recover_line(&pts, &tol()).unwrap();
        assert!(l.matrix().sub(&Mat2::diag(ONE, -ONE)).norm_max() < 1e-12);
        assert!(!is_fibre(&l, &tol()).unwrap());
    }

    #[test]
    fn recover_line_roundtrip() {
        let mut rng = seeded_rng(19);
        for k in 0..200 {
            let a = haar_unitary_from(&mut rng, UnitaryGroup::U2);
            let l = line(a);
            let pts = l.sample_points(5, 1000 + k, &tol());
            let rec = recover_line(&pts, &tol()).unwrap();
            assert!(rec.matrix().sub(&a).norm_max() < 1e-8);
        }
    }

    #[test]
    fn recover_line_error_paths() {
        // single point
        assert_eq!(
            recover_line(&[pt([1.0, 0.0, 1.0, 0.0])], &tol()),
            Err(LineError::DegenerateConfiguration)
        );
        // dependent (z0, z1) parts: two points of the same fibre direction
        let p1 = pt([1.0, 0.0, 1.0, 0.0]);
        let p2 = ProjPoint::new([I, ZERO, I, ZERO], &tol()).unwrap();
        assert!(matches!(
            recover_line(&[p1, p2], &tol()),
            Err(LineError::DegenerateConfiguration)
        ));
        // off Q^{2,2}
        let bad = pt([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            recover_line(&[p1, bad], &tol()),
            Err(LineError::NotOnQ22(_))
        ));
        // on Q^{2,2} but not on a common line: three points from two lines
        let l1 = line(Mat2::identity());
        let l2 = line(Mat2::identity().scale(I));
        let pts = [
            l1.point(&[ONE, ZERO], &tol()),
            l1.point(&[ZERO, ONE], &tol()),
            l2.point(&[ONE, re(2.0)], &tol()),
        ];
        assert!(matches!(
            recover_line(&pts, &tol()),
            Err(LineError::NotOnCommonLine(_))
        ));
    }

    #[test]
    fn distinct_matrices_give_distinct_lines() {
        let mut rng = seeded_rng(23);
        for k in 0..100 {
            let a = haar_unitary_from(&mut rng, UnitaryGroup::U2);
            let b = haar_unitary_from(&mut rng, UnitaryGroup::U2);
            if a.sub(&b).norm_max() < 1e-6 {
                continue;
            }
            let la = line(a);
            let lb = line(b);
            let disagree = la
                .sample_points(5, 2000 + k, &tol())
                .iter()
                .any(|p| !line_contains(&lb, p, &tol()));
            assert!(disagree);
        }
    }

    #[test]
    fn incidence_criteria_equivalence() {
        let mut rng = seeded_rng(29);
        // random pairs (almost never meet) — both criteria must agree
        for _ in 0..1000 {
            let l1 = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            let l2 = line(haar_unitary_from(&mut rng, UnitaryGroup::U2));
            assert!(lines_meet(&l1, &l2, &tol()).is_ok());
        }
        // constructed tangent pairs: arrange tr(V⁻¹U) = 2cos(θ−φ) exactly
        for _ in 0..1000 {
            let (l1, l2) = constructed_tangent_pair(&mut rng);
            assert!(lines_meet(&l1, &l2, &tol()).unwrap());
        }
    }
}
