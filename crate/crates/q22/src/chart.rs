//! Affine charts of Q^{2,2}: defining functions ρ₀/ρ₃, the contact form, CR
//! frames, and the Levi matrix with its determinant law det = −1/(4|u₃|²)
//! and split signature (1, 1).
//!
//! On U₀ = {z₀ ≠ 0} the coordinates are (u₁, u₂, u₃) = (z₁/z₀, z₂/z₀, z₃/z₀)
//! and ρ₀ = 1 + |u₁|² − |u₂|² − |u₃|²; on U₃ = {z₃ ≠ 0} they are
//! (w₀, w₁, w₂) = (z₀/z₃, z₁/z₃, z₂/z₃) and ρ₃ = |w₀|² + |w₁|² − |w₂|² − 1.

use crate::matrix::{C64, Mat2};
use crate::projective::ProjPoint;
use crate::sample::{gaussian, gaussian_c64};
use crate::tolerance::Tolerance;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChartError {
    #[error("chart {0:?} undefined: the dividing homogeneous coordinate vanishes")]
    ChartUndefined(Chart),
    #[error("point is not on the hypersurface (ρ = {0:.3e})")]
    NotOnHypersurface(f64),
    #[error("vector is not tangent to the hypersurface (dρ = {0:.3e})")]
    NotTangent(f64),
    #[error("CR frame undefined: {0} vanishes at this point")]
    FrameUndefined(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    U0,
    U3,
}

/// A point of an affine chart of CP³ (usually on Q^{2,2}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: [C64; 3],
}

impl ChartPoint {
    pub fn new(chart: Chart, coords: [C64; 3]) -> Self {
        ChartPoint { chart, coords }
    }
}

/// Chart coordinates of a projective point.
pub fn to_chart(p: &ProjPoint, chart: Chart, tol: &Tolerance) -> Result<ChartPoint, ChartError> {
    let z = p.rep();
    match chart {
        Chart::U0 => {
            if z[0].norm() <= tol.eq_abs {
                return Err(ChartError::ChartUndefined(chart));
            }
            Ok(ChartPoint::new(chart, [z[1] / z[0], z[2] / z[0], z[3] / z[0]]))
        }
        Chart::U3 => {
            if z[3].norm() <= tol.eq_abs {
                return Err(ChartError::ChartUndefined(chart));
            }
            Ok(ChartPoint::new(chart, [z[0] / z[3], z[1] / z[3], z[2] / z[3]]))
        }
    }
}

/// Homogeneous point represented by a chart point.
pub fn from_chart(cp: &ChartPoint, tol: &Tolerance) -> ProjPoint {
    let c = &cp.coords;
    let one = C64::new(1.0, 0.0);
    let z = match cp.chart {
        Chart::U0 => [one, c[0], c[1], c[2]],
        Chart::U3 => [c[0], c[1], c[2], one],
    };
    ProjPoint::new(z, tol).expect("affine chart point is a nonzero vector")
}

/// Defining function of Q^{2,2} in the chart.
pub fn rho(cp: &ChartPoint) -> f64 {
    let c = &cp.coords;
    match cp.chart {
        Chart::U0 => 1.0 + c[0].norm_sqr() - c[1].norm_sqr() - c[2].norm_sqr(),
        Chart::U3 => c[0].norm_sqr() + c[1].norm_sqr() - c[2].norm_sqr() - 1.0,
    }
}

/// ∂ρ as a complex 3-covector: ∂ρ/∂(coords). On U₀ this is (ū₁, −ū₂, −ū₃),
/// on U₃ it is (w̄₀, w̄₁, −w̄₂).
pub fn rho_holomorphic_gradient(cp: &ChartPoint) -> [C64; 3] {
    let c = &cp.coords;
    match cp.chart {
        Chart::U0 => [c[0].conj(), -c[1].conj(), -c[2].conj()],
        Chart::U3 => [c[0].conj(), c[1].conj(), -c[2].conj()],
    }
}

/// Evaluate the contact form θ = (i/2)(∂ρ − ∂̄ρ) on a real tangent vector.
///
/// The tangent vector is passed as the complex variation v with du_k(X) = v_k;
/// tangency to {ρ = 0} means 2·Re(∂ρ·v) = 0, and then
/// θ(X) = −Im(∂ρ·v). The kernel of θ on TQ^{2,2} is the CR distribution.
pub fn contact_eval(cp: &ChartPoint, tangent: &[C64; 3], tol: &Tolerance) -> Result<f64, ChartError> {
    let r = rho(cp);
    if r.abs() >= tol.eq_abs {
        return Err(ChartError::NotOnHypersurface(r));
    }
    let grad = rho_holomorphic_gradient(cp);
    let s: C64 = grad
        .iter()
        .zip(tangent)
        .map(|(g, v)| g * v)
        .sum();
    let drho = 2.0 * s.re;
    let scale = tangent.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    if drho.abs() >= tol.eq_abs * scale.max(1.0) * 10.0 {
        return Err(ChartError::NotTangent(drho));
    }
    Ok(-s.im)
}

/// A Levi computation at a chart point, in the standard frame of that chart.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviReport {
    pub chart: Chart,
    /// Frame label: {Z₁, Z₂} on U₀ ∩ {u₃ ≠ 0}, {Y₀, Y₁} on U₃ ∩ {w₂ ≠ 0}.
    pub frame: &'static str,
    pub matrix: Mat2,
    pub det: f64,
    /// (positive, negative) eigenvalue counts.
    pub signature: (usize, usize),
}

/// Levi matrix of Q^{2,2} at a chart point.
///
/// On U₀ in the frame {Z₁, Z₂}:
/// (1/(2|u₃|²))·[[|u₃|²−|u₁|², u₂ū₁], [u₁ū₂, −(|u₃|²+|u₂|²)]];
/// on U₃ in the frame {Y₀, Y₁}:
/// (1/(2|w₂|²))·[[|w₂|²−|w₀|², −w₁w̄₀], [−w̄₁w₀, |w₂|²−|w₁|²]].
/// On Q^{2,2} the determinant is −1/(4|u₃|²) (resp. −1/(4|w₂|²)) and the
/// signature is (1, 1).
pub fn levi_report(cp: &ChartPoint, tol: &Tolerance) -> Result<LeviReport, ChartError> {
    let r = rho(cp);
    if r.abs() >= tol.eq_abs {
        return Err(ChartError::NotOnHypersurface(r));
    }
    let c = &cp.coords;
    let (frame, matrix) = match cp.chart {
        Chart::U0 => {
            let u3 = c[2];
            if u3.norm() <= tol.eq_abs {
                return Err(ChartError::FrameUndefined("u3"));
            }
            let f = 1.0 / (2.0 * u3.norm_sqr());
            let m = Mat2::new([
                [
                    C64::new(u3.norm_sqr() - c[0].norm_sqr(), 0.0),
                    c[1] * c[0].conj(),
                ],
                [
                    c[0] * c[1].conj(),
                    C64::new(-(u3.norm_sqr() + c[1].norm_sqr()), 0.0),
                ],
            ])
            .scale(C64::new(f, 0.0));
            ("Z12", m)
        }
        Chart::U3 => {
            let w2 = c[2];
            if w2.norm() <= tol.eq_abs {
                return Err(ChartError::FrameUndefined("w2"));
            }
            let f = 1.0 / (2.0 * w2.norm_sqr());
            let m = Mat2::new([
                [
                    C64::new(w2.norm_sqr() - c[0].norm_sqr(), 0.0),
                    -c[1] * c[0].conj(),
                ],
                [
                    -c[1].conj() * c[0],
                    C64::new(w2.norm_sqr() - c[1].norm_sqr(), 0.0),
                ],
            ])
            .scale(C64::new(f, 0.0));
            ("Y01", m)
        }
    };
    let det = matrix.det().re;
    let trace = matrix.trace().re;
    Ok(LeviReport {
        chart: cp.chart,
        frame,
        matrix,
        det,
        signature: hermitian2_signature(trace, det, tol.eq_abs),
    })
}

/// Signature of a Hermitian 2×2 matrix from its (real) trace and determinant,
/// via the closed-form eigenvalues (t ± √(t² − 4d))/2.
fn hermitian2_signature(trace: f64, det: f64, eq_abs: f64) -> (usize, usize) {
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let l1 = 0.5 * (trace + disc);
    let l2 = 0.5 * (trace - disc);
    let mut pos = 0;
    let mut neg = 0;
    for l in [l1, l2] {
        if l > eq_abs {
            pos += 1;
        } else if l < -eq_abs {
            neg += 1;
        }
    }
    (pos, neg)
}

/// The generating antiholomorphic fields of T^{0,1}Q^{2,2} in a chart,
/// returned as coefficient 3-vectors in the ∂/∂(conj coords) basis. On U₀:
/// M̄₁₂ = (u₂, u₁, 0), M̄₁₃ = (u₃, 0, u₁), M̄₂₃ = (0, u₃, −u₂); on U₃:
/// L̄₀₁ = (w₁, −w₀, 0), L̄₀₂ = (w₂, 0, w₀), L̄₁₂ = (0, w₂, w₁).
pub fn generating_fields(cp: &ChartPoint) -> [[C64; 3]; 3] {
    let c = &cp.coords;
    let zero = C64::new(0.0, 0.0);
    match cp.chart {
        Chart::U0 => [
            [c[1], c[0], zero],
            [c[2], zero, c[0]],
            [zero, c[2], -c[1]],
        ],
        Chart::U3 => [
            [c[1], -c[0], zero],
            [c[2], zero, c[0]],
            [zero, c[2], c[1]],
        ],
    }
}

/// Pairing of an antiholomorphic field (coefficients of ∂/∂(conj coords))
/// with ρ, i.e. Σ c_k ∂ρ/∂(conj coord k).
pub fn field_applied_to_rho(cp: &ChartPoint, field: &[C64; 3]) -> C64 {
    // ∂ρ/∂ū_k is the conjugate of ∂ρ/∂u_k for real-valued ρ
    let grad = rho_holomorphic_gradient(cp);
    field
        .iter()
        .zip(&grad)
        .map(|(c, g)| c * g.conj())
        .sum()
}

/// Deterministic sample of a Q^{2,2} point in a chart, solving ρ = 0 for the
/// last coordinate: draw the first two coordinates complex Gaussian, reject
/// negative radicands, and give the solved coordinate a random phase. The
/// returned points satisfy the frame-validity margin |last| ≥ margin.
pub fn sample_chart_point(
    chart: Chart,
    rng: &mut ChaCha8Rng,
    margin: f64,
) -> ChartPoint {
    loop {
        let a = gaussian_c64(rng);
        let b = gaussian_c64(rng);
        let rad = match chart {
            Chart::U0 => 1.0 + a.norm_sqr() - b.norm_sqr(),
            Chart::U3 => a.norm_sqr() + b.norm_sqr() - 1.0,
        };
        if rad <= margin * margin {
            continue;
        }
        let phase = C64::from_polar(1.0, std::f64::consts::PI * gaussian(rng));
        let last = phase * rad.sqrt();
        return ChartPoint::new(chart, [a, b, last]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{re, I, ONE, ZERO};
    use crate::sample::seeded_rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn to_chart_examples() {
        let p = ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap();
        let cp = to_chart(&p, Chart::U0, &tol()).unwrap();
        assert!((cp.coords[0] - ZERO).norm() < 1e-15);
        assert!((cp.coords[1] - ONE).norm() < 1e-15);
        assert!((cp.coords[2] - ZERO).norm() < 1e-15);

        let p = ProjPoint::from_re([0.0, 0.0, 1.0, 0.0], &tol()).unwrap();
        assert_eq!(
            to_chart(&p, Chart::U0, &tol()),
            Err(ChartError::ChartUndefined(Chart::U0))
        );

        let s3 = 3f64.sqrt();
        let p = ProjPoint::from_re([1.0, 1.0, 1.0, s3], &tol()).unwrap();
        let cp = to_chart(&p, Chart::U3, &tol()).unwrap();
        for k in 0..3 {
            assert!((cp.coords[k] - re(1.0 / s3)).norm() < 1e-12);
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&ChartPoint::new(Chart::U0, [ZERO, ZERO, ONE])), 0.0);
        assert_eq!(rho(&ChartPoint::new(Chart::U0, [ZERO, ZERO, ZERO])), 1.0);
        assert_eq!(rho(&ChartPoint::new(Chart::U3, [ONE, ONE, ONE])), 0.0);
    }

    #[test]
    fn contact_form_examples() {
        let cp = ChartPoint::new(Chart::U0, [ZERO, ZERO, ONE]);
        // ∂/∂u₁ direction is tangent here (ū₁ = 0) and lies in the kernel
        let v = [ONE, ZERO, ZERO];
        assert!(contact_eval(&cp, &v, &tol()).unwrap().abs() < 1e-15);
        // the direction i·u₃·∂/∂u₃ + conj is the Reeb-like direction: θ = 1
        let v = [ZERO, ZERO, I];
        assert!((contact_eval(&cp, &v, &tol()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn contact_rejects_bad_inputs() {
        let off = ChartPoint::new(Chart::U0, [ZERO, ZERO, ZERO]);
        assert!(matches!(
            contact_eval(&off, &[ONE, ZERO, ZERO], &tol()),
            Err(ChartError::NotOnHypersurface(_))
        ));
        let cp = ChartPoint::new(Chart::U0, [ZERO, ZERO, ONE]);
        // ∂/∂u₃ is not tangent: dρ = −2Re(ū₃·v₃) = −2 ≠ 0
        assert!(matches!(
            contact_eval(&cp, &[ZERO, ZERO, ONE], &tol()),
            Err(ChartError::NotTangent(_))
        ));
    }

    #[test]
    fn contact_vanishes_on_cr_distribution() {
        // vectors in ker θ ∩ ker dρ: spanned over ℝ by the holomorphic frame
        // directions and their i-multiples
        let mut rng = seeded_rng(17);
        for _ in 0..100 {
            let cp = sample_chart_point(Chart::U0, &mut rng, 0.1);
            let u1 = cp.coords[0];
            let u2 = cp.coords[1];
            let u3 = cp.coords[2];
            // Z₁-type direction: (1, 0, ū₁/ū₃ conj-adjusted) — build from the
            // antiholomorphic frame Z̄₁ = ∂ū₁ + (u₁/u₃)∂ū₃ and conjugate:
            // as a variation, v = (1, 0, u₁̄/u₃̄)… the holomorphic frame is
            // Z₁ = ∂u₁ + (ū₁/ū₃)∂u₃.
            for v in [
                [ONE, ZERO, u1.conj() / u3.conj()],
                [I, ZERO, I * (u1.conj() / u3.conj())],
                [ZERO, ONE, -(u2.conj() / u3.conj())],
                [ZERO, I, -(I * (u2.conj() / u3.conj()))],
            ] {
                let theta = contact_eval(&cp, &v, &tol()).unwrap();
                assert!(theta.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn levi_examples() {
        let cp = ChartPoint::new(Chart::U0, [ZERO, ZERO, ONE]);
        let rep = levi_report(&cp, &tol()).unwrap();
        assert!((rep.matrix.m[0][0] - re(0.5)).norm() < 1e-15);
        assert!((rep.matrix.m[1][1] - re(-0.5)).norm() < 1e-15);
        assert!((rep.det + 0.25).abs() < 1e-15);
        assert_eq!(rep.signature, (1, 1));

        // (1, 0, √2) lies on Q: 1 + 1 − 0 − 2 = 0; det = −1/8
        let cp = ChartPoint::new(Chart::U0, [ONE, ZERO, re(2f64.sqrt())]);
        let rep = levi_report(&cp, &tol()).unwrap();
        assert!((rep.det + 0.125).abs() < 1e-15);
        assert_eq!(rep.signature, (1, 1));

        let cp = ChartPoint::new(Chart::U3, [ONE, ONE, ONE]);
        let rep = levi_report(&cp, &tol()).unwrap();
        assert!((rep.det + 0.25).abs() < 1e-15);
        assert_eq!(rep.signature, (1, 1));
    }

    #[test]
    fn levi_matrix_is_hermitian() {
        let mut rng = seeded_rng(19);
        for chart in [Chart::U0, Chart::U3] {
            for _ in 0..100 {
                let cp = sample_chart_point(chart, &mut rng, 0.1);
                let rep = levi_report(&cp, &tol()).unwrap();
                assert!(rep.matrix.sub(&rep.matrix.adjoint()).norm_max() < 1e-12);
            }
        }
    }

    #[test]
    fn levi_determinant_law_both_charts() {
        let mut rng = seeded_rng(29);
        for chart in [Chart::U0, Chart::U3] {
            for _ in 0..1000 {
                let cp = sample_chart_point(chart, &mut rng, 0.1);
                let rep = levi_report(&cp, &tol()).unwrap();
                let want = -1.0 / (4.0 * cp.coords[2].norm_sqr());
                assert!((rep.det - want).abs() <= 1e-8 * want.abs());
                assert_eq!(rep.signature, (1, 1));
            }
        }
    }

    #[test]
    fn frame_relation_and_tangency_of_generators() {
        let mut rng = seeded_rng(43);
        for chart in [Chart::U0, Chart::U3] {
            for _ in 0..1000 {
                let cp = sample_chart_point(chart, &mut rng, 0.0);
                let fields = generating_fields(&cp);
                for f in &fields {
                    assert!(field_applied_to_rho(&cp, f).norm() < 1e-12);
                }
                // U0: u₃·M̄₁₂ − u₂·M̄₁₃ − u₁·M̄₂₃ = 0;
                // U3: w₁·L̄₀₂ − w₀·L̄₁₂ − w₂·L̄₀₁ = 0 — both are the same
                // coefficient identity with the chart's own coordinates.
                let c = &cp.coords;
                let (a, b, d) = match chart {
                    Chart::U0 => (c[2], c[1], c[0]),
                    Chart::U3 => (c[1], c[0], c[2]),
                };
                let combo: [C64; 3] = match chart {
                    Chart::U0 => {
                        let mut r = [ZERO; 3];
                        for k in 0..3 {
                            r[k] = a * fields[0][k] - b * fields[1][k] - d * fields[2][k];
                        }
                        r
                    }
                    Chart::U3 => {
                        let mut r = [ZERO; 3];
                        for k in 0..3 {
                            r[k] = a * fields[1][k] - b * fields[2][k] - d * fields[0][k];
                        }
                        r
                    }
                };
                for e in combo {
                    assert!(e.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn chart_roundtrip() {
        let mut rng = seeded_rng(47);
        for chart in [Chart::U0, Chart::U3] {
            for _ in 0..50 {
                let cp = sample_chart_point(chart, &mut rng, 0.05);
                let p = from_chart(&cp, &tol());
                assert!(crate::projective::in_q22(&p, &tol()));
                let back = to_chart(&p, chart, &tol()).unwrap();
                for k in 0..3 {
                    assert!((back.coords[k] - cp.coords[k]).norm() < 1e-9);
                }
            }
        }
    }
}
