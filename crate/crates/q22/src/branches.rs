//! The two-sheeted section geometry of a quadric over Σ.
//!
//! Over a base point q ∈ Σ away from the branch locus, the fibre meets the
//! quadric in two points, swapped by j. [`section_roots`] computes them with
//! a deterministic labeling; [`sections_over_region`] continues the labels
//! globally over a grid and around loops (Σ is simply connected, so the
//! monodromy must be trivial when the branch locus is empty);
//! [`section_levi_type`] evaluates the ambient Levi form on the complex
//! tangent line T^{1,0}𝒮 ∩ T^{1,0}Q^{2,2} to decide Levi-nondegeneracy of
//! the induced CR structure.

use crate::chart::{to_chart, Chart};
use crate::matrix::{v2_norm, v4_line_distance, C64, Vec2C, ZERO};
use crate::projective::{apply_j, fibre_over, in_q22, ProjPoint, QuatOrInf};
use crate::quadric::{classify_family, family_quadric, restrict_to_fibre, FamilyParams, FibreQuadratic, Position, QuadricSym4};
use crate::quat::Quat;
use crate::sample::{gaussian, seeded_rng};
use crate::tolerance::Tolerance;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BranchError {
    #[error("base point must lie on Σ (|q| = 1)")]
    NotOnSigma,
    #[error("base point lies on the branch locus (fibre discriminant ≈ 0)")]
    OnBranchLocus,
    #[error("fibre is contained in the quadric")]
    FibreContained,
    #[error("continuation failed: roots collide faster than the step adapts")]
    MonodromyDetected,
    #[error("relative position must be disjoint (Γ = ∅), got {0:?}")]
    NotDisjoint(Position),
    #[error("point is not on the quadric ∩ Q^{{2,2}} (residual {0:.3e})")]
    NotOnIntersection(f64),
    #[error("differentials of the two hypersurfaces are dependent at this point")]
    NonTransverse,
    #[error("chart U0 undefined at this point (z0 ≈ 0)")]
    ChartUndefined,
}

// ---------------------------------------------------------------------------
// roots on a single fibre
// ---------------------------------------------------------------------------

/// The two fibre parameters [z₀ : z₁] solving the fibre quadratic, with the
/// numerically stable sign-aware quadratic formula.
fn quadratic_roots(f: &FibreQuadratic, tol: &Tolerance) -> Result<(Vec2C, Vec2C), BranchError> {
    let scale = f.coeff_max();
    if scale < tol.disc_zero {
        return Err(BranchError::OnBranchLocus);
    }
    let disc = f.disc();
    if disc.norm() < tol.disc_zero * scale * scale {
        return Err(BranchError::OnBranchLocus);
    }
    if f.alpha.norm() < 1e-14 * scale {
        // α ≈ 0: F = z₁(2βz₀ + γz₁); roots [1 : 0] and [−γ : 2β]
        let r1 = normalize2([C64::new(1.0, 0.0), ZERO]);
        let r2 = normalize2([-f.gamma, f.beta.scale(2.0)]);
        return Ok((r1, r2));
    }
    let s = disc.sqrt();
    // avoid cancellation in β + s
    let sp = if (f.beta.conj() * s).re >= 0.0 { s } else { -s };
    let u = -(f.beta + sp);
    // roots t = z₀/z₁: t₁ = u/α, t₂ = γ/u (Vieta)
    let r1 = normalize2([u, f.alpha]);
    let r2 = normalize2([f.gamma, u]);
    Ok((r1, r2))
}

fn normalize2(v: Vec2C) -> Vec2C {
    let n = v2_norm(&v);
    [v[0] / n, v[1] / n]
}

/// sin of the P¹ distance between two unit fibre parameters: the norm of
/// a's component orthogonal to b.
fn root_distance(a: &Vec2C, b: &Vec2C) -> f64 {
    let coeff = b[0].conj() * a[0] + b[1].conj() * a[1];
    let mut s2 = 0.0;
    for k in 0..2 {
        s2 += (a[k] - coeff * b[k]).norm_sqr();
    }
    s2.sqrt()
}

/// Both intersection points of the fibre over q with the quadric, labeled
/// deterministically (lexicographically smaller canonical representative
/// first). j swaps the two points.
pub fn section_roots(
    q: &QuadricSym4,
    base: &Quat,
    tol: &Tolerance,
) -> Result<(ProjPoint, ProjPoint), BranchError> {
    if (base.norm() - 1.0).abs() >= tol.eq_abs * 10.0 {
        return Err(BranchError::NotOnSigma);
    }
    let fq = restrict_to_fibre(q, &QuatOrInf::Finite(*base));
    let (r1, r2) = quadratic_roots(&fq, tol)?;
    let fibre = fibre_over(QuatOrInf::Finite(*base));
    let p1 = fibre.point(r1[0], r1[1], tol).expect("unit parameter");
    let p2 = fibre.point(r2[0], r2[1], tol).expect("unit parameter");
    if p1.lex_cmp(&p2) == std::cmp::Ordering::Greater {
        Ok((p2, p1))
    } else {
        Ok((p1, p2))
    }
}

// ---------------------------------------------------------------------------
// continuation over Σ
// ---------------------------------------------------------------------------

fn quat_to_r4(q: &Quat) -> [f64; 4] {
    [q.p0.re, q.p0.im, q.p1.re, q.p1.im]
}

fn r4_to_quat(x: &[f64; 4]) -> Quat {
    Quat::new(C64::new(x[0], x[1]), C64::new(x[2], x[3]))
}

fn slerp(a: &[f64; 4], b: &[f64; 4], t: f64) -> [f64; 4] {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let omega = dot.clamp(-1.0, 1.0).acos();
    if omega.sin() < 1e-9 {
        // nearly parallel: linear blend and renormalize
        let mut r = [0.0; 4];
        for k in 0..4 {
            r[k] = (1.0 - t) * a[k] + t * b[k];
        }
        let n: f64 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-12 {
            // antipodal midpoint is ill-defined; detour through a fixed
            // orthogonal direction
            let mut w = if a[0].abs() < 0.9 {
                [1.0, 0.0, 0.0, 0.0]
            } else {
                [0.0, 1.0, 0.0, 0.0]
            };
            let wa: f64 = w.iter().zip(a).map(|(x, y)| x * y).sum();
            for k in 0..4 {
                w[k] -= wa * a[k];
            }
            let wn: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            for k in 0..4 {
                w[k] /= wn;
            }
            return w;
        }
        for x in &mut r {
            *x /= n;
        }
        return r;
    }
    let sa = ((1.0 - t) * omega).sin() / omega.sin();
    let sb = (t * omega).sin() / omega.sin();
    let mut r = [0.0; 4];
    for k in 0..4 {
        r[k] = sa * a[k] + sb * b[k];
    }
    r
}

/// Continue a root along the geodesic from `from` to `to`, nearest-root
/// matching at each step and adaptively subdividing until the root
/// separation exceeds 3× the step drift.
fn continue_root_segment(
    q: &QuadricSym4,
    from: &Quat,
    root_at_from: &Vec2C,
    to: &Quat,
    tol: &Tolerance,
    depth: usize,
) -> Result<Vec2C, BranchError> {
    let fq = restrict_to_fibre(q, &QuatOrInf::Finite(*to));
    let (r1, r2) = quadratic_roots(&fq, tol)?;
    let d1 = root_distance(&r1, root_at_from);
    let d2 = root_distance(&r2, root_at_from);
    let (near, drift) = if d1 <= d2 { (r1, d1) } else { (r2, d2) };
    let separation = root_distance(&r1, &r2);
    if separation > 3.0 * drift {
        return Ok(near);
    }
    if depth == 0 {
        return Err(BranchError::MonodromyDetected);
    }
    let a = quat_to_r4(from);
    let b = quat_to_r4(to);
    let mid = r4_to_quat(&slerp(&a, &b, 0.5));
    let half = continue_root_segment(q, from, root_at_from, &mid, tol, depth - 1)?;
    continue_root_segment(q, &mid, &half, to, tol, depth - 1)
}

/// Continue a root along a polyline of base points.
fn continue_root_path(
    q: &QuadricSym4,
    path: &[Quat],
    root_at_start: Vec2C,
    tol: &Tolerance,
) -> Result<Vec2C, BranchError> {
    let mut root = root_at_start;
    for w in path.windows(2) {
        root = continue_root_segment(q, &w[0], &root, &w[1], tol, 24)?;
    }
    Ok(root)
}

fn geodesic_path(from: &Quat, to: &Quat, steps: usize) -> Vec<Quat> {
    let a = quat_to_r4(from);
    let b = quat_to_r4(to);
    (0..=steps)
        .map(|k| r4_to_quat(&slerp(&a, &b, k as f64 / steps as f64)))
        .collect()
}

/// Ordered parameters of the (s₊, s₋) roots at the reference point
/// q_ref = 1: s₊ is the lexicographically smaller lifted point.
fn reference_roots(q: &QuadricSym4, tol: &Tolerance) -> Result<(Vec2C, Quat), BranchError> {
    let q_ref = Quat::one();
    let fq = restrict_to_fibre(q, &QuatOrInf::Finite(q_ref));
    let (r1, r2) = quadratic_roots(&fq, tol)?;
    let fibre = fibre_over(QuatOrInf::Finite(q_ref));
    let p1 = fibre.point(r1[0], r1[1], tol).expect("unit parameter");
    let p2 = fibre.point(r2[0], r2[1], tol).expect("unit parameter");
    let plus = if p1.lex_cmp(&p2) == std::cmp::Ordering::Greater {
        r2
    } else {
        r1
    };
    Ok((plus, q_ref))
}

/// Aggregate Levi-type counts over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviSummary {
    pub nondegenerate: usize,
    pub degenerate: usize,
    /// Samples where the chart or transversality precondition failed.
    pub skipped: usize,
    pub min_abs_value: f64,
}

/// Report of a global two-sheeted continuation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionReport {
    pub grid_size: usize,
    pub loops: usize,
    pub max_jswap_residual: f64,
    pub monodromy_failures: usize,
    pub levi: LeviSummary,
}

/// Globally label the two branches of a disjoint-position family quadric
/// over Σ.
///
/// The s₊ label is anchored at q_ref = 1 and propagated by nearest-root
/// continuation along geodesics to `grid` deterministic sample points; the
/// report records the worst j-swap residual, the monodromy defects around
/// `loops` random great circles (necessarily trivial, Σ being simply
/// connected), and the Levi type at each grid sample.
pub fn sections_over_region(
    fp: &FamilyParams,
    grid: usize,
    loops: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<SectionReport, BranchError> {
    let (_, pos) = classify_family(fp, tol);
    if pos.position != Position::Disjoint {
        return Err(BranchError::NotDisjoint(pos.position));
    }
    let q = family_quadric(fp);
    let (plus_ref, q_ref) = reference_roots(&q, tol)?;
    let mut rng = seeded_rng(seed);

    let mut max_jswap = 0.0f64;
    let mut levi = LeviSummary {
        nondegenerate: 0,
        degenerate: 0,
        skipped: 0,
        min_abs_value: f64::INFINITY,
    };

    for _ in 0..grid {
        let target = crate::sample::unit_quat(&mut rng);
        let path = geodesic_path(&q_ref, &target, 12);
        let plus = continue_root_path(&q, &path, plus_ref, tol)?;
        // the other root at the target
        let fq = restrict_to_fibre(&q, &QuatOrInf::Finite(target));
        let (r1, r2) = quadratic_roots(&fq, tol)?;
        let minus = if root_distance(&r1, &plus) >= root_distance(&r2, &plus) {
            r1
        } else {
            r2
        };
        let fibre = fibre_over(QuatOrInf::Finite(target));
        let p_plus = fibre.point(plus[0], plus[1], tol).expect("unit parameter");
        let p_minus = fibre.point(minus[0], minus[1], tol).expect("unit parameter");
        let jswap = v4_line_distance(apply_j(&p_plus, tol).rep(), p_minus.rep());
        max_jswap = max_jswap.max(jswap);

        match section_levi_type(&q, &p_plus, tol) {
            Ok(lt) => {
                if lt.degenerate {
                    levi.degenerate += 1;
                } else {
                    levi.nondegenerate += 1;
                }
                levi.min_abs_value = levi.min_abs_value.min(lt.value.abs());
            }
            Err(
                BranchError::ChartUndefined
                | BranchError::NonTransverse
                | BranchError::NotOnIntersection(_),
            ) => {
                levi.skipped += 1;
            }
            Err(e) => return Err(e),
        }
    }

    let mut monodromy_failures = 0;
    for _ in 0..loops {
        let (u, v) = random_orthonormal_pair(&mut rng);
        let start = r4_to_quat(&u);
        // transport the label from the reference point to the loop start
        let to_start = geodesic_path(&q_ref, &start, 12);
        let start_root = continue_root_path(&q, &to_start, plus_ref, tol)?;
        // walk the great circle u·cos t + v·sin t
        let steps = 64;
        let loop_points: Vec<Quat> = (0..=steps)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (steps as f64);
                let mut x = [0.0; 4];
                for m in 0..4 {
                    x[m] = u[m] * t.cos() + v[m] * t.sin();
                }
                r4_to_quat(&x)
            })
            .collect();
        let after = continue_root_path(&q, &loop_points, start_root, tol)?;
        let fq = restrict_to_fibre(&q, &QuatOrInf::Finite(start));
        let (r1, r2) = quadratic_roots(&fq, tol)?;
        let separation = root_distance(&r1, &r2);
        if root_distance(&after, &start_root) > separation / 3.0 {
            monodromy_failures += 1;
        }
    }

    Ok(SectionReport {
        grid_size: grid,
        loops,
        max_jswap_residual: max_jswap,
        monodromy_failures,
        levi,
    })
}

fn random_orthonormal_pair(rng: &mut ChaCha8Rng) -> ([f64; 4], [f64; 4]) {
    loop {
        let mut u = [0.0; 4];
        let mut v = [0.0; 4];
        for k in 0..4 {
            u[k] = gaussian(rng);
            v[k] = gaussian(rng);
        }
        let nu: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nu < 1e-6 {
            continue;
        }
        for x in &mut u {
            *x /= nu;
        }
        let uv: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        for k in 0..4 {
            v[k] -= uv * u[k];
        }
        let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nv < 1e-6 {
            continue;
        }
        for x in &mut v {
            *x /= nv;
        }
        return (u, v);
    }
}

// ---------------------------------------------------------------------------
// Levi type of the induced CR structure
// ---------------------------------------------------------------------------

/// Levi evaluation at a point of 𝒮 ∩ Q^{2,2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionLevi {
    /// Ambient Levi value (1/2)(|a₁|² − |a₂|² − |a₃|²) on the unit kernel
    /// direction a of {∂F, ∂ρ₀}.
    pub value: f64,
    pub degenerate: bool,
    /// The kernel direction in U₀ coordinates.
    pub direction: [C64; 3],
}

/// Levi-nondegeneracy of the induced CR structure at p ∈ 𝒮 ∩ Q^{2,2}.
///
/// In the chart U₀ the complex tangent line T^{1,0}𝒮 ∩ T^{1,0}Q^{2,2} is the
/// kernel of the pair {∂F, ∂ρ₀}; the induced Levi form is the restriction of
/// the ambient one, whose value on the unit kernel direction is
/// (1/2)(|a₁|² − |a₂|² − |a₃|²). Degenerate exactly when this vanishes.
pub fn section_levi_type(
    q: &QuadricSym4,
    p: &ProjPoint,
    tol: &Tolerance,
) -> Result<SectionLevi, BranchError> {
    let qres = q.residual(p);
    if qres >= tol.eq_abs * 100.0 {
        return Err(BranchError::NotOnIntersection(qres));
    }
    if !in_q22(p, &Tolerance::with_eq_abs(tol.eq_abs * 100.0)) {
        return Err(BranchError::NotOnIntersection(crate::projective::q22_residual(p)));
    }
    let cp = to_chart(p, Chart::U0, tol).map_err(|_| BranchError::ChartUndefined)?;
    let u = cp.coords;
    let z = [C64::new(1.0, 0.0), u[0], u[1], u[2]];
    // ∂(zᵀQz)/∂u_k = 2(Qz)_{k}, k = 1..3
    let qz = q.q.mul_vec(&z);
    let df = [qz[1].scale(2.0), qz[2].scale(2.0), qz[3].scale(2.0)];
    let drho = [u[0].conj(), -u[1].conj(), -u[2].conj()];
    // kernel of the two covectors: complex cross product
    let a = [
        df[1] * drho[2] - df[2] * drho[1],
        df[2] * drho[0] - df[0] * drho[2],
        df[0] * drho[1] - df[1] * drho[0],
    ];
    let na = (a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()).sqrt();
    let nf = (df[0].norm_sqr() + df[1].norm_sqr() + df[2].norm_sqr()).sqrt();
    let nr = (drho[0].norm_sqr() + drho[1].norm_sqr() + drho[2].norm_sqr()).sqrt();
    if na < tol.disc_zero * nf.max(1e-300) * nr.max(1e-300) {
        return Err(BranchError::NonTransverse);
    }
    let dir = [a[0] / na, a[1] / na, a[2] / na];
    let value = 0.5 * (dir[0].norm_sqr() - dir[1].norm_sqr() - dir[2].norm_sqr());
    Ok(SectionLevi {
        value,
        degenerate: value.abs() < tol.disc_zero,
        direction: dir,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::re;
    use crate::projective::project_quat;
    use crate::quadric::FibreType;
    use crate::sample::{seeded_rng, unit_quat};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn fam(a: f64, r: f64) -> FamilyParams {
        FamilyParams::new(a, r).unwrap()
    }

    #[test]
    fn roots_example_disjoint_family() {
        // Q_{0,1/2} over q = 1: roots of (3/4)z₀z₁ are [1:0] and [0:1],
        // lifting to [1:0:1:0] and [0:1:0:1]
        let q = family_quadric(&fam(0.0, 0.5));
        let (p_plus, p_minus) = section_roots(&q, &Quat::one(), &tol()).unwrap();
        let a = ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap();
        let b = ProjPoint::from_re([0.0, 1.0, 0.0, 1.0], &tol()).unwrap();
        assert!(
            (p_plus.proj_eq(&a, &tol()) && p_minus.proj_eq(&b, &tol()))
                || (p_plus.proj_eq(&b, &tol()) && p_minus.proj_eq(&a, &tol()))
        );
        // deterministic labeling: calling twice gives the same order
        let again = section_roots(&q, &Quat::one(), &tol()).unwrap();
        assert!(p_plus.proj_eq(&again.0, &tol()) && p_minus.proj_eq(&again.1, &tol()));
    }

    #[test]
    fn roots_lie_on_both_surfaces_and_j_swaps() {
        let mut rng = seeded_rng(113);
        let q = family_quadric(&fam(0.0, 0.5));
        for _ in 0..1000 {
            let base = unit_quat(&mut rng);
            let (p, m) = section_roots(&q, &base, &tol()).unwrap();
            for x in [&p, &m] {
                assert!(in_q22(x, &tol()));
                assert!(q.contains(x, &tol()));
                match project_quat(x, &tol()) {
                    QuatOrInf::Finite(qb) => assert!(qb.approx_eq(&base, 1e-9)),
                    QuatOrInf::Inf => panic!("roots lie over finite bases"),
                }
            }
            // j swaps the two roots
            let jp = apply_j(&p, &tol());
            assert!(v4_line_distance(jp.rep(), m.rep()) < 1e-10);
            let jm = apply_j(&m, &tol());
            assert!(v4_line_distance(jm.rep(), p.rep()) < 1e-10);
        }
    }

    #[test]
    fn roots_error_on_branch_locus() {
        // Q_{2,1} at q = 1: the base point is the tangency point of the
        // discriminant circle, and the whole fibre lies in the quadric
        let q = family_quadric(&fam(2.0, 1.0));
        let f = restrict_to_fibre(&q, &QuatOrInf::Finite(Quat::one()));
        assert_eq!(f.fibre_type(&tol()), FibreType::Contained);
        assert_eq!(
            section_roots(&q, &Quat::one(), &tol()),
            Err(BranchError::OnBranchLocus)
        );
        // off Σ is rejected
        assert_eq!(
            section_roots(&q, &Quat::from_complex(re(2.0)), &tol()),
            Err(BranchError::NotOnSigma)
        );
    }

    #[test]
    fn continuation_disjoint_family_report() {
        let report = sections_over_region(&fam(0.0, 0.5), 500, 10, 7, &tol()).unwrap();
        assert_eq!(report.grid_size, 500);
        assert!(report.max_jswap_residual < 1e-8);
        assert_eq!(report.monodromy_failures, 0);
        assert_eq!(report.levi.degenerate, 0);
        assert!(report.levi.nondegenerate > 0);
    }

    #[test]
    fn continuation_rejects_non_disjoint() {
        assert_eq!(
            sections_over_region(&fam(2.0, 1.0), 10, 2, 1, &tol()),
            Err(BranchError::NotDisjoint(Position::Tangent))
        );
        assert_eq!(
            sections_over_region(&fam(1.0, 1.0), 10, 2, 1, &tol()),
            Err(BranchError::NotDisjoint(Position::TwoPoints))
        );
    }

    #[test]
    fn levi_degenerate_witness() {
        // Q_{2,√3} at [1:1:−1:1] is Levi-degenerate with kernel ∝ (1, 0, 1)
        let q = family_quadric(&fam(2.0, 3f64.sqrt()));
        let p = ProjPoint::from_re([1.0, 1.0, -1.0, 1.0], &tol()).unwrap();
        let lt = section_levi_type(&q, &p, &tol()).unwrap();
        assert!(lt.degenerate);
        assert!(lt.value.abs() < 1e-12);
        // kernel direction proportional to (1, 0, 1)
        let d = lt.direction;
        assert!(d[1].norm() < 1e-10);
        assert!((d[0].norm() - d[2].norm()).abs() < 1e-10);
    }

    #[test]
    fn levi_nondegenerate_example() {
        // Q_{0,1/2} at [1:0:1:0]: kernel ∝ (−1/4, 0, −1), value −15/34
        let q = family_quadric(&fam(0.0, 0.5));
        let p = ProjPoint::from_re([1.0, 0.0, 1.0, 0.0], &tol()).unwrap();
        let lt = section_levi_type(&q, &p, &tol()).unwrap();
        assert!(!lt.degenerate);
        assert!((lt.value - (-15.0 / 34.0)).abs() < 1e-12);
    }

    #[test]
    fn levi_error_paths() {
        let q = family_quadric(&fam(0.0, 0.5));
        // on Q^{2,2} but not on the quadric: F = 1 − 1/4 ≠ 0
        let p = ProjPoint::from_re([1.0, 1.0, 1.0, 1.0], &tol()).unwrap();
        assert!(matches!(
            section_levi_type(&q, &p, &tol()),
            Err(BranchError::NotOnIntersection(_))
        ));
        // off Q^{2,2} entirely
        let p = ProjPoint::from_re([1.0, 0.0, 0.0, 0.0], &tol()).unwrap();
        assert!(matches!(
            section_levi_type(&q, &p, &tol()),
            Err(BranchError::NotOnIntersection(_))
        ));
        // on both surfaces but with z₀ = 0: chart undefined
        let (p_plus, p_minus) = section_roots(&q, &Quat::from_complex(C64::new(0.0, 1.0)), &tol()).unwrap();
        for x in [p_plus, p_minus] {
            let z0 = x.rep()[0].norm();
            if z0 < 1e-9 {
                assert_eq!(
                    section_levi_type(&q, &x, &tol()),
                    Err(BranchError::ChartUndefined)
                );
            }
        }
    }
}
