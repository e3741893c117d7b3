//! JSON wire conventions.
//!
//! One convention everywhere: complex numbers as `[re, im]`, matrices as
//! row-major nested arrays, quaternions as `{"p0": …, "p1": …}` with the
//! point at infinity encoded as the string `"inf"`.

use crate::branches::{LeviSummary, SectionLevi, SectionReport};
use crate::chart::LeviReport;
use crate::lines::SphereOrPoint;
use crate::matrix::{C64, Mat2, Mat4, Vec4C, ZERO};
use crate::projective::{ProjPoint, QuatOrInf};
use crate::quadric::{DiscriminantCircle, RelPosition};
use crate::quat::Quat;
use crate::symmetry::{CanonicalNormal, OrbitClass, Witness};
use crate::tolerance::Tolerance;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WireError {
    #[error("invalid JSON payload: {0}")]
    Invalid(String),
}

fn invalid(msg: &str) -> WireError {
    WireError::Invalid(msg.to_string())
}

// ---------------------------------------------------------------------------
// encoding
// ---------------------------------------------------------------------------

pub fn cx(z: &C64) -> Value {
    json!([z.re, z.im])
}

pub fn vec4(v: &Vec4C) -> Value {
    Value::Array(v.iter().map(cx).collect())
}

pub fn mat2(m: &Mat2) -> Value {
    Value::Array(
        m.m.iter()
            .map(|row| Value::Array(row.iter().map(cx).collect()))
            .collect(),
    )
}

pub fn mat4(m: &Mat4) -> Value {
    Value::Array(
        m.m.iter()
            .map(|row| Value::Array(row.iter().map(cx).collect()))
            .collect(),
    )
}

pub fn proj_point(p: &ProjPoint) -> Value {
    vec4(p.rep())
}

pub fn quat(q: &Quat) -> Value {
    json!({ "p0": cx(&q.p0), "p1": cx(&q.p1) })
}

pub fn quat_or_inf(q: &QuatOrInf) -> Value {
    match q {
        QuatOrInf::Finite(q) => quat(q),
        QuatOrInf::Inf => Value::String("inf".to_string()),
    }
}

pub fn sphere_or_point(s: &SphereOrPoint) -> Value {
    match s {
        SphereOrPoint::Point(x) => json!({ "point": mat2(x) }),
        SphereOrPoint::Sphere { center, radius } => {
            json!({ "center": mat2(center), "radius": radius })
        }
    }
}

pub fn orbit_class(c: &OrbitClass) -> Value {
    Value::String(
        match c {
            OrbitClass::Positive => "positive",
            OrbitClass::Negative => "negative",
            OrbitClass::Tangent => "tangent",
        }
        .to_string(),
    )
}

pub fn canonical_normal(t: &CanonicalNormal) -> Value {
    Value::String(
        match t {
            CanonicalNormal::E0 => "e0",
            CanonicalNormal::E2 => "e2",
            CanonicalNormal::E0PlusE2 => "e0+e2",
        }
        .to_string(),
    )
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "matrix": mat4(&w.g),
        "target": canonical_normal(&w.target),
        "residuals": {
            "stab": w.stab_residual,
            "commute": w.commute_residual,
            "map": w.map_residual,
        }
    })
}

pub fn levi_report(r: &LeviReport) -> Value {
    json!({
        "chart": format!("{:?}", r.chart),
        "frame": r.frame,
        "matrix": mat2(&r.matrix),
        "det": r.det,
        "signature": [r.signature.0, r.signature.1],
    })
}

pub fn discriminant_circle(c: &DiscriminantCircle) -> Value {
    match c {
        DiscriminantCircle::Circle { center, radius } => {
            json!({ "circle": { "center": [center, 0.0], "radius": radius } })
        }
        DiscriminantCircle::Line { re_equals } => json!({ "line": { "re": re_equals } }),
        DiscriminantCircle::ContainedUnitCircle => json!({ "contained_unit_circle": true }),
    }
}

pub fn rel_position(p: &RelPosition) -> Value {
    json!({
        "position": match p.position {
            crate::quadric::Position::Contained => "contained",
            crate::quadric::Position::TwoPoints => "two_points",
            crate::quadric::Position::Tangent => "tangent",
            crate::quadric::Position::Disjoint => "disjoint",
        },
        "I": p.inversive_distance,
        "branch_points": p.branch_points.iter().map(cx).collect::<Vec<_>>(),
    })
}

pub fn levi_summary(s: &LeviSummary) -> Value {
    json!({
        "nondegenerate": s.nondegenerate,
        "degenerate": s.degenerate,
        "skipped": s.skipped,
        "min_abs_value": if s.min_abs_value.is_finite() { json!(s.min_abs_value) } else { Value::Null },
    })
}

pub fn section_report(r: &SectionReport) -> Value {
    json!({
        "grid_size": r.grid_size,
        "loops": r.loops,
        "max_jswap_residual": r.max_jswap_residual,
        "monodromy_failures": r.monodromy_failures,
        "levi_summary": levi_summary(&r.levi),
    })
}

pub fn section_levi(l: &SectionLevi) -> Value {
    json!({
        "type": if l.degenerate { "degenerate" } else { "nondegenerate" },
        "value": l.value,
        "direction": l.direction.iter().map(cx).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// decoding
// ---------------------------------------------------------------------------

pub fn cx_from(v: &Value) -> Result<C64, WireError> {
    let arr = v.as_array().ok_or_else(|| invalid("complex must be [re, im]"))?;
    if arr.len() != 2 {
        return Err(invalid("complex must be [re, im]"));
    }
    let re = arr[0].as_f64().ok_or_else(|| invalid("re must be a number"))?;
    let im = arr[1].as_f64().ok_or_else(|| invalid("im must be a number"))?;
    Ok(C64::new(re, im))
}

pub fn vec4_from(v: &Value) -> Result<Vec4C, WireError> {
    let arr = v
        .as_array()
        .ok_or_else(|| invalid("vector must be an array of 4 complex pairs"))?;
    if arr.len() != 4 {
        return Err(invalid("vector must have 4 entries"));
    }
    let mut out = [ZERO; 4];
    for (k, e) in arr.iter().enumerate() {
        out[k] = cx_from(e)?;
    }
    Ok(out)
}

pub fn mat2_from(v: &Value) -> Result<Mat2, WireError> {
    let rows = v
        .as_array()
        .ok_or_else(|| invalid("matrix must be a 2x2 nested array"))?;
    if rows.len() != 2 {
        return Err(invalid("matrix must have 2 rows"));
    }
    let mut m = [[ZERO; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let cols = row
            .as_array()
            .ok_or_else(|| invalid("matrix rows must be arrays"))?;
        if cols.len() != 2 {
            return Err(invalid("matrix rows must have 2 entries"));
        }
        for (j, e) in cols.iter().enumerate() {
            m[i][j] = cx_from(e)?;
        }
    }
    Ok(Mat2::new(m))
}

pub fn mat4_from(v: &Value) -> Result<Mat4, WireError> {
    let rows = v
        .as_array()
        .ok_or_else(|| invalid("matrix must be a 4x4 nested array"))?;
    if rows.len() != 4 {
        return Err(invalid("matrix must have 4 rows"));
    }
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in rows.iter().enumerate() {
        let cols = row
            .as_array()
            .ok_or_else(|| invalid("matrix rows must be arrays"))?;
        if cols.len() != 4 {
            return Err(invalid("matrix rows must have 4 entries"));
        }
        for (j, e) in cols.iter().enumerate() {
            m[i][j] = cx_from(e)?;
        }
    }
    Ok(Mat4::new(m))
}

pub fn proj_point_from(v: &Value, tol: &Tolerance) -> Result<ProjPoint, WireError> {
    ProjPoint::new(vec4_from(v)?, tol).map_err(|e| invalid(&e.to_string()))
}

pub fn quat_from(v: &Value) -> Result<Quat, WireError> {
    let obj = v
        .as_object()
        .ok_or_else(|| invalid("quaternion must be {p0, p1}"))?;
    let p0 = cx_from(obj.get("p0").ok_or_else(|| invalid("missing p0"))?)?;
    let p1 = cx_from(obj.get("p1").ok_or_else(|| invalid("missing p1"))?)?;
    Ok(Quat::new(p0, p1))
}

pub fn quat_or_inf_from(v: &Value) -> Result<QuatOrInf, WireError> {
    if v.as_str() == Some("inf") {
        return Ok(QuatOrInf::Inf);
    }
    Ok(QuatOrInf::Finite(quat_from(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{re, I, ONE};
    use proptest::prelude::*;

    #[test]
    fn complex_and_inf_conventions() {
        assert_eq!(cx(&C64::new(1.5, -2.0)).to_string(), "[1.5,-2.0]");
        assert_eq!(
            quat_or_inf(&QuatOrInf::Inf),
            Value::String("inf".to_string())
        );
        assert_eq!(
            quat_or_inf_from(&Value::String("inf".to_string())).unwrap(),
            QuatOrInf::Inf
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(cx_from(&json!([1.0])).is_err());
        assert!(cx_from(&json!("x")).is_err());
        assert!(vec4_from(&json!([[1.0, 0.0]])).is_err());
        assert!(mat2_from(&json!([[[1.0, 0.0]]])).is_err());
        assert!(quat_from(&json!({"p0": [1.0, 0.0]})).is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let m = Mat2::new([[ONE, I], [re(2.0), re(-0.5) * I]]);
        let v = mat2(&m);
        let back = mat2_from(&v).unwrap();
        assert_eq!(m, back);
    }

    proptest! {
        #[test]
        fn quat_json_roundtrip(a in -10.0..10.0f64, b in -10.0..10.0f64,
                               c in -10.0..10.0f64, d in -10.0..10.0f64) {
            let q = Quat::new(C64::new(a, b), C64::new(c, d));
            let back = quat_from(&quat(&q)).unwrap();
            prop_assert_eq!(q, back);
        }

        #[test]
        fn vec4_json_roundtrip(xs in proptest::array::uniform8(-5.0..5.0f64)) {
            let v: Vec4C = [
                C64::new(xs[0], xs[1]),
                C64::new(xs[2], xs[3]),
                C64::new(xs[4], xs[5]),
                C64::new(xs[6], xs[7]),
            ];
            let back = vec4_from(&vec4(&v)).unwrap();
            prop_assert_eq!(v, back);
        }
    }
}
