//! JSON forms of the library types.
//!
//! A polynomial is `{"basis": ["1","i","j","k"], "components": [c0, c1, c2, c3]}`
//! with each `c_l` the ascending coefficient list of a real component; the
//! zero component is `[]`. Floats are written in shortest round-trip form and
//! read back bit for bit.

use serde_json::{json, Map, Value};
use slicereg::zeros::{SphereFactorization, Weierstrass, ZeroStructure};
use slicereg::{Frame, ImaginaryUnit, Quaternion, RealPoly, SliceClass, SlicePoly};

use crate::CliError;

pub const BASIS: [&str; 4] = ["1", "i", "j", "k"];

pub fn real_poly(p: &RealPoly) -> Value {
    json!(p.coeffs())
}

pub fn poly(f: &SlicePoly) -> Value {
    json!({
        "basis": BASIS,
        "components": f.components().iter().map(real_poly).collect::<Vec<_>>(),
    })
}

pub fn quaternion(q: Quaternion) -> Value {
    json!(q.to_array())
}

pub fn axis(u: ImaginaryUnit) -> Value {
    json!(u.vector())
}

pub fn class(c: SliceClass) -> Value {
    match c {
        SliceClass::AllSlices => json!({ "class": "all_slices" }),
        SliceClass::OneSlice(u) => json!({ "class": "one_slice", "axis": axis(u) }),
        SliceClass::NoSlice => json!({ "class": "no_slice" }),
    }
}

pub fn frame(f: &Frame) -> Value {
    json!({
        "i0": axis(f.i0),
        "j0": axis(f.j0),
        "k0": axis(f.k0),
        "a": f.a,
        "b": f.b,
    })
}

pub fn zero_structure(z: &ZeroStructure) -> Value {
    let spheres: Vec<Value> = z
        .spheres
        .iter()
        .map(|s| {
            json!({
                "alpha": s.alpha,
                "beta": s.beta,
                "spherical_mult": s.spherical_mult,
                "isolated": s.isolated.as_ref().map(|iso| json!({
                    "point": quaternion(iso.point),
                    "mult": iso.mult,
                })),
            })
        })
        .collect();
    json!({
        "origin_mult": z.origin_mult,
        "real_zeros": z.real_zeros.iter().map(|r| json!({ "x": r.x, "mult": r.mult })).collect::<Vec<_>>(),
        "spheres": spheres,
        "total": z.total(),
    })
}

pub fn sphere_factorization(f: &SphereFactorization) -> Value {
    json!({
        "m": f.m,
        "points": f.points.iter().map(|&p| quaternion(p)).collect::<Vec<_>>(),
        "g": poly(&f.g),
    })
}

pub fn weierstrass(w: &Weierstrass) -> Value {
    json!({
        "m": w.m,
        "r": real_poly(&w.r),
        "s": real_poly(&w.s),
        "h": poly(&w.h),
    })
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn coeff_list(v: &Value, what: &str) -> Result<RealPoly, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(format!("{what} must be an array of numbers")))?;
    let coeffs = arr
        .iter()
        .map(|x| match x.as_f64() {
            Some(c) if c.is_finite() => Ok(c),
            _ => Err(schema(format!("{what} holds a non-numeric entry {x}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RealPoly::new(coeffs))
}

pub fn poly_from_value(v: &Value) -> Result<SlicePoly, CliError> {
    let obj: &Map<String, Value> = v.as_object().ok_or_else(|| schema("expected an object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "basis" && *k != "components") {
        return Err(schema(format!("unknown field {k:?}")));
    }
    let basis = obj.get("basis").ok_or_else(|| schema("missing field \"basis\""))?;
    if *basis != json!(BASIS) {
        return Err(schema(format!("basis must be {}", json!(BASIS))));
    }
    let comps = obj
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("\"components\" must be an array"))?;
    if comps.len() != 4 {
        return Err(schema(format!("expected 4 components, found {}", comps.len())));
    }
    let c: Vec<RealPoly> = comps
        .iter()
        .zip(BASIS)
        .map(|(c, b)| coeff_list(c, &format!("component {b:?}")))
        .collect::<Result<_, _>>()?;
    let [c0, c1, c2, c3]: [RealPoly; 4] = c.try_into().expect("four components");
    Ok(SlicePoly::new(c0, c1, c2, c3))
}

pub fn serialize(f: &SlicePoly) -> String {
    poly(f).to_string()
}

pub fn deserialize(text: &str) -> Result<SlicePoly, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    poly_from_value(&v)
}
