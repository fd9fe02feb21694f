//! JSON interchange. Numbers are exact: integers as JSON numbers, other
//! rationals as "p/q" strings, elements a + b√d as {"a","b","d"} objects.
//! Object keys come out sorted, so output is byte-stable.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::lattice::IntVector;
use crate::arith::linalg::Vector;
use crate::arith::scalar::{parse_rational, rational_to_string};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::permutahedra::{subset_label, WeightMatrix};
use crate::polyhedra::complex::Complex;
use crate::polyhedra::polyhedron::{Halfspace, Polyhedron};
use crate::polyhedra::polytope::Polytope;
use crate::tropical::TropicalPolynomial;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    if let Some(n) = x.as_integer() {
        if let Some(i) = n.to_i64() {
            return json!(i);
        }
        return json!(n.to_string());
    }
    match x.radicand() {
        None => json!(rational_to_string(x.rational_part())),
        Some(d) => json!({
            "a": rational_to_string(x.rational_part()),
            "b": rational_to_string(x.irrational_part()),
            "d": d,
        }),
    }
}

fn rational_from_json(v: &Value) -> Result<num_rational::BigRational> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(n) => Err(schema(format!("floating point number {n} not allowed; use \"p/q\""))),
        Value::String(s) => parse_rational(s).map_err(|_| schema(format!("not a rational: {s:?}"))),
        _ => Err(schema(format!("expected a number, got {v}"))),
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::Object(o) => {
            for k in o.keys() {
                if !matches!(k.as_str(), "a" | "b" | "d") {
                    return Err(schema(format!("unknown key {k:?} in radical")));
                }
            }
            let a = o.get("a").map(rational_from_json).transpose()?.unwrap_or_default();
            let b = o.get("b").map(rational_from_json).transpose()?.unwrap_or_default();
            let d = o
                .get("d")
                .and_then(Value::as_u64)
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| schema("radical needs an integer \"d\""))?;
            Scalar::quad(a, b, d).map_err(|e| schema(e.to_string()))
        }
        _ => rational_from_json(v).map(Scalar::from_rational),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn ints_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| scalar_to_json(&Scalar::from(x))).collect())
}

fn vector_from_json(v: &Value, dim: usize, what: &str) -> Result<Vector> {
    let arr = v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))?;
    if arr.len() != dim {
        return Err(schema(format!("{what} has length {}, expected {dim}", arr.len())));
    }
    arr.iter().map(scalar_from_json).collect()
}

fn ints_from_json(v: &Value, dim: usize, what: &str) -> Result<IntVector> {
    vector_from_json(v, dim, what)?
        .iter()
        .map(|x| x.as_integer().ok_or_else(|| schema(format!("{what} must be integral"))))
        .collect()
}

fn object<'a>(v: &'a Value, keys: &[&str], what: &str) -> Result<&'a Map<String, Value>> {
    let o = v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))?;
    for k in o.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(schema(format!("unknown key {k:?} in {what}")));
        }
    }
    Ok(o)
}

fn dim_of(o: &Map<String, Value>) -> Result<usize> {
    o.get("dim")
        .and_then(Value::as_u64)
        .and_then(|d| usize::try_from(d).ok())
        .filter(|&d| d >= 1)
        .ok_or_else(|| schema("\"dim\" must be a positive integer"))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": p.vertices().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
    })
}

/// Any finite point set; the polytope is its convex hull.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let o = object(v, &["dim", "vertices"], "polytope")?;
    let dim = dim_of(o)?;
    let verts = o.get("vertices").and_then(Value::as_array).ok_or_else(|| schema("\"vertices\" must be an array"))?;
    if verts.is_empty() {
        return Err(schema("\"vertices\" is empty"));
    }
    let pts = verts.iter().map(|p| vector_from_json(p, dim, "vertex")).collect::<Result<Vec<_>>>()?;
    Polytope::convex_hull(dim, &pts)
}

pub fn polynomial_to_json(f: &TropicalPolynomial) -> Value {
    json!({
        "dim": f.dim(),
        "terms": f.terms().map(|(e, c)| json!({"exp": ints_to_json(e), "coef": scalar_to_json(c)})).collect::<Vec<_>>(),
    })
}

/// Repeated exponents keep the larger coefficient.
pub fn polynomial_from_json(v: &Value) -> Result<TropicalPolynomial> {
    let o = object(v, &["dim", "terms"], "polynomial")?;
    let dim = dim_of(o)?;
    let terms = o.get("terms").and_then(Value::as_array).ok_or_else(|| schema("\"terms\" must be an array"))?;
    let parsed = terms
        .iter()
        .map(|t| {
            let to = object(t, &["exp", "coef"], "term")?;
            let e = ints_from_json(to.get("exp").ok_or_else(|| schema("term without \"exp\""))?, dim, "exp")?;
            let c = scalar_from_json(to.get("coef").ok_or_else(|| schema("term without \"coef\""))?)?;
            Ok((e, c))
        })
        .collect::<Result<Vec<_>>>()?;
    TropicalPolynomial::new(dim, parsed).map_err(|e| schema(e.to_string()))
}

fn halfspace_to_json(h: &Halfspace) -> Value {
    json!({"normal": vector_to_json(&h.normal), "offset": scalar_to_json(&h.offset)})
}

fn halfspace_from_json(v: &Value, dim: usize) -> Result<Halfspace> {
    let o = object(v, &["normal", "offset"], "halfspace")?;
    let normal = vector_from_json(o.get("normal").ok_or_else(|| schema("halfspace without \"normal\""))?, dim, "normal")?;
    let offset = scalar_from_json(o.get("offset").ok_or_else(|| schema("halfspace without \"offset\""))?)?;
    Ok(Halfspace::new(normal, offset))
}

/// H-representation: normal·x + offset ≥ 0 (inequalities), = 0 (equalities).
pub fn hrep_to_json(p: &Polyhedron) -> Value {
    json!({
        "inequalities": p.inequalities().iter().map(halfspace_to_json).collect::<Vec<_>>(),
        "equalities": p.equalities().iter().map(halfspace_to_json).collect::<Vec<_>>(),
    })
}

pub fn hrep_from_json(v: &Value, dim: usize) -> Result<Polyhedron> {
    let o = object(v, &["inequalities", "equalities"], "cone")?;
    let list = |k: &str| -> Result<Vec<Halfspace>> {
        o.get(k)
            .map(|a| a.as_array().ok_or_else(|| schema(format!("\"{k}\" must be an array"))))
            .transpose()?
            .map_or(Ok(Vec::new()), |a| a.iter().map(|h| halfspace_from_json(h, dim)).collect())
    };
    Ok(Polyhedron::from_h(dim, list("inequalities")?, list("equalities")?))
}

/// A weighted complex: cells in canonical order, one covector record per
/// ridge and one weight per cell.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFanDoc {
    pub dim: usize,
    pub cones: Vec<(Vec<Halfspace>, Vec<Halfspace>)>,
    pub covectors: Vec<Vec<(usize, IntVector)>>,
    pub weights: Vec<Scalar>,
    pub labels: Option<Vec<String>>,
}

impl WeightedFanDoc {
    pub fn from_complex(cx: &Complex, weights: &[Scalar], labels: Option<Vec<String>>) -> WeightedFanDoc {
        WeightedFanDoc {
            dim: cx.dim,
            cones: cx.cells.iter().map(|c| (c.region.inequalities().to_vec(), c.region.equalities().to_vec())).collect(),
            covectors: cx
                .ridges
                .iter()
                .map(|r| r.incidences.iter().map(|i| (i.cell, i.covector.clone())).collect())
                .collect(),
            weights: weights.to_vec(),
            labels,
        }
    }

    pub fn to_json(&self) -> Value {
        let hs = |v: &[Halfspace]| v.iter().map(halfspace_to_json).collect::<Vec<_>>();
        let mut out = json!({
            "dim": self.dim,
            "cones": self.cones.iter().map(|(i, e)| json!({"inequalities": hs(i), "equalities": hs(e)})).collect::<Vec<_>>(),
            "covectors": {
                "ridges": self.covectors.iter().map(|r| {
                    r.iter().map(|(c, v)| json!({"cone": c, "covector": ints_to_json(v)})).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            },
            "weights": vector_to_json(&self.weights),
        });
        if let Some(l) = &self.labels {
            out["labels"] = json!(l);
        }
        out
    }

    pub fn from_json(v: &Value) -> Result<WeightedFanDoc> {
        let o = object(v, &["dim", "cones", "covectors", "weights", "labels"], "weighted fan")?;
        let dim = dim_of(o)?;
        let cones = o
            .get("cones")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("\"cones\" must be an array"))?
            .iter()
            .map(|c| hrep_from_json(c, dim).map(|p| (p.inequalities().to_vec(), p.equalities().to_vec())))
            .collect::<Result<Vec<_>>>()?;
        let m = cones.len();
        let cov = object(o.get("covectors").ok_or_else(|| schema("missing \"covectors\""))?, &["ridges"], "covectors")?;
        let covectors = cov
            .get("ridges")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("\"covectors.ridges\" must be an array"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| schema("ridge must be an array"))?
                    .iter()
                    .map(|i| {
                        let io = object(i, &["cone", "covector"], "incidence")?;
                        let c = io
                            .get("cone")
                            .and_then(Value::as_u64)
                            .map(|c| c as usize)
                            .filter(|&c| c < m)
                            .ok_or_else(|| schema("incidence \"cone\" out of range"))?;
                        let v = ints_from_json(io.get("covector").ok_or_else(|| schema("missing covector"))?, dim, "covector")?;
                        Ok((c, v))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = vector_from_json(o.get("weights").ok_or_else(|| schema("missing \"weights\""))?, m, "weights")?;
        let labels = o
            .get("labels")
            .map(|l| serde_json::from_value::<Vec<String>>(l.clone()).map_err(|e| schema(e.to_string())))
            .transpose()?;
        Ok(WeightedFanDoc { dim, cones, covectors, weights, labels })
    }
}

pub fn weight_matrix_to_json(w: &WeightMatrix) -> Value {
    json!({
        "n": w.n,
        "rows": w.rows.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "cols": w.cols.iter().map(|c| subset_label(c)).collect::<Vec<_>>(),
        "entries": w.entries,
    })
}

/// {"error": kind, "message": text, "witness": details or null}.
pub fn error_to_json(e: &Error) -> Value {
    let witness = match e {
        Error::NegativeWeight(w) => json!({
            "cell": w.cell,
            "point": vector_to_json(&w.point),
            "edge": [vector_to_json(&w.edge.0), vector_to_json(&w.edge.1)],
            "weight": scalar_to_json(&w.weight),
            "extended": scalar_to_json(&w.extended),
            "deficit": scalar_to_json(&w.deficit()),
        }),
        Error::NotBalanced { ridge } if *ridge != usize::MAX => json!({ "ridge": ridge }),
        Error::NotInCone(p) => json!({ "partition": p }),
        Error::TooLarge { what, size, cap } => json!({ "what": what, "size": size, "cap": cap }),
        _ => Value::Null,
    };
    json!({"error": e.kind(), "message": e.to_string(), "witness": witness})
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::fan::normal_fan;

    #[test]
    fn scalar_forms() {
        assert_eq!(scalar_to_json(&Scalar::from(3)), json!(3));
        assert_eq!(scalar_to_json(&Scalar::ratio(-1, 2)), json!("-1/2"));
        let r = scalar_to_json(&(Scalar::sqrt2() + Scalar::one()));
        assert_eq!(r, json!({"a": "1", "b": "1", "d": 2}));
        assert_eq!(scalar_from_json(&r).unwrap(), Scalar::sqrt2() + Scalar::one());
        assert_eq!(scalar_from_json(&json!("4/6")).unwrap(), Scalar::ratio(2, 3));
        assert!(scalar_from_json(&json!(0.5)).is_err());
        assert!(scalar_from_json(&json!({"a": 1, "b": 1, "d": 4})).is_err());
    }

    #[test]
    fn polytope_round_trip() {
        let text = r#"{"dim":2,"vertices":[[1,0],[0,0],["1/2","1/2"],[0,1],[1,0]]}"#;
        let p = polytope_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(p.num_vertices(), 3);
        let canon = polytope_to_json(&p);
        assert_eq!(polytope_to_json(&polytope_from_json(&canon).unwrap()), canon);
        assert!(polytope_from_json(&json!({"dim": 2, "vertices": [[1]]})).is_err());
        assert!(polytope_from_json(&json!({"dim": 2, "vertices": [[1, 0]], "extra": 1})).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let v = json!({"dim": 2, "terms": [
            {"exp": [1, 1], "coef": "-10"}, {"exp": [0, 0], "coef": 0}, {"exp": [0, 0], "coef": "-1"}
        ]});
        let f = polynomial_from_json(&v).unwrap();
        assert_eq!(f.num_terms(), 2);
        let canon = polynomial_to_json(&f);
        assert_eq!(canon["terms"][0]["coef"], json!(0));
        assert_eq!(polynomial_to_json(&polynomial_from_json(&canon).unwrap()), canon);
        assert!(polynomial_from_json(&json!({"dim": 2, "terms": [{"exp": ["1/2", 0], "coef": 0}]})).is_err());
    }

    #[test]
    fn fan_round_trip() {
        let cx = normal_fan(&Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]])).unwrap();
        let doc = WeightedFanDoc::from_complex(&cx, &cx.lattice_weights(), None);
        let v = doc.to_json();
        let back = WeightedFanDoc::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
        assert_eq!(back.covectors.len(), 1);
    }

    #[test]
    fn error_shapes() {
        let e = error_to_json(&Error::NotInCone("({2,3},1)".into()));
        assert_eq!(e["error"], json!("NotInCone"));
        assert_eq!(e["witness"]["partition"], json!("({2,3},1)"));
        assert_eq!(error_to_json(&Error::NotContained)["witness"], Value::Null);
    }
}
