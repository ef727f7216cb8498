//! JSON encoding of scalar expressions.
//!
//! The encoding is schema-versioned and loss-free for the canonical form:
//!
//! ```json
//! {"schema":1,"terms":[{"coeff":"1/2","atoms":[{"field":"u","mi":[1,0],"pow":2}]}]}
//! ```
//!
//! Atom entries are one of `{"coord":name,"pow":k}`, `{"field":name,"mi":[..],"pow":k}`,
//! `{"param":name,"pow":k}`, or `{"fn":"sin","arg":{"terms":[..]},"pow":k}`.

use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::jetspace::{BundleSpec, MultiIndex};
use crate::Result;

use super::atom::Atom;
use super::expr::{Factor, Func, ScalarExpr};

pub const SCHEMA_VERSION: u64 = 1;

fn coeff_string(q: &BigRational) -> String {
    use num_traits::One;
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn terms_value(expr: &ScalarExpr) -> Value {
    let bundle = expr.bundle();
    let terms: Vec<Value> = expr
        .terms()
        .iter()
        .map(|term| {
            let atoms: Vec<Value> = term
                .factors
                .iter()
                .map(|(factor, exp)| match factor {
                    Factor::Atom(Atom::Base(s)) => {
                        json!({"coord": bundle.base_name(*s), "pow": exp})
                    }
                    Factor::Atom(Atom::Jet { field, mi }) => json!({
                        "field": bundle.field_name(*field),
                        "mi": mi.entries(),
                        "pow": exp,
                    }),
                    Factor::Atom(Atom::Param(p)) => json!({"param": p, "pow": exp}),
                    Factor::Apply(f, arg) => json!({
                        "fn": f.name(),
                        "arg": json!({"terms": terms_value(arg)["terms"]}),
                        "pow": exp,
                    }),
                })
                .collect();
            json!({"coeff": coeff_string(&term.coeff), "atoms": atoms})
        })
        .collect();
    json!({"terms": terms})
}

/// Encode an expression as a schema-versioned JSON value.
pub fn expr_to_json(expr: &ScalarExpr) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    obj.insert("terms".into(), terms_value(expr)["terms"].clone());
    Value::Object(obj)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn parse_terms(bundle: &Arc<BundleSpec>, terms: &Value) -> Result<ScalarExpr> {
    let arr = terms.as_array().ok_or_else(|| bad("\"terms\" must be an array"))?;
    let mut total = ScalarExpr::zero(bundle);
    for term in arr {
        let obj = term.as_object().ok_or_else(|| bad("term must be an object"))?;
        let coeff_s = obj
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term is missing a string \"coeff\""))?;
        let coeff = BigRational::from_str(coeff_s)
            .map_err(|e| bad(format!("bad coefficient {coeff_s:?}: {e}")))?;
        let mut mono = ScalarExpr::constant(bundle, coeff);
        let atoms = obj
            .get("atoms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term is missing an \"atoms\" array"))?;
        for atom in atoms {
            let a = atom.as_object().ok_or_else(|| bad("atom must be an object"))?;
            let exp = a
                .get("pow")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("atom is missing a nonnegative \"pow\""))?;
            let exp = u32::try_from(exp).map_err(|_| bad("\"pow\" is too large"))?;
            let factor = if let Some(name) = a.get("coord").and_then(Value::as_str) {
                let sigma = bundle
                    .base_index(name)
                    .ok_or_else(|| bad(format!("unknown base coordinate {name:?}")))?;
                ScalarExpr::base(bundle, sigma)?
            } else if let Some(name) = a.get("field").and_then(Value::as_str) {
                let field = bundle
                    .field_index(name)
                    .ok_or_else(|| bad(format!("unknown field {name:?}")))?;
                let mi_arr = a
                    .get("mi")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("field atom is missing an \"mi\" array"))?;
                let mut entries = Vec::with_capacity(mi_arr.len());
                for v in mi_arr {
                    let k = v.as_u64().ok_or_else(|| bad("\"mi\" entries must be nonnegative"))?;
                    entries.push(u32::try_from(k).map_err(|_| bad("\"mi\" entry is too large"))?);
                }
                if entries.len() != bundle.dim_base() {
                    return Err(Error::MultiIndexLength {
                        len: entries.len(),
                        n: bundle.dim_base(),
                    });
                }
                ScalarExpr::jet(bundle, field, MultiIndex::new(entries))?
            } else if let Some(name) = a.get("param").and_then(Value::as_str) {
                ScalarExpr::param(bundle, name)
            } else if let Some(name) = a.get("fn").and_then(Value::as_str) {
                let func = match name {
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    other => return Err(bad(format!("unknown function {other:?}"))),
                };
                let arg = a.get("arg").ok_or_else(|| bad("function atom is missing \"arg\""))?;
                let arg_terms =
                    arg.get("terms").ok_or_else(|| bad("function \"arg\" is missing \"terms\""))?;
                ScalarExpr::apply(func, parse_terms(bundle, arg_terms)?)
            } else {
                return Err(bad("atom must carry one of \"coord\", \"field\", \"param\", \"fn\""));
            };
            mono = mono.checked_mul(&factor.pow(exp))?;
        }
        total = total.checked_add(&mono)?;
    }
    Ok(total)
}

/// Decode an expression from the JSON encoding, resolving names against the
/// given bundle.
pub fn expr_from_json(bundle: &Arc<BundleSpec>, value: &Value) -> Result<ScalarExpr> {
    let obj = value.as_object().ok_or_else(|| bad("expression must be a JSON object"))?;
    match obj.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(bad(format!("unsupported schema version {other}"))),
        None => return Err(bad("missing \"schema\" field")),
    }
    let terms = obj.get("terms").ok_or_else(|| bad("missing \"terms\" field"))?;
    parse_terms(bundle, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn wave() -> Arc<BundleSpec> {
        BundleSpec::new(vec!["t".into(), "x".into()], vec!["u".into()]).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    #[test]
    fn roundtrip_polynomial() {
        let b = wave();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_x = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let t = ScalarExpr::base(&b, 0).unwrap();
        let w = ScalarExpr::param(&b, "omega");
        let e = (&u_t * &u_t).scale(&half()) - (&u_x * &u_x).scale(&half()) + &t * &w;
        let v = expr_to_json(&e);
        let back = expr_from_json(&b, &v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn roundtrip_function() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let e = ScalarExpr::apply(Func::Sin, u.clone()) + ScalarExpr::apply(Func::Exp, &u + &u);
        let v = expr_to_json(&e);
        let back = expr_from_json(&b, &v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_unknown_names() {
        let b = wave();
        let v: Value = serde_json::from_str(
            r#"{"schema":1,"terms":[{"coeff":"1","atoms":[{"field":"w","mi":[0,0],"pow":1}]}]}"#,
        )
        .unwrap();
        assert!(expr_from_json(&b, &v).is_err());
    }

    #[test]
    fn rejects_wrong_schema() {
        let b = wave();
        let v: Value = serde_json::from_str(r#"{"schema":2,"terms":[]}"#).unwrap();
        assert!(expr_from_json(&b, &v).is_err());
    }
}
