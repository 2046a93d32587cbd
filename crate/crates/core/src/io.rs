//! JSON formats for arrangements, multinets, characters, presentations and multiplicities.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::cyclo::QElem;
use crate::arrangement::{cyclo, format_field_elem, Arrangement};
use crate::error::{ensure_input, Error, Result};
use crate::fpgroups::{Character, Presentation};
use crate::jumploci::Stratification;
use crate::multinet::{complete_base_locus, monomial_multinet, Multinet};

pub fn read_json(path: impl AsRef<Path>) -> Result<Value> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::input(format!("coefficient {n} is not an integer"))),
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::input(format!("bad rational {s:?}")))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::input(format!("bad rational {s:?}")))?;
            ensure_input!(!den.is_zero(), "zero denominator in {s:?}");
            Ok(BigRational::new(num, den))
        }
        _ => Err(Error::input(format!(
            "expected a number or rational string, got {v}"
        ))),
    }
}

fn parse_field_elem(v: &Value, d: usize) -> Result<QElem> {
    match v {
        Value::Array(cs) => {
            ensure_input!(
                cs.len() <= d,
                "field element {v} has more than {d} coefficients"
            );
            let mut e = cs.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
            e.resize(d, BigRational::zero());
            Ok(e)
        }
        _ => {
            let mut e = vec![BigRational::zero(); d];
            e[0] = parse_rational(v)?;
            Ok(e)
        }
    }
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::input(format!("{what} must be an array")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::input(format!("{what} entries must be strings")))
        })
        .collect()
}

fn family_p(v: &Value) -> Result<Option<u64>> {
    match v.get("family").and_then(Value::as_str) {
        None => Ok(None),
        Some("monomial") => v
            .get("p")
            .and_then(Value::as_u64)
            .map(Some)
            .ok_or_else(|| Error::input("monomial family needs an integer \"p\"")),
        Some(f) => Err(Error::input(format!("unknown family {f:?}"))),
    }
}

/// `{"field_order": K, "hyperplanes": [[c, ...], ...], "labels": [...]}`; coefficients are
/// integers, rational strings, or (for K > 1) power-basis coefficient lists in ζ_K. Also
/// accepts `{"family": "monomial", "p": p}`.
pub fn parse_arrangement(v: &Value) -> Result<Arrangement> {
    if let Some(p) = family_p(v)? {
        return Ok(monomial_multinet(p)?.0);
    }
    let k = v.get("field_order").and_then(Value::as_u64).unwrap_or(1);
    let rows = v
        .get("hyperplanes")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("arrangement needs a \"hyperplanes\" array"))?;
    ensure_input!(!rows.is_empty(), "arrangement must be nonempty");
    let d = cyclo(k).degree();
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::input("each hyperplane must be an array of coefficients"))?
                .iter()
                .map(|c| parse_field_elem(c, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = parsed[0].len();
    let labels = v
        .get("labels")
        .map(|l| string_list(l, "labels"))
        .transpose()?;
    Arrangement::from_cyclotomic(k, dim, parsed, labels)
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    let rows: Vec<Value> = match a.integer_normals() {
        Some(ns) => ns
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|c| json!(c.to_string().parse::<i64>().unwrap_or(0)))
                        .collect(),
                )
            })
            .collect(),
        None => a
            .normals()
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|c| Value::Array(c.iter().map(|x| json!(x.to_string())).collect()))
                        .collect(),
                )
            })
            .collect(),
    };
    let mut out = json!({ "field_order": a.field_order(), "hyperplanes": rows });
    if let Some(l) = a.labels() {
        out["labels"] = json!(l);
    }
    if !a.is_rational() {
        out["forms"] = json!(a
            .normals()
            .iter()
            .map(|r| r.iter().map(format_field_elem).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    out
}

/// A hyperplane given by index or label.
pub fn resolve_hyperplane(a: &Arrangement, v: &Value) -> Result<usize> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_u64()
                .ok_or_else(|| Error::input(format!("bad hyperplane index {n}")))?
                as usize;
            ensure_input!(i < a.len(), "hyperplane index {i} out of range");
            Ok(i)
        }
        Value::String(s) => a
            .find(s)
            .or_else(|| s.parse::<usize>().ok().filter(|&i| i < a.len()))
            .ok_or_else(|| Error::input(format!("no hyperplane labelled {s:?}"))),
        _ => Err(Error::input(format!(
            "expected a hyperplane index or label, got {v}"
        ))),
    }
}

/// `{"parts": [[h, ...], ...], "m": [...], "base_locus": [[h, ...], ...]?, "hyperplane": h?}`
/// with hyperplanes by index or label; the base locus defaults to all rank-2 flats meeting
/// two classes. Also accepts `{"family": "monomial", "p": p}`.
pub fn parse_multinet(a: &Arrangement, v: &Value) -> Result<(Multinet, Option<usize>)> {
    if let Some(p) = family_p(v)? {
        let (_, pm) = monomial_multinet(p)?;
        return Ok((pm.multinet, Some(pm.hyperplane)));
    }
    let parts = v
        .get("parts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("multinet needs a \"parts\" array"))?
        .iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(|| Error::input("each part must be an array"))?
                .iter()
                .map(|h| resolve_hyperplane(a, h))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = match v.get("m") {
        Some(m) => parse_u64_list(m, "m")?,
        None => vec![1; a.len()],
    };
    let base = match v.get("base_locus") {
        Some(b) => b
            .as_array()
            .ok_or_else(|| Error::input("base_locus must be an array"))?
            .iter()
            .map(|f| {
                f.as_array()
                    .ok_or_else(|| Error::input("each flat must be an array"))?
                    .iter()
                    .map(|h| resolve_hyperplane(a, h))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
        None => complete_base_locus(a, &parts),
    };
    let h = v
        .get("hyperplane")
        .map(|h| resolve_hyperplane(a, h))
        .transpose()?;
    Ok((Multinet::new(parts, m, base), h))
}

pub fn parse_u64_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| Error::input(format!("{what} must be an array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .ok_or_else(|| Error::input(format!("{what} entries must be nonnegative integers")))
        })
        .collect()
}

pub fn parse_i64_list(v: &Value, what: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::input(format!("{what} must be an array")))?
        .iter()
        .map(|x| {
            x.as_i64()
                .ok_or_else(|| Error::input(format!("{what} entries must be integers")))
        })
        .collect()
}

/// `{"order": r, "exponents": [...]}`.
pub fn parse_character(v: &Value) -> Result<Character> {
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::input("character needs a positive \"order\""))?;
    let e = parse_i64_list(v.get("exponents").unwrap_or(&Value::Null), "exponents")?;
    Character::new(order, &e)
}

/// `{"generators": g, "relators": [[±i, ...], ...]}`, letters 1-based.
pub fn parse_presentation(v: &Value) -> Result<Presentation> {
    let g = v
        .get("generators")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::input("presentation needs \"generators\""))? as usize;
    let rels = v
        .get("relators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("presentation needs a \"relators\" array"))?
        .iter()
        .map(|r| {
            parse_i64_list(r, "relator")?
                .into_iter()
                .map(|l| {
                    i32::try_from(l).map_err(|_| Error::input(format!("letter {l} out of range")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(g, rels)
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    json!({ "generators": p.generators, "relators": p.relators })
}

pub fn parse_stratification(v: &Value) -> Result<Stratification> {
    Stratification::from_json(v)
}

/// `{"arrangement": {...}, "m": [...]}`.
pub fn parse_multiarrangement(v: &Value) -> Result<(Arrangement, Vec<u64>)> {
    let a = parse_arrangement(
        v.get("arrangement")
            .ok_or_else(|| Error::input("missing \"arrangement\""))?,
    )?;
    let m = parse_u64_list(
        v.get("m").ok_or_else(|| Error::input("missing \"m\""))?,
        "m",
    )?;
    ensure_input!(
        m.len() == a.len(),
        "{} multiplicities for {} hyperplanes",
        m.len(),
        a.len()
    );
    Ok((a, m))
}
