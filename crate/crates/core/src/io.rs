//! JSON instance files.
//!
//! ```json
//! { "dimension": 3,
//!   "matrix": [["3/5","-4/5","0"],["4/5","3/5","0"],["0","0","1"]],
//!   "source": {"type":"point","coords":["1","0","0"]},
//!   "target": {"type":"set","formula": {"or":[{"and":[{"poly":[{"coeff":"1","exps":[1,0,0]}],"rel":">"}]}]}} }
//! ```

use crate::error::{Error, Result};
use crate::orbit::{OrbitInstance, Source};
use crate::semialg::{to_dnf, Formula, MPoly, Rel, SemialgebraicSet, Sign};
use crate::spectral::RationalMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn rational_at(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| err(path, format!("not a rational \"{s}\"")))
        }
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(err(
            path,
            "expected a rational written as \"p/q\" or an integer",
        )),
    }
}

fn poly_at(v: &Value, n: usize, path: &str) -> Result<MPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| err(path, "expected a list of terms"))?;
    let mut parsed = vec![];
    let mut den = BigInt::from(1);
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let c = rational_at(
            t.get("coeff").ok_or_else(|| err(&tp, "missing coeff"))?,
            &format!("{tp}.coeff"),
        )?;
        let exps = t
            .get("exps")
            .and_then(|e| e.as_array())
            .ok_or_else(|| err(&tp, "missing exps"))?;
        if exps.len() != n {
            return Err(err(
                &format!("{tp}.exps"),
                format!("expected {n} exponents, found {}", exps.len()),
            ));
        }
        let e: Vec<u32> = exps
            .iter()
            .map(|x| x.as_u64().and_then(|k| u32::try_from(k).ok()))
            .collect::<Option<_>>()
            .ok_or_else(|| err(&format!("{tp}.exps"), "exponents must be natural numbers"))?;
        den = den.lcm(c.denom());
        parsed.push((e, c));
    }
    // clearing denominators by a positive factor keeps every sign
    let terms = parsed
        .into_iter()
        .map(|(e, c)| (e, (c * BigRational::from_integer(den.clone())).to_integer()));
    Ok(MPoly::from_terms(n, terms))
}

fn formula_at(v: &Value, n: usize, path: &str) -> Result<Formula> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object"))?;
    let list = |key: &str| -> Result<Vec<Formula>> {
        let a = obj[key]
            .as_array()
            .ok_or_else(|| err(path, format!("\"{key}\" must be a list")))?;
        a.iter()
            .enumerate()
            .map(|(i, f)| formula_at(f, n, &format!("{path}.{key}[{i}]")))
            .collect()
    };
    if obj.contains_key("or") {
        Ok(Formula::Or(list("or")?))
    } else if obj.contains_key("and") {
        Ok(Formula::And(list("and")?))
    } else if let Some(f) = obj.get("not") {
        Ok(Formula::not(formula_at(f, n, &format!("{path}.not"))?))
    } else if obj.contains_key("poly") {
        let p = poly_at(&obj["poly"], n, &format!("{path}.poly"))?;
        let r = obj
            .get("rel")
            .and_then(|r| r.as_str())
            .ok_or_else(|| err(path, "missing rel"))?;
        let rel = Rel::parse(r)
            .ok_or_else(|| err(&format!("{path}.rel"), format!("unknown relation \"{r}\"")))?;
        Ok(Formula::atom(p, rel))
    } else if obj.get("true").is_some() {
        Ok(Formula::True)
    } else if obj.get("false").is_some() {
        Ok(Formula::False)
    } else {
        Err(err(path, "expected one of or, and, not, poly"))
    }
}

fn set_at(v: &Value, n: usize, path: &str) -> Result<SemialgebraicSet> {
    let f = v
        .get("formula")
        .ok_or_else(|| err(path, "missing formula"))?;
    Ok(to_dnf(&formula_at(f, n, &format!("{path}.formula"))?, n))
}

/// Options carried in the instance file; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub baker_exponent: Option<u32>,
    pub qe_max_degree: Option<u32>,
    pub search_cap: Option<u64>,
}

pub fn parse_instance(text: &str) -> Result<(OrbitInstance, FileOptions)> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let n = v
        .get("dimension")
        .and_then(|d| d.as_u64())
        .ok_or_else(|| err("dimension", "missing or not a natural number"))? as usize;
    if !(1..=3).contains(&n) {
        return Err(err("dimension", format!("must be 1, 2 or 3, found {n}")));
    }
    let rows = v
        .get("matrix")
        .and_then(|m| m.as_array())
        .ok_or_else(|| err("matrix", "missing or not a list"))?;
    if rows.len() != n {
        return Err(err(
            "matrix",
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    let mut m = vec![];
    for (i, r) in rows.iter().enumerate() {
        let r = r
            .as_array()
            .ok_or_else(|| err(&format!("matrix[{i}]"), "not a list"))?;
        if r.len() != n {
            return Err(err(
                &format!("matrix[{i}]"),
                format!("expected {n} entries, found {}", r.len()),
            ));
        }
        m.push(
            r.iter()
                .enumerate()
                .map(|(j, x)| rational_at(x, &format!("matrix[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let matrix = RationalMatrix::new(m)?;
    let src = v.get("source").ok_or_else(|| err("source", "missing"))?;
    let source = match src.get("type").and_then(|t| t.as_str()) {
        Some("point") => {
            let c = src
                .get("coords")
                .and_then(|c| c.as_array())
                .ok_or_else(|| err("source.coords", "missing or not a list"))?;
            if c.len() != n {
                return Err(err(
                    "source.coords",
                    format!("expected {n} coordinates, found {}", c.len()),
                ));
            }
            Source::Point(
                c.iter()
                    .enumerate()
                    .map(|(i, x)| rational_at(x, &format!("source.coords[{i}]")))
                    .collect::<Result<_>>()?,
            )
        }
        Some("set") => Source::Set(set_at(src, n, "source")?),
        _ => return Err(err("source.type", "must be \"point\" or \"set\"")),
    };
    let tgt = v.get("target").ok_or_else(|| err("target", "missing"))?;
    if tgt
        .get("type")
        .and_then(|t| t.as_str())
        .is_some_and(|t| t != "set")
    {
        return Err(err("target.type", "must be \"set\""));
    }
    let target = set_at(tgt, n, "target")?;
    let mut opts = FileOptions::default();
    if let Some(o) = v.get("options") {
        opts.baker_exponent = o
            .get("baker_exponent")
            .and_then(|x| x.as_u64())
            .map(|x| x as u32);
        opts.qe_max_degree = o
            .get("qe_max_degree")
            .and_then(|x| x.as_u64())
            .map(|x| x as u32);
        opts.search_cap = o.get("search_cap").and_then(|x| x.as_u64());
    }
    Ok((
        OrbitInstance {
            matrix,
            source,
            target,
        },
        opts,
    ))
}

fn poly_json(p: &MPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!({"coeff": c.to_string(), "exps": e}))
            .collect(),
    )
}

pub fn set_json(s: &SemialgebraicSet) -> Value {
    let or: Vec<Value> = s
        .dnf
        .iter()
        .map(|c| {
            let and: Vec<Value> = c
                .iter()
                .map(|a| json!({"poly": poly_json(&a.poly), "rel": if a.rel == Sign::Pos { ">" } else { "=" }}))
                .collect();
            json!({ "and": and })
        })
        .collect();
    json!({"type": "set", "formula": {"or": or}})
}

pub fn instance_json(inst: &OrbitInstance) -> Value {
    let n = inst.dim();
    let matrix: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| inst.matrix.get(i, j).to_string()).collect())
        .collect();
    let source = match &inst.source {
        Source::Point(p) => {
            json!({"type": "point", "coords": p.iter().map(|x| x.to_string()).collect::<Vec<_>>()})
        }
        Source::Set(s) => set_json(s),
    };
    let mut m = Map::new();
    m.insert("dimension".into(), json!(n));
    m.insert("matrix".into(), json!(matrix));
    m.insert("source".into(), source);
    m.insert("target".into(), set_json(&inst.target));
    Value::Object(m)
}

pub fn write_instance(inst: &OrbitInstance) -> String {
    serde_json::to_string_pretty(&instance_json(inst)).expect("json")
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROT: &str = r#"{ "dimension": 3,
        "matrix": [["3/5","-4/5","0"],["4/5","3/5","0"],["0","0","1"]],
        "source": {"type":"point","coords":["1","0","0"]},
        "target": {"type":"set","formula": {"or":[{"and":[
            {"poly":[{"coeff":"-1","exps":[1,0,0]}],"rel":">"},
            {"poly":[{"coeff":"1/2","exps":[0,1,0]}],"rel":">="}]}]}} }"#;

    #[test]
    fn parse_and_round_trip() {
        let (inst, opts) = parse_instance(ROT).unwrap();
        assert_eq!(opts, FileOptions::default());
        assert_eq!(
            inst.matrix.get(0, 1),
            &BigRational::new((-4).into(), 5.into())
        );
        assert_eq!(inst.target.dnf.len(), 2);
        let again = parse_instance(&write_instance(&inst)).unwrap().0;
        assert_eq!(again.target, inst.target);
        assert_eq!(again.matrix, inst.matrix);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = ROT.replace("\"4/5\",\"3/5\",\"0\"", "\"4/5\",\"3/x\",\"0\"");
        let e = parse_instance(&bad).unwrap_err().to_string();
        assert!(e.contains("matrix[1][1]"), "{e}");
        let bad = ROT.replace("\"rel\":\">=\"", "\"rel\":\"=>\"");
        assert!(parse_instance(&bad)
            .unwrap_err()
            .to_string()
            .contains("rel"));
        let bad = ROT.replace("[\"1\",\"0\",\"0\"]", "[\"1\",\"0\"]");
        assert!(parse_instance(&bad)
            .unwrap_err()
            .to_string()
            .contains("source.coords"));
        assert!(parse_instance("{")
            .unwrap_err()
            .to_string()
            .contains("line 1"));
    }
}
