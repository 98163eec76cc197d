//! lrs-style text and JSON serializations.

use std::fmt::Write;

use super::{Constraint, HPolytope};
use crate::error::{Error, Result};
use crate::rational::{fmt, parse, Rational};

/// H-representation in lrs format. Equalities are listed under `linearity`.
pub fn to_lrs_h(p: &HPolytope, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{name}");
    let _ = writeln!(s, "H-representation");
    if !p.eqs.is_empty() {
        let idx: Vec<String> = (1..=p.eqs.len()).map(|i| i.to_string()).collect();
        let _ = writeln!(s, "linearity {} {}", p.eqs.len(), idx.join(" "));
    }
    let _ = writeln!(s, "begin");
    let _ = writeln!(s, "{} {} rational", p.eqs.len() + p.ineqs.len(), p.dim + 1);
    for c in p.eqs.iter().chain(&p.ineqs) {
        let mut row = vec![fmt(&c.constant)];
        row.extend(c.coeffs.iter().map(fmt));
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let _ = writeln!(s, "end");
    s
}

/// V-representation in lrs format.
pub fn to_lrs_v(vertices: &[Vec<Rational>], name: &str) -> String {
    let dim = vertices.first().map_or(0, |v| v.len());
    let mut s = String::new();
    let _ = writeln!(s, "{name}");
    let _ = writeln!(s, "V-representation");
    let _ = writeln!(s, "begin");
    let _ = writeln!(s, "{} {} rational", vertices.len(), dim + 1);
    for v in vertices {
        let mut row = vec!["1".to_string()];
        row.extend(v.iter().map(fmt));
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let _ = writeln!(s, "end");
    s
}

/// Parses an lrs H-representation (with optional `linearity` line).
pub fn from_lrs_h(text: &str) -> Result<HPolytope> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('*'));
    let mut linearity: Vec<usize> = vec![];
    let bad = |m: &str| Error::Parse(format!("lrs: {m}"));
    loop {
        let l = lines.next().ok_or_else(|| bad("missing begin"))?;
        if let Some(rest) = l.strip_prefix("linearity") {
            let nums: Vec<usize> = rest.split_whitespace().map(|x| x.parse().map_err(|_| bad("linearity"))).collect::<Result<_>>()?;
            linearity = nums.into_iter().skip(1).collect();
        }
        if l == "begin" {
            break;
        }
    }
    let header = lines.next().ok_or_else(|| bad("missing size line"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() < 2 {
        return Err(bad("size line"));
    }
    let m: usize = parts[0].parse().map_err(|_| bad("row count"))?;
    let n: usize = parts[1].parse().map_err(|_| bad("column count"))?;
    if n == 0 {
        return Err(bad("column count"));
    }
    let mut p = HPolytope::universe(n - 1);
    for i in 1..=m {
        let l = lines.next().ok_or_else(|| bad("missing row"))?;
        let vals: Vec<Rational> = l.split_whitespace().map(parse).collect::<Result<_>>()?;
        if vals.len() != n {
            return Err(bad("row length"));
        }
        let c = Constraint::new(vals[1..].to_vec(), vals[0].clone());
        if linearity.contains(&i) {
            p.eqs.push(c);
        } else {
            p.ineqs.push(c);
        }
    }
    Ok(p)
}

/// Vertex list as JSON arrays of rational strings.
pub fn vertices_json(vertices: &[Vec<Rational>]) -> serde_json::Value {
    serde_json::Value::Array(
        vertices.iter().map(|v| serde_json::Value::Array(v.iter().map(|x| serde_json::Value::String(fmt(x))).collect())).collect(),
    )
}

/// Constraint rows as JSON: `{"ineqs": [[c, a1, ...]], "eqs": [...]}`.
pub fn polytope_json(p: &HPolytope) -> serde_json::Value {
    let rows = |cs: &[Constraint]| {
        serde_json::Value::Array(
            cs.iter()
                .map(|c| {
                    let mut r = vec![serde_json::Value::String(fmt(&c.constant))];
                    r.extend(c.coeffs.iter().map(|x| serde_json::Value::String(fmt(x))));
                    serde_json::Value::Array(r)
                })
                .collect(),
        )
    };
    serde_json::json!({ "dim": p.dim, "ineqs": rows(&p.ineqs), "eqs": rows(&p.eqs) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn lrs_round_trip() {
        let mut p = HPolytope::cube(2, &int(0), &q(1, 2));
        p.eqs.push(Constraint::new(vec![int(1), int(-1)], int(0)));
        let text = to_lrs_h(&p, "square");
        assert!(text.contains("begin"));
        assert!(text.contains("5 3 rational"));
        let back = from_lrs_h(&text).unwrap();
        assert_eq!(back, p);
        let v = to_lrs_v(&[vec![q(3, 8), int(0)]], "pt");
        assert!(v.contains("1 3/8 0"));
        let j = vertices_json(&[vec![q(3, 8), q(-1, 8)]]);
        assert_eq!(j.to_string(), r#"[["3/8","-1/8"]]"#);
    }
}
