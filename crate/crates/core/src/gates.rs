//! Named two-qubit gates, angle syntax and matrix JSON.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, to_f64, Rational};
use crate::su4::{c, canonical_gate, CanonicalParams, Mat4, C64};

/// An angle either as an exact multiple of π or as raw radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    PiTimes(Rational),
    Radians(f64),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiTimes(r) => to_f64(r) * PI,
            Angle::Radians(x) => *x,
        }
    }

    /// The angle over π, exact when possible.
    pub fn over_pi(&self) -> Rational {
        match self {
            Angle::PiTimes(r) => r.clone(),
            Angle::Radians(x) => Rational::from_float(x / PI).unwrap_or_default(),
        }
    }

    /// Parses `3pi/4`, `0.25pi`, `-pi/2`, `π`, or decimal radians.
    pub fn parse(text: &str) -> Result<Angle> {
        let t = text.trim().replace('π', "pi").replace(' ', "");
        if let Some(pos) = t.find("pi") {
            let (head, tail) = t.split_at(pos);
            let tail = &tail[2..];
            let mut coeff = match head.trim_end_matches('*') {
                "" | "+" => Rational::from_integer(1.into()),
                "-" => Rational::from_integer((-1).into()),
                h => rational::parse(h)?,
            };
            if !tail.is_empty() {
                let den = tail.strip_prefix('/').ok_or_else(|| Error::Parse(format!("bad angle '{text}'")))?;
                let den = rational::parse(den)?;
                if num_traits::Zero::is_zero(&den) {
                    return Err(Error::Parse(format!("bad angle '{text}'")));
                }
                coeff /= den;
            }
            return Ok(Angle::PiTimes(coeff));
        }
        t.parse::<f64>().map(Angle::Radians).map_err(|_| Error::Parse(format!("bad angle '{text}'")))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiTimes(r) => {
                let n = r.numer();
                let d = r.denom();
                let num = if *n == 1.into() {
                    "pi".to_string()
                } else if *n == (-1).into() {
                    "-pi".to_string()
                } else {
                    format!("{n}pi")
                };
                if *d == 1.into() {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{d}")
                }
            }
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

/// A gate as named on the command line or in circuits.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    I,
    Cz,
    Cnot,
    Iswap,
    Swap,
    SqrtSwap,
    SqrtIswap,
    B,
    Db,
    SqrtCz,
    /// `None` stands for the whole family.
    Cphase(Option<Angle>),
    Xy(Option<Angle>),
    Pswap(Option<Angle>),
    Custom(String, Box<Mat4>),
}

impl Gate {
    pub fn parse(text: &str) -> Result<Gate> {
        let t = text.trim();
        let (name, arg) = match t.find('(') {
            Some(i) => {
                let inner = t[i + 1..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{t}'")))?;
                (&t[..i], Some(Angle::parse(inner)?))
            }
            None => (t, None),
        };
        let upper = name.trim().to_ascii_uppercase().replace('-', "_");
        let fixed = |g: Gate| if arg.is_some() { Err(Error::Parse(format!("gate {upper} takes no parameter"))) } else { Ok(g) };
        match upper.as_str() {
            "I" | "ID" | "IDENTITY" => fixed(Gate::I),
            "CZ" => fixed(Gate::Cz),
            "CNOT" | "CX" => fixed(Gate::Cnot),
            "ISWAP" => fixed(Gate::Iswap),
            "SWAP" => fixed(Gate::Swap),
            "SQRT_SWAP" | "SQRTSWAP" => fixed(Gate::SqrtSwap),
            "SQRT_ISWAP" | "SQRTISWAP" => fixed(Gate::SqrtIswap),
            "B" => fixed(Gate::B),
            "DB" => fixed(Gate::Db),
            "SQRT_CZ" | "SQRTCZ" => fixed(Gate::SqrtCz),
            "CPHASE" => Ok(Gate::Cphase(arg)),
            "XY" => Ok(Gate::Xy(arg)),
            "PSWAP" => Ok(Gate::Pswap(arg)),
            _ => Err(Error::UnknownGate(t.to_string())),
        }
    }

    pub fn name(&self) -> String {
        let with = |n: &str, a: &Option<Angle>| match a {
            Some(a) => format!("{n}({a})"),
            None => n.to_string(),
        };
        match self {
            Gate::I => "I".into(),
            Gate::Cz => "CZ".into(),
            Gate::Cnot => "CNOT".into(),
            Gate::Iswap => "ISWAP".into(),
            Gate::Swap => "SWAP".into(),
            Gate::SqrtSwap => "SQRT_SWAP".into(),
            Gate::SqrtIswap => "SQRT_ISWAP".into(),
            Gate::B => "B".into(),
            Gate::Db => "DB".into(),
            Gate::SqrtCz => "SQRT_CZ".into(),
            Gate::Cphase(a) => with("CPHASE", a),
            Gate::Xy(a) => with("XY", a),
            Gate::Pswap(a) => with("PSWAP", a),
            Gate::Custom(n, _) => n.clone(),
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, Gate::Cphase(None) | Gate::Xy(None) | Gate::Pswap(None))
    }

    /// The 4×4 matrix; families without a parameter have none.
    pub fn matrix(&self) -> Result<Mat4> {
        let z = c(0., 0.);
        let o = c(1., 0.);
        let i = c(0., 1.);
        let need = |a: &Option<Angle>| a.as_ref().map(Angle::radians).ok_or_else(|| Error::Precondition(format!("{} needs a parameter", self.name())));
        Ok(match self {
            Gate::I => Mat4::identity(),
            Gate::Cz => diag([o, o, o, -o]),
            Gate::Cnot => Mat4::new(o, z, z, z, z, o, z, z, z, z, z, o, z, z, o, z),
            Gate::Iswap => middle(c(0., 0.), i, i, c(0., 0.)),
            Gate::Swap => middle(z, o, o, z),
            Gate::SqrtSwap => {
                let (p, m) = (c(0.5, 0.5), c(0.5, -0.5));
                middle(p, m, m, p)
            }
            Gate::SqrtIswap => {
                let s = FRAC_1_SQRT_2;
                middle(c(s, 0.), c(0., s), c(0., s), c(s, 0.))
            }
            Gate::B => canonical_gate(&CanonicalParams::new(PI / 4.0, PI / 8.0, 0.0)),
            Gate::Db => xy(3.0 * PI / 4.0),
            Gate::SqrtCz => diag([o, o, o, i]),
            Gate::Cphase(a) => diag([o, o, o, C64::from_polar(1.0, need(a)?)]),
            Gate::Xy(a) => xy(need(a)?),
            Gate::Pswap(a) => {
                let e = C64::from_polar(1.0, need(a)?);
                middle(z, e, e, z)
            }
            Gate::Custom(_, m) => **m,
        })
    }
}

fn diag(d: [C64; 4]) -> Mat4 {
    Mat4::from_diagonal(&nalgebra::Vector4::from_fn(|k, _| d[k]))
}

/// Identity on |00⟩ and |11⟩, the given block on |01⟩, |10⟩.
fn middle(a: C64, b: C64, cc: C64, d: C64) -> Mat4 {
    let mut m = Mat4::identity();
    m[(1, 1)] = a;
    m[(1, 2)] = b;
    m[(2, 1)] = cc;
    m[(2, 2)] = d;
    m
}

fn xy(theta: f64) -> Mat4 {
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    middle(c(co, 0.), c(0., -si), c(0., -si), c(co, 0.))
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: Vec<Vec<[f64; 2]>>,
}

/// Parses `{"rows": [[[re, im], ...], ...]}`.
pub fn matrix_from_json(text: &str) -> Result<Mat4> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    if m.rows.len() != 4 || m.rows.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse("matrix JSON must be 4×4".into()));
    }
    Ok(Mat4::from_fn(|i, j| c(m.rows[i][j][0], m.rows[i][j][1])))
}

pub fn matrix_to_json(u: &Mat4) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..4).map(|i| (0..4).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect()).collect();
    serde_json::to_value(MatrixJson { rows }).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::e;
    use crate::rational::q;
    use crate::su4::{is_unitary4, pi_invariant};

    #[test]
    fn angles() {
        assert_eq!(Angle::parse("3pi/4").unwrap(), Angle::PiTimes(q(3, 4)));
        assert_eq!(Angle::parse("0.25pi").unwrap(), Angle::PiTimes(q(1, 4)));
        assert_eq!(Angle::parse("-pi/2").unwrap(), Angle::PiTimes(q(-1, 2)));
        assert_eq!(Angle::parse("π").unwrap(), Angle::PiTimes(q(1, 1)));
        assert_eq!(Angle::parse("1.5").unwrap(), Angle::Radians(1.5));
        assert!(Angle::parse("pi/0").is_err());
        assert!(Angle::parse("abc").is_err());
        assert_eq!(Angle::PiTimes(q(3, 4)).to_string(), "3pi/4");
        assert_eq!(Angle::PiTimes(q(-1, 2)).to_string(), "-pi/2");
    }

    #[test]
    fn named_gate_invariants() {
        for (name, k) in [("I", 1), ("CZ", 2), ("CNOT", 2), ("ISWAP", 3), ("SWAP", 4), ("SQRT_SWAP", 5), ("PSWAP(pi/2)", 3)] {
            let m = Gate::parse(name).unwrap().matrix().unwrap();
            assert!(is_unitary4(&m, 1e-12));
            assert_eq!(pi_invariant(&m).unwrap(), e(k), "{name}");
        }
        let db = pi_invariant(&Gate::parse("DB").unwrap().matrix().unwrap()).unwrap();
        assert_eq!(db.to_string(), "(3/8,0,0,-3/8)");
        let b = pi_invariant(&Gate::parse("B").unwrap().matrix().unwrap()).unwrap();
        assert_eq!(b.to_string(), "(3/8,1/8,-1/8,-3/8)");
        let s = pi_invariant(&Gate::parse("SQRT_CZ").unwrap().matrix().unwrap()).unwrap();
        assert_eq!(s.to_string(), "(1/8,1/8,-1/8,-1/8)");
        let x = pi_invariant(&Gate::parse("XY(pi/2)").unwrap().matrix().unwrap()).unwrap();
        assert_eq!(x.to_string(), "(1/4,0,0,-1/4)");
    }

    #[test]
    fn families_and_errors() {
        assert!(Gate::parse("XY").unwrap().is_family());
        assert!(Gate::parse("XY").unwrap().matrix().is_err());
        assert!(matches!(Gate::parse("FOO"), Err(Error::UnknownGate(_))));
        assert!(Gate::parse("CZ(pi)").is_err());
        assert_eq!(Gate::parse("xy(3pi/4)").unwrap().name(), "XY(3pi/4)");
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = Gate::Iswap.matrix().unwrap();
        let text = matrix_to_json(&m).to_string();
        assert_eq!(matrix_from_json(&text).unwrap(), m);
        assert!(matrix_from_json(r#"{"rows": [[[1,0]]]}"#).is_err());
    }
}
