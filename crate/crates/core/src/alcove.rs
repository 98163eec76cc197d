//! Points of the fundamental alcove of SU(4)/C₂ and the rotation ρ.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{Constraint, HPolytope};
use crate::rational::{int, q, to_f64, Rational};

/// A canonical logarithmic spectrum `(d1, d2, d3, d4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlcovePoint {
    d: [Rational; 4],
}

fn half() -> Rational {
    q(1, 2)
}

/// `(b3 + 1/2, b4 + 1/2, b1 − 1/2, b2 − 1/2)`.
pub fn rho(b: &[Rational; 4]) -> [Rational; 4] {
    let h = half();
    [&b[2] + &h, &b[3] + &h, &b[0] - &h, &b[1] - &h]
}

pub fn rho_f64(b: &[f64; 4]) -> [f64; 4] {
    [b[2] + 0.5, b[3] + 0.5, b[0] - 0.5, b[1] - 0.5]
}

/// Whether a sorted sum-zero quadruple sits on the canonical side of the
/// C₂ action.
pub fn is_c2_canonical(d: &[Rational; 4]) -> bool {
    let h = half();
    let lhs = &d[2] + &h;
    lhs > d[0] || (lhs == d[0] && &d[3] + &h <= d[1])
}

/// Brings an arbitrary sum-zero quadruple of eigenphase ratios into the
/// alcove: reduce mod 1, sort, fix the sum, then apply ρ if needed.
pub fn canonicalize(raw: &[Rational; 4]) -> Result<[Rational; 4]> {
    let s: Rational = raw.iter().sum();
    if !s.is_integer() {
        return Err(Error::Precondition(format!("phase sum {s} is not an integer")));
    }
    let mut d: Vec<Rational> = raw
        .iter()
        .map(|x| {
            // Representative in (−1/2, 1/2].
            let mut y = x - x.floor();
            if y > half() {
                y -= Rational::one();
            }
            y
        })
        .collect();
    d.sort_by(|a, b| b.cmp(a));
    let mut total: Rational = d.iter().sum();
    while total.is_positive() {
        d[0] -= Rational::one();
        d.sort_by(|a, b| b.cmp(a));
        total -= Rational::one();
    }
    while total.is_negative() {
        d[3] += Rational::one();
        d.sort_by(|a, b| b.cmp(a));
        total += Rational::one();
    }
    let d: [Rational; 4] = [d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()];
    Ok(if is_c2_canonical(&d) { d } else { rho(&d) })
}

/// Floating-point version of [`canonicalize`]. Ties on the C₂ face are
/// decided with tolerance `tol`.
pub fn canonicalize_f64(raw: &[f64; 4], tol: f64) -> [f64; 4] {
    let mut d: Vec<f64> = raw
        .iter()
        .map(|x| {
            let mut y = x - x.floor();
            if y > 0.5 + tol {
                y -= 1.0;
            }
            y
        })
        .collect();
    d.sort_by(|a, b| b.total_cmp(a));
    let mut total: f64 = d.iter().sum();
    while total > 0.5 {
        d[0] -= 1.0;
        d.sort_by(|a, b| b.total_cmp(a));
        total -= 1.0;
    }
    while total < -0.5 {
        d[3] += 1.0;
        d.sort_by(|a, b| b.total_cmp(a));
        total += 1.0;
    }
    let d = [d[0], d[1], d[2], d[3]];
    let lhs = d[2] + 0.5;
    let canonical = lhs > d[0] + tol || ((lhs - d[0]).abs() <= tol && d[3] + 0.5 <= d[1] + tol);
    if canonical {
        d
    } else {
        rho_f64(&d)
    }
}

impl AlcovePoint {
    /// Validates all alcove invariants.
    pub fn new(d: [Rational; 4]) -> Result<Self> {
        let p = AlcovePoint { d };
        if !p.d.iter().sum::<Rational>().is_zero() {
            return Err(Error::Precondition(format!("{p} does not sum to zero")));
        }
        let sorted = p.d[0] >= p.d[1] && p.d[1] >= p.d[2] && p.d[2] >= p.d[3] && p.d[3] >= &p.d[0] - Rational::one();
        if !sorted || !is_c2_canonical(&p.d) {
            return Err(Error::Precondition(format!("{p} is not in the alcove")));
        }
        Ok(p)
    }

    /// Canonicalizes any sum-zero quadruple (integer sum allowed).
    pub fn from_phases(raw: &[Rational; 4]) -> Result<Self> {
        Ok(AlcovePoint { d: canonicalize(raw)? })
    }

    pub fn from_ints(num: [i64; 4], den: i64) -> Result<Self> {
        AlcovePoint::new(num.map(|n| q(n, den)))
    }

    /// Lifts the first three coordinates, recovering `d4` from the sum.
    pub fn from_coords3(x: &[Rational]) -> Result<Self> {
        if x.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: x.len() });
        }
        let d4 = -(&x[0] + &x[1] + &x[2]);
        AlcovePoint::from_phases(&[x[0].clone(), x[1].clone(), x[2].clone(), d4])
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.d
    }

    pub fn coords3(&self) -> Vec<Rational> {
        self.d[..3].to_vec()
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [to_f64(&self.d[0]), to_f64(&self.d[1]), to_f64(&self.d[2]), to_f64(&self.d[3])]
    }

    pub fn rho(&self) -> [Rational; 4] {
        rho(&self.d)
    }

    pub fn origin() -> Self {
        AlcovePoint { d: [int(0), int(0), int(0), int(0)] }
    }
}

impl fmt::Display for AlcovePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(crate::rational::fmt).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for AlcovePoint {
    type Err = Error;

    /// Accepts `(a,b,c,d)` or `a,b,c,d`; three entries imply the fourth.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let vals: Vec<Rational> = t.split(',').map(|x| crate::rational::parse(x.trim())).collect::<Result<_>>()?;
        match vals.len() {
            3 => AlcovePoint::from_coords3(&vals),
            4 => AlcovePoint::from_phases(&[vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone()]),
            n => Err(Error::Parse(format!("expected 3 or 4 coordinates, found {n}"))),
        }
    }
}

/// The extremal points `e1..e6` of the closed alcove. `e6` lies on the
/// missing face and is returned as a raw quadruple.
pub fn extremal(k: usize) -> [Rational; 4] {
    let r = |a: i64, b: i64, c: i64, d: i64, den: i64| [q(a, den), q(b, den), q(c, den), q(d, den)];
    match k {
        1 => r(0, 0, 0, 0, 1),
        2 => r(1, 1, -1, -1, 4),
        3 => r(1, 0, 0, -1, 2),
        4 => r(1, 1, 1, -3, 4),
        5 => r(3, 3, -1, -5, 8),
        6 => r(3, -1, -1, -1, 8),
        _ => panic!("extremal points are numbered 1 to 6"),
    }
}

pub fn e(k: usize) -> AlcovePoint {
    AlcovePoint { d: extremal(k) }
}

/// Rows cutting out the closed alcove on a three-coordinate block starting at
/// `offset` in a space of dimension `dim`.
pub fn alcove_rows(dim: usize, offset: usize) -> Vec<Constraint> {
    let row = |a: [i64; 3], c: Rational| {
        let mut v = vec![Rational::zero(); dim];
        for i in 0..3 {
            v[offset + i] = int(a[i]);
        }
        Constraint::new(v, c)
    };
    vec![
        // d1 ≥ d2, d2 ≥ d3
        row([1, -1, 0], int(0)),
        row([0, 1, -1], int(0)),
        // d3 ≥ d4 = −d1−d2−d3
        row([1, 1, 2], int(0)),
        // d4 ≥ d1 − 1
        row([-2, -1, -1], int(1)),
        // d3 + 1/2 ≥ d1
        row([-1, 0, 1], half()),
    ]
}

/// The closure of the alcove in `(d1, d2, d3)`.
pub fn alcove_closure() -> HPolytope {
    HPolytope { dim: 3, ineqs: alcove_rows(3, 0), eqs: vec![] }
}

/// ρ acting on the three free coordinates: `x ↦ M x + v`.
pub fn rho_affine3() -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let m = vec![vec![int(0), int(0), int(1)], vec![int(-1), int(-1), int(-1)], vec![int(1), int(0), int(0)]];
    (m, vec![half(), half(), -half()])
}

/// Image of a polytope in `(d1,d2,d3)` under ρ.
pub fn rho_image(p: &HPolytope) -> HPolytope {
    // ρ is an involution, so the image is the pullback along ρ.
    let (m, v) = rho_affine3();
    p.pullback(&m, &v)
}
