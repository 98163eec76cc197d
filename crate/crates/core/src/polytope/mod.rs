//! Exact rational convex polytopes in H-representation.
//!
//! A [`Constraint`] `(coeffs, constant)` reads `coeffs·x + constant ≥ 0` when
//! stored as an inequality and `= 0` when stored as an equality.

mod fm;
pub mod io;
pub mod lp;
mod vertex;
mod volume;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{primitive, Rational};

pub use vertex::{affine_rank, rank};
pub use volume::union_volume;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        Constraint { coeffs, constant }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, b)| acc + a * b)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .fold(crate::rational::to_f64(&self.constant), |acc, (a, b)| acc + crate::rational::to_f64(a) * b)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rescales by a positive factor to a primitive integer row.
    pub fn normalized(&self) -> Constraint {
        let mut all = self.coeffs.clone();
        all.push(self.constant.clone());
        let ints = primitive(&all);
        let mut v: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let constant = v.pop().unwrap();
        Constraint { coeffs: v, constant }
    }

    /// Normal form for an equality: primitive, first nonzero entry positive.
    pub fn normalized_equality(&self) -> Constraint {
        let n = self.normalized();
        let lead = n.coeffs.iter().chain(std::iter::once(&n.constant)).find(|c| !c.is_zero());
        match lead {
            Some(l) if l.is_negative() => n.negated(),
            _ => n,
        }
    }

    pub fn negated(&self) -> Constraint {
        Constraint { coeffs: self.coeffs.iter().map(|c| -c).collect(), constant: -self.constant.clone() }
    }

    /// Rewrites the row under the affine substitution `x = M y + v`, where
    /// `m` is `old_dim × new_dim` row-major.
    pub fn substitute(&self, m: &[Vec<Rational>], v: &[Rational]) -> Constraint {
        let new_dim = m.first().map_or(0, |r| r.len());
        let mut coeffs = vec![Rational::zero(); new_dim];
        let mut constant = self.constant.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..new_dim {
                if !m[i][j].is_zero() {
                    coeffs[j] += a * &m[i][j];
                }
            }
            constant += a * &v[i];
        }
        Constraint { coeffs, constant }
    }

    pub fn integer_row(&self) -> Vec<BigInt> {
        let mut all = self.coeffs.clone();
        all.push(self.constant.clone());
        primitive(&all)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

/// A finite union of convex polytopes sharing an ambient dimension.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolytopeUnion {
    pub parts: Vec<HPolytope>,
}

impl PolytopeUnion {
    pub fn new(parts: Vec<HPolytope>) -> Self {
        PolytopeUnion { parts }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn contains_f64(&self, x: &[f64], tol: f64) -> bool {
        self.parts.iter().any(|p| p.contains_f64(x, tol))
    }

    pub fn volume(&self) -> Result<Rational> {
        union_volume(self)
    }
}

impl HPolytope {
    /// The whole space `R^dim`.
    pub fn universe(dim: usize) -> Self {
        HPolytope { dim, ineqs: vec![], eqs: vec![] }
    }

    pub fn new(dim: usize, ineqs: Vec<Constraint>, eqs: Vec<Constraint>) -> Result<Self> {
        for r in ineqs.iter().chain(&eqs) {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
        }
        Ok(HPolytope { dim, ineqs, eqs })
    }

    /// The canonical empty polytope.
    pub fn empty(dim: usize) -> Self {
        HPolytope {
            dim,
            ineqs: vec![Constraint::new(vec![Rational::zero(); dim], Rational::from_integer((-1).into()))],
            eqs: vec![],
        }
    }

    /// Builds a polytope from integer rows `[c, a_1, ..., a_n]` meaning
    /// `c + a·x ≥ 0`, the layout used by lrs.
    pub fn from_int_rows(dim: usize, ineqs: &[Vec<i64>], eqs: &[Vec<i64>]) -> Self {
        let conv = |r: &Vec<i64>| {
            assert_eq!(r.len(), dim + 1);
            Constraint::new(r[1..].iter().map(|&x| Rational::from_integer(x.into())).collect(), Rational::from_integer(r[0].into()))
        };
        HPolytope { dim, ineqs: ineqs.iter().map(conv).collect(), eqs: eqs.iter().map(conv).collect() }
    }

    /// Axis-aligned box `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: &Rational, hi: &Rational) -> Self {
        let mut ineqs = vec![];
        for i in 0..dim {
            let mut a = vec![Rational::zero(); dim];
            a[i] = Rational::from_integer(1.into());
            ineqs.push(Constraint::new(a.clone(), -lo.clone()));
            a[i] = Rational::from_integer((-1).into());
            ineqs.push(Constraint::new(a, hi.clone()));
        }
        HPolytope { dim, ineqs, eqs: vec![] }
    }

    /// The single point `x`.
    pub fn point(x: &[Rational]) -> Self {
        let dim = x.len();
        let eqs = (0..dim)
            .map(|i| {
                let mut a = vec![Rational::zero(); dim];
                a[i] = Rational::from_integer(1.into());
                Constraint::new(a, -x[i].clone())
            })
            .collect();
        HPolytope { dim, ineqs: vec![], eqs }
    }

    /// The segment between `a` and `b`, described without parameters.
    pub fn segment(a: &[Rational], b: &[Rational]) -> Self {
        // Parametrize x = a + s (b - a), s ∈ [0,1], then eliminate s.
        let dim = a.len();
        let mut lifted = HPolytope::universe(dim + 1);
        for i in 0..dim {
            let mut row = vec![Rational::zero(); dim + 1];
            row[i] = Rational::from_integer(1.into());
            row[dim] = -(&b[i] - &a[i]);
            lifted.eqs.push(Constraint::new(row, -a[i].clone()));
        }
        let mut s = vec![Rational::zero(); dim + 1];
        s[dim] = Rational::from_integer(1.into());
        lifted.ineqs.push(Constraint::new(s.clone(), Rational::zero()));
        s[dim] = Rational::from_integer((-1).into());
        lifted.ineqs.push(Constraint::new(s, Rational::from_integer(1.into())));
        lifted.fm_eliminate(&[dim])
    }

    pub fn add_ineq(&mut self, c: Constraint) {
        assert_eq!(c.dim(), self.dim);
        self.ineqs.push(c);
    }

    pub fn add_eq(&mut self, c: Constraint) {
        assert_eq!(c.dim(), self.dim);
        self.eqs.push(c);
    }

    /// Concatenates constraints without simplification.
    pub fn meet(&self, other: &HPolytope) -> Result<HPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut p = self.clone();
        p.ineqs.extend(other.ineqs.iter().cloned());
        p.eqs.extend(other.eqs.iter().cloned());
        Ok(p)
    }

    /// Intersection followed by redundancy removal.
    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope> {
        Ok(self.meet(other)?.reduce_redundant())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.ineqs.iter().all(|c| !c.eval(x).is_negative())
            && self.eqs.iter().all(|c| c.eval(x).is_zero())
    }

    pub fn contains_f64(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim
            && self.ineqs.iter().all(|c| c.eval_f64(x) >= -tol)
            && self.eqs.iter().all(|c| c.eval_f64(x).abs() <= tol)
    }

    /// Applies the substitution `x = M y + v` (`m` is `dim × new_dim`),
    /// giving the preimage polytope in `y` coordinates.
    pub fn pullback(&self, m: &[Vec<Rational>], v: &[Rational]) -> HPolytope {
        let new_dim = m.first().map_or(0, |r| r.len());
        HPolytope {
            dim: new_dim,
            ineqs: self.ineqs.iter().map(|c| c.substitute(m, v)).collect(),
            eqs: self.eqs.iter().map(|c| c.substitute(m, v)).collect(),
        }
    }

    /// Places coordinate `i` of this polytope at `positions[i]` in a space of
    /// dimension `new_dim`; the other coordinates are unconstrained.
    pub fn embed(&self, new_dim: usize, positions: &[usize]) -> HPolytope {
        assert_eq!(positions.len(), self.dim);
        let lift = |c: &Constraint| {
            let mut a = vec![Rational::zero(); new_dim];
            for (i, &p) in positions.iter().enumerate() {
                a[p] = c.coeffs[i].clone();
            }
            Constraint::new(a, c.constant.clone())
        };
        HPolytope { dim: new_dim, ineqs: self.ineqs.iter().map(lift).collect(), eqs: self.eqs.iter().map(lift).collect() }
    }

    /// Fixes the listed coordinates and removes them from the ambient space.
    pub fn fix_coordinates(&self, assignments: &[(usize, Rational)]) -> Result<HPolytope> {
        let fixed: BTreeSet<usize> = assignments.iter().map(|(i, _)| *i).collect();
        if fixed.len() != assignments.len() {
            return Err(Error::Precondition("coordinate assigned twice".into()));
        }
        if let Some(&bad) = fixed.iter().find(|&&i| i >= self.dim) {
            return Err(Error::Precondition(format!("coordinate {bad} out of range")));
        }
        let free: Vec<usize> = (0..self.dim).filter(|i| !fixed.contains(i)).collect();
        let mut m = vec![vec![Rational::zero(); free.len()]; self.dim];
        let mut v = vec![Rational::zero(); self.dim];
        for (j, &i) in free.iter().enumerate() {
            m[i][j] = Rational::from_integer(1.into());
        }
        for (i, val) in assignments {
            v[*i] = val.clone();
        }
        Ok(self.pullback(&m, &v).reduce_redundant())
    }

    /// Sorted, normalized, deduplicated constraint rows. Does not detect
    /// semantic redundancy.
    pub fn normalized(&self) -> HPolytope {
        let ineqs: BTreeSet<Constraint> = self.ineqs.iter().map(|c| c.normalized()).collect();
        let eqs: BTreeSet<Constraint> = self.eqs.iter().map(|c| c.normalized_equality()).collect();
        HPolytope { dim: self.dim, ineqs: ineqs.into_iter().collect(), eqs: eqs.into_iter().collect() }
    }

    /// Exact vertex set, sorted lexicographically.
    pub fn vertices(&self) -> Result<Vec<Vec<Rational>>> {
        vertex::enumerate(self)
    }

    pub fn enumerate_vertices(&self) -> Result<VPolytope> {
        Ok(VPolytope { vertices: self.vertices()? })
    }

    pub fn volume(&self) -> Result<Rational> {
        volume::volume(self)
    }

    /// Relative (affine-hull) Euclidean volume. Not rational in general.
    pub fn relative_volume(&self) -> Result<f64> {
        volume::relative_volume(self)
    }

    /// Tests whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &HPolytope) -> Result<bool> {
        let vs = match self.vertices() {
            Ok(v) => v,
            Err(Error::Empty) => return Ok(true),
            Err(e) => return Err(e),
        };
        Ok(vs.iter().all(|v| other.contains(v)))
    }
}

/// A polytope presented by its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub vertices: Vec<Vec<Rational>>,
}

impl VPolytope {
    /// H-representation of the convex hull, obtained by polarity: facets of
    /// the hull are the extreme rays of the cone of valid inequalities.
    pub fn to_h(&self) -> Result<HPolytope> {
        vertex::hull(&self.vertices)
    }
}
