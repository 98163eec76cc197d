//! Double-description vertex enumeration over exact integers, and the dual
//! facet enumeration used to convert vertex lists back to inequalities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Constraint, HPolytope};
use crate::error::{Error, Result};
use crate::rational::{primitive, Rational};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Affine rank of a point set (dimension of its affine hull), −1 for none.
pub fn affine_rank(points: &[Vec<Rational>]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<Vec<Rational>> =
        points[1..].iter().map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect()).collect();
    rank(&diffs) as i64
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Parametrization `x = x0 + Σ_j z_j e_{free_j} + ...` of the solution set
/// of the equalities, with the free coordinates serving as parameters.
pub(crate) struct AffineParam {
    pub x0: Vec<Rational>,
    /// `dim × nfree` matrix.
    pub m: Vec<Vec<Rational>>,
    pub free: Vec<usize>,
}

pub(crate) fn parametrize(dim: usize, eqs: &[Constraint]) -> Option<AffineParam> {
    let aug: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|e| {
            let mut r = e.coeffs.clone();
            r.push(-e.constant.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(&aug);
    if pivots.contains(&dim) {
        return None;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut x0 = vec![Rational::zero(); dim];
    let mut m = vec![vec![Rational::zero(); free.len()]; dim];
    for (j, &f) in free.iter().enumerate() {
        m[f][j] = Rational::one();
    }
    for (row, &p) in rows.iter().zip(&pivots) {
        x0[p] = row[dim].clone();
        for (j, &f) in free.iter().enumerate() {
            m[p][j] = -row[f].clone();
        }
    }
    Some(AffineParam { x0, m, free })
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Extreme rays of the pointed cone `{y ∈ R^d : r·y ≥ 0 for r in rows}`.
/// Fails when the rows have rank below `d` (the cone has a lineality space).
fn dd_cone(rows: &[Vec<BigInt>], d: usize) -> std::result::Result<Vec<Vec<BigInt>>, ()> {
    let rat: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    // Greedily choose d independent rows.
    let mut chosen: Vec<usize> = vec![];
    let mut basis: Vec<Vec<Rational>> = vec![];
    for (i, r) in rat.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rank(&trial) > basis.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(());
    }
    // Rays of the simplicial cone are the columns of the inverse.
    let inv = invert(&basis);
    let nrows = rows.len();
    let mut rays: Vec<Vec<BigInt>> = vec![];
    let mut tight: Vec<Bits> = vec![];
    for j in 0..d {
        let col: Vec<Rational> = (0..d).map(|i| inv[i][j].clone()).collect();
        let ray = make_primitive(primitive(&col));
        let mut t = Bits::new(nrows);
        for (k, &ci) in chosen.iter().enumerate() {
            if k != j {
                t.set(ci);
            }
        }
        rays.push(ray);
        tight.push(t);
    }
    let done: std::collections::BTreeSet<usize> = chosen.iter().copied().collect();
    for h in 0..nrows {
        if done.contains(&h) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&rows[h], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for i in 0..rays.len() {
                if vals[i].is_zero() {
                    tight[i].set(h);
                }
            }
            continue;
        }
        let mut new_rays = vec![];
        let mut new_tight = vec![];
        for &p in &pos {
            for &n in &neg {
                let z = tight[p].and(&tight[n]);
                if (z.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|k| k == p || k == n || !z.subset_of(&tight[k]));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[n];
                let r: Vec<BigInt> = rays[n].iter().zip(&rays[p]).map(|(x, y)| a * x + &b * y).collect();
                let mut t = z;
                t.set(h);
                new_rays.push(make_primitive(r));
                new_tight.push(t);
            }
        }
        let mut kept_rays = vec![];
        let mut kept_tight = vec![];
        for i in 0..rays.len() {
            if !vals[i].is_negative() {
                let mut t = tight[i].clone();
                if vals[i].is_zero() {
                    t.set(h);
                }
                kept_rays.push(rays[i].clone());
                kept_tight.push(t);
            }
        }
        kept_rays.extend(new_rays);
        kept_tight.extend(new_tight);
        rays = kept_rays;
        tight = kept_tight;
    }
    Ok(rays)
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = m.len();
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let (rows, _) = rref(&aug);
    rows.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// Exact vertex enumeration of a bounded polytope.
pub(crate) fn enumerate(p: &HPolytope) -> Result<Vec<Vec<Rational>>> {
    let Some(param) = parametrize(p.dim, &p.eqs) else { return Err(Error::Empty) };
    let nfree = param.free.len();
    let rows: Vec<Constraint> = p.ineqs.iter().map(|c| c.substitute(&param.m, &param.x0)).collect();
    if nfree == 0 {
        if rows.iter().all(|c| !c.constant.is_negative()) {
            return Ok(vec![param.x0]);
        }
        return Err(Error::Empty);
    }
    // Homogenize: (z, t) with a·z + c·t ≥ 0 and t ≥ 0.
    let mut int_rows: Vec<Vec<BigInt>> = rows.iter().map(|c| c.integer_row()).collect();
    let mut t_row = vec![BigInt::zero(); nfree + 1];
    t_row[nfree] = BigInt::one();
    int_rows.push(t_row);
    let rays = match dd_cone(&int_rows, nfree + 1) {
        Ok(r) => r,
        Err(()) => {
            if p.is_empty() {
                return Err(Error::Empty);
            }
            return Err(Error::Unbounded);
        }
    };
    let mut verts = vec![];
    for r in &rays {
        let t = &r[nfree];
        if t.is_zero() {
            return Err(Error::Unbounded);
        }
        let tz = Rational::from_integer(t.clone());
        let z: Vec<Rational> = r[..nfree].iter().map(|x| Rational::from_integer(x.clone()) / &tz).collect();
        let x: Vec<Rational> = (0..p.dim)
            .map(|i| param.m[i].iter().zip(&z).fold(param.x0[i].clone(), |acc, (a, b)| acc + a * b))
            .collect();
        verts.push(x);
    }
    if verts.is_empty() {
        return Err(Error::Empty);
    }
    verts.sort();
    verts.dedup();
    Ok(verts)
}

/// H-representation of the convex hull of a finite point set.
pub(crate) fn hull(points: &[Vec<Rational>]) -> Result<HPolytope> {
    let Some(first) = points.first() else { return Err(Error::Empty) };
    let dim = first.len();
    // Affine hull equalities: null space of the difference vectors.
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    let (rows, pivots) = rref(&diffs);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut eqs = vec![];
    for &f in &free {
        // Null vector with w_f = 1 and pivots solved.
        let mut w = vec![Rational::zero(); dim];
        w[f] = Rational::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            w[pc] = -row[f].clone();
        }
        let c = -w.iter().zip(first).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        eqs.push(Constraint::new(w, c).normalized_equality());
    }
    let span = pivots.clone();
    let k = span.len();
    if k == 0 {
        return Ok(HPolytope { dim, ineqs: vec![], eqs });
    }
    // Points projected onto the pivot coordinates are affinely independent in R^k.
    let int_rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut v: Vec<Rational> = span.iter().map(|&i| p[i].clone()).collect();
            v.push(Rational::one());
            primitive(&v)
        })
        .collect();
    let rays = dd_cone(&int_rows, k + 1).map_err(|_| Error::Decomposition("degenerate hull".into()))?;
    let mut ineqs = vec![];
    for r in rays {
        if r[..k].iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut a = vec![Rational::zero(); dim];
        for (j, &i) in span.iter().enumerate() {
            a[i] = Rational::from_integer(r[j].clone());
        }
        ineqs.push(Constraint::new(a, Rational::from_integer(r[k].clone())).normalized());
    }
    ineqs.sort();
    ineqs.dedup();
    Ok(HPolytope { dim, ineqs, eqs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn ranks() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&m), 1);
        assert_eq!(affine_rank(&[vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]]), 1);
        assert_eq!(affine_rank(&[]), -1);
    }

    #[test]
    fn unbounded_is_reported() {
        let p = HPolytope::from_int_rows(2, &[vec![0, 1, 0], vec![0, 0, 1]], &[]);
        assert_eq!(p.vertices(), Err(Error::Unbounded));
    }

    #[test]
    fn flat_polytope_vertices() {
        // Triangle x + y + z = 1 in the positive orthant.
        let p = HPolytope::from_int_rows(3, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]], &[vec![-1, 1, 1, 1]]);
        let v = p.vertices().unwrap();
        assert_eq!(v.len(), 3);
        let h = hull(&v).unwrap();
        assert_eq!(h.eqs.len(), 1);
        assert_eq!(h.ineqs.len(), 3);
        assert!(h.contains(&[q(1, 3), q(1, 3), q(1, 3)]));
    }
}
