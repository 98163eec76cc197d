//! Exact volumes by boundary triangulation, and union volumes by
//! inclusion–exclusion.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::vertex::{affine_rank, rref};
use super::{HPolytope, PolytopeUnion};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

fn det(m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut m = m;
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer((k as i64).into()))
}

/// Facets as vertex-index sets, for a full-dimensional bounded polytope.
fn facet_sets(p: &HPolytope, verts: &[Vec<Rational>]) -> Vec<BTreeSet<usize>> {
    let d = p.dim as i64;
    let mut out: Vec<BTreeSet<usize>> = vec![];
    for c in &p.ineqs {
        let s: BTreeSet<usize> = (0..verts.len()).filter(|&i| c.eval(&verts[i]).is_zero()).collect();
        if s.len() < p.dim {
            continue;
        }
        let pts: Vec<Vec<Rational>> = s.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts) == d - 1 && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Simplices (as vertex index lists) triangulating the face spanned by
/// `face`, which has affine dimension `k`.
fn triangulate(face: &BTreeSet<usize>, k: usize, facets: &[BTreeSet<usize>], verts: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let apex = *face.iter().next().unwrap();
    if k == 0 {
        return vec![vec![apex]];
    }
    if k == 1 {
        return vec![face.iter().copied().collect()];
    }
    let mut subfaces: Vec<BTreeSet<usize>> = vec![];
    for f in facets {
        let g: BTreeSet<usize> = face.intersection(f).copied().collect();
        if g.len() < k || g.contains(&apex) || subfaces.contains(&g) {
            continue;
        }
        let pts: Vec<Vec<Rational>> = g.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts) == k as i64 - 1 {
            subfaces.push(g);
        }
    }
    let mut out = vec![];
    for g in &subfaces {
        for mut s in triangulate(g, k - 1, facets, verts) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Exact volume; zero when the polytope is not full-dimensional.
pub(crate) fn volume(p: &HPolytope) -> Result<Rational> {
    let verts = match p.vertices() {
        Ok(v) => v,
        Err(Error::Empty) => return Ok(Rational::zero()),
        Err(e) => return Err(e),
    };
    if affine_rank(&verts) < p.dim as i64 {
        return Ok(Rational::zero());
    }
    if p.dim == 0 {
        return Ok(Rational::one());
    }
    let facets = facet_sets(p, &verts);
    let all: BTreeSet<usize> = (0..verts.len()).collect();
    let simplices = triangulate(&all, p.dim, &facets, &verts);
    let mut total = Rational::zero();
    for s in simplices {
        let m: Vec<Vec<Rational>> = s[1..].iter().map(|&i| verts[i].iter().zip(&verts[s[0]]).map(|(a, b)| a - b).collect()).collect();
        total += det(m).abs();
    }
    Ok(total / factorial(p.dim))
}

/// Volume of the polytope within its own affine hull.
pub(crate) fn relative_volume(p: &HPolytope) -> Result<f64> {
    let verts = match p.vertices() {
        Ok(v) => v,
        Err(Error::Empty) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let k = affine_rank(&verts);
    if k <= 0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let k = k as usize;
    if k == p.dim {
        return volume(p).map(|v| to_f64(&v));
    }
    // Express the polytope in coordinates of its affine hull (pivot
    // coordinates), compute that volume, then correct by the Gram factor.
    let diffs: Vec<Vec<Rational>> = verts[1..].iter().map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect()).collect();
    let (rows, pivots) = rref(&diffs);
    let proj: Vec<Vec<Rational>> = verts.iter().map(|v| pivots.iter().map(|&i| v[i].clone()).collect()).collect();
    let h = super::VPolytope { vertices: proj }.to_h()?;
    let base = to_f64(&volume(&h)?);
    // The map from pivot coordinates to the hull is y ↦ Rᵀ y, whose Gram
    // determinant gives the area scale.
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| rows[i].iter().zip(&rows[j]).map(|(a, b)| to_f64(a) * to_f64(b)).sum()).collect())
        .collect();
    let g = nalgebra::DMatrix::from_fn(k, k, |i, j| gram[i][j]);
    Ok(base * g.determinant().sqrt())
}

/// Exact volume of a finite union by inclusion–exclusion. Subsets whose
/// intersection has zero volume are pruned together with all their supersets.
pub fn union_volume(u: &PolytopeUnion) -> Result<Rational> {
    let parts: Vec<HPolytope> = u.parts.iter().map(|p| p.reduce_redundant()).collect();
    let vols: Vec<Rational> = parts.par_iter().map(volume).collect::<Result<Vec<_>>>()?;
    let live: Vec<usize> = (0..parts.len()).filter(|&i| vols[i].is_positive()).collect();
    let mut total = Rational::zero();
    // Depth-first over increasing index subsets.
    fn recurse(
        parts: &[HPolytope],
        live: &[usize],
        start: usize,
        current: &HPolytope,
        size: usize,
        total: &mut Rational,
    ) -> Result<()> {
        for k in start..live.len() {
            let next = current.meet(&parts[live[k]])?.reduce_redundant();
            let v = volume(&next)?;
            if v.is_zero() {
                continue;
            }
            if size % 2 == 1 {
                *total -= &v;
            } else {
                *total += &v;
            }
            recurse(parts, live, k + 1, &next, size + 1, total)?;
        }
        Ok(())
    }
    let partials: Vec<Rational> = (0..live.len())
        .into_par_iter()
        .map(|k| {
            let mut t = vols[live[k]].clone();
            recurse(&parts, &live, k + 1, &parts[live[k]], 1, &mut t)?;
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    for t in partials {
        total += t;
    }
    Ok(total)
}
