//! Feasibility, redundancy removal, dimension, and Fourier–Motzkin projection.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use super::lp::{solve_standard, LpOutcome};
use super::{Constraint, HPolytope};
use crate::rational::Rational;

/// Farkas system for implying `target` from `rows` and `eqs`: minimize
/// `Σ λ_i c_i + Σ μ_j e_j` subject to `Σ λ_i a_i + Σ μ_j f_j = target`.
fn farkas_lp(dim: usize, rows: &[&Constraint], eqs: &[Constraint], target: &[Rational]) -> LpOutcome {
    let ncols = rows.len() + 2 * eqs.len();
    let mut a = vec![Vec::with_capacity(ncols); dim];
    let mut c = Vec::with_capacity(ncols);
    for r in rows {
        for (k, row) in a.iter_mut().enumerate() {
            row.push(r.coeffs[k].clone());
        }
        c.push(r.constant.clone());
    }
    for e in eqs {
        for (k, row) in a.iter_mut().enumerate() {
            row.push(e.coeffs[k].clone());
            row.push(-e.coeffs[k].clone());
        }
        c.push(e.constant.clone());
        c.push(-e.constant.clone());
    }
    solve_standard(&a, target, &c)
}

impl HPolytope {
    /// Exact emptiness test via the Farkas alternative.
    pub fn is_empty(&self) -> bool {
        if self.ineqs.iter().any(|c| c.is_constant() && c.constant.is_negative()) {
            return true;
        }
        if self.eqs.iter().any(|c| c.is_constant() && !c.constant.is_zero()) {
            return true;
        }
        let rows: Vec<&Constraint> = self.ineqs.iter().collect();
        let zero = vec![Rational::zero(); self.dim];
        matches!(farkas_lp(self.dim, &rows, &self.eqs, &zero), LpOutcome::Unbounded)
    }

    /// Whether `c` holds on every point of the polytope.
    pub fn implies(&self, c: &Constraint) -> bool {
        let rows: Vec<&Constraint> = self.ineqs.iter().collect();
        implied(self.dim, &rows, &self.eqs, c)
    }

    /// Removes every inequality implied by the others. Empty inputs collapse to
    /// [`HPolytope::empty`].
    pub fn reduce_redundant(&self) -> HPolytope {
        match self.redundancy_filter() {
            None => HPolytope::empty(self.dim),
            Some((p, _)) => p,
        }
    }

    /// Returns the reduced polytope together with, for each kept inequality,
    /// its index in `self.ineqs`. `None` when empty.
    pub(crate) fn redundancy_filter(&self) -> Option<(HPolytope, Vec<usize>)> {
        let mut eqs: Vec<Constraint> = Vec::new();
        let mut seen_eq = BTreeSet::new();
        for e in &self.eqs {
            let n = e.normalized_equality();
            if n.is_constant() {
                if !n.constant.is_zero() {
                    return None;
                }
                continue;
            }
            if seen_eq.insert(n.clone()) {
                eqs.push(n);
            }
        }
        let mut rows: Vec<(Constraint, usize)> = Vec::new();
        let mut seen: HashMap<Constraint, usize> = HashMap::new();
        for (i, c) in self.ineqs.iter().enumerate() {
            let n = c.normalized();
            if n.is_constant() {
                if n.constant.is_negative() {
                    return None;
                }
                continue;
            }
            if seen.contains_key(&n) {
                continue;
            }
            seen.insert(n.clone(), i);
            rows.push((n, i));
        }
        let probe = HPolytope { dim: self.dim, ineqs: rows.iter().map(|r| r.0.clone()).collect(), eqs: eqs.clone() };
        if probe.is_empty() {
            return None;
        }
        let mut keep = vec![true; rows.len()];
        for k in 0..rows.len() {
            let others: Vec<&Constraint> =
                rows.iter().enumerate().filter(|&(j, _)| j != k && keep[j]).map(|(_, r)| &r.0).collect();
            if implied(self.dim, &others, &eqs, &rows[k].0) {
                keep[k] = false;
            }
        }
        let mut ineqs = vec![];
        let mut idx = vec![];
        for (k, (c, i)) in rows.into_iter().enumerate() {
            if keep[k] {
                ineqs.push(c);
                idx.push(i);
            }
        }
        Some((HPolytope { dim: self.dim, ineqs, eqs }, idx))
    }

    /// Inequalities that hold with equality everywhere on the polytope.
    pub fn implicit_equalities(&self) -> Vec<Constraint> {
        let mut out = vec![];
        for c in &self.ineqs {
            if self.max_of(c).is_some_and(|m| m.is_zero()) {
                out.push(c.clone());
            }
        }
        out
    }

    /// Maximum of the affine function `c` over the polytope; `None` when
    /// empty or unbounded.
    pub fn max_of(&self, c: &Constraint) -> Option<Rational> {
        // Variables: x⁺, x⁻, one slack per inequality.
        let n = self.dim;
        let m = self.ineqs.len();
        let ncols = 2 * n + m;
        let mut a = vec![];
        let mut b = vec![];
        for (i, r) in self.ineqs.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols];
            for k in 0..n {
                row[k] = r.coeffs[k].clone();
                row[n + k] = -r.coeffs[k].clone();
            }
            row[2 * n + i] = -Rational::one();
            a.push(row);
            b.push(-r.constant.clone());
        }
        for r in &self.eqs {
            let mut row = vec![Rational::zero(); ncols];
            for k in 0..n {
                row[k] = r.coeffs[k].clone();
                row[n + k] = -r.coeffs[k].clone();
            }
            a.push(row);
            b.push(-r.constant.clone());
        }
        let mut cost = vec![Rational::zero(); ncols];
        for k in 0..n {
            cost[k] = -c.coeffs[k].clone();
            cost[n + k] = c.coeffs[k].clone();
        }
        match solve_standard(&a, &b, &cost) {
            LpOutcome::Optimal { value, .. } => Some(-value + &c.constant),
            _ => None,
        }
    }

    /// Affine dimension of the feasible set, −1 when empty.
    pub fn dimension(&self) -> i64 {
        let p = self.reduce_redundant();
        if p.is_empty() {
            return -1;
        }
        let mut rows: Vec<Vec<Rational>> = p.eqs.iter().map(|e| e.coeffs.clone()).collect();
        rows.extend(p.implicit_equalities().into_iter().map(|c| c.coeffs));
        self.dim as i64 - super::rank(&rows) as i64
    }

    /// Exact projection onto the coordinates not listed in `coords`. The
    /// output lives in the remaining coordinates, in their original order.
    pub fn fm_eliminate(&self, coords: &[usize]) -> HPolytope {
        let elim: BTreeSet<usize> = coords.iter().copied().filter(|&c| c < self.dim).collect();
        let keep_cols: Vec<usize> = (0..self.dim).filter(|c| !elim.contains(c)).collect();
        let mut p = self.normalized();
        // Solve equalities for eliminated variables first.
        for &v in &elim {
            let Some(pos) = p.eqs.iter().position(|e| !e.coeffs[v].is_zero()) else { continue };
            let e = p.eqs.remove(pos);
            let sub = |r: &Constraint| eliminate_with_equality(r, &e, v);
            p.ineqs = p.ineqs.iter().map(sub).collect();
            p.eqs = p.eqs.iter().map(sub).collect();
        }
        let Some((mut p, _)) = p.redundancy_filter() else {
            return HPolytope::empty(keep_cols.len());
        };
        let mut remaining: Vec<usize> = elim.iter().copied().filter(|&v| p.ineqs.iter().any(|r| !r.coeffs[v].is_zero())).collect();
        // Chernikov histories: indices of the originating rows.
        let mut hist: Vec<BTreeSet<usize>> = (0..p.ineqs.len()).map(|i| BTreeSet::from([i])).collect();
        let mut steps = 0usize;
        while !remaining.is_empty() {
            let (vi, &v) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| {
                    let pos = p.ineqs.iter().filter(|r| r.coeffs[v].is_positive()).count();
                    let neg = p.ineqs.iter().filter(|r| r.coeffs[v].is_negative()).count();
                    (pos * neg, v)
                })
                .unwrap();
            remaining.remove(vi);
            steps += 1;
            let mut next: Vec<Constraint> = vec![];
            let mut next_hist: Vec<BTreeSet<usize>> = vec![];
            let mut index: HashMap<Constraint, usize> = HashMap::new();
            let mut push = |c: Constraint, h: BTreeSet<usize>, next: &mut Vec<Constraint>, next_hist: &mut Vec<BTreeSet<usize>>| {
                let c = c.normalized();
                if let Some(&j) = index.get(&c) {
                    if h.len() < next_hist[j].len() {
                        next_hist[j] = h;
                    }
                    return;
                }
                index.insert(c.clone(), next.len());
                next.push(c);
                next_hist.push(h);
            };
            let (mut pos, mut neg) = (vec![], vec![]);
            for (i, r) in p.ineqs.iter().enumerate() {
                if r.coeffs[v].is_positive() {
                    pos.push(i);
                } else if r.coeffs[v].is_negative() {
                    neg.push(i);
                } else {
                    push(r.clone(), hist[i].clone(), &mut next, &mut next_hist);
                }
            }
            for &i in &pos {
                for &j in &neg {
                    let h: BTreeSet<usize> = hist[i].union(&hist[j]).copied().collect();
                    if h.len() > steps + 1 {
                        continue;
                    }
                    let (a, b) = (&p.ineqs[i], &p.ineqs[j]);
                    let fa = -b.coeffs[v].clone();
                    let fb = a.coeffs[v].clone();
                    let coeffs: Vec<Rational> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * &fa + y * &fb).collect();
                    let constant = &a.constant * &fa + &b.constant * &fb;
                    let mut c = Constraint::new(coeffs, constant);
                    c.coeffs[v] = Rational::zero();
                    push(c, h, &mut next, &mut next_hist);
                }
            }
            let q = HPolytope { dim: p.dim, ineqs: next, eqs: p.eqs.clone() };
            match q.redundancy_filter() {
                None => return HPolytope::empty(keep_cols.len()),
                Some((r, idx)) => {
                    // Rows are normalized and deduplicated, so indices line up.
                    let q_norm: Vec<Constraint> = q.ineqs.iter().map(|c| c.normalized()).collect();
                    hist = idx
                        .iter()
                        .map(|&i| {
                            debug_assert_eq!(q_norm[i], q.ineqs[i]);
                            next_hist[i].clone()
                        })
                        .collect();
                    p = r;
                }
            }
        }
        let project = |c: &Constraint| Constraint::new(keep_cols.iter().map(|&k| c.coeffs[k].clone()).collect(), c.constant.clone());
        let out = HPolytope {
            dim: keep_cols.len(),
            ineqs: p.ineqs.iter().map(project).collect(),
            eqs: p.eqs.iter().map(project).collect(),
        };
        out.reduce_redundant()
    }
}

fn implied(dim: usize, rows: &[&Constraint], eqs: &[Constraint], target: &Constraint) -> bool {
    match farkas_lp(dim, rows, eqs, &target.coeffs) {
        LpOutcome::Optimal { value, .. } => value <= target.constant,
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

/// Uses the equality `e` (with nonzero coefficient on `v`) to remove `v` from `r`.
fn eliminate_with_equality(r: &Constraint, e: &Constraint, v: usize) -> Constraint {
    let f = &r.coeffs[v] / &e.coeffs[v];
    if f.is_zero() {
        return r.clone();
    }
    let coeffs: Vec<Rational> = r.coeffs.iter().zip(&e.coeffs).map(|(a, b)| a - &f * b).collect();
    let mut c = Constraint::new(coeffs, &r.constant - &f * &e.constant);
    c.coeffs[v] = Rational::zero();
    c
}
