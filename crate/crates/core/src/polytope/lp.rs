//! Exact simplex method over the rationals for problems in standard form
//! `min c·y  s.t.  A y = b, y ≥ 0`, using Bland's rule.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, y: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    // Negated objective value.
    neg_obj: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if p != Rational::from_integer(1.into()) {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                let d = &f * &prow[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &f * &prhs;
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for &j in &nz {
                let d = &f * &prow[j];
                self.cost[j] -= d;
            }
            self.neg_obj -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the first `ncols` columns. Returns false when
    /// the objective is unbounded below.
    fn run(&mut self, ncols: usize) -> bool {
        loop {
            let enter = (0..ncols).find(|&j| self.cost[j].is_negative());
            let Some(c) = enter else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Solves `min c·y` subject to `A y = b`, `y ≥ 0`. `a` is given row-major.
pub fn solve_standard(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    if m == 0 {
        if c.iter().any(|x| x.is_negative()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal { value: Rational::zero(), y: vec![Rational::zero(); n] };
    }
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { one.clone() } else { Rational::zero() }));
        rows.push(r);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut cost = vec![Rational::zero(); n + m];
    let mut neg_obj = Rational::zero();
    for i in 0..m {
        for j in 0..n {
            if !rows[i][j].is_zero() {
                cost[j] -= &rows[i][j];
            }
        }
        neg_obj -= &rhs[i];
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect(), cost, neg_obj };
    t.run(n + m);
    if !t.neg_obj.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    for r in t.rows.iter_mut() {
        r.truncate(n);
    }
    let mut cost = c.to_vec();
    let mut neg_obj = Rational::zero();
    for (i, &bv) in t.basis.iter().enumerate() {
        let cb = c[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            if !t.rows[i][j].is_zero() {
                cost[j] -= &cb * &t.rows[i][j];
            }
        }
        neg_obj -= &cb * &t.rhs[i];
    }
    t.cost = cost;
    t.neg_obj = neg_obj;
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        y[bv] = t.rhs[i].clone();
    }
    LpOutcome::Optimal { value: -t.neg_obj, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn small_problem() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![int(1), int(2), int(1), int(0)], vec![int(3), int(1), int(0), int(1)]];
        let b = vec![int(4), int(6)];
        let c = vec![int(-1), int(-1), int(0), int(0)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { value, y } => {
                assert_eq!(value, q(-14, 5));
                assert_eq!(y[0], q(8, 5));
                assert_eq!(y[1], q(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![int(1), int(1)]];
        assert_eq!(solve_standard(&a, &[int(-1)], &[int(0), int(0)]), LpOutcome::Infeasible);
        let a = vec![vec![int(1), int(-1)]];
        assert_eq!(solve_standard(&a, &[int(0)], &[int(-1), int(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        match solve_standard(&a, &[int(1), int(2)], &[int(1), int(2)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }
}
