//! Quantum Littlewood–Richardson data and the monodromy inequality systems
//! for SU(2) and SU(4)/C₂.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{Constraint, HPolytope};
use crate::rational::{int, q, Rational};

/// One structure constant `N_{ab}^{c,d}(r,k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QlrEntry {
    pub r: usize,
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: usize,
    pub n_coeff: u32,
}

impl QlrEntry {
    /// `|a| + |b| = |c| + (r + k)·d`, which every nonzero coefficient obeys.
    pub fn degree_consistent(&self) -> bool {
        let s = |v: &Vec<usize>| v.iter().sum::<usize>();
        s(&self.a) + s(&self.b) == s(&self.c) + (self.r + self.k) * self.d
    }

    fn swapped(&self) -> QlrEntry {
        QlrEntry { a: self.b.clone(), b: self.a.clone(), ..self.clone() }
    }
}

type Row = (&'static [usize], &'static [usize], &'static [usize], usize);

const GR_1_1: &[Row] = &[(&[0], &[0], &[0], 0), (&[1], &[0], &[1], 0), (&[1], &[1], &[0], 1)];

const GR_1_3: &[Row] = &[
    (&[0], &[0], &[0], 0),
    (&[0], &[1], &[1], 0),
    (&[0], &[2], &[2], 0),
    (&[0], &[3], &[3], 0),
    (&[1], &[1], &[2], 0),
    (&[1], &[2], &[3], 0),
    (&[1], &[3], &[0], 1),
    (&[2], &[2], &[0], 1),
    (&[2], &[3], &[1], 1),
    (&[3], &[3], &[2], 1),
];

const GR_3_1: &[Row] = &[
    (&[0, 0, 0], &[0, 0, 0], &[0, 0, 0], 0),
    (&[0, 0, 0], &[1, 0, 0], &[1, 0, 0], 0),
    (&[0, 0, 0], &[1, 1, 0], &[1, 1, 0], 0),
    (&[0, 0, 0], &[1, 1, 1], &[1, 1, 1], 0),
    (&[1, 0, 0], &[1, 0, 0], &[1, 1, 0], 0),
    (&[1, 0, 0], &[1, 1, 0], &[1, 1, 1], 0),
    (&[1, 0, 0], &[1, 1, 1], &[0, 0, 0], 1),
    (&[1, 1, 0], &[1, 1, 0], &[0, 0, 0], 1),
    (&[1, 1, 0], &[1, 1, 1], &[1, 0, 0], 1),
    (&[1, 1, 1], &[1, 1, 1], &[1, 1, 0], 1),
];

const GR_2_2: &[Row] = &[
    (&[0, 0], &[0, 0], &[0, 0], 0),
    (&[0, 0], &[1, 0], &[1, 0], 0),
    (&[0, 0], &[1, 1], &[1, 1], 0),
    (&[0, 0], &[2, 0], &[2, 0], 0),
    (&[0, 0], &[2, 1], &[2, 1], 0),
    (&[0, 0], &[2, 2], &[2, 2], 0),
    (&[1, 0], &[1, 0], &[2, 0], 0),
    (&[1, 0], &[1, 0], &[1, 1], 0),
    (&[1, 0], &[1, 1], &[2, 1], 0),
    (&[1, 0], &[2, 0], &[2, 1], 0),
    (&[1, 0], &[2, 1], &[0, 0], 1),
    (&[1, 0], &[2, 1], &[1, 1], 0),
    (&[1, 0], &[2, 1], &[2, 2], 0),
    (&[1, 0], &[2, 2], &[1, 0], 1),
    (&[1, 1], &[1, 1], &[2, 2], 0),
    (&[1, 1], &[2, 0], &[0, 0], 1),
    (&[1, 1], &[2, 1], &[1, 0], 1),
    (&[1, 1], &[2, 2], &[2, 0], 1),
    (&[2, 0], &[2, 0], &[2, 2], 0),
    (&[2, 0], &[2, 1], &[1, 0], 1),
    (&[2, 0], &[2, 2], &[1, 1], 1),
    (&[2, 1], &[2, 1], &[2, 0], 1),
    (&[2, 1], &[2, 1], &[1, 1], 1),
    (&[2, 1], &[2, 2], &[2, 1], 1),
    (&[2, 2], &[2, 2], &[0, 0], 2),
];

fn entries(r: usize, k: usize, rows: &[Row]) -> Vec<QlrEntry> {
    rows.iter()
        .map(|(a, b, c, d)| QlrEntry { r, k, a: a.to_vec(), b: b.to_vec(), c: c.to_vec(), d: *d, n_coeff: 1 })
        .collect()
}

/// The tabulated rows, as printed.
pub fn qlr_base_table(n: usize) -> Result<Vec<QlrEntry>> {
    match n {
        2 => Ok(entries(1, 1, GR_1_1)),
        4 => {
            let mut v = entries(1, 3, GR_1_3);
            v.extend(entries(3, 1, GR_3_1));
            v.extend(entries(2, 2, GR_2_2));
            Ok(v)
        }
        _ => Err(Error::Precondition(format!("tables exist for n = 2 and n = 4, not {n}"))),
    }
}

/// Tabulated rows together with their `a ↔ b` images, deduplicated.
pub fn qlr_table(n: usize) -> Result<Vec<QlrEntry>> {
    let mut out: Vec<QlrEntry> = vec![];
    for e in qlr_base_table(n)? {
        for x in [e.clone(), e.swapped()] {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Rows that actually generate inequalities: the expanded table minus the
/// entries violating the degree condition.
pub fn qlr_generating_table(n: usize) -> Result<Vec<QlrEntry>> {
    Ok(qlr_table(n)?.into_iter().filter(QlrEntry::degree_consistent).collect())
}

/// `{k + j − seq_j}`, as 1-based indices.
pub fn partition_bijection(seq: &[usize], r: usize, k: usize) -> Result<Vec<usize>> {
    if seq.len() != r {
        return Err(Error::Precondition(format!("sequence {seq:?} does not have length {r}")));
    }
    if seq.windows(2).any(|w| w[0] < w[1]) || seq.iter().any(|&x| x > k) {
        return Err(Error::Precondition(format!("sequence {seq:?} is not in Q({r},{k})")));
    }
    Ok(seq.iter().enumerate().map(|(j, &s)| k + (j + 1) - s).collect())
}

/// Inverse of [`partition_bijection`].
pub fn partition_from_subset(subset: &[usize], r: usize, k: usize) -> Result<Vec<usize>> {
    if subset.len() != r || subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&i| i == 0 || i > r + k) {
        return Err(Error::Precondition(format!("{subset:?} is not an increasing {r}-subset of 1..={}", r + k)));
    }
    subset
        .iter()
        .enumerate()
        .map(|(j, &i)| (k + j + 1).checked_sub(i).ok_or_else(|| Error::Precondition(format!("{subset:?} is out of range"))))
        .collect()
}

/// A linear system over named coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalitySystem {
    pub names: Vec<String>,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

impl InequalitySystem {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn to_polytope(&self) -> HPolytope {
        HPolytope { dim: self.dim(), ineqs: self.ineqs.clone(), eqs: self.eqs.clone() }
    }

    /// Drops the last coordinate of each of the three blocks via the
    /// sum-zero equalities.
    pub fn free_coordinates(&self) -> HPolytope {
        let n = self.dim() / 3;
        let m = n - 1;
        // x_full = M y, with the last entry of each block minus the sum.
        let mut map = vec![vec![int(0); 3 * m]; 3 * n];
        for blk in 0..3 {
            for i in 0..m {
                map[blk * n + i][blk * m + i] = int(1);
                map[blk * n + m][blk * m + i] = int(-1);
            }
        }
        let zero = vec![int(0); 3 * n];
        let ineqs = self.ineqs.iter().map(|c| c.substitute(&map, &zero)).collect();
        let eqs = self.eqs.iter().map(|c| c.substitute(&map, &zero)).filter(|c: &Constraint| !c.is_constant()).collect();
        HPolytope { dim: 3 * m, ineqs, eqs }
    }
}

fn block_names(n: usize) -> Vec<String> {
    ["a", "b", "d"].iter().flat_map(|p| (1..=n).map(move |i| format!("{p}{i}"))).collect()
}

/// Ordering and wraparound rows `x1 ≥ … ≥ xn ≥ x1 − 1` for block `blk`.
fn alcove_block(n: usize, blk: usize) -> Vec<Constraint> {
    let mut out = vec![];
    for i in 0..n - 1 {
        let mut a = vec![int(0); 3 * n];
        a[blk * n + i] = int(1);
        a[blk * n + i + 1] = int(-1);
        out.push(Constraint::new(a, int(0)));
    }
    let mut a = vec![int(0); 3 * n];
    a[blk * n + n - 1] = int(1);
    a[blk * n] = int(-1);
    out.push(Constraint::new(a, int(1)));
    out
}

fn sum_zero(n: usize, blk: usize) -> Constraint {
    let mut a = vec![int(0); 3 * n];
    for i in 0..n {
        a[blk * n + i] = int(1);
    }
    Constraint::new(a, int(0))
}

/// `d − Σ α_{k+i−a_i} − Σ β_{k+i−b_i} + Σ δ_{k+i−c_i} ≥ 0` over `3n`
/// coordinates.
pub fn entry_inequality(e: &QlrEntry) -> Result<Constraint> {
    let n = e.r + e.k;
    let mut coeffs = vec![int(0); 3 * n];
    for (blk, seq, sign) in [(0, &e.a, -1), (1, &e.b, -1), (2, &e.c, 1)] {
        for idx in partition_bijection(seq, e.r, e.k)? {
            coeffs[blk * n + idx - 1] += int(sign);
        }
    }
    Ok(Constraint::new(coeffs, int(e.d as i64)))
}

fn monodromy_system(n: usize) -> Result<InequalitySystem> {
    let mut ineqs = vec![];
    for e in qlr_generating_table(n)? {
        let c = entry_inequality(&e)?;
        if !ineqs.contains(&c) {
            ineqs.push(c);
        }
    }
    for blk in 0..3 {
        ineqs.extend(alcove_block(n, blk));
    }
    let eqs = (0..3).map(|blk| sum_zero(n, blk)).collect();
    Ok(InequalitySystem { names: block_names(n), ineqs, eqs })
}

/// The SU(4) monodromy system over `(α1..α4, β1..β4, δ1..δ4)`.
pub fn su4_inequalities() -> InequalitySystem {
    monodromy_system(4).expect("SU(4) tables are well formed")
}

/// The SU(2) system over `(α1, β1, δ1)`.
pub fn su2_inequalities() -> InequalitySystem {
    let full = monodromy_system(2).expect("SU(2) tables are well formed");
    let p = full.free_coordinates();
    InequalitySystem { names: vec!["a1".into(), "b1".into(), "d1".into()], ineqs: p.ineqs, eqs: p.eqs }
}

/// The two systems of the C₂ rule: unchanged, and with `δ ↦ ρ(δ)`.
pub fn c2_branches(sys: &InequalitySystem) -> Result<(InequalitySystem, InequalitySystem)> {
    if sys.dim() != 12 {
        return Err(Error::DimensionMismatch { expected: 12, found: sys.dim() });
    }
    let h = q(1, 2);
    let twist = |c: &Constraint| {
        let w: Vec<Rational> = c.coeffs[8..12].to_vec();
        let mut coeffs = c.coeffs.clone();
        coeffs[8] = w[2].clone();
        coeffs[9] = w[3].clone();
        coeffs[10] = w[0].clone();
        coeffs[11] = w[1].clone();
        let shift = (&w[0] + &w[1] - &w[2] - &w[3]) * &h;
        Constraint::new(coeffs, &c.constant + shift)
    };
    let second = InequalitySystem {
        names: sys.names.clone(),
        ineqs: sys.ineqs.iter().map(twist).collect(),
        eqs: sys.eqs.iter().map(twist).collect(),
    };
    Ok((sys.clone(), second))
}

/// The monodromy polytope in the nine free coordinates
/// `(α1..α3, β1..β3, δ1..δ3)`.
pub fn su4_free_polytope() -> HPolytope {
    su4_inequalities().free_coordinates()
}
