//! Depth sets `Π(P^n_S)`, expected depth and related measurements.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::alcove::{alcove_closure, alcove_rows, e, rho_image, AlcovePoint};
use crate::error::{Error, Result};
use crate::gates::{Angle, Gate};
use crate::monodromy::su4_free_polytope;
use crate::polytope::io::{polytope_json, vertices_json};
use crate::polytope::{Constraint, HPolytope, PolytopeUnion};
use crate::rational::{fmt, int, q, to_f64, Rational};
use crate::su4::{haar_random_with, pi_invariant, pi_invariant_f64};

/// Membership slack for floating-point queries.
pub const TAU_MEMBERSHIP: f64 = 1e-9;

/// A native gate together with its image in the alcove, a point or a segment
/// in `(d1, d2, d3)`.
#[derive(Debug, Clone)]
pub struct GateDescriptor {
    pub name: String,
    pub gate: Gate,
    pub endpoints: Vec<AlcovePoint>,
    pub image: HPolytope,
}

impl GateDescriptor {
    pub fn is_point(&self) -> bool {
        self.endpoints.len() == 1
    }
}

fn family_point(gate: &Gate, r: &Rational) -> Result<AlcovePoint> {
    let two = int(2);
    let modulo = |x: &Rational, m: &Rational| {
        let y = x - (x / m).floor() * m;
        y
    };
    match gate {
        Gate::Cphase(_) => {
            let r = modulo(r, &two);
            let r = if r > Rational::one() { &two - r } else { r };
            let a = &r / int(4);
            AlcovePoint::new([a.clone(), a.clone(), -a.clone(), -a])
        }
        Gate::Xy(_) => {
            let r = modulo(r, &two);
            let r = if r > Rational::one() { &two - r } else { r };
            let a = &r / int(2);
            AlcovePoint::new([a.clone(), int(0), int(0), -a])
        }
        Gate::Pswap(_) => {
            let r = modulo(r, &Rational::one());
            let r = if r > q(1, 2) { Rational::one() - r } else { r };
            let h = &r / int(2);
            AlcovePoint::new([q(1, 4) + &h, q(1, 4) - &h, q(1, 4) - &h, q(-3, 4) + h])
        }
        _ => Err(Error::Precondition(format!("{} is not a parametric family", gate.name()))),
    }
}

/// The alcove image of a named gate, or of a whole family when no parameter
/// is given.
pub fn standard_gate_alcove(gate: &Gate) -> Result<GateDescriptor> {
    let endpoints = match gate {
        Gate::Cphase(None) => vec![e(1), e(2)],
        Gate::Xy(None) => vec![e(1), e(3)],
        Gate::Pswap(None) => vec![e(3), e(4)],
        Gate::Cphase(Some(Angle::PiTimes(r))) | Gate::Xy(Some(Angle::PiTimes(r))) | Gate::Pswap(Some(Angle::PiTimes(r))) => {
            vec![family_point(gate, r)?]
        }
        g => vec![pi_invariant(&g.matrix()?)?],
    };
    let image = match endpoints.as_slice() {
        [p] => HPolytope::point(&p.coords3()),
        [a, b] => HPolytope::segment(&a.coords3(), &b.coords3()),
        _ => unreachable!(),
    };
    Ok(GateDescriptor { name: gate.name(), gate: gate.clone(), endpoints, image })
}

/// Parses `"CZ,ISWAP"` or `"XY(3pi/4)"` into gates.
pub fn parse_gate_list(text: &str) -> Result<Vec<Gate>> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(Gate::parse(&cur)?);
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(Gate::parse(&cur)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty gate list".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GateSet {
    pub gates: Vec<GateDescriptor>,
    /// Whether every gate image lies in `Π(P²_S)`; filled in by [`depth_sets`].
    pub nesting_verified: bool,
}

impl GateSet {
    pub fn new(gates: Vec<GateDescriptor>) -> Result<GateSet> {
        if gates.is_empty() {
            return Err(Error::Precondition("gate set is empty".into()));
        }
        let names: BTreeSet<&str> = gates.iter().map(|g| g.name.as_str()).collect();
        if names.len() != gates.len() {
            return Err(Error::Precondition("gate names must be unique".into()));
        }
        Ok(GateSet { gates, nesting_verified: false })
    }

    pub fn from_gates(gates: &[Gate]) -> Result<GateSet> {
        GateSet::new(gates.iter().map(standard_gate_alcove).collect::<Result<_>>()?)
    }

    pub fn parse(text: &str) -> Result<GateSet> {
        GateSet::from_gates(&parse_gate_list(text)?)
    }

    pub fn names(&self) -> Vec<String> {
        self.gates.iter().map(|g| g.name.clone()).collect()
    }
}

/// `Π(P)` for `P` the set of products `U1·U2` with `Π(U1) ∈ x` and
/// `Π(U2) ∈ g`, as convex parts of the alcove closure.
pub fn extend_part(x: &HPolytope, g: &HPolytope) -> Result<Vec<HPolytope>> {
    let mut big = su4_free_polytope();
    let ex = x.embed(9, &[0, 1, 2]);
    let eg = g.embed(9, &[3, 4, 5]);
    big.ineqs.extend(ex.ineqs.into_iter().chain(eg.ineqs));
    big.eqs.extend(ex.eqs.into_iter().chain(eg.eqs));
    let proj = big.fm_eliminate(&[0, 1, 2, 3, 4, 5]);
    if proj.is_empty() {
        return Ok(vec![]);
    }
    Ok(c2_parts(&proj))
}

/// Splits a region of the full alcove into its two halves and folds the
/// second one back by ρ.
pub fn c2_parts(p: &HPolytope) -> Vec<HPolytope> {
    let closure = alcove_closure();
    let mut out = vec![];
    for cand in [p.clone(), rho_image(p)] {
        let mut c = cand;
        c.ineqs.extend(closure.ineqs.iter().cloned());
        let c = c.reduce_redundant();
        if !c.is_empty() {
            out.push(c);
        }
    }
    out
}

/// Removes empty parts, duplicates and parts contained in another part, and
/// sorts the survivors by vertex set.
pub fn prune_parts(parts: Vec<HPolytope>) -> Result<Vec<HPolytope>> {
    let mut keyed: Vec<(Vec<Vec<Rational>>, HPolytope)> = vec![];
    for p in parts {
        let p = p.reduce_redundant();
        match p.vertices() {
            Ok(v) => keyed.push((v, p)),
            Err(Error::Empty) => {}
            Err(err) => return Err(err),
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let within = |i: usize, j: usize| keyed[i].0.iter().all(|x| keyed[j].1.contains(x));
    let mut kept: Vec<(Vec<Vec<Rational>>, HPolytope)> = vec![];
    for i in 0..keyed.len() {
        // Duplicates were removed, so mutual containment cannot occur.
        if !(0..keyed.len()).any(|j| j != i && within(i, j)) {
            kept.push(keyed[i].clone());
        }
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(kept.into_iter().map(|(_, p)| p).collect())
}

/// One recursion step: all parts of `Π(P^{n+1}_S)` from those of `Π(P^n_S)`.
pub fn next_depth(prev: &[HPolytope], gates: &[GateDescriptor]) -> Result<Vec<HPolytope>> {
    let jobs: Vec<(usize, usize)> = (0..prev.len()).flat_map(|i| (0..gates.len()).map(move |j| (i, j))).collect();
    let pieces: Vec<Vec<HPolytope>> = jobs.par_iter().map(|&(i, j)| extend_part(&prev[i], &gates[j].image)).collect::<Result<_>>()?;
    prune_parts(pieces.into_iter().flatten().collect())
}

/// Result of the depth-set recursion. `depth_sets[n]` holds the parts of
/// `Π(P^n_S)` and `volumes[n]` the normalized volume of the cumulative set
/// `⋃_{m≤n} Π(P^m_S)`.
#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub gates: Vec<String>,
    pub depth_sets: Vec<PolytopeUnion>,
    pub volumes: Vec<Rational>,
    pub nesting_verified: bool,
    pub max_depth_reached: usize,
    pub complete: bool,
}

/// Volume of the alcove closure in `(d1, d2, d3)`.
pub fn closure_volume() -> Rational {
    static VOL: OnceLock<Rational> = OnceLock::new();
    VOL.get_or_init(|| alcove_closure().volume().expect("alcove closure is bounded")).clone()
}

fn segment_covered(seg: &HPolytope, a: &[Rational], b: &[Rational], parts: &[HPolytope]) -> Result<bool> {
    // Parametrize x = a + s (b − a), s ∈ [0, 1], and collect covered intervals.
    let dir: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let m: Vec<Vec<Rational>> = dir.iter().map(|d| vec![d.clone()]).collect();
    let mut intervals: Vec<(Rational, Rational)> = vec![];
    for p in parts {
        let mut line = p.meet(seg)?;
        line = line.pullback(&m, a);
        line.add_ineq(Constraint::new(vec![int(1)], int(0)));
        line.add_ineq(Constraint::new(vec![int(-1)], int(1)));
        match line.vertices() {
            Ok(vs) => {
                let lo = vs.iter().map(|v| v[0].clone()).min().unwrap();
                let hi = vs.iter().map(|v| v[0].clone()).max().unwrap();
                intervals.push((lo, hi));
            }
            Err(Error::Empty) => {}
            Err(err) => return Err(err),
        }
    }
    intervals.sort();
    let mut reach = Rational::zero();
    let mut started = false;
    for (lo, hi) in intervals {
        if (!started && lo.is_positive()) || lo > reach {
            return Ok(false);
        }
        started = true;
        if hi > reach {
            reach = hi;
        }
    }
    Ok(started && reach >= Rational::one())
}

/// Whether the image of `g` lies in the union of `parts`.
pub fn gate_in_union(g: &GateDescriptor, parts: &[HPolytope]) -> Result<bool> {
    match g.endpoints.as_slice() {
        [p] => Ok(parts.iter().any(|x| x.contains(&p.coords3()))),
        [a, b] => segment_covered(&g.image, &a.coords3(), &b.coords3(), parts),
        _ => unreachable!(),
    }
}

/// Builds `Π(P^n_S)` for `n = 0..=n_max`, stopping once the cumulative
/// volume reaches that of the alcove.
pub fn depth_sets(s: &mut GateSet, n_max: usize) -> Result<CoverageReport> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let total = closure_volume();
    let origin = HPolytope::point(&AlcovePoint::origin().coords3());
    let level1 = prune_parts(s.gates.iter().map(|g| g.image.clone()).collect())?;
    let mut levels: Vec<Vec<HPolytope>> = vec![vec![origin], level1];
    let mut volumes = vec![Rational::zero(), Rational::zero()];
    let mut complete = false;
    let mut n = 1;
    while n < n_max {
        let next = next_depth(&levels[n], &s.gates)?;
        if n == 1 {
            s.nesting_verified = s.gates.iter().map(|g| gate_in_union(g, &next)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
        }
        n += 1;
        let vol = if s.nesting_verified {
            PolytopeUnion::new(next.clone()).volume()? / &total
        } else {
            let all: Vec<HPolytope> = levels.iter().flatten().chain(next.iter()).cloned().collect();
            PolytopeUnion::new(prune_parts(all)?).volume()? / &total
        };
        levels.push(next);
        volumes.push(vol.clone());
        if vol.is_one() {
            complete = true;
            break;
        }
    }
    Ok(CoverageReport {
        gates: s.names(),
        depth_sets: levels.into_iter().map(PolytopeUnion::new).collect(),
        volumes,
        nesting_verified: s.nesting_verified,
        max_depth_reached: n,
        complete,
    })
}

/// Convenience wrapper: parse, build and analyse in one call.
pub fn coverage_for(gates: &[Gate], n_max: usize) -> Result<CoverageReport> {
    let mut s = GateSet::from_gates(gates)?;
    depth_sets(&mut s, n_max)
}

impl CoverageReport {
    /// Whether `x` lies in `⋃_{m≤n} Π(P^m_S)`.
    pub fn covers(&self, x: &AlcovePoint, n: usize) -> bool {
        let c = x.coords3();
        self.depth_sets.iter().take(n + 1).any(|u| u.contains(&c))
    }

    pub fn covers_f64(&self, x: &[f64; 4], n: usize) -> bool {
        let c = [x[0], x[1], x[2]];
        self.depth_sets.iter().take(n + 1).any(|u| u.contains_f64(&c, TAU_MEMBERSHIP))
    }

    /// Normalized volume of `Π(P^n_S)` alone.
    pub fn level_volume(&self, n: usize) -> Result<Rational> {
        Ok(self.depth_sets[n].volume()? / closure_volume())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .depth_sets
            .iter()
            .enumerate()
            .map(|(n, u)| {
                let parts: Vec<serde_json::Value> = u
                    .parts
                    .iter()
                    .map(|p| {
                        let vs: Vec<Vec<Rational>> = p.vertices().unwrap_or_default().iter().map(|v| lift4(v)).collect();
                        json!({ "vertices": vertices_json(&vs), "inequalities": polytope_json(p) })
                    })
                    .collect();
                json!({ "depth": n, "parts": parts, "cumulative_volume": fmt(&self.volumes[n]) })
            })
            .collect();
        let expected = expected_depth(self).map(|r| fmt(&r)).ok();
        json!({
            "gates": self.gates,
            "nesting_verified": self.nesting_verified,
            "max_depth_reached": self.max_depth_reached,
            "complete": self.complete,
            "volumes": self.volumes.iter().map(fmt).collect::<Vec<_>>(),
            "expected_depth": expected,
            "depth_sets": levels,
        })
    }
}

/// Appends `d4 = −d1 − d2 − d3`.
pub fn lift4(v: &[Rational]) -> Vec<Rational> {
    let s: Rational = v.iter().sum();
    let mut out = v.to_vec();
    out.push(-s);
    out
}

/// Smallest `n` with `x ∈ Π(P^n_S)`.
pub fn min_depth(x: &AlcovePoint, report: &CoverageReport) -> Result<usize> {
    (0..report.depth_sets.len())
        .find(|&n| report.depth_sets[n].contains(&x.coords3()))
        .ok_or_else(|| Error::Uncovered { point: x.to_string(), depth: report.max_depth_reached })
}

/// `Σ n · (vol C_n − vol C_{n−1})` over the cumulative depth sets.
pub fn expected_depth(report: &CoverageReport) -> Result<Rational> {
    if !report.complete {
        let achieved = report.volumes.last().map(fmt).unwrap_or_else(|| "0".into());
        return Err(Error::IncompleteCoverage { achieved, depth: report.max_depth_reached });
    }
    let mut sum = Rational::zero();
    for n in 1..report.volumes.len() {
        sum += int(n as i64) * (&report.volumes[n] - &report.volumes[n - 1]);
    }
    Ok(sum)
}

/// Fraction of Haar-random unitaries whose invariant lies in the cumulative
/// depth set at `n`. Deterministic in `seed`.
pub fn haar_fraction(report: &CoverageReport, n: usize, samples: usize, seed: u64) -> Result<f64> {
    if n >= report.depth_sets.len() {
        return Err(Error::Precondition(format!("report only reaches depth {}", report.depth_sets.len() - 1)));
    }
    const CHUNK: usize = 1000;
    let chunks = samples.div_ceil(CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let count = CHUNK.min(samples - k * CHUNK);
            let mut h = 0usize;
            for _ in 0..count {
                let u = haar_random_with(&mut rng);
                if let Ok(d) = pi_invariant_f64(&u) {
                    if report.covers_f64(&d, n) {
                        h += 1;
                    }
                }
            }
            h
        })
        .sum();
    Ok(hits as f64 / samples as f64)
}

/// The twelve inequalities on `δ` cutting out `Π(P²_{XY_{πt}})` inside the
/// full alcove, over `(δ1, δ2, δ3, δ4)`.
pub fn xy_slice_rows(t: &Rational) -> Vec<Constraint> {
    let h = t / int(2);
    let row = |a: [i64; 4], c: Rational| Constraint::new(a.iter().map(|&x| int(x)).collect(), c);
    vec![
        row([0, 0, 0, 1], t.clone()),
        row([0, 0, 1, 1], t.clone()),
        row([-1, 0, 0, 0], t.clone()),
        row([0, 0, 1, 0], h.clone()),
        row([1, 0, 0, 1], h.clone()),
        row([0, -1, 0, 0], h.clone()),
        row([0, 1, 0, 0], int(0)),
        row([1, 0, 0, 1], int(1) - t),
        row([0, 0, -1, 0], int(0)),
        row([0, 0, 0, 1], int(1) - &h),
        row([0, 1, 1, 0], int(1) - t),
        row([-1, 0, 0, 0], int(1) - &h),
    ]
}

/// Normalized volume of `Π(P²_{XY_{πt}})` from the explicit inequalities.
pub fn xy_slice_volume(t: &Rational) -> Result<Rational> {
    Ok(PolytopeUnion::new(xy_slice_polytope(t)?).volume()? / closure_volume())
}

/// The parts of `Π(P²_{XY_{πt}})` from the explicit inequalities.
pub fn xy_slice_polytope(t: &Rational) -> Result<Vec<HPolytope>> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::Precondition(format!("t = {} is outside [0, 1]", fmt(t))));
    }
    // δ4 = −δ1 − δ2 − δ3.
    let m = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)], vec![int(-1), int(-1), int(-1)]];
    let zero = vec![int(0); 4];
    let mut full = HPolytope::universe(3);
    for c in xy_slice_rows(t) {
        full.add_ineq(c.substitute(&m, &zero));
    }
    // Full SU(4) alcove: δ1 ≥ δ2 ≥ δ3 ≥ δ4 ≥ δ1 − 1.
    for c in alcove_rows(3, 0).into_iter().take(4) {
        full.add_ineq(c);
    }
    prune_parts(c2_parts(&full))
}

/// The piecewise cubic for the volume of `Π(P²_{XY_{πt}})`.
pub fn xy_volume_formula(t: &Rational) -> Rational {
    let t2 = t * t;
    let t3 = &t2 * t;
    if *t <= q(1, 2) {
        int(4) * t3
    } else if *t <= q(3, 4) {
        q(15, 2) - int(36) * t + int(60) * t2 - int(32) * t3
    } else {
        int(-6) + int(18) * t - int(12) * t2
    }
}

/// Floating-point view of a cumulative volume list, for reporting.
pub fn volumes_f64(report: &CoverageReport) -> Vec<f64> {
    report.volumes.iter().map(to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::extremal;
    use crate::monodromy::{c2_branches, su4_inequalities};

    fn pts(list: &[[i64; 4]], den: i64) -> Vec<Vec<Rational>> {
        let mut v: Vec<Vec<Rational>> = list.iter().map(|p| p[..3].iter().map(|&x| q(x, den)).collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn gate_images() {
        let cz = standard_gate_alcove(&Gate::Cz).unwrap();
        assert_eq!(cz.endpoints, vec![e(2)]);
        let db = standard_gate_alcove(&Gate::Db).unwrap();
        assert_eq!(db.endpoints[0].coords(), &[q(3, 8), q(0, 1), q(0, 1), q(-3, 8)]);
        let p = standard_gate_alcove(&Gate::parse("PSWAP(pi)").unwrap()).unwrap();
        assert_eq!(p.endpoints, vec![e(4)]);
        let p = standard_gate_alcove(&Gate::parse("PSWAP(pi/2)").unwrap()).unwrap();
        assert_eq!(p.endpoints, vec![e(3)]);
        let xy = standard_gate_alcove(&Gate::Xy(None)).unwrap();
        assert_eq!(xy.endpoints, vec![e(1), e(3)]);
    }

    #[test]
    fn family_formulas_match_the_invariant() {
        for k in 0..=48 {
            let r = q(k, 24);
            for name in ["CPHASE", "XY", "PSWAP"] {
                let g = Gate::parse(&format!("{name}({}pi)", fmt(&r))).unwrap();
                let exact = family_point(&g, &r).unwrap();
                let numeric = pi_invariant(&g.matrix().unwrap()).unwrap();
                assert_eq!(exact, numeric, "{name} at {}", fmt(&r));
            }
        }
    }

    #[test]
    fn gate_list_parsing() {
        let g = parse_gate_list("CZ, XY(3pi/4),iswap").unwrap();
        assert_eq!(g.len(), 3);
        assert!(GateSet::parse("CZ,CZ").is_err());
        assert!(parse_gate_list("").is_err());
    }

    #[test]
    fn cz_depth_two_is_the_flat_triangle() {
        let cz = standard_gate_alcove(&Gate::Cz).unwrap();
        let parts = next_depth(&[cz.image.clone()], &[cz]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].vertices().unwrap(), pts(&[[0, 0, 0, 0], [1, 1, -1, -1], [2, 0, 0, -2]], 4));
    }

    #[test]
    fn cz_expected_depth_is_three() {
        let r = coverage_for(&[Gate::Cz], 4).unwrap();
        assert!(r.complete);
        assert!(r.nesting_verified);
        assert_eq!(r.max_depth_reached, 3);
        assert_eq!(expected_depth(&r).unwrap(), int(3));
        assert_eq!(min_depth(&e(1), &r).unwrap(), 0);
        assert_eq!(min_depth(&e(2), &r).unwrap(), 1);
        assert_eq!(min_depth(&e(3), &r).unwrap(), 2);
        assert_eq!(min_depth(&e(4), &r).unwrap(), 3);
    }

    #[test]
    fn mixed_set_reaches_swap_at_depth_two() {
        let r = coverage_for(&[Gate::Cz, Gate::Iswap], 2).unwrap();
        assert_eq!(min_depth(&e(4), &r).unwrap(), 2);
        assert!(!r.complete);
        assert!(matches!(expected_depth(&r), Err(Error::IncompleteCoverage { .. })));
    }

    #[test]
    fn uncovered_point_is_reported() {
        let r = coverage_for(&[Gate::Cz], 2).unwrap();
        assert!(matches!(min_depth(&e(5), &r), Err(Error::Uncovered { .. })));
    }

    #[test]
    fn twisted_system_agrees_with_folding() {
        let sys = su4_inequalities();
        let (_, twisted) = c2_branches(&sys).unwrap();
        let cz = standard_gate_alcove(&Gate::Cz).unwrap();
        let mut big = twisted.free_coordinates();
        let ex = cz.image.embed(9, &[0, 1, 2]);
        let eg = cz.image.embed(9, &[3, 4, 5]);
        big.ineqs.extend(ex.ineqs.into_iter().chain(eg.ineqs));
        big.eqs.extend(ex.eqs.into_iter().chain(eg.eqs));
        let mut p = big.fm_eliminate(&[0, 1, 2, 3, 4, 5]);
        p.ineqs.extend(alcove_closure().ineqs);
        let direct = extend_part(&cz.image, &cz.image).unwrap();
        // The twisted branch, folded into the closure, is one of the two halves.
        let v = p.vertices().unwrap();
        assert!(direct.iter().any(|d| d.vertices().unwrap() == v));
    }

    #[test]
    fn xy_slice_matches_formula_and_recursion() {
        for (k, den) in [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)] {
            let t = q(k, den);
            assert_eq!(xy_slice_volume(&t).unwrap(), xy_volume_formula(&t), "t = {}", fmt(&t));
        }
        let g = Gate::Xy(Some(Angle::PiTimes(q(1, 2))));
        let r = coverage_for(&[g], 2).unwrap();
        let t = q(1, 2);
        assert_eq!(r.level_volume(2).unwrap(), xy_slice_volume(&t).unwrap());
        let u = PolytopeUnion::new(xy_slice_polytope(&t).unwrap());
        for p in &r.depth_sets[2].parts {
            for v in p.vertices().unwrap() {
                assert!(u.contains(&v));
            }
        }
        assert!(xy_slice_volume(&q(5, 4)).is_err());
    }

    #[test]
    fn lift_appends_last_coordinate() {
        let v = lift4(&[q(3, 8), q(-1, 8), q(-1, 8)]);
        assert_eq!(v[3], q(-1, 8));
        assert_eq!(v, extremal(6).to_vec());
    }
}
