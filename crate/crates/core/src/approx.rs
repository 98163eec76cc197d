//! Average gate fidelity between classes and fidelity-driven approximate
//! compilation.

use std::collections::BTreeMap;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::alcove::{rho_f64, AlcovePoint};
use crate::circuits::{realize_class, Circuit};
use crate::coverage::CoverageReport;
use crate::error::{Error, Result};
use crate::polytope::{HPolytope, PolytopeUnion};
use crate::rational::{snap, to_f64, Rational};
use crate::su4::{
    canonical_decompose, canonical_gate, can_from_alcove_f64, check_unitary, pi_invariant_f64, CanonicalParams, Mat4,
};

/// Optimality tolerance on fidelity for [`best_in_set`].
pub const TAU_OPT: f64 = 1e-6;

/// `(4 + |tr(U†V)|²) / 20`.
pub fn avg_gate_fidelity(u: &Mat4, v: &Mat4) -> f64 {
    let t = (u.adjoint() * v).trace().norm();
    (4.0 + t * t) / 20.0
}

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0usize; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    let d = 6 - a - b - c;
                    out[n] = [a, b, c, d];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// `max |Σ_j exp(iπ(q_σ(j) − p_j))|²` over permutations and both C₂ lifts of `q`.
pub fn trace_overlap_sq(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    let mut best: f64 = 0.0;
    for qq in [*q, rho_f64(q)] {
        for s in &PERMS {
            let (mut re, mut im) = (0.0, 0.0);
            for j in 0..4 {
                let t = std::f64::consts::PI * (qq[s[j]] - p[j]);
                re += t.cos();
                im += t.sin();
            }
            best = best.max(re * re + im * im);
        }
    }
    best
}

pub fn class_fidelity_f64(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    (4.0 + trace_overlap_sq(p, q)) / 20.0
}

/// Best average gate fidelity between members of two classes.
pub fn class_fidelity(p: &AlcovePoint, q: &AlcovePoint) -> f64 {
    class_fidelity_f64(&p.to_f64(), &q.to_f64())
}

/// Fidelity of two canonical gates from their parameters, with the modulus
/// squared.
pub fn canonical_pair_fidelity(a: &CanonicalParams, b: &CanonicalParams) -> f64 {
    let (x, y, z) = (b.alpha - a.alpha, b.beta - a.beta, b.delta - a.delta);
    let re = x.cos() * y.cos() * z.cos();
    let im = x.sin() * y.sin() * z.sin();
    (4.0 + 16.0 * (re * re + im * im)) / 20.0
}

/// A best point found in a region.
#[derive(Debug, Clone, Serialize)]
pub struct BestPoint {
    pub point: [f64; 4],
    /// Set when the optimum snapped to a low-denominator rational point of
    /// the region without loss.
    #[serde(skip)]
    pub exact: Option<AlcovePoint>,
    pub fidelity: f64,
}

struct SoftmaxCost<'a> {
    target: [f64; 4],
    vertices: &'a [[f64; 3]],
}

fn blend(vertices: &[[f64; 3]], z: &[f64]) -> [f64; 3] {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = z.iter().map(|x| (x - m).exp()).collect();
    let s: f64 = w.iter().sum();
    let mut x = [0.0; 3];
    for (wi, v) in w.iter().zip(vertices) {
        for k in 0..3 {
            x[k] += wi / s * v[k];
        }
    }
    x
}

fn lift4_f64(x: &[f64; 3]) -> [f64; 4] {
    [x[0], x[1], x[2], -(x[0] + x[1] + x[2])]
}

impl CostFunction for SoftmaxCost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, z: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(-class_fidelity_f64(&self.target, &lift4_f64(&blend(self.vertices, z))))
    }
}

fn nelder_mead(cost: SoftmaxCost<'_>, start: Vec<f64>) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex = vec![start.clone()];
    for j in 0..n {
        let mut s = start.clone();
        s[j] += 1.0;
        simplex.push(s);
    }
    let solver = NelderMead::new(simplex).with_sd_tolerance(1e-13).expect("valid tolerance");
    match Executor::new(cost, solver).configure(|st| st.max_iters(2000)).run() {
        Ok(res) => {
            let st = res.state();
            (st.best_param.clone().unwrap_or(start), st.best_cost)
        }
        Err(_) => (start, f64::INFINITY),
    }
}

fn vertices_f64(part: &HPolytope) -> Result<Vec<[f64; 3]>> {
    Ok(part.vertices()?.iter().map(|v| [to_f64(&v[0]), to_f64(&v[1]), to_f64(&v[2])]).collect())
}

/// Multi-start search over one convex part.
pub fn best_in_part(target: &[f64; 4], part: &HPolytope, seed: u64) -> Result<BestPoint> {
    let verts = vertices_f64(part)?;
    let k = verts.len();
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; k]];
    for i in 0..k {
        let mut z = vec![0.0; k];
        z[i] = 6.0;
        starts.push(z);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < 20.max(k + 1) {
        starts.push((0..k).map(|_| rng.random_range(-3.0..3.0)).collect());
    }
    let runs: Vec<(Vec<f64>, f64)> = starts.into_par_iter().map(|s| nelder_mead(SoftmaxCost { target: *target, vertices: &verts }, s)).collect();
    let mut best: Option<BestPoint> = None;
    let mut consider = |x: [f64; 3]| {
        let p = lift4_f64(&x);
        let c = BestPoint { point: p, exact: None, fidelity: class_fidelity_f64(target, &p) };
        if best.as_ref().is_none_or(|b| preferred(&c, b)) {
            best = Some(c);
        }
    };
    for v in &verts {
        consider(*v);
    }
    for (z, _) in &runs {
        consider(blend(&verts, z));
    }
    let mut best = best.ok_or(Error::Empty)?;
    // Snap to a nearby low-denominator point of the part when nothing is lost.
    let x = &best.point;
    let snapped: Option<Vec<Rational>> = x[..3].iter().map(|&c| snap(c, 96, 1e-4)).collect();
    if let Some(s) = snapped {
        if part.contains(&s) {
            if let Ok(p) = AlcovePoint::from_coords3(&s) {
                let f = class_fidelity_f64(target, &p.to_f64());
                if f >= best.fidelity - 1e-9 {
                    best = BestPoint { point: p.to_f64(), exact: Some(p), fidelity: f };
                }
            }
        }
    }
    Ok(best)
}

/// Higher fidelity wins; near-ties go to the lexicographically larger point so
/// results do not depend on part order.
fn preferred(a: &BestPoint, b: &BestPoint) -> bool {
    if (a.fidelity - b.fidelity).abs() > 1e-12 {
        return a.fidelity > b.fidelity;
    }
    a.point.iter().zip(&b.point).find(|(x, y)| (*x - *y).abs() > 1e-9).is_some_and(|(x, y)| x > y)
}

/// The point of `region` with the highest class fidelity to `target`.
pub fn best_in_set(target: &[f64; 4], region: &PolytopeUnion) -> Result<BestPoint> {
    let mut best: Option<BestPoint> = None;
    for (i, part) in region.parts.iter().enumerate() {
        let b = match best_in_part(target, part, 17 + i as u64) {
            Ok(b) => b,
            Err(Error::Empty) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|x| preferred(&b, x)) {
            best = Some(b);
        }
    }
    best.ok_or(Error::Empty)
}

/// Exhaustive scan of a grid with spacing `step`, used to check
/// [`best_in_set`].
pub fn grid_best(target: &[f64; 4], region: &PolytopeUnion, step: f64) -> Option<BestPoint> {
    let n1 = (0.5 / step).round() as i64;
    let n2 = (0.75 / step).round() as i64;
    let n3 = (0.5 / step).round() as i64;
    (0..=n1)
        .into_par_iter()
        .filter_map(|i| {
            let mut best: Option<BestPoint> = None;
            for j in 0..=n2 {
                for k in 0..=n3 {
                    let x = [i as f64 * step, -0.25 + j as f64 * step, -0.25 + k as f64 * step];
                    if !region.contains_f64(&x, 1e-12) {
                        continue;
                    }
                    let p = lift4_f64(&x);
                    let f = class_fidelity_f64(target, &p);
                    if best.as_ref().is_none_or(|b| f > b.fidelity) {
                        best = Some(BestPoint { point: p, exact: None, fidelity: f });
                    }
                }
            }
            best
        })
        .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
}

/// Per-gate fidelities. Depth-`n` circuits score `f^n` with `f` the lowest
/// fidelity among the gates in use.
#[derive(Debug, Clone, Serialize)]
pub struct FidelityModel {
    pub per_gate: BTreeMap<String, f64>,
}

impl FidelityModel {
    pub fn uniform(names: &[String], f: f64) -> Result<FidelityModel> {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::Precondition(format!("gate fidelity {f} is outside (0, 1]")));
        }
        Ok(FidelityModel { per_gate: names.iter().map(|n| (n.clone(), f)).collect() })
    }

    pub fn gate_fidelity(&self) -> f64 {
        self.per_gate.values().copied().fold(1.0, f64::min)
    }
}

/// Combines the class fidelity at a depth with the hardware model.
pub trait ScorePolicy {
    fn score(&self, class_fidelity: f64, depth: usize, model: &FidelityModel) -> f64;
}

/// `F · f^n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductScore;

impl ScorePolicy for ProductScore {
    fn score(&self, class_fidelity: f64, depth: usize, model: &FidelityModel) -> f64 {
        class_fidelity * model.gate_fidelity().powi(depth as i32)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthScore {
    pub depth: usize,
    pub class_fidelity: f64,
    pub score: f64,
    pub point: [f64; 4],
}

#[derive(Debug, Clone)]
pub struct ApproxPlan {
    pub chosen_depth: usize,
    pub target: [f64; 4],
    pub target_point: [f64; 4],
    pub target_exact: Option<AlcovePoint>,
    pub target_can: CanonicalParams,
    pub class_fidelity: f64,
    pub total_score: f64,
    pub history: Vec<DepthScore>,
    /// Set when the depth limit was reached before the score declined.
    pub hit_depth_limit: bool,
    /// The approximating unitary `L·M·R`, with `M` in the chosen class.
    pub approximation: Mat4,
    pub realization: Option<Circuit>,
}

impl ApproxPlan {
    pub fn to_json(&self) -> serde_json::Value {
        let target_alcove = match &self.target_exact {
            Some(p) => json!(p.to_string()),
            None => json!(self.target_point.map(sig12)),
        };
        json!({
            "depth": self.chosen_depth,
            "input_alcove": self.target.map(sig12),
            "target_alcove": target_alcove,
            "target_can": self.target_can.as_array().map(sig12),
            "class_fidelity": sig12(self.class_fidelity),
            "score": sig12(self.total_score),
            "hit_depth_limit": self.hit_depth_limit,
            "history": self.history.iter().map(|h| json!({"depth": h.depth, "class_fidelity": sig12(h.class_fidelity), "score": sig12(h.score)})).collect::<Vec<_>>(),
            "realization": self.realization.as_ref().map(Circuit::to_json),
            "realization_status": if self.realization.is_some() { "realized" } else { "realization unsupported" },
        })
    }
}

/// Formats with twelve significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !(1e-4..1e12).contains(&x.abs()) {
        return format!("{x:.11e}");
    }
    // Round first so that carries into the next decade are counted.
    let y: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let digits = 11 - y.abs().log10().floor() as i32;
    format!("{:.*}", digits.max(0) as usize, y)
}

fn cumulative(report: &CoverageReport, n: usize) -> PolytopeUnion {
    PolytopeUnion::new(report.depth_sets.iter().take(n + 1).skip(1).flat_map(|u| u.parts.iter().cloned()).collect())
}

/// Canonical parameters locally equivalent to `CAN(p)` and closest to
/// `CAN(q)` in average gate fidelity.
pub fn aligned_params(q: &CanonicalParams, p: &CanonicalParams) -> (CanonicalParams, f64) {
    let base = [p.alpha, p.beta, p.delta];
    let h = std::f64::consts::FRAC_PI_2;
    let mut best = (*p, -1.0);
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for signs in [[1.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [-1.0, 1.0, -1.0], [1.0, -1.0, -1.0]] {
            for shift in 0..8 {
                let v: [f64; 3] = std::array::from_fn(|k| signs[k] * base[perm[k]] + if shift >> k & 1 == 1 { h } else { 0.0 });
                let cand = CanonicalParams::new(v[0], v[1], v[2]);
                let f = canonical_pair_fidelity(q, &cand);
                if f > best.1 {
                    best = (cand, f);
                }
            }
        }
    }
    best
}

/// Steps through depths `1, 2, …` and keeps the last depth before the score
/// stops improving.
pub fn approx_compile(u: &Mat4, report: &CoverageReport, model: &FidelityModel, policy: &dyn ScorePolicy) -> Result<ApproxPlan> {
    check_unitary(u)?;
    let (left, params, right) = canonical_decompose(u)?;
    let target = pi_invariant_f64(u)?;
    let n_max = report.depth_sets.len() - 1;
    let mut history: Vec<(DepthScore, BestPoint)> = vec![];
    let mut hit_depth_limit = true;
    let origin = [0.0; 4];
    let first = if class_fidelity_f64(&target, &origin) >= 1.0 - 1e-12 {
        let b = BestPoint { point: origin, exact: Some(AlcovePoint::origin()), fidelity: 1.0 };
        history.push((DepthScore { depth: 0, class_fidelity: 1.0, score: 1.0, point: origin }, b));
        hit_depth_limit = false;
        n_max + 1
    } else {
        1
    };
    for n in first..=n_max {
        let region = cumulative(report, n);
        let b = best_in_set(&target, &region)?;
        let score = policy.score(b.fidelity, n, model);
        let entry = DepthScore { depth: n, class_fidelity: b.fidelity, score, point: b.point };
        if let Some((prev, _)) = history.last() {
            if score <= prev.score {
                hit_depth_limit = false;
                history.push((entry, b));
                break;
            }
        }
        let exact = b.fidelity >= 1.0 - 1e-12;
        history.push((entry, b));
        if exact {
            hit_depth_limit = false;
            break;
        }
    }
    let declined = history.len() >= 2 && history[history.len() - 1].0.score <= history[history.len() - 2].0.score;
    let pick = if declined { history.len() - 2 } else { history.len() - 1 };
    let (chosen, best) = history[pick].clone();
    let approx_params = can_from_alcove_f64(&best.point);
    let (aligned, _) = aligned_params(&params, &approx_params);
    let approximation = left.matrix() * canonical_gate(&aligned) * right.matrix();
    let realization = realize_class(&report.gates, &approximation, chosen.depth)?;
    Ok(ApproxPlan {
        chosen_depth: chosen.depth,
        target,
        target_point: best.point,
        target_exact: best.exact,
        target_can: approx_params,
        class_fidelity: chosen.class_fidelity,
        total_score: chosen.score,
        history: history.into_iter().map(|(d, _)| d).collect(),
        hit_depth_limit,
        approximation,
        realization,
    })
}
