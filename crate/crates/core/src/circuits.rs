//! Explicit circuits: evaluation, the realization library and the analytic
//! constructions for CZ- and iSWAP-based gate sets.

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::alcove::{canonicalize, e, AlcovePoint};
use crate::error::{Error, Result};
use crate::gates::{matrix_from_json, matrix_to_json, Angle, Gate};
use crate::polytope::HPolytope;
use crate::rational::{q, to_f64, Rational};
use crate::su4::{c, kron, local_equivalence, pi_invariant, pi_invariant_f64, projective_distance, rx, ry, rz, LocalPair, Mat2, Mat4, C64};

pub mod leak;

pub use leak::{leakiness_test, LeakVerdict, Wire, TAU_LEAK};

/// One layer of a circuit.
#[derive(Debug, Clone)]
pub enum Op {
    Local(LocalPair),
    Gate(Gate),
}

/// A two-qubit circuit. Operations apply in order, so the matrix is the
/// product of the operations taken right to left.
#[derive(Debug, Clone, Default)]
pub struct Circuit {
    pub ops: Vec<Op>,
}

fn hadamard() -> Mat2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Mat2::new(c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.))
}

impl Circuit {
    pub fn new() -> Self {
        Circuit::default()
    }

    pub fn gate(mut self, g: Gate) -> Self {
        self.ops.push(Op::Gate(g));
        self
    }

    pub fn local(mut self, a: Mat2, b: Mat2) -> Self {
        self.ops.push(Op::Local(LocalPair { a, b }));
        self
    }

    pub fn evaluate(&self) -> Result<Mat4> {
        let mut m = Mat4::identity();
        for op in &self.ops {
            let step = match op {
                Op::Local(l) => l.matrix(),
                Op::Gate(g) => g.matrix()?,
            };
            m = step * m;
        }
        Ok(m)
    }

    pub fn two_qubit_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, Op::Gate(_))).count()
    }

    /// Merges adjacent local layers.
    pub fn simplified(&self) -> Circuit {
        let mut out: Vec<Op> = vec![];
        for op in &self.ops {
            match (out.last_mut(), op) {
                (Some(Op::Local(prev)), Op::Local(next)) => {
                    prev.a = next.a * prev.a;
                    prev.b = next.b * prev.b;
                }
                _ => out.push(op.clone()),
            }
        }
        Circuit { ops: out }
    }

    /// Surrounds the circuit with locals so that it evaluates to `u` up to
    /// phase. Fails when `u` is not locally equivalent to the circuit.
    pub fn fitted_to(&self, u: &Mat4) -> Result<Circuit> {
        let v = self.evaluate()?;
        let (left, right) = local_equivalence(u, &v)?.ok_or_else(|| Error::Decomposition("circuit is not locally equivalent to the target".into()))?;
        let mut ops = vec![Op::Local(right)];
        ops.extend(self.ops.iter().cloned());
        ops.push(Op::Local(left));
        Ok(Circuit { ops }.simplified())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.ops.iter().map(op_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Circuit> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("circuit must be a JSON array".into()))?;
        Ok(Circuit { ops: arr.iter().map(op_from_json).collect::<Result<_>>()? })
    }
}

fn mat2_to_json(m: &Mat2) -> Value {
    json!((0..2).map(|i| (0..2).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn mat2_from_json(v: &Value) -> Result<Mat2> {
    let bad = || Error::Parse("local factor must be a 2×2 array of [re, im] pairs".into());
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(bad());
    }
    Ok(Mat2::from_fn(|i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

fn op_to_json(op: &Op) -> Value {
    match op {
        Op::Local(l) => json!({ "local": { "a": mat2_to_json(&l.a), "b": mat2_to_json(&l.b) } }),
        Op::Gate(Gate::Custom(name, m)) => json!({ "gate": name, "matrix": matrix_to_json(m) }),
        Op::Gate(g @ (Gate::Cphase(Some(a)) | Gate::Xy(Some(a)) | Gate::Pswap(Some(a)))) => {
            let name = g.name();
            let base = &name[..name.find('(').unwrap_or(name.len())];
            json!({ "gate": base, "theta": a.to_string() })
        }
        Op::Gate(g) => json!({ "gate": g.name() }),
    }
}

fn op_from_json(v: &Value) -> Result<Op> {
    if let Some(l) = v.get("local") {
        let a = mat2_from_json(l.get("a").ok_or_else(|| Error::Parse("local needs 'a'".into()))?)?;
        let b = mat2_from_json(l.get("b").ok_or_else(|| Error::Parse("local needs 'b'".into()))?)?;
        return Ok(Op::Local(LocalPair { a, b }));
    }
    let name = v.get("gate").and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("unrecognized circuit element {v}")))?;
    if let Some(m) = v.get("matrix") {
        return Ok(Op::Gate(Gate::Custom(name.to_string(), Box::new(matrix_from_json(&m.to_string())?))));
    }
    let text = match v.get("theta").and_then(Value::as_str) {
        Some(t) => format!("{name}({t})"),
        None => name.to_string(),
    };
    Ok(Op::Gate(Gate::parse(&text)?))
}

/// A stored circuit with the vertex it is claimed to realize.
#[derive(Debug, Clone)]
pub struct Realization {
    pub gate_set: Vec<String>,
    pub label: String,
    pub point: AlcovePoint,
    pub circuit: Circuit,
}

impl Realization {
    /// Whether the circuit's invariant equals the claimed point exactly.
    pub fn verify(&self) -> Result<bool> {
        Ok(pi_invariant(&self.circuit.evaluate()?)? == self.point)
    }

    pub fn depth(&self) -> usize {
        self.circuit.two_qubit_count()
    }
}

fn loc(a: Mat2, b: Mat2) -> Op {
    Op::Local(LocalPair { a, b })
}

fn seq(gate: &Gate, locals: Vec<(Mat2, Mat2)>) -> Circuit {
    let mut ops = vec![Op::Gate(gate.clone())];
    for (a, b) in locals {
        ops.push(loc(a, b));
        ops.push(Op::Gate(gate.clone()));
    }
    Circuit { ops }
}

/// Circuits for the extremal vertices of the depth-2 and depth-3 sets of
/// CZ and iSWAP, plus SWAP from one CZ and one iSWAP.
pub fn realization_library() -> Vec<Realization> {
    let id = Mat2::identity;
    let h = PI / 2.0;
    let mut out = vec![];
    let mut add = |set: &[&str], label: &str, point: AlcovePoint, circuit: Circuit| {
        out.push(Realization { gate_set: set.iter().map(|s| s.to_string()).collect(), label: label.into(), point, circuit });
    };
    let cz = Gate::Cz;
    add(&["CZ"], "CZ² e1", e(1), seq(&cz, vec![(id(), id())]));
    add(&["CZ"], "CZ² e2", e(2), seq(&cz, vec![(id(), rx(h))]));
    add(&["CZ"], "CZ² e3", e(3), seq(&cz, vec![(rx(h), rx(h))]));
    add(&["CZ"], "CZ³ e1", e(1), seq(&cz, vec![(id(), rx(h)), (id(), ry(h))]));
    add(&["CZ"], "CZ³ e2", e(2), seq(&cz, vec![(id(), rx(PI)), (id(), ry(h))]));
    add(&["CZ"], "CZ³ e3", e(3), seq(&cz, vec![(rx(h), rx(PI)), (id(), ry(h))]));
    add(&["CZ"], "CZ³ e4", e(4), seq(&cz, vec![(rx(h), rx(h)), (rx(h), rx(h))]));
    add(&["CZ"], "CZ³ e5", e(5), seq(&cz, vec![(ry(-PI / 4.0), rz(-PI / 4.0) * rx(h)), (ry(-3.0 * PI / 4.0), rx(-h))]));
    let is = Gate::Iswap;
    add(&["ISWAP"], "iSWAP² e1", e(1), seq(&is, vec![(id(), id())]));
    add(&["ISWAP"], "iSWAP² e2", e(2), seq(&is, vec![(id(), rx(h))]));
    add(&["ISWAP"], "iSWAP² e3", e(3), seq(&is, vec![(rx(h), rx(h))]));
    add(&["ISWAP"], "iSWAP³ e1", e(1), seq(&is, vec![(ry(h), ry(h)), (rx(h), rx(h))]));
    add(&["ISWAP"], "iSWAP³ e2", e(2), seq(&is, vec![(rx(h), ry(h)), (rx(h), rx(h))]));
    add(&["ISWAP"], "iSWAP³ e3", e(3), seq(&is, vec![(rx(h), rx(h)), (rx(h), rx(h))]));
    add(&["ISWAP"], "iSWAP³ e4", e(4), seq(&is, vec![(rx(-h), id()), (id(), rx(h))]));
    add(&["ISWAP"], "iSWAP³ e5", e(5), seq(&is, vec![(rx(-h) * ry(-PI / 4.0), rx(-3.0 * PI / 4.0)), (ry(-3.0 * PI / 4.0), rx(-h))]));
    let swap = iswap_cz_realize(&e(4)).expect("SWAP lies in the mixed depth-2 set");
    add(&["CZ", "ISWAP"], "iSWAP·CZ e4", e(4), swap);
    out
}

/// Library entries usable with the given gate names, optionally restricted
/// to a point.
pub fn library_lookup(gate_names: &[String], point: Option<&AlcovePoint>) -> Vec<Realization> {
    realization_library()
        .into_iter()
        .filter(|r| r.gate_set.iter().all(|g| gate_names.contains(g)))
        .filter(|r| point.is_none_or(|p| &r.point == p))
        .collect()
}

fn cnot12() -> Circuit {
    Circuit::new().local(Mat2::identity(), hadamard()).gate(Gate::Cz).local(Mat2::identity(), hadamard())
}

fn cnot21() -> Circuit {
    Circuit::new().local(hadamard(), Mat2::identity()).gate(Gate::Cz).local(hadamard(), Mat2::identity())
}

fn concat(parts: &[Circuit]) -> Circuit {
    Circuit { ops: parts.iter().flat_map(|c| c.ops.iter().cloned()).collect() }.simplified()
}

/// Three CNOTs (written with CZ) whose product is locally equivalent to
/// `CAN(α, β, δ)`.
pub fn can_via_cz(alpha: f64, beta: f64, delta: f64) -> Circuit {
    let a = 2.0 * alpha + PI / 2.0;
    let b = 2.0 * beta + PI / 2.0;
    let cc = -2.0 * delta + PI / 2.0;
    concat(&[
        cnot12(),
        Circuit::new().local(ry(cc), rz(b / 2.0)),
        cnot21(),
        Circuit::new().local(ry(a), rz(b / 2.0)),
        cnot12(),
    ])
}

/// `iSWAP·(Y⊗Y)·iSWAP` with invariant `(a, b, −b, −a)` up to C₂.
pub fn realize_real_spectrum_iswap(a: &Rational, b: &Rational) -> Result<Circuit> {
    real_spectrum(Gate::Iswap, a, b, ry)
}

/// The same construction with CZ and X rotations.
pub fn realize_real_spectrum_cz(a: &Rational, b: &Rational) -> Result<Circuit> {
    real_spectrum(Gate::Cz, a, b, rx)
}

fn real_spectrum(g: Gate, a: &Rational, b: &Rational, rot: fn(f64) -> Mat2) -> Result<Circuit> {
    if !(*a <= q(1, 2) && a >= b && *b >= q(0, 1)) {
        return Err(Error::Precondition(format!("need 1/2 ≥ a ≥ b ≥ 0, got a = {a}, b = {b}")));
    }
    let (x, y) = (to_f64(&(a + b)) * PI, to_f64(&(a - b)) * PI);
    Ok(Circuit::new().gate(g.clone()).local(rot(x), rot(y)).gate(g))
}

/// Angle σ with `u·(Y_σ⊗I)·iSWAP` of real Cartan-double trace. The flag is
/// set when no σ changes the imaginary part.
pub fn iswap_realign(u: &Mat4) -> Result<(f64, bool)> {
    let im = |s: f64| -> Result<f64> {
        let m = u * kron(&ry(s), &Mat2::identity()) * Gate::Iswap.matrix()?;
        Ok(trace_gamma(&m).im)
    };
    // Im tr γ is p + q cos σ + r sin σ.
    let (f0, f1, f2) = (im(0.0)?, im(PI / 2.0)?, im(PI)?);
    let p = (f0 + f2) / 2.0;
    let qq = (f0 - f2) / 2.0;
    let r = f1 - p;
    let amp = qq.hypot(r);
    if amp < 1e-12 {
        return Ok((0.0, true));
    }
    let phi = r.atan2(qq);
    let ratio = (-p / amp).clamp(-1.0, 1.0);
    Ok((phi + ratio.acos(), false))
}

/// `tr γ(U^Q)` after normalizing `U` to determinant one.
pub fn trace_gamma(u: &Mat4) -> C64 {
    let m = crate::su4::magic_conjugate_unchecked(&crate::su4::to_special(u));
    crate::su4::cartan_double(&m).trace()
}

/// The triangle `hull{e2, e3, e4}` of points reached by one iSWAP and one CZ
/// but not by two iSWAPs.
pub fn iswap_cz_region() -> HPolytope {
    let v: Vec<Vec<Rational>> = [e(2), e(3), e(4)].iter().map(|p| p.coords3()).collect();
    crate::polytope::VPolytope { vertices: v }.to_h().expect("triangle is nondegenerate")
}

/// `iSWAP·(Y_a⊗Y_b)·CZ` realizing a point of `hull{e2, e3, e4}`.
pub fn iswap_cz_realize(p: &AlcovePoint) -> Result<Circuit> {
    if !iswap_cz_region().contains(&p.coords3()) {
        return Err(Error::Precondition(format!("{p} is not in the iSWAP·CZ triangle")));
    }
    let d = p.coords();
    let a = to_f64(&(q(1, 2) - &d[1] - &d[2])) * PI;
    let b = to_f64(&(&d[1] - &d[2])) * PI;
    Ok(Circuit::new().gate(Gate::Iswap).local(ry(a), ry(b)).gate(Gate::Cz))
}

/// Three iSWAPs realizing any class: realign, then finish with the
/// real-spectrum pair. Returns a circuit locally equivalent to `u`.
pub fn realize_iswap3(u: &Mat4) -> Result<Circuit> {
    let (sigma, _) = iswap_realign(u)?;
    let w = u * kron(&ry(sigma), &Mat2::identity()) * Gate::Iswap.matrix()?;
    let d = pi_invariant_f64(&w)?;
    // A real spectrum canonicalizes to (a, b, −b, −a) with a + b ≤ 1/2.
    let (a, b) = (d[0].clamp(0.0, 0.5), d[1].clamp(0.0, 0.5));
    let pair = Circuit::new().gate(Gate::Iswap).local(ry((a + b) * PI), ry((a - b) * PI)).gate(Gate::Iswap);
    let pair = pair.fitted_to(&w)?;
    // u = w·iSWAP†·(Y_{−σ}⊗I) and iSWAP† = (Z⊗I)·iSWAP·(Z⊗I).
    let z = crate::su4::pauli_z();
    let tail = Circuit::new().local(ry(-sigma), Mat2::identity()).local(z, Mat2::identity()).gate(Gate::Iswap).local(z, Mat2::identity());
    let full = concat(&[tail, pair]);
    let err = projective_distance(&full.evaluate()?, u);
    if err > 1e-7 {
        return Err(Error::Decomposition(format!("three-iSWAP construction missed by {err:e}")));
    }
    Ok(full)
}

/// Exact realization of the class of `u` for gate sets the analytic
/// constructions support, with the outer locals fitted. `None` when no
/// construction applies at this depth.
pub fn realize_class(gate_names: &[String], u: &Mat4, depth: usize) -> Result<Option<Circuit>> {
    let has = |n: &str| gate_names.iter().any(|g| g == n);
    let d = pi_invariant_f64(u)?;
    let real = (d[0] + d[3]).abs() < 1e-9 && (d[1] + d[2]).abs() < 1e-9;
    let raw = |x: f64| Rational::from_float(x).unwrap_or_default();
    let core = match depth {
        0 => Some(Circuit::new()),
        1 => gate_names
            .iter()
            .filter_map(|n| Gate::parse(n).ok())
            .filter(|g| !g.is_family())
            .map(|g| Circuit::new().gate(g))
            .find(|c| c.evaluate().ok().and_then(|m| local_equivalence(u, &m).ok().flatten()).is_some()),
        2 if real && has("ISWAP") => Some(realize_real_spectrum_iswap(&raw(d[0]), &raw(d[1]))?),
        2 if real && has("CZ") => Some(realize_real_spectrum_cz(&raw(d[0]), &raw(d[1]))?),
        2 if has("ISWAP") && has("CZ") => snap_point(&d).and_then(|p| iswap_cz_realize(&p).ok()),
        3 if has("CZ") => {
            let p = crate::su4::can_from_alcove_f64(&d);
            Some(can_via_cz(p.alpha, p.beta, p.delta))
        }
        3 if has("ISWAP") => return Ok(Some(realize_iswap3(u)?)),
        _ => None,
    };
    match core {
        Some(c) => Ok(c.fitted_to(u).ok()),
        None => Ok(None),
    }
}

fn snap_point(d: &[f64; 4]) -> Option<AlcovePoint> {
    let raw: Vec<Rational> = d.iter().map(|&x| Rational::from_float(x).unwrap_or_default()).collect();
    let s: Rational = raw[..3].iter().sum();
    canonicalize(&[raw[0].clone(), raw[1].clone(), raw[2].clone(), -s]).ok().and_then(|d| AlcovePoint::new(d).ok())
}

/// Angle helper for building parametric gates in circuits.
pub fn pi_times(r: Rational) -> Angle {
    Angle::PiTimes(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::canonicalize;
    use crate::su4::{alcove_from_can_f64, canonical_gate, haar_random, haar_random_2, CanonicalParams};
    use rand::{Rng, SeedableRng};

    #[test]
    fn evaluation_basics() {
        assert!(projective_distance(&Circuit::new().evaluate().unwrap(), &Mat4::identity()) < 1e-12);
        let cc = Circuit::new().gate(Gate::Cz).gate(Gate::Cz);
        assert!(projective_distance(&cc.evaluate().unwrap(), &Mat4::identity()) < 1e-12);
        let swap = concat(&[cnot12(), cnot21(), cnot12()]);
        assert!(projective_distance(&swap.evaluate().unwrap(), &Gate::Swap.matrix().unwrap()) < 1e-12);
        assert_eq!(swap.two_qubit_count(), 3);
    }

    #[test]
    fn library_verifies() {
        let lib = realization_library();
        assert_eq!(lib.len(), 17);
        for r in &lib {
            assert!(r.verify().unwrap(), "{}", r.label);
        }
        assert_eq!(library_lookup(&["CZ".into()], Some(&e(5))).len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let c = Circuit::new().gate(Gate::parse("XY(3pi/4)").unwrap()).local(rx(0.3), ry(-1.1)).gate(Gate::Iswap);
        let j = c.to_json();
        assert_eq!(j[0]["gate"], "XY");
        assert_eq!(j[0]["theta"], "3pi/4");
        let back = Circuit::from_json(&j).unwrap();
        assert!(projective_distance(&back.evaluate().unwrap(), &c.evaluate().unwrap()) < 1e-12);
    }

    #[test]
    fn can_via_cz_grid() {
        let n = 10;
        for i in 0..n {
            for j in 0..=i {
                for k in 0..=j {
                    let p = CanonicalParams::new(
                        PI / 4.0 * i as f64 / (n - 1) as f64,
                        PI / 4.0 * j as f64 / (n - 1) as f64,
                        PI / 4.0 * k as f64 / (n - 1) as f64 * if (i + k) % 2 == 0 { 1.0 } else { -1.0 },
                    );
                    let c = can_via_cz(p.alpha, p.beta, p.delta);
                    assert_eq!(c.two_qubit_count(), 3);
                    let got = pi_invariant_f64(&c.evaluate().unwrap()).unwrap();
                    let want = alcove_from_can_f64(&p);
                    for t in 0..4 {
                        assert!((got[t] - want[t]).abs() < 1e-9, "{p:?}");
                    }
                }
            }
        }
        let swap = can_via_cz(PI / 4.0, PI / 4.0, PI / 4.0);
        assert_eq!(pi_invariant(&swap.evaluate().unwrap()).unwrap(), e(4));
        let cz = can_via_cz(PI / 4.0, 0.0, 0.0);
        assert_eq!(pi_invariant(&cz.evaluate().unwrap()).unwrap(), e(2));
    }

    #[test]
    fn real_spectrum_family() {
        for (a, b) in [(q(0, 1), q(0, 1)), (q(1, 2), q(0, 1)), (q(1, 4), q(1, 4)), (q(3, 10), q(1, 10)), (q(2, 5), q(7, 20))] {
            let want = AlcovePoint::new(canonicalize(&[a.clone(), b.clone(), -b.clone(), -a.clone()]).unwrap()).unwrap();
            for c in [realize_real_spectrum_iswap(&a, &b).unwrap(), realize_real_spectrum_cz(&a, &b).unwrap()] {
                assert_eq!(pi_invariant(&c.evaluate().unwrap()).unwrap(), want);
            }
        }
        assert!(realize_real_spectrum_iswap(&q(1, 8), &q(1, 4)).is_err());
    }

    #[test]
    fn mixed_pair_realizes_the_triangle() {
        for p in [e(2), e(3), e(4)] {
            let c = iswap_cz_realize(&p).unwrap();
            assert_eq!(pi_invariant(&c.evaluate().unwrap()).unwrap(), p);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let w: Vec<i64> = (0..3).map(|_| rng.random_range(0..20)).collect();
            let s: i64 = w.iter().sum::<i64>().max(1);
            let pts = [e(2), e(3), e(4)];
            let d: [Rational; 4] = std::array::from_fn(|k| (0..3).map(|i| q(w[i], s) * &pts[i].coords()[k]).sum());
            let p = AlcovePoint::new(d).unwrap();
            let got = pi_invariant_f64(&iswap_cz_realize(&p).unwrap().evaluate().unwrap()).unwrap();
            let want = p.to_f64();
            assert!((0..4).all(|k| (got[k] - want[k]).abs() < 1e-9), "{p}");
        }
        assert!(iswap_cz_realize(&e(5)).is_err());
    }

    #[test]
    fn realign_lands_in_real_spectrum() {
        for seed in 0..100 {
            let u = haar_random(seed);
            let (s, degenerate) = iswap_realign(&u).unwrap();
            assert!(!degenerate);
            let m = u * kron(&ry(s), &Mat2::identity()) * Gate::Iswap.matrix().unwrap();
            assert!(trace_gamma(&m).im.abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn three_iswaps_realize_haar_samples() {
        for seed in 0..30 {
            let u = haar_random(100 + seed);
            let c = realize_iswap3(&u).unwrap();
            assert_eq!(c.two_qubit_count(), 3);
            assert!(projective_distance(&c.evaluate().unwrap(), &u) < 1e-7);
        }
    }

    #[test]
    fn class_realization_with_fitted_locals() {
        let names = vec!["CZ".to_string()];
        for seed in 0..10 {
            let u = kron(&haar_random_2(seed), &haar_random_2(seed + 50)) * canonical_gate(&CanonicalParams::new(0.7, 0.3, -0.1)) * kron(&haar_random_2(seed + 9), &haar_random_2(seed + 3));
            let c = realize_class(&names, &u, 3).unwrap().unwrap();
            assert!(projective_distance(&c.evaluate().unwrap(), &u) < 1e-7);
        }
        let c = realize_class(&names, &Gate::Swap.matrix().unwrap(), 3).unwrap().unwrap();
        assert!(projective_distance(&c.evaluate().unwrap(), &Gate::Swap.matrix().unwrap()) < 1e-7);
        let both = vec!["CZ".to_string(), "ISWAP".to_string()];
        let c = realize_class(&both, &Gate::Swap.matrix().unwrap(), 2).unwrap().unwrap();
        assert_eq!(c.two_qubit_count(), 2);
    }
}
