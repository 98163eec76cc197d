//! Two-qubit unitary arithmetic: the magic basis, Cartan doubles, the
//! invariant Π, canonical decomposition and single-qubit Euler angles.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::alcove::{canonicalize_f64, AlcovePoint};
use crate::error::{Error, Result};
use crate::rational::{snap, Rational};

pub type C64 = nalgebra::Complex<f64>;
pub type Mat4 = Matrix4<C64>;
pub type Mat2 = Matrix2<C64>;

pub const TAU_UNITARY: f64 = 1e-10;
pub const TAU_RECONSTRUCT: f64 = 1e-9;
pub const TAU_SNAP: f64 = 1e-6;
pub const SNAP_DENOMINATOR: i64 = 96;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Single-qubit tensor factors `a ⊗ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPair {
    pub a: Mat2,
    pub b: Mat2,
}

impl LocalPair {
    pub fn identity() -> Self {
        LocalPair { a: Mat2::identity(), b: Mat2::identity() }
    }

    pub fn matrix(&self) -> Mat4 {
        kron(&self.a, &self.b)
    }
}

/// Parameters of `CAN(α,β,δ) = exp(−i(α·XX + β·YY + δ·ZZ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl CanonicalParams {
    pub fn new(alpha: f64, beta: f64, delta: f64) -> Self {
        CanonicalParams { alpha, beta, delta }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.delta]
    }

    pub fn max_diff(&self, other: &CanonicalParams) -> f64 {
        self.as_array().iter().zip(other.as_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

pub fn pauli_x() -> Mat2 {
    Mat2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.))
}

pub fn pauli_z() -> Mat2 {
    Mat2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
}

fn rotation(p: &Mat2, theta: f64) -> Mat2 {
    Mat2::identity() * c((theta / 2.0).cos(), 0.0) - p * c(0.0, (theta / 2.0).sin())
}

/// `exp(−iθX/2)`
pub fn rx(theta: f64) -> Mat2 {
    rotation(&pauli_x(), theta)
}

/// `exp(−iθY/2)`
pub fn ry(theta: f64) -> Mat2 {
    rotation(&pauli_y(), theta)
}

/// `exp(−iθZ/2)`
pub fn rz(theta: f64) -> Mat2 {
    rotation(&pauli_z(), theta)
}

pub fn is_unitary4(u: &Mat4, tol: f64) -> bool {
    (u * u.adjoint() - Mat4::identity()).iter().all(|z| z.norm() <= tol)
}

pub fn is_unitary2(u: &Mat2, tol: f64) -> bool {
    (u * u.adjoint() - Mat2::identity()).iter().all(|z| z.norm() <= tol)
}

pub fn check_unitary(u: &Mat4) -> Result<()> {
    let err = (u * u.adjoint() - Mat4::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if err > TAU_UNITARY {
        return Err(Error::NotUnitary(err));
    }
    Ok(())
}

/// Distance between `u` and `v` modulo global phase: the largest entry of
/// `u − e^{iφ}v` for the best φ.
pub fn projective_distance(u: &Mat4, v: &Mat4) -> f64 {
    let t = (v.adjoint() * u).trace();
    let phase = if t.norm() > 0.0 { t / t.norm() } else { c(1.0, 0.0) };
    (u - v * phase).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn projective_distance2(u: &Mat2, v: &Mat2) -> f64 {
    let t = (v.adjoint() * u).trace();
    let phase = if t.norm() > 0.0 { t / t.norm() } else { c(1.0, 0.0) };
    (u - v * phase).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The magic basis `Q`.
pub fn magic() -> Mat4 {
    let s = FRAC_1_SQRT_2;
    let z = c(0., 0.);
    Mat4::new(
        c(s, 0.), z, z, c(0., s),
        z, c(0., s), c(s, 0.), z,
        z, c(0., s), c(-s, 0.), z,
        c(s, 0.), z, z, c(0., -s),
    )
}

/// `Q†·u·Q`
pub fn magic_conjugate(u: &Mat4) -> Result<Mat4> {
    check_unitary(u)?;
    Ok(magic_conjugate_unchecked(u))
}

pub fn magic_conjugate_unchecked(u: &Mat4) -> Mat4 {
    let q = magic();
    q.adjoint() * u * q
}

/// `γ(m) = m·mᵀ`
pub fn cartan_double(m: &Mat4) -> Mat4 {
    m * m.transpose()
}

/// `CAN(α,β,δ)`, built from the commuting factors `cos θ − i sin θ·PP`.
pub fn canonical_gate(p: &CanonicalParams) -> Mat4 {
    let f = |pauli: Mat2, theta: f64| {
        let pp = kron(&pauli, &pauli);
        Mat4::identity() * c(theta.cos(), 0.0) - pp * c(0.0, theta.sin())
    };
    f(pauli_x(), p.alpha) * f(pauli_y(), p.beta) * f(pauli_z(), p.delta)
}

/// Diagonal of `CAN(α,β,δ)` in the magic basis, as phases.
pub fn can_magic_phases(p: &CanonicalParams) -> [f64; 4] {
    let (a, b, d) = (p.alpha, p.beta, p.delta);
    [-(a - b + d), -(a + b - d), a + b + d, a - b - d]
}

/// Rescales `u` to determinant one with the principal fourth root.
pub fn to_special(u: &Mat4) -> Mat4 {
    let det = u.determinant();
    u * C64::from_polar(1.0, -det.arg() / 4.0)
}

/// Real orthogonal `O` (det +1) and eigenvalues with `Oᵀ·g·O = diag(λ)`,
/// for a complex symmetric unitary `g`.
fn orthogonal_eigen(g: &Mat4) -> Result<(Matrix4<f64>, [C64; 4])> {
    let re = g.map(|z| z.re);
    let im = g.map(|z| z.im);
    let mut best: Option<(f64, Matrix4<f64>)> = None;
    // Deterministic sweep of mixing angles; a generic angle separates all
    // distinct eigenvalues of g.
    for k in 0..16 {
        let theta = 0.4142135623730951 + 1.7320508075688772 * k as f64;
        let mix = re * theta.cos() + im * theta.sin();
        let eig = SymmetricEigen::new(mix);
        let mut o = eig.eigenvectors;
        if o.determinant() < 0.0 {
            o.column_mut(0).neg_mut();
        }
        let oc = o.map(|x| c(x, 0.0));
        let d = oc.transpose() * g * oc;
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| off < *b) {
            best = Some((off, o));
        }
        if off < 1e-12 {
            break;
        }
    }
    let (off, o) = best.expect("at least one attempt");
    if off > 1e-8 {
        return Err(Error::Decomposition(format!("no real orthogonal eigenbasis found; off-diagonal residual {off:e}")));
    }
    let oc = o.map(|x| c(x, 0.0));
    let d = oc.transpose() * g * oc;
    Ok((o, [d[(0, 0)], d[(1, 1)], d[(2, 2)], d[(3, 3)]]))
}

/// Eigenphases of γ(U^Q) over 2π, canonicalized in floating point.
pub fn pi_invariant_f64(u: &Mat4) -> Result<[f64; 4]> {
    check_unitary(u)?;
    let g = cartan_double(&magic_conjugate_unchecked(&to_special(u)));
    let (_, lambda) = orthogonal_eigen(&g)?;
    let raw = lambda.map(|z| z.arg() / (2.0 * PI));
    Ok(canonicalize_f64(&raw, 1e-9))
}

/// Snaps a floating quadruple to low-denominator rationals when every
/// coordinate is within `TAU_SNAP` of one; otherwise keeps the exact binary
/// values with the fourth coordinate fixed by the sum.
pub fn snap_quadruple(d: &[f64; 4]) -> Result<AlcovePoint> {
    let snapped: Option<Vec<Rational>> = d.iter().map(|&x| snap(x, SNAP_DENOMINATOR, TAU_SNAP)).collect();
    if let Some(s) = snapped {
        let raw = [s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone()];
        if raw.iter().sum::<Rational>().is_integer() {
            return AlcovePoint::from_phases(&raw);
        }
    }
    let exact: Vec<Rational> = d[..3].iter().map(|&x| Rational::from_float(x).unwrap_or_default()).collect();
    let d4 = -(&exact[0] + &exact[1] + &exact[2]);
    AlcovePoint::from_phases(&[exact[0].clone(), exact[1].clone(), exact[2].clone(), d4])
}

/// LogSpec of a unitary with determinant ±1, canonicalized modulo C₂.
pub fn logspec_c2(m: &Mat4) -> Result<AlcovePoint> {
    check_unitary(m)?;
    let det = m.determinant();
    if (det - c(1.0, 0.0)).norm() > 1e-8 && (det + c(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::Precondition(format!("determinant {det} is not ±1")));
    }
    let m = to_special(m);
    let eig = m.schur().eigenvalues().ok_or_else(|| Error::Decomposition("Schur form did not converge".into()))?;
    let raw = [0, 1, 2, 3].map(|i| eig[i].arg() / (2.0 * PI));
    let d = canonicalize_f64(&raw, 1e-9);
    snap_quadruple(&d)
}

/// `Π(u) = LogSpec γ(u^Q)`, snapped to rationals where possible.
pub fn pi_invariant(u: &Mat4) -> Result<AlcovePoint> {
    snap_quadruple(&pi_invariant_f64(u)?)
}

/// Π of `CAN(p)` without forming matrices.
pub fn alcove_from_can_f64(p: &CanonicalParams) -> [f64; 4] {
    let raw = can_magic_phases(p).map(|x| x / PI);
    canonicalize_f64(&raw, 1e-9)
}

pub fn alcove_from_can(p: &CanonicalParams) -> Result<AlcovePoint> {
    snap_quadruple(&alcove_from_can_f64(p))
}

/// Exact version for parameters given in units of π.
pub fn alcove_from_can_exact(alpha: &Rational, beta: &Rational, delta: &Rational) -> Result<AlcovePoint> {
    let raw = [
        -(alpha - beta + delta),
        -(alpha + beta - delta),
        alpha + beta + delta,
        alpha - beta - delta,
    ];
    AlcovePoint::from_phases(&raw)
}

/// Inverse of [`alcove_from_can_f64`], Weyl-reduced.
pub fn can_from_alcove_f64(d: &[f64; 4]) -> CanonicalParams {
    let h = -FRAC_PI_2;
    weyl_reduce(&CanonicalParams::new(h * (d[0] + d[1]), h * (d[1] + d[3]), h * (d[0] + d[3])))
}

pub fn can_from_alcove(p: &AlcovePoint) -> CanonicalParams {
    can_from_alcove_f64(&p.to_f64())
}

/// Exact parameters in units of π, before Weyl reduction.
pub fn can_from_alcove_exact(p: &AlcovePoint) -> [Rational; 3] {
    let d = p.coords();
    let h = Rational::new((-1).into(), 2.into());
    [&h * (&d[0] + &d[1]), &h * (&d[1] + &d[3]), &h * (&d[0] + &d[3])]
}

fn reduce_quarter(x: f64) -> f64 {
    // Representative in (−π/4, π/4].
    let mut y = x - FRAC_PI_2 * (x / FRAC_PI_2).round();
    if y <= -FRAC_PI_4 + 1e-12 {
        y += FRAC_PI_2;
    }
    y
}

/// Moves canonical parameters into `π/4 ≥ α ≥ β ≥ |δ|`, with `δ ≥ 0` when
/// `α = π/4`.
pub fn weyl_reduce(p: &CanonicalParams) -> CanonicalParams {
    let mut v = p.as_array().map(reduce_quarter);
    v.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    if v[0] < 0.0 {
        v[0] = -v[0];
        v[2] = -v[2];
    }
    if v[1] < 0.0 {
        v[1] = -v[1];
        v[2] = -v[2];
    }
    if (v[0] - FRAC_PI_4).abs() < 1e-12 && v[2] < 0.0 {
        v[2] = -v[2];
    }
    if v[2].abs() < 1e-15 {
        v[2] = 0.0;
    }
    CanonicalParams::new(v[0], v[1], v[2])
}

/// Splits a local 4×4 matrix into `a ⊗ b` with `det a = 1`.
pub fn factor_local(l: &Mat4) -> Result<LocalPair> {
    let mut best = (0usize, 0usize, -1.0);
    for k in 0..2 {
        for m in 0..2 {
            let w: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| l[(2 * i + k, 2 * j + m)].norm_sqr()).sum();
            if w > best.2 {
                best = (k, m, w);
            }
        }
    }
    let (k0, m0, _) = best;
    let raw = Mat2::from_fn(|i, j| l[(2 * i + k0, 2 * j + m0)]);
    let det = raw.determinant();
    if det.norm() < 1e-12 {
        return Err(Error::Decomposition("local factor is singular".into()));
    }
    let a = raw / det.sqrt();
    let b = Mat2::from_fn(|k, m| (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].conj() * l[(2 * i + k, 2 * j + m)]).sum::<C64>() / c(2.0, 0.0));
    let pair = LocalPair { a, b };
    let err = (pair.matrix() - l).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if err > 1e-7 {
        return Err(Error::Decomposition(format!("matrix is not a tensor product (residual {err:e})")));
    }
    Ok(pair)
}

/// `u ≅ L₁·CAN(target)·L₂`, assuming Π(u) = Π(CAN(target)).
pub fn decompose_with_target(u: &Mat4, target: &CanonicalParams) -> Result<(LocalPair, LocalPair)> {
    check_unitary(u)?;
    let m = magic_conjugate_unchecked(&to_special(u));
    let g = cartan_double(&m);
    let (o, lambda) = orthogonal_eigen(&g)?;
    let phases = can_magic_phases(target);
    let dstar = phases.map(cis);
    let want = phases.map(|x| cis(2.0 * x));
    let mut best: Option<(f64, usize, [usize; 4])> = None;
    for k in 0..2 {
        let sign = if k == 0 { 1.0 } else { -1.0 };
        for perm in permutations4() {
            let err = (0..4).map(|j| (lambda[perm[j]] * sign - want[j]).norm()).fold(0.0, f64::max);
            if best.is_none_or(|(b, _, _)| err < b) {
                best = Some((err, k, perm));
            }
        }
    }
    let (err, k, perm) = best.expect("24 permutations");
    if err > 1e-6 {
        return Err(Error::Decomposition(format!("spectrum of γ does not match the target (mismatch {err:e})")));
    }
    let mut o1 = Matrix4::<f64>::from_fn(|i, j| o[(i, perm[j])]);
    if o1.determinant() < 0.0 {
        o1.column_mut(0).neg_mut();
    }
    let mk = if k == 0 { m } else { m * c(0.0, 1.0) };
    let o1c = o1.map(|x| c(x, 0.0));
    let dinv = Mat4::from_diagonal(&nalgebra::Vector4::from_fn(|i, _| dstar[i].conj()));
    let kc = dinv * o1c.transpose() * mk;
    let imag = kc.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > 1e-6 {
        return Err(Error::Decomposition(format!("right factor is not real orthogonal (imaginary part {imag:e})")));
    }
    let kr = kc.map(|z| c(z.re, 0.0));
    let q = magic();
    let l1 = factor_local(&(q * o1c * q.adjoint()))?;
    let l2 = factor_local(&(q * kr * q.adjoint()))?;
    Ok((l1, l2))
}

/// Canonical decomposition `u ≅ L₁·CAN(p)·L₂` with Weyl-reduced `p`.
pub fn canonical_decompose(u: &Mat4) -> Result<(LocalPair, CanonicalParams, LocalPair)> {
    let d = pi_invariant_f64(u)?;
    let p = can_from_alcove_f64(&d);
    let (l1, l2) = decompose_with_target(u, &p)?;
    let rebuilt = l1.matrix() * canonical_gate(&p) * l2.matrix();
    let err = projective_distance(u, &rebuilt);
    if err > TAU_RECONSTRUCT {
        return Err(Error::Decomposition(format!("reconstruction error {err:e} exceeds tolerance")));
    }
    Ok((l1, p, l2))
}

/// Locals with `L₁·v·L₂ ≅ u` when `u` and `v` share Π.
pub fn local_equivalence(u: &Mat4, v: &Mat4) -> Result<Option<(LocalPair, LocalPair)>> {
    let (du, dv) = (pi_invariant_f64(u)?, pi_invariant_f64(v)?);
    if du.iter().zip(&dv).any(|(x, y)| (x - y).abs() > 1e-7) {
        return Ok(None);
    }
    let p = can_from_alcove_f64(&du);
    let (a1, b1) = decompose_with_target(u, &p)?;
    let (a2, b2) = decompose_with_target(v, &p)?;
    // u = a1·C·b1 and v = a2·C·b2, so u = (a1 a2†)·v·(b2† b1).
    let left = LocalPair { a: a1.a * a2.a.adjoint(), b: a1.b * a2.b.adjoint() };
    let right = LocalPair { a: b2.a.adjoint() * b1.a, b: b2.b.adjoint() * b1.b };
    let err = projective_distance(u, &(left.matrix() * v * right.matrix()));
    if err > TAU_RECONSTRUCT {
        return Err(Error::Decomposition(format!("local equivalence reconstruction error {err:e}")));
    }
    Ok(Some((left, right)))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = vec![];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EulerBasis {
    Zyz,
    Yzy,
}

/// Angles `(α, β, δ)` with `u ≅ R₁(α)·R₂(β)·R₁(δ)` and `β ∈ [0, π]`, where
/// `(R₁, R₂)` is `(Z, Y)` or `(Y, Z)`.
pub fn euler_decompose(u: &Mat2, basis: EulerBasis) -> (f64, f64, f64) {
    match basis {
        EulerBasis::Zyz => zyz(u),
        EulerBasis::Yzy => {
            // Conjugation by (Y+Z)/√2 exchanges the Y and Z axes.
            let h = (pauli_y() + pauli_z()) * c(FRAC_1_SQRT_2, 0.0);
            zyz(&(h * u * h))
        }
    }
}

fn zyz(u: &Mat2) -> (f64, f64, f64) {
    let det = u.determinant();
    let v = u / det.sqrt();
    let (c0, s0) = (v[(0, 0)].norm(), v[(1, 0)].norm());
    let beta = 2.0 * s0.atan2(c0);
    const EPS: f64 = 1e-12;
    if s0 < EPS {
        // Pure Z rotation: the product of the diagonal phases.
        return (2.0 * v[(1, 1)].arg(), 0.0, 0.0);
    }
    if c0 < EPS {
        return (2.0 * v[(1, 0)].arg(), PI, 0.0);
    }
    let sum = 2.0 * v[(1, 1)].arg();
    let diff = 2.0 * v[(1, 0)].arg();
    ((sum + diff) / 2.0, beta, (sum - diff) / 2.0)
}

/// Recomposes Euler angles into a matrix.
pub fn euler_compose(angles: (f64, f64, f64), basis: EulerBasis) -> Mat2 {
    let (a, b, d) = angles;
    match basis {
        EulerBasis::Zyz => rz(a) * ry(b) * rz(d),
        EulerBasis::Yzy => ry(a) * rz(b) * ry(d),
    }
}

fn haar_n<const N: usize>(rng: &mut impl rand::Rng) -> nalgebra::SMatrix<C64, N, N>
where
    nalgebra::Const<N>: nalgebra::DimMin<nalgebra::Const<N>, Output = nalgebra::Const<N>>,
{
    let z = nalgebra::SMatrix::<C64, N, N>::from_fn(|_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    });
    let qr = z.qr();
    let (mut qm, r) = qr.unpack();
    for j in 0..N {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = qm.column_mut(j);
        col *= ph;
    }
    qm
}

/// Haar-random 4×4 unitary drawn from the given generator.
pub fn haar_random_with(rng: &mut impl rand::Rng) -> Mat4 {
    haar_n::<4>(rng)
}

pub fn haar_random_2_with(rng: &mut impl rand::Rng) -> Mat2 {
    haar_n::<2>(rng)
}

/// Deterministic Haar-random 4×4 unitary.
pub fn haar_random(seed: u64) -> Mat4 {
    haar_random_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn haar_random_2(seed: u64) -> Mat2 {
    haar_random_2_with(&mut ChaCha8Rng::seed_from_u64(seed))
}
