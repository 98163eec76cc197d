//! The leakiness test: can a single-qubit generator on one wire be pushed
//! through the gate and come out as a local generator?

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::Result;
use crate::su4::{check_unitary, kron, pauli_x, pauli_y, pauli_z, Mat2, Mat4, C64};

/// Singular values below this count as zero.
pub const TAU_LEAK: f64 = 1e-8;

/// Ratio of retained to discarded singular values below which a verdict is
/// flagged as indeterminate.
pub const LEAK_GAP: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Wire {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakVerdict {
    pub leaks: bool,
    pub null_dim: usize,
    /// Pauli coefficients `(a, b, c)` of `h` then `(a0, b0, c0, a1, b1, c1)`
    /// of `h′` and `h″`, each generator being `i(aX + bY + cZ)`.
    pub witness: Option<[f64; 9]>,
    pub indeterminate: bool,
    pub wire: Wire,
    pub singular_values: Vec<f64>,
}

fn generators() -> [Mat2; 3] {
    let i = C64::new(0.0, 1.0);
    [pauli_x() * i, pauli_y() * i, pauli_z() * i]
}

/// Columns of the real system `U†(h on wire)U − h′⊗1 − 1⊗h″ = 0`.
fn system(u: &Mat4, wire: Wire) -> DMatrix<f64> {
    let one = Mat2::identity();
    let g = generators();
    let mut cols: Vec<Mat4> = vec![];
    for k in &g {
        let h = match wire {
            Wire::First => kron(k, &one),
            Wire::Second => kron(&one, k),
        };
        cols.push(u.adjoint() * h * u);
    }
    for k in &g {
        cols.push(-kron(k, &one));
    }
    for k in &g {
        cols.push(-kron(&one, k));
    }
    DMatrix::from_fn(32, 9, |r, col| {
        let z = cols[col][(r / 2 % 4, r / 8)];
        if r % 2 == 0 {
            z.re
        } else {
            z.im
        }
    })
}

/// Leak analysis on one wire.
pub fn leak_on_wire(u: &Mat4, wire: Wire) -> Result<LeakVerdict> {
    check_unitary(u)?;
    let a = system(u, wire);
    let svd = a.svd(false, true);
    let mut order: Vec<usize> = (0..9).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let null_dim = sv.iter().filter(|&&s| s < TAU_LEAK).count();
    let retained = sv.iter().copied().filter(|&s| s >= TAU_LEAK).fold(f64::INFINITY, f64::min);
    let discarded = sv.iter().copied().filter(|&s| s < TAU_LEAK).fold(0.0, f64::max);
    let indeterminate = if null_dim == 0 { retained < TAU_LEAK * LEAK_GAP } else { retained < discarded.max(f64::EPSILON) * LEAK_GAP };
    let witness = (null_dim > 0).then(|| {
        let vt = svd.v_t.as_ref().expect("requested V^T");
        let row = order[8];
        std::array::from_fn(|k| vt[(row, k)])
    });
    Ok(LeakVerdict { leaks: null_dim > 0, null_dim, witness, indeterminate, wire, singular_values: sv })
}

/// Leak analysis on both wires; reports the first wire that leaks, or the
/// first wire when neither does.
pub fn leakiness_test(u: &Mat4) -> Result<LeakVerdict> {
    let first = leak_on_wire(u, Wire::First)?;
    if first.leaks {
        return Ok(first);
    }
    let second = leak_on_wire(u, Wire::Second)?;
    if second.leaks {
        return Ok(second);
    }
    Ok(LeakVerdict { indeterminate: first.indeterminate || second.indeterminate, ..first })
}

/// Residual `‖U†(h on wire)U − h′⊗1 − 1⊗h″‖` of a witness.
pub fn witness_residual(u: &Mat4, wire: Wire, w: &[f64; 9]) -> f64 {
    let a = system(u, wire);
    let x = nalgebra::DVector::from_column_slice(w);
    (a * x).norm()
}
