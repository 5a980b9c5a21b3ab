//! Thomas-algorithm solvers for the tridiagonal systems arising from the
//! implicit linear step and the bound-state fixed-point iteration.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

const PIVOT_FLOOR: f64 = 1e-300;

/// Solve a complex tridiagonal system in place; `rhs` becomes the solution.
/// `sub[i]`, `diag[i]`, `sup[i]` are the coefficients of row i (sub[0] and
/// sup[n-1] are ignored). `scratch` must have length n.
pub fn solve_complex(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &mut [Complex64],
    scratch: &mut [Complex64],
) -> Result<()> {
    let n = rhs.len();
    debug_assert!(sub.len() == n && diag.len() == n && sup.len() == n && scratch.len() == n);
    let mut pivot = diag[0];
    if pivot.norm() < PIVOT_FLOOR {
        return Err(CoreError::SolveFailure("zero pivot in row 0".into()));
    }
    rhs[0] /= pivot;
    for i in 1..n {
        scratch[i] = sup[i - 1] / pivot;
        pivot = diag[i] - sub[i] * scratch[i];
        if pivot.norm() < PIVOT_FLOOR {
            return Err(CoreError::SolveFailure(format!("zero pivot in row {i}")));
        }
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        let correction = scratch[i + 1] * rhs[i + 1];
        rhs[i] -= correction;
    }
    Ok(())
}

/// Real-valued variant used by the ground-state fixed point.
pub fn solve_real(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &mut [f64],
    scratch: &mut [f64],
) -> Result<()> {
    let n = rhs.len();
    debug_assert!(sub.len() == n && diag.len() == n && sup.len() == n && scratch.len() == n);
    let mut pivot = diag[0];
    if pivot.abs() < PIVOT_FLOOR {
        return Err(CoreError::SolveFailure("zero pivot in row 0".into()));
    }
    rhs[0] /= pivot;
    for i in 1..n {
        scratch[i] = sup[i - 1] / pivot;
        pivot = diag[i] - sub[i] * scratch[i];
        if pivot.abs() < PIVOT_FLOOR {
            return Err(CoreError::SolveFailure(format!("zero pivot in row {i}")));
        }
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
    }
    Ok(())
}
