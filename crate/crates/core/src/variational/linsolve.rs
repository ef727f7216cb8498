//! Exact Gaussian elimination over the rationals, with either rational or
//! expression-valued right-hand sides. Underdetermined systems return the
//! particular solution with free unknowns set to zero.

use num_rational::BigRational;
use num_traits::Zero;

use crate::symkernel::ScalarExpr;
use crate::Result;

/// Solve `A x = b` exactly. `None` when inconsistent.
pub(crate) fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for cell in a[row][col..].iter_mut() {
            *cell = &*cell * &inv;
        }
        b[row] = &b[row] * &inv;
        let pivot_vals = a[row][col..].to_vec();
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (cell, p) in a[r][col..].iter_mut().zip(&pivot_vals) {
                let delta = &factor * p;
                *cell = &*cell - &delta;
            }
            let delta = &factor * &b[row];
            b[r] = &b[r] - &delta;
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    // Zero rows with nonzero rhs mean inconsistency.
    if b[row..].iter().any(|rhs| !rhs.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = b[*r].clone();
        }
    }
    Some(x)
}

/// Solve `A x = b` where the matrix is rational but the right-hand side (and
/// hence the solution) consists of scalar expressions over `bundle`.
/// `Ok(None)` when inconsistent.
pub(crate) fn solve_expr_rhs(
    bundle: &std::sync::Arc<crate::jetspace::BundleSpec>,
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<ScalarExpr>,
) -> Result<Option<Vec<ScalarExpr>>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for cell in a[row][col..].iter_mut() {
            *cell = &*cell * &inv;
        }
        b[row] = b[row].scale(&inv);
        let pivot_vals = a[row][col..].to_vec();
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (cell, p) in a[r][col..].iter_mut().zip(&pivot_vals) {
                let delta = &factor * p;
                *cell = &*cell - &delta;
            }
            let delta = b[row].scale(&factor);
            b[r] = b[r].checked_sub(&delta)?;
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    if b[row..].iter().any(|rhs| !rhs.is_zero()) {
        return Ok(None);
    }
    let mut x = vec![ScalarExpr::zero(bundle); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = b[*r].clone();
        }
    }
    Ok(Some(x))
}
