//! Local variationality: the self-adjointness obstructions of a source form.
//!
//! For a source `E_i` the obstruction coefficients are
//!
//! `H^α_{ij} = ∂E_i/∂y^j_α − Σ_{β ≥ α} (−1)^{|β|} C(β, α) D_{β−α}(∂E_j/∂y^i_β)`
//!
//! with `C(β, α) = Π_σ C(β_σ, α_σ)`. They vanish identically exactly when
//! `E` is the Euler-Lagrange form of some local Lagrangian.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::jetspace::{mi_multinomial, total_derivative_multi, MultiIndex};
use crate::symkernel::{Atom, ScalarExpr};
use crate::Result;

use super::Limits;

/// One obstruction coefficient `H^α_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelmholtzEntry {
    pub i: usize,
    pub j: usize,
    pub alpha: MultiIndex,
    pub residual: ScalarExpr,
}

/// All nonzero obstruction coefficients of a square source form (one
/// component per field). An empty result certifies local variationality.
pub fn helmholtz_residuals(source: &[ScalarExpr], limits: &Limits) -> Result<Vec<HelmholtzEntry>> {
    if source.is_empty() {
        return Ok(Vec::new());
    }
    let bundle = source[0].bundle().clone();
    for e in source {
        if e.bundle() != &bundle {
            return Err(Error::incompatible(&bundle, e.bundle()));
        }
        limits.check(e)?;
    }
    if source.len() != bundle.dim_fiber() {
        return Err(Error::UnsupportedStructure(format!(
            "expected one source component per field ({}), got {}",
            bundle.dim_fiber(),
            source.len()
        )));
    }

    let m = bundle.dim_fiber();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            // β runs over jets of field i occurring in E_j.
            let betas: Vec<MultiIndex> = source[j]
                .atoms()
                .into_iter()
                .filter_map(|a| match a {
                    Atom::Jet { field, mi } if field == i => Some(mi),
                    _ => None,
                })
                .collect();
            // α runs over jets of field j in E_i plus everything below some β.
            let mut alphas: BTreeSet<MultiIndex> = source[i]
                .atoms()
                .into_iter()
                .filter_map(|a| match a {
                    Atom::Jet { field, mi } if field == j => Some(mi),
                    _ => None,
                })
                .collect();
            for beta in &betas {
                alphas.extend(beta.sub_indices());
            }

            for alpha in alphas {
                let mut h = source[i].partial(&Atom::jet(j, alpha.clone()));
                for beta in &betas {
                    let Some(gamma) = beta.checked_sub(&alpha) else { continue };
                    let binom = mi_multinomial(&gamma, &alpha)?;
                    let inner = source[j].partial(&Atom::jet(i, beta.clone()));
                    let shifted = total_derivative_multi(&inner, &gamma)?.scale(&binom);
                    h = if beta.order() % 2 == 0 {
                        h.checked_sub(&shifted)?
                    } else {
                        h.checked_add(&shifted)?
                    };
                }
                if !h.is_zero() {
                    out.push(HelmholtzEntry { i, j, alpha, residual: h });
                }
            }
        }
    }
    Ok(out)
}

/// Whether the source form is the Euler-Lagrange form of a local Lagrangian.
pub fn is_locally_variational(source: &[ScalarExpr], limits: &Limits) -> Result<bool> {
    Ok(helmholtz_residuals(source, limits)?.is_empty())
}
