//! Second variations and the linearized field equations along a direction.

use std::sync::Arc;

use crate::error::Error;
use crate::jetspace::{total_derivative_multi, BundleSpec, SplitField};
use crate::symkernel::{Atom, ScalarExpr};
use crate::Result;

use super::byparts::extend_with_aux;
use super::el::variational_derivative;
use super::Limits;

/// The second variation of a Lagrangian: a density on the bundle extended by
/// one direction field per original field, quadratic in the direction jets.
#[derive(Debug, Clone)]
pub struct SecondVariation {
    pub extended: Arc<BundleSpec>,
    /// Extended-bundle index of the direction field paired with each
    /// original field.
    pub direction_of: Vec<usize>,
    pub density: ScalarExpr,
}

/// `δ²λ`: the Lie derivative of the density applied twice along the
/// canonical evolutionary direction.
pub fn second_variation(lagrangian: &ScalarExpr, limits: &Limits) -> Result<SecondVariation> {
    limits.check(lagrangian)?;
    let bundle = lagrangian.bundle();
    let aux = extend_with_aux(bundle, "zeta")?;
    let lam = lagrangian.cast(&aux.extended)?;
    let mut vert = Vec::with_capacity(aux.extended.dim_fiber());
    for i in 0..aux.extended.dim_fiber() {
        if i < bundle.dim_fiber() {
            vert.push(ScalarExpr::field(&aux.extended, aux.aux_of[i])?);
        } else {
            vert.push(ScalarExpr::zero(&aux.extended));
        }
    }
    let xi = vec![ScalarExpr::zero(&aux.extended); aux.extended.dim_base()];
    let w = SplitField::new(&aux.extended, xi, vert)?;
    let first = w.lie_scalar(&lam)?;
    let density = w.lie_scalar(&first)?;
    Ok(SecondVariation { extended: aux.extended, direction_of: aux.aux_of, density })
}

/// The linearized field equations as a density: `J_i(ζ) = Σ_{j,β}
/// ∂E_i/∂y^j_β D_β(ζ^j)` on the direction-extended bundle.
#[derive(Debug, Clone)]
pub struct Jacobi {
    pub extended: Arc<BundleSpec>,
    pub direction_of: Vec<usize>,
    pub components: Vec<ScalarExpr>,
}

pub fn jacobi_form(lagrangian: &ScalarExpr, limits: &Limits) -> Result<Jacobi> {
    limits.check(lagrangian)?;
    let bundle = lagrangian.bundle();
    let aux = extend_with_aux(bundle, "zeta")?;
    let directions: Vec<ScalarExpr> = aux
        .aux_of
        .iter()
        .map(|&a| ScalarExpr::field(&aux.extended, a))
        .collect::<Result<Vec<_>>>()?;
    let components = linearized_equations(lagrangian, &aux.extended, &directions)?;
    Ok(Jacobi { extended: aux.extended, direction_of: aux.aux_of, components })
}

/// Linearization of the Euler-Lagrange form along an explicit direction
/// living on a bundle that extends the Lagrangian's.
pub fn jacobi_along(
    lagrangian: &ScalarExpr,
    directions: &[ScalarExpr],
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    limits.check(lagrangian)?;
    let Some(first) = directions.first() else {
        return Err(Error::UnsupportedStructure("no direction components given".into()));
    };
    let ambient = first.bundle().clone();
    if directions.len() != lagrangian.bundle().dim_fiber() {
        return Err(Error::UnsupportedStructure(format!(
            "expected {} direction components, got {}",
            lagrangian.bundle().dim_fiber(),
            directions.len()
        )));
    }
    for d in directions {
        if d.bundle() != &ambient {
            return Err(Error::incompatible(&ambient, d.bundle()));
        }
    }
    if !ambient.extends(lagrangian.bundle()) {
        return Err(Error::incompatible(lagrangian.bundle(), &ambient));
    }
    linearized_equations(lagrangian, &ambient, directions)
}

fn linearized_equations(
    lagrangian: &ScalarExpr,
    ambient: &Arc<BundleSpec>,
    directions: &[ScalarExpr],
) -> Result<Vec<ScalarExpr>> {
    let m = lagrangian.bundle().dim_fiber();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let e_i = variational_derivative(lagrangian, i)?.cast(ambient)?;
        let mut j_i = ScalarExpr::zero(ambient);
        for atom in e_i.atoms() {
            let Atom::Jet { field, mi } = &atom else { continue };
            if *field >= m {
                continue;
            }
            let moved = total_derivative_multi(&directions[*field], mi)?;
            j_i = j_i.checked_add(&e_i.partial(&atom).checked_mul(&moved)?)?;
        }
        out.push(j_i);
    }
    Ok(out)
}

/// Residuals of the linearized equations along a candidate symmetry
/// direction; all zero exactly when the direction lies in the kernel.
pub fn kernel_residuals(
    lagrangian: &ScalarExpr,
    directions: &[ScalarExpr],
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    jacobi_along(lagrangian, directions, limits)
}
