//! Vector fields on the bundle and their prolongations.
//!
//! Everything that acts on jets is funneled through [`SplitField`], the
//! contact-adapted decomposition `X = ξ^σ D_σ + Σ_α D_α(v^i) ∂/∂y^i_α`. A
//! split field is determined by the base components `ξ^σ` and the order-zero
//! vertical components `v^i`; the coefficient on the `(i, α)` jet slot is
//! recovered as `D_α(v^i)` plus the drag term when converting back to
//! prolonged coordinates.

use std::sync::Arc;

use crate::error::Error;
use crate::symkernel::{Atom, ScalarExpr};
use crate::Result;

use super::bundle::BundleSpec;
use super::multiindex::MultiIndex;
use super::total::{total_derivative, total_derivative_multi};

fn expect_bundle(bundle: &Arc<BundleSpec>, e: &ScalarExpr) -> Result<()> {
    if e.bundle() != bundle {
        return Err(Error::incompatible(bundle, e.bundle()));
    }
    Ok(())
}

/// A projectable vector field `ξ^σ(x) ∂_σ + Ξ^i(x, y) ∂_i`: base components
/// depend only on base coordinates, fiber components at most on the fields
/// themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectableVectorField {
    bundle: Arc<BundleSpec>,
    xi: Vec<ScalarExpr>,
    phi: Vec<ScalarExpr>,
}

impl ProjectableVectorField {
    pub fn new(
        bundle: &Arc<BundleSpec>,
        xi: Vec<ScalarExpr>,
        phi: Vec<ScalarExpr>,
    ) -> Result<Self> {
        if xi.len() != bundle.dim_base() || phi.len() != bundle.dim_fiber() {
            return Err(Error::InvalidVectorField(format!(
                "expected {} base and {} fiber components, got {} and {}",
                bundle.dim_base(),
                bundle.dim_fiber(),
                xi.len(),
                phi.len()
            )));
        }
        for (sigma, c) in xi.iter().enumerate() {
            expect_bundle(bundle, c)?;
            if c.atoms().iter().any(Atom::is_jet) {
                return Err(Error::InvalidVectorField(format!(
                    "base component along {} depends on fiber coordinates",
                    bundle.base_name(sigma)
                )));
            }
        }
        for (i, c) in phi.iter().enumerate() {
            expect_bundle(bundle, c)?;
            if c.atoms().iter().filter_map(Atom::jet_order).any(|k| k > 0) {
                return Err(Error::InvalidVectorField(format!(
                    "fiber component along {} depends on jet coordinates of positive order",
                    bundle.field_name(i)
                )));
            }
        }
        Ok(ProjectableVectorField { bundle: bundle.clone(), xi, phi })
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn xi(&self) -> &[ScalarExpr] {
        &self.xi
    }

    pub fn phi(&self) -> &[ScalarExpr] {
        &self.phi
    }

    /// Action on functions of base and order-zero fiber coordinates.
    fn apply_pointwise(&self, f: &ScalarExpr) -> Result<ScalarExpr> {
        expect_bundle(&self.bundle, f)?;
        let mut out = ScalarExpr::zero(&self.bundle);
        for (sigma, xi) in self.xi.iter().enumerate() {
            out = &out + &(xi * &f.partial(&Atom::Base(sigma)));
        }
        let zero_mi = MultiIndex::zero(self.bundle.dim_base());
        for (i, phi) in self.phi.iter().enumerate() {
            out = &out + &(phi * &f.partial(&Atom::jet(i, zero_mi.clone())));
        }
        Ok(out)
    }

    /// Commutator of projectable fields, again projectable.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::incompatible(&self.bundle, &other.bundle));
        }
        let mut xi = Vec::with_capacity(self.xi.len());
        for sigma in 0..self.xi.len() {
            xi.push(
                self.apply_pointwise(&other.xi[sigma])? - other.apply_pointwise(&self.xi[sigma])?,
            );
        }
        let mut phi = Vec::with_capacity(self.phi.len());
        for i in 0..self.phi.len() {
            phi.push(self.apply_pointwise(&other.phi[i])? - other.apply_pointwise(&self.phi[i])?);
        }
        ProjectableVectorField::new(&self.bundle, xi, phi)
    }

    /// Contact-adapted split: `v^i = Ξ^i − y^i_σ ξ^σ`.
    pub fn split(&self) -> SplitField {
        let n = self.bundle.dim_base();
        let mut vert = Vec::with_capacity(self.phi.len());
        for (i, phi) in self.phi.iter().enumerate() {
            let mut v = phi.clone();
            for sigma in 0..n {
                let y_sigma = ScalarExpr::jet(&self.bundle, i, MultiIndex::unit(n, sigma))
                    .expect("validated indices");
                v = v - (&y_sigma * &self.xi[sigma]);
            }
            vert.push(v);
        }
        SplitField { bundle: self.bundle.clone(), xi: self.xi.clone(), vert }
    }
}

/// An evolutionary (generalized vertical) field: components may depend on
/// jets of arbitrary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionaryField {
    bundle: Arc<BundleSpec>,
    components: Vec<ScalarExpr>,
}

impl EvolutionaryField {
    pub fn new(bundle: &Arc<BundleSpec>, components: Vec<ScalarExpr>) -> Result<Self> {
        if components.len() != bundle.dim_fiber() {
            return Err(Error::InvalidVectorField(format!(
                "expected {} components, got {}",
                bundle.dim_fiber(),
                components.len()
            )));
        }
        for c in &components {
            expect_bundle(bundle, c)?;
        }
        Ok(EvolutionaryField { bundle: bundle.clone(), components })
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    pub fn split(&self) -> SplitField {
        SplitField {
            bundle: self.bundle.clone(),
            xi: vec![ScalarExpr::zero(&self.bundle); self.bundle.dim_base()],
            vert: self.components.clone(),
        }
    }
}

/// A vector field in the contact-adapted frame `{D_σ, ∂/∂θ^i_α}`: base
/// components `ξ^σ` and order-zero vertical components `v^i`, with the jet
/// prolongation generated by `D_α(v^i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitField {
    bundle: Arc<BundleSpec>,
    xi: Vec<ScalarExpr>,
    vert: Vec<ScalarExpr>,
}

impl SplitField {
    pub fn new(
        bundle: &Arc<BundleSpec>,
        xi: Vec<ScalarExpr>,
        vert: Vec<ScalarExpr>,
    ) -> Result<Self> {
        if xi.len() != bundle.dim_base() || vert.len() != bundle.dim_fiber() {
            return Err(Error::InvalidVectorField(format!(
                "expected {} base and {} vertical components, got {} and {}",
                bundle.dim_base(),
                bundle.dim_fiber(),
                xi.len(),
                vert.len()
            )));
        }
        for c in xi.iter().chain(vert.iter()) {
            expect_bundle(bundle, c)?;
        }
        Ok(SplitField { bundle: bundle.clone(), xi, vert })
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn xi(&self) -> &[ScalarExpr] {
        &self.xi
    }

    pub fn vert(&self) -> &[ScalarExpr] {
        &self.vert
    }

    pub fn is_vertical(&self) -> bool {
        self.xi.iter().all(ScalarExpr::is_zero)
    }

    /// Coefficient of the field on the contact covector `θ^i_α`, namely
    /// `D_α(v^i)`.
    pub fn theta_coefficient(&self, field: usize, alpha: &MultiIndex) -> Result<ScalarExpr> {
        if field >= self.bundle.dim_fiber() {
            return Err(Error::FieldIndex { index: field, m: self.bundle.dim_fiber() });
        }
        total_derivative_multi(&self.vert[field], alpha)
    }

    /// Coefficient of the prolonged field on `∂/∂y^i_α` in jet coordinates:
    /// `D_α(v^i) + y^i_{α+1_γ} ξ^γ`.
    pub fn jet_coefficient(&self, field: usize, alpha: &MultiIndex) -> Result<ScalarExpr> {
        let mut out = self.theta_coefficient(field, alpha)?;
        for (gamma, xi) in self.xi.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let bumped = ScalarExpr::jet(&self.bundle, field, alpha.bump(gamma))?;
            out = out + (&bumped * xi);
        }
        Ok(out)
    }

    /// Lie derivative of a scalar along the prolonged field:
    /// `ξ^σ D_σ f + Σ D_α(v^i) ∂f/∂y^i_α`.
    pub fn lie_scalar(&self, f: &ScalarExpr) -> Result<ScalarExpr> {
        expect_bundle(&self.bundle, f)?;
        let mut out = ScalarExpr::zero(&self.bundle);
        for (sigma, xi) in self.xi.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out = out + (xi * &total_derivative(f, sigma)?);
        }
        for atom in f.atoms() {
            if let Atom::Jet { field, mi } = &atom {
                let coeff = self.theta_coefficient(*field, mi)?;
                if coeff.is_zero() {
                    continue;
                }
                out = out + (&coeff * &f.partial(&atom));
            }
        }
        Ok(out)
    }

    /// Purely vertical part as a split field.
    pub fn vertical_part(&self) -> SplitField {
        SplitField {
            bundle: self.bundle.clone(),
            xi: vec![ScalarExpr::zero(&self.bundle); self.bundle.dim_base()],
            vert: self.vert.clone(),
        }
    }
}
