//! Variational calculus built on the symbolic kernel: Euler-Lagrange forms,
//! momenta, Noether currents, local variationality tests, second variations,
//! and the gauge-theoretic tower (identities among field equations, reduced
//! currents, superpotentials, naturality residuals).

mod byparts;
mod el;
mod gauge;
mod helmholtz;
mod linsolve;
mod secondvar;

pub use byparts::substitute_aux;
pub use el::{
    check_symmetry, euler_lagrange, first_variation_residual, momentum, noether_current,
    noether_current_evolutionary, noether_residual, Momentum, MomentumComponent, SymmetryCheck,
};
pub use gauge::{
    bianchi_identities, energy_momentum_current, naturality_residuals, reduced_current,
    superpotential, GaugeGenerator, Naturality, ReducedCurrent, Superpotential, MAX_GAUGE_ORDER,
};
pub use helmholtz::{helmholtz_residuals, is_locally_variational, HelmholtzEntry};
pub use secondvar::{
    jacobi_along, jacobi_form, kernel_residuals, second_variation, Jacobi, SecondVariation,
};

use crate::error::Error;
use crate::symkernel::ScalarExpr;
use crate::Result;

/// Hard ceiling on the jet order accepted anywhere.
pub const MAX_SUPPORTED_ORDER: u32 = 6;

/// Resource guard threaded through the public entry points: inputs whose jet
/// order exceeds `max_order` are rejected up front instead of blowing up in
/// the middle of a cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    max_order: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 3 }
    }
}

impl Limits {
    pub fn new(max_order: u32) -> Result<Self> {
        if max_order == 0 || max_order > MAX_SUPPORTED_ORDER {
            return Err(Error::UnsupportedOrder { order: max_order, max: MAX_SUPPORTED_ORDER });
        }
        Ok(Limits { max_order })
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub(crate) fn check(&self, e: &ScalarExpr) -> Result<()> {
        let order = e.max_jet_order();
        if order > self.max_order {
            return Err(Error::UnsupportedOrder { order, max: self.max_order });
        }
        Ok(())
    }

    pub(crate) fn check_all<'a>(&self, es: impl IntoIterator<Item = &'a ScalarExpr>) -> Result<()> {
        for e in es {
            self.check(e)?;
        }
        Ok(())
    }
}
