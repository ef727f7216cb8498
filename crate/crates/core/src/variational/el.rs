//! Euler-Lagrange forms, momenta, Noether currents, and symmetry checks.

use std::sync::Arc;

use num_traits::Zero;

use crate::calculus::DiffForm;
use crate::error::Error;
use crate::jetspace::{
    total_derivative, total_derivative_multi, BundleSpec, EvolutionaryField, MultiIndex,
    ProjectableVectorField, SplitField,
};
use crate::symkernel::{Atom, Factor, ScalarExpr};
use crate::Result;

use super::byparts::{by_parts, extend_with_aux, substitute_aux};
use super::linsolve::solve_rational;
use super::Limits;

/// Variational derivative of `f` with respect to one field:
/// `Σ_α (−1)^{|α|} D_α(∂f/∂y^i_α)`.
pub(crate) fn variational_derivative(f: &ScalarExpr, field: usize) -> Result<ScalarExpr> {
    let bundle = f.bundle();
    if field >= bundle.dim_fiber() {
        return Err(Error::FieldIndex { index: field, m: bundle.dim_fiber() });
    }
    let mut out = ScalarExpr::zero(bundle);
    for atom in f.atoms() {
        let Atom::Jet { field: fi, mi } = &atom else { continue };
        if *fi != field {
            continue;
        }
        let shifted = total_derivative_multi(&f.partial(&atom), mi)?;
        out = if mi.order() % 2 == 0 {
            out.checked_add(&shifted)?
        } else {
            out.checked_sub(&shifted)?
        };
    }
    Ok(out)
}

/// Euler-Lagrange form of a Lagrangian density, one component per field.
pub fn euler_lagrange(lagrangian: &ScalarExpr, limits: &Limits) -> Result<Vec<ScalarExpr>> {
    limits.check(lagrangian)?;
    let m = lagrangian.bundle().dim_fiber();
    (0..m).map(|i| variational_derivative(lagrangian, i)).collect()
}

/// One momentum coefficient `p_i^{(α)σ}`: the multiplier of `D_α(v^i)` in the
/// `σ`-component of the boundary current produced by the first variation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentumComponent {
    pub field: usize,
    pub alpha: MultiIndex,
    pub sigma: usize,
    pub value: ScalarExpr,
}

/// The by-parts decomposition of the first variation of a Lagrangian:
/// `Σ ∂λ/∂y^i_α D_α(v^i) = Σ E_i v^i + D_σ b^σ(v)` for every evolutionary
/// direction `v`, with `b^σ` stored linearly in auxiliary jets.
#[derive(Debug, Clone)]
pub struct Momentum {
    original: Arc<BundleSpec>,
    extended: Arc<BundleSpec>,
    aux_start: usize,
    boundary: Vec<ScalarExpr>,
    euler_lagrange: Vec<ScalarExpr>,
}

pub fn momentum(lagrangian: &ScalarExpr, limits: &Limits) -> Result<Momentum> {
    limits.check(lagrangian)?;
    let bundle = lagrangian.bundle().clone();
    let aux = extend_with_aux(&bundle, "zeta")?;
    let lam = lagrangian.cast(&aux.extended)?;
    let mut w = ScalarExpr::zero(&aux.extended);
    for atom in lam.atoms() {
        let Atom::Jet { field, mi } = &atom else { continue };
        let zeta = ScalarExpr::jet(&aux.extended, aux.aux_of[*field], mi.clone())?;
        w = w.checked_add(&lam.partial(&atom).checked_mul(&zeta)?)?;
    }
    let targets = aux.aux_of.iter().copied().collect();
    let bp = by_parts(&w, &targets)?;
    if !bp.rest.is_zero() {
        return Err(Error::InternalInvariant(
            "first-variation pairing left a target-free remainder".into(),
        ));
    }
    let euler_lagrange =
        aux.aux_of.iter().map(|&a| bp.adjoint[a].cast_down(&bundle)).collect::<Result<Vec<_>>>()?;
    Ok(Momentum {
        original: bundle,
        extended: aux.extended,
        aux_start: aux.aux_of[0],
        boundary: bp.boundary,
        euler_lagrange,
    })
}

impl Momentum {
    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.original
    }

    /// Euler-Lagrange form recovered as the adjoint of the cascade.
    pub fn euler_lagrange(&self) -> &[ScalarExpr] {
        &self.euler_lagrange
    }

    /// Boundary components, linear in the jets of the auxiliary direction
    /// fields appended to [`Momentum::extended_bundle`].
    pub fn boundary(&self) -> &[ScalarExpr] {
        &self.boundary
    }

    pub fn extended_bundle(&self) -> &Arc<BundleSpec> {
        &self.extended
    }

    /// All nonzero momentum coefficients, in canonical atom order.
    pub fn components(&self) -> Vec<MomentumComponent> {
        let mut out = Vec::new();
        for (sigma, b) in self.boundary.iter().enumerate() {
            for atom in b.atoms() {
                let Atom::Jet { field, mi } = &atom else { continue };
                if *field < self.aux_start {
                    continue;
                }
                let value = b
                    .partial(&atom)
                    .cast_down(&self.original)
                    .expect("momentum coefficients are free of auxiliary jets");
                if value.is_zero() {
                    continue;
                }
                out.push(MomentumComponent {
                    field: *field - self.aux_start,
                    alpha: mi.clone(),
                    sigma,
                    value,
                });
            }
        }
        out
    }

    /// Boundary current along an evolutionary direction: substitutes
    /// `ζ^i_α := D_α(v^i)`.
    pub fn pair_with(&self, v: &[ScalarExpr]) -> Result<Vec<ScalarExpr>> {
        self.boundary.iter().map(|b| substitute_aux(b, &self.original, v)).collect()
    }
}

fn base_divergence(xi: &[ScalarExpr]) -> Result<ScalarExpr> {
    let mut div = ScalarExpr::zero(xi[0].bundle());
    for (sigma, x) in xi.iter().enumerate() {
        div = div.checked_add(&total_derivative(x, sigma)?)?;
    }
    Ok(div)
}

/// Coefficient of `ω_0` in the Lie derivative of the Lagrangian density
/// `λ ω_0` along the prolonged field: the invariance defect.
pub(crate) fn invariance_defect(lagrangian: &ScalarExpr, split: &SplitField) -> Result<ScalarExpr> {
    let div = base_divergence(split.xi())?;
    split.lie_scalar(lagrangian)?.checked_add(&lagrangian.checked_mul(&div)?)
}

/// Noether current of a projectable field:
/// `ε^σ = b^σ(v) + ξ^σ λ` with `v` the contact-split vertical part.
pub fn noether_current(
    lagrangian: &ScalarExpr,
    x: &ProjectableVectorField,
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    if x.bundle() != lagrangian.bundle() {
        return Err(Error::incompatible(lagrangian.bundle(), x.bundle()));
    }
    let p = momentum(lagrangian, limits)?;
    let split = x.split();
    let mut eps = p.pair_with(split.vert())?;
    for (sigma, e) in eps.iter_mut().enumerate() {
        *e = e.checked_add(&split.xi()[sigma].checked_mul(lagrangian)?)?;
    }
    Ok(eps)
}

/// Noether current of a purely evolutionary direction (no base motion).
pub fn noether_current_evolutionary(
    lagrangian: &ScalarExpr,
    w: &EvolutionaryField,
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    if w.bundle() != lagrangian.bundle() {
        return Err(Error::incompatible(lagrangian.bundle(), w.bundle()));
    }
    let p = momentum(lagrangian, limits)?;
    p.pair_with(w.components())
}

/// Off-shell defect of the Noether identity:
/// `L_jX(λ ω0) = (Σ v^i E_i + D_σ ε^σ) ω0` exactly, so the returned scalar is
/// identically zero for every projectable field, symmetry or not.
pub fn noether_residual(
    lagrangian: &ScalarExpr,
    x: &ProjectableVectorField,
    limits: &Limits,
) -> Result<ScalarExpr> {
    let split = x.split();
    let defect = invariance_defect(lagrangian, &split)?;
    let el = euler_lagrange(lagrangian, limits)?;
    let eps = noether_current(lagrangian, x, limits)?;
    let mut rhs = base_divergence(&eps)?;
    for (v, e) in split.vert().iter().zip(&el) {
        rhs = rhs.checked_add(&v.checked_mul(e)?)?;
    }
    defect.checked_sub(&rhs)
}

/// First-variation identity as forms: for an evolutionary `w`,
/// `L_jw(λ ω0) − (Σ w^i E_i) ω0 − d_H(b(w)^σ ω_σ)` vanishes identically.
pub fn first_variation_residual(
    lagrangian: &ScalarExpr,
    w: &EvolutionaryField,
    limits: &Limits,
) -> Result<DiffForm> {
    if w.bundle() != lagrangian.bundle() {
        return Err(Error::incompatible(lagrangian.bundle(), w.bundle()));
    }
    let bundle = lagrangian.bundle();
    let density = DiffForm::volume(bundle).scale_expr(lagrangian)?;
    let lie = density.lie(&w.split())?;

    let el = euler_lagrange(lagrangian, limits)?;
    let mut el_paired = ScalarExpr::zero(bundle);
    for (wc, e) in w.components().iter().zip(&el) {
        el_paired = el_paired.checked_add(&wc.checked_mul(e)?)?;
    }
    let el_term = DiffForm::volume(bundle).scale_expr(&el_paired)?;

    let p = momentum(lagrangian, limits)?;
    let current = p.pair_with(w.components())?;
    let boundary = DiffForm::from_current_components(bundle, &current)?.d_h()?;

    lie.checked_sub(&el_term)?.checked_sub(&boundary)
}

/// Outcome of the symmetry test for a projectable field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryCheck {
    /// The Lagrangian density is strictly invariant.
    Invariant,
    /// Invariance up to an exact horizontal term `d_H(ρ^σ ω_σ)`.
    Divergence { flux: Vec<ScalarExpr> },
    /// Not a symmetry; the invariance defect is reported.
    Broken { residual: ScalarExpr },
}

/// Decide whether `x` generates a (divergence) symmetry of the Lagrangian.
/// The divergence search is a bounded polynomial ansatz: it proves success
/// exactly when it finds a flux, but a `Broken` verdict with a nonzero
/// residual only means no flux exists within the search space.
pub fn check_symmetry(
    lagrangian: &ScalarExpr,
    x: &ProjectableVectorField,
    limits: &Limits,
) -> Result<SymmetryCheck> {
    limits.check(lagrangian)?;
    if x.bundle() != lagrangian.bundle() {
        return Err(Error::incompatible(lagrangian.bundle(), x.bundle()));
    }
    let defect = invariance_defect(lagrangian, &x.split())?;
    if defect.is_zero() {
        return Ok(SymmetryCheck::Invariant);
    }
    if let Some(flux) = divergence_candidate(&defect)? {
        return Ok(SymmetryCheck::Divergence { flux });
    }
    Ok(SymmetryCheck::Broken { residual: defect })
}

/// Monomials of total degree in `1..=cap` over the given letters. Each layer
/// tracks the smallest usable letter index so no product is enumerated twice.
fn monomials_up_to(letters: &[ScalarExpr], cap: u32) -> Vec<ScalarExpr> {
    let bundle = letters[0].bundle();
    let mut out = Vec::new();
    let mut layer: Vec<(ScalarExpr, usize)> = vec![(ScalarExpr::one(bundle), 0)];
    for _ in 0..cap {
        let mut next: Vec<(ScalarExpr, usize)> = Vec::new();
        for (m, lo) in &layer {
            for (k, letter) in letters.iter().enumerate().skip(*lo) {
                let prod = m.checked_mul(letter).expect("same bundle");
                out.push(prod.clone());
                next.push((prod, k));
            }
        }
        layer = next;
    }
    out
}

/// Search for `ρ^σ` with `Σ D_σ ρ^σ = r` among polynomial currents of
/// bounded degree. Purely polynomial inputs only.
fn divergence_candidate(r: &ScalarExpr) -> Result<Option<Vec<ScalarExpr>>> {
    let bundle = r.bundle();
    let n = bundle.dim_base();
    // Transcendental factors fall outside the ansatz.
    let transcendental =
        r.terms().iter().any(|t| t.factors.iter().any(|(f, _)| matches!(f, Factor::Apply(..))));
    if transcendental {
        return Ok(None);
    }

    let mut letters: Vec<ScalarExpr> = Vec::new();
    for sigma in 0..n {
        letters.push(ScalarExpr::base(bundle, sigma)?);
    }
    let max_order = r.max_jet_order();
    for i in 0..bundle.dim_fiber() {
        for mi in MultiIndex::all_up_to(n, max_order) {
            letters.push(ScalarExpr::jet(bundle, i, mi)?);
        }
    }
    for atom in r.atoms() {
        if let Atom::Param(_) = atom {
            letters.push(ScalarExpr::atom(bundle, atom)?);
        }
    }
    let cap = r.max_degree() + 1;
    let monos = monomials_up_to(&letters, cap);
    if monos.len().saturating_mul(n) > 20_000 {
        return Ok(None);
    }

    // Row space: monomial keys of all D_σ(mono) and of r.
    use std::collections::BTreeMap;
    type Key = Vec<(Factor, u32)>;
    let mut row_of: BTreeMap<Key, usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, num_rational::BigRational)>> = Vec::new();
    let intern = |key: Key, row_of: &mut BTreeMap<Key, usize>| -> usize {
        let next = row_of.len();
        *row_of.entry(key).or_insert(next)
    };
    for sigma in 0..n {
        for mono in &monos {
            let d = total_derivative(mono, sigma)?;
            let mut col = Vec::new();
            for term in d.terms() {
                let row = intern(term.factors.clone(), &mut row_of);
                col.push((row, term.coeff.clone()));
            }
            columns.push(col);
        }
    }
    let mut rhs_entries = Vec::new();
    for term in r.terms() {
        let row = intern(term.factors.clone(), &mut row_of);
        rhs_entries.push((row, term.coeff.clone()));
    }

    let rows = row_of.len();
    let cols = columns.len();
    let mut a = vec![vec![num_rational::BigRational::zero(); cols]; rows];
    for (c, col) in columns.iter().enumerate() {
        for (rw, val) in col {
            a[*rw][c] = a[*rw][c].clone() + val;
        }
    }
    let mut b = vec![num_rational::BigRational::zero(); rows];
    for (rw, val) in rhs_entries {
        b[rw] = b[rw].clone() + val;
    }

    let Some(x) = solve_rational(a, b) else { return Ok(None) };
    let mut flux = vec![ScalarExpr::zero(bundle); n];
    for sigma in 0..n {
        for (k, mono) in monos.iter().enumerate() {
            let c = &x[sigma * monos.len() + k];
            if !c.is_zero() {
                flux[sigma] = flux[sigma].checked_add(&mono.scale(c))?;
            }
        }
    }
    // Defensive exactness check.
    let mut div = ScalarExpr::zero(bundle);
    for (sigma, f) in flux.iter().enumerate() {
        div = div.checked_add(&total_derivative(f, sigma)?)?;
    }
    if div.checked_sub(r)?.is_zero() {
        Ok(Some(flux))
    } else {
        Err(Error::InternalInvariant("divergence ansatz produced an inexact flux".into()))
    }
}
