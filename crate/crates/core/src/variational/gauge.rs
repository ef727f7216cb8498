//! Gauge structure: linear symmetry generators with free parameter fields,
//! the identities among field equations they induce, reduced currents,
//! superpotentials, and naturality residuals.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::jetspace::{
    total_derivative, BundleSpec, MultiIndex, ProjectableVectorField, SplitField,
};
use crate::symkernel::{Atom, Factor, ScalarExpr};
use crate::Result;

use super::byparts::by_parts;
use super::el::{momentum, variational_derivative};
use super::linsolve::solve_expr_rhs;
use super::secondvar::jacobi_along;
use super::{Limits, MAX_SUPPORTED_ORDER};

/// Highest jet order of the parameter fields a generator may carry.
pub const MAX_GAUGE_ORDER: u32 = 2;

/// A family of evolutionary directions depending linearly on free parameter
/// fields and their jets: `v^i = Σ R^{iα}_A D_α-jets of χ^A`, with the
/// parameter fields realized as extra fiber coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeGenerator {
    matter: Arc<BundleSpec>,
    extended: Arc<BundleSpec>,
    components: Vec<ScalarExpr>,
}

impl GaugeGenerator {
    /// Components live on a bundle extending the matter bundle by the
    /// parameter fields; each must be linear homogeneous in parameter jets
    /// of order at most [`MAX_GAUGE_ORDER`].
    pub fn new(matter: &Arc<BundleSpec>, components: Vec<ScalarExpr>) -> Result<Self> {
        if components.len() != matter.dim_fiber() {
            return Err(Error::InvalidGaugeGenerator(format!(
                "expected {} components, got {}",
                matter.dim_fiber(),
                components.len()
            )));
        }
        let Some(first) = components.first() else {
            return Err(Error::InvalidGaugeGenerator("no components given".into()));
        };
        let extended = first.bundle().clone();
        if !extended.extends(matter) || extended.dim_fiber() == matter.dim_fiber() {
            return Err(Error::InvalidGaugeGenerator(
                "components must live on the matter bundle extended by parameter fields".into(),
            ));
        }
        let start = matter.dim_fiber();
        for (i, c) in components.iter().enumerate() {
            if c.bundle() != &extended {
                return Err(Error::incompatible(&extended, c.bundle()));
            }
            for term in c.terms() {
                let mut count: u32 = 0;
                for (factor, exp) in &term.factors {
                    match factor {
                        Factor::Atom(Atom::Jet { field, mi }) if *field >= start => {
                            count += exp;
                            if mi.order() > MAX_GAUGE_ORDER {
                                return Err(Error::InvalidGaugeGenerator(format!(
                                    "component {i} uses a parameter jet of order {} (max {MAX_GAUGE_ORDER})",
                                    mi.order()
                                )));
                            }
                        }
                        Factor::Apply(_, arg)
                            if arg.atoms().iter().any(
                                |a| matches!(a, Atom::Jet { field, .. } if *field >= start),
                            ) =>
                        {
                            return Err(Error::InvalidGaugeGenerator(
                                "parameter field inside a transcendental argument".into(),
                            ));
                        }
                        _ => {}
                    }
                }
                if count != 1 {
                    return Err(Error::InvalidGaugeGenerator(format!(
                        "component {i} is not linear homogeneous in the parameter fields"
                    )));
                }
            }
        }
        Ok(GaugeGenerator { matter: matter.clone(), extended, components })
    }

    pub fn matter_bundle(&self) -> &Arc<BundleSpec> {
        &self.matter
    }

    pub fn extended_bundle(&self) -> &Arc<BundleSpec> {
        &self.extended
    }

    /// Index of the first parameter field in the extended bundle.
    pub fn parameter_start(&self) -> usize {
        self.matter.dim_fiber()
    }

    pub fn parameter_count(&self) -> usize {
        self.extended.dim_fiber() - self.matter.dim_fiber()
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.extended.field_names()[self.matter.dim_fiber()..]
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    /// Components padded with zeros on the parameter slots, as a full
    /// evolutionary direction on the extended bundle.
    pub fn padded_components(&self) -> Vec<ScalarExpr> {
        let mut v = self.components.clone();
        v.extend(
            std::iter::repeat_with(|| ScalarExpr::zero(&self.extended))
                .take(self.parameter_count()),
        );
        v
    }

    fn check_against(&self, lagrangian: &ScalarExpr, limits: &Limits) -> Result<()> {
        if lagrangian.bundle() != &self.matter {
            return Err(Error::incompatible(lagrangian.bundle(), &self.matter));
        }
        limits.check(lagrangian)?;
        limits.check_all(self.components.iter())
    }
}

/// Internal steps work with intermediate densities whose order legitimately
/// exceeds the user-facing bound, so they run unthrottled.
fn wide() -> Limits {
    Limits::new(MAX_SUPPORTED_ORDER).expect("constant is in range")
}

/// The pairing density `ω = Σ v^i E_i` on the extended bundle.
fn pairing_density(lagrangian: &ScalarExpr, gen: &GaugeGenerator) -> Result<ScalarExpr> {
    let ext = gen.extended_bundle();
    let mut omega = ScalarExpr::zero(ext);
    for (i, v) in gen.components().iter().enumerate() {
        let e_i = variational_derivative(lagrangian, i)?.cast(ext)?;
        omega = omega.checked_add(&v.checked_mul(&e_i)?)?;
    }
    Ok(omega)
}

/// Identities among the field equations: the variational derivatives of
/// `Σ v^i E_i` with respect to the parameter fields. Identically zero exactly
/// when the generator maps into the kernel direction required by the second
/// Noether theorem.
pub fn bianchi_identities(
    lagrangian: &ScalarExpr,
    gen: &GaugeGenerator,
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    gen.check_against(lagrangian, limits)?;
    let omega = pairing_density(lagrangian, gen)?;
    (gen.parameter_start()..gen.extended_bundle().dim_fiber())
        .map(|a| variational_derivative(&omega, a))
        .collect()
}

/// The canonical splitting `Σ v^i E_i = Σ β_A χ^A − D_σ ε̃^σ`.
#[derive(Debug, Clone)]
pub struct ReducedCurrent {
    pub bianchi: Vec<ScalarExpr>,
    pub tilde: Vec<ScalarExpr>,
}

pub fn reduced_current(
    lagrangian: &ScalarExpr,
    gen: &GaugeGenerator,
    limits: &Limits,
) -> Result<ReducedCurrent> {
    gen.check_against(lagrangian, limits)?;
    let omega = pairing_density(lagrangian, gen)?;
    let targets: BTreeSet<usize> =
        (gen.parameter_start()..gen.extended_bundle().dim_fiber()).collect();
    let bp = by_parts(&omega, &targets)?;
    if !bp.rest.is_zero() {
        return Err(Error::InternalInvariant(
            "pairing density left a parameter-free remainder".into(),
        ));
    }
    // Cross-check: the cascade adjoint must agree with the direct
    // variational derivatives.
    let direct = bianchi_identities(lagrangian, gen, limits)?;
    for (a, beta) in direct.iter().enumerate() {
        let adj = &bp.adjoint[gen.parameter_start() + a];
        if adj.checked_sub(beta)?.is_zero() {
            continue;
        }
        return Err(Error::InternalInvariant(
            "cascade adjoint disagrees with the variational derivative".into(),
        ));
    }
    let tilde = bp.boundary.into_iter().map(|b| -b).collect();
    Ok(ReducedCurrent { bianchi: direct, tilde })
}

/// Noether current of the gauge direction itself (a vertical evolutionary
/// direction on the extended bundle).
fn gauge_noether(lagrangian: &ScalarExpr, gen: &GaugeGenerator) -> Result<Vec<ScalarExpr>> {
    let lam = lagrangian.cast(gen.extended_bundle())?;
    let p = momentum(&lam, &wide())?;
    p.pair_with(&gen.padded_components())
}

/// An antisymmetric potential for the difference of currents:
/// `c^σ = ε^σ − ε̃^σ = D_μ ν^{σμ}`.
#[derive(Debug, Clone)]
pub struct Superpotential {
    pub extended: Arc<BundleSpec>,
    /// The exact current being resolved.
    pub current: Vec<ScalarExpr>,
    /// Antisymmetric matrix `ν^{σμ}`.
    pub matrix: Vec<Vec<ScalarExpr>>,
}

pub fn superpotential(
    lagrangian: &ScalarExpr,
    gen: &GaugeGenerator,
    limits: &Limits,
) -> Result<Superpotential> {
    gen.check_against(lagrangian, limits)?;
    let ext = gen.extended_bundle().clone();
    let n = ext.dim_base();
    let rc = reduced_current(lagrangian, gen, limits)?;
    for (a, beta) in rc.bianchi.iter().enumerate() {
        if !beta.is_zero() {
            return Err(Error::BianchiObstruction {
                details: format!(
                    "variational derivative along parameter {} is {}",
                    ext.field_name(gen.parameter_start() + a),
                    beta
                ),
            });
        }
    }
    if n < 2 {
        return Err(Error::DegenerateDimension { n });
    }
    let eps = gauge_noether(lagrangian, gen)?;
    let mut current = Vec::with_capacity(n);
    for (e, t) in eps.iter().zip(&rc.tilde) {
        current.push(e.checked_sub(t)?);
    }
    // With all identities vanishing the current is identically conserved.
    let mut div = ScalarExpr::zero(&ext);
    for (sigma, c) in current.iter().enumerate() {
        div = div.checked_add(&total_derivative(c, sigma)?)?;
    }
    if !div.is_zero() {
        return Err(Error::InternalInvariant("gauge current is not identically conserved".into()));
    }

    let matrix = peel_superpotential(&ext, gen.parameter_start(), &current)?;
    // Exactness check: D_μ ν^{σμ} = c^σ.
    for (nu_row, c) in matrix.iter().zip(&current) {
        let mut d = ScalarExpr::zero(&ext);
        for (mu, entry) in nu_row.iter().enumerate() {
            d = d.checked_add(&total_derivative(entry, mu)?)?;
        }
        if !d.checked_sub(c)?.is_zero() {
            return Err(Error::InternalInvariant("superpotential resolution is inexact".into()));
        }
    }
    Ok(Superpotential { extended: ext, current, matrix })
}

/// Solve `c^σ = D_μ ν^{σμ}` for antisymmetric `ν`, peeling one parameter-jet
/// level at a time. At level `k` the coefficients of order-`k` parameter
/// jets determine the order-`k−1` content of `ν` through a rational linear
/// system with expression-valued right-hand side.
fn peel_superpotential(
    ext: &Arc<BundleSpec>,
    param_start: usize,
    current: &[ScalarExpr],
) -> Result<Vec<Vec<ScalarExpr>>> {
    let n = ext.dim_base();
    let g = ext.dim_fiber() - param_start;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|s| ((s + 1)..n).map(move |m| (s, m))).collect();
    let pair_index = |s: usize, m: usize| pairs.iter().position(|&p| p == (s, m)).unwrap();

    let mut residual = current.to_vec();
    let mut nu = vec![vec![ScalarExpr::zero(ext); n]; n];
    loop {
        let k = residual
            .iter()
            .flat_map(|c| c.atoms())
            .filter_map(|a| match a {
                Atom::Jet { field, mi } if field >= param_start => Some(mi.order()),
                _ => None,
            })
            .max();
        let Some(k) = k else { break };
        if k == 0 {
            return Err(Error::InternalInvariant(
                "conserved parameter current has an underived remainder".into(),
            ));
        }
        let tops = MultiIndex::of_order(n, k);
        let lowers = MultiIndex::of_order(n, k - 1);
        let lower_index = |mi: &MultiIndex| lowers.iter().position(|m| m == mi).expect("order k-1");
        let cols = pairs.len() * g * lowers.len();
        let unknown = |p: usize, a: usize, l: usize| (p * g + a) * lowers.len() + l;

        let mut a_mat: Vec<Vec<BigRational>> = Vec::new();
        let mut b_vec: Vec<ScalarExpr> = Vec::new();
        let one = BigRational::from_integer(1.into());
        for sigma in 0..n {
            for a in 0..g {
                for gamma in &tops {
                    let mut row = vec![BigRational::zero(); cols];
                    for mu in 0..n {
                        if mu == sigma || gamma.entry(mu) == 0 {
                            continue;
                        }
                        let low =
                            gamma.checked_sub(&MultiIndex::unit(n, mu)).expect("entry positive");
                        let l = lower_index(&low);
                        if sigma < mu {
                            row[unknown(pair_index(sigma, mu), a, l)] += &one;
                        } else {
                            row[unknown(pair_index(mu, sigma), a, l)] -= &one;
                        }
                    }
                    let rhs = residual[sigma].partial(&Atom::jet(param_start + a, gamma.clone()));
                    a_mat.push(row);
                    b_vec.push(rhs);
                }
            }
        }
        let Some(sol) = solve_expr_rhs(ext, a_mat, b_vec)? else {
            return Err(Error::InternalInvariant(
                "parameter-jet peeling has no solution despite conservation".into(),
            ));
        };

        let mut layer = vec![vec![ScalarExpr::zero(ext); n]; n];
        for (p, &(s, m)) in pairs.iter().enumerate() {
            for a in 0..g {
                for (l, low) in lowers.iter().enumerate() {
                    let f = &sol[unknown(p, a, l)];
                    if f.is_zero() {
                        continue;
                    }
                    let chi = ScalarExpr::jet(ext, param_start + a, low.clone())?;
                    let term = f.checked_mul(&chi)?;
                    layer[s][m] = layer[s][m].checked_add(&term)?;
                    layer[m][s] = layer[m][s].checked_sub(&term)?;
                }
            }
        }
        for sigma in 0..n {
            for mu in 0..n {
                if layer[sigma][mu].is_zero() {
                    continue;
                }
                nu[sigma][mu] = nu[sigma][mu].checked_add(&layer[sigma][mu])?;
                residual[sigma] =
                    residual[sigma].checked_sub(&total_derivative(&layer[sigma][mu], mu)?)?;
            }
        }
    }
    Ok(nu)
}

/// The current extracted from the momentum of the pairing density along the
/// gauge direction. For natural gauge couplings it is identically conserved.
pub fn energy_momentum_current(
    lagrangian: &ScalarExpr,
    gen: &GaugeGenerator,
    limits: &Limits,
) -> Result<Vec<ScalarExpr>> {
    gen.check_against(lagrangian, limits)?;
    let omega = pairing_density(lagrangian, gen)?;
    let p = momentum(&omega, &wide())?;
    Ok(p.pair_with(&gen.padded_components())?.into_iter().map(|e| -e).collect())
}

/// Naturality diagnostics for a base symmetry of a gauge-coupled theory.
#[derive(Debug, Clone)]
pub struct Naturality {
    pub extended: Arc<BundleSpec>,
    /// Coefficient of `ω_0` in the Lie derivative of the pairing density
    /// along the horizontal lift of the base motion.
    pub horizontal_defect: ScalarExpr,
    /// The defect corrected by the divergence of the gauge-momentum current.
    pub corrected_defect: ScalarExpr,
    pub energy_momentum: Vec<ScalarExpr>,
}

/// Both naturality residuals for a projectable field on the matter bundle.
/// Requires the gauge direction to lie in the kernel of the linearized field
/// equations.
pub fn naturality_residuals(
    lagrangian: &ScalarExpr,
    gen: &GaugeGenerator,
    u: &ProjectableVectorField,
    limits: &Limits,
) -> Result<Naturality> {
    gen.check_against(lagrangian, limits)?;
    if u.bundle() != gen.matter_bundle() {
        return Err(Error::incompatible(gen.matter_bundle(), u.bundle()));
    }
    let kernel = jacobi_along(lagrangian, gen.components(), &wide())?;
    if let Some(bad) = kernel.iter().find(|r| !r.is_zero()) {
        return Err(Error::KernelPrecondition {
            details: format!("generator leaves the linearized equations by {bad}"),
        });
    }

    let ext = gen.extended_bundle().clone();
    let omega = pairing_density(lagrangian, gen)?;

    // Horizontal lift of u: drag the parameter fields as scalars.
    let split = u.split();
    let xi: Vec<ScalarExpr> =
        split.xi().iter().map(|x| x.cast(&ext)).collect::<Result<Vec<_>>>()?;
    let mut vert: Vec<ScalarExpr> =
        split.vert().iter().map(|v| v.cast(&ext)).collect::<Result<Vec<_>>>()?;
    for a in gen.parameter_start()..ext.dim_fiber() {
        let mut drag = ScalarExpr::zero(&ext);
        for (sigma, x) in xi.iter().enumerate() {
            let chi_jet = ScalarExpr::jet(&ext, a, MultiIndex::unit(ext.dim_base(), sigma))?;
            drag = drag.checked_sub(&chi_jet.checked_mul(x)?)?;
        }
        vert.push(drag);
    }
    let lift = SplitField::new(&ext, xi, vert)?;

    let mut div_xi = ScalarExpr::zero(&ext);
    for (sigma, x) in lift.xi().iter().enumerate() {
        div_xi = div_xi.checked_add(&total_derivative(x, sigma)?)?;
    }
    let horizontal_defect = lift.lie_scalar(&omega)?.checked_add(&omega.checked_mul(&div_xi)?)?;

    let energy_momentum = energy_momentum_current(lagrangian, gen, limits)?;
    let mut div_em = ScalarExpr::zero(&ext);
    for (sigma, e) in energy_momentum.iter().enumerate() {
        div_em = div_em.checked_add(&total_derivative(e, sigma)?)?;
    }
    let corrected_defect = horizontal_defect.checked_sub(&div_em)?;
    Ok(Naturality { extended: ext, horizontal_defect, corrected_defect, energy_momentum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variational::kernel_residuals;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Two-dimensional abelian field-strength theory: fields a0, a1 with
    /// curvature f = D_t a1 − D_x a0 and density −f²/2; the generator shifts
    /// a_μ by the gradient of a free parameter field.
    fn maxwell() -> (Arc<BundleSpec>, ScalarExpr, GaugeGenerator) {
        let b =
            BundleSpec::new(vec!["t".into(), "x".into()], vec!["a0".into(), "a1".into()]).unwrap();
        let f = field_strength(&b);
        let lam = (&f * &f).scale(&q(-1, 2));
        let ext = b.extend(vec!["chi".into()]).unwrap();
        let chi_t = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![1, 0])).unwrap();
        let chi_x = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![0, 1])).unwrap();
        let gen = GaugeGenerator::new(&b, vec![chi_t, chi_x]).unwrap();
        (b, lam, gen)
    }

    fn field_strength(b: &Arc<BundleSpec>) -> ScalarExpr {
        let a1_t = ScalarExpr::jet(b, 1, MultiIndex::new(vec![1, 0])).unwrap();
        let a0_x = ScalarExpr::jet(b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        &a1_t - &a0_x
    }

    #[test]
    fn generator_validation() {
        let b = BundleSpec::new(vec!["t".into()], vec!["u".into()]).unwrap();
        let ext = b.extend(vec!["chi".into()]).unwrap();
        let chi = ScalarExpr::field(&ext, 1).unwrap();
        assert!(GaugeGenerator::new(&b, vec![&chi * &chi]).is_err());
        assert!(GaugeGenerator::new(&b, vec![&chi + &ScalarExpr::one(&ext)]).is_err());
        let u_ext = ScalarExpr::field(&ext, 0).unwrap();
        assert!(GaugeGenerator::new(&b, vec![&u_ext * &chi]).is_ok());
    }

    #[test]
    fn gradient_shift_satisfies_identities() {
        let (_b, lam, gen) = maxwell();
        let betas = bianchi_identities(&lam, &gen, &Limits::default()).unwrap();
        assert!(betas.iter().all(ScalarExpr::is_zero));
        let kernel = kernel_residuals(&lam, gen.components(), &Limits::default()).unwrap();
        assert!(kernel.iter().all(ScalarExpr::is_zero));
    }

    #[test]
    fn perturbed_generator_fails_both_ways() {
        let (b, lam, _gen) = maxwell();
        let ext = b.extend(vec!["chi".into()]).unwrap();
        let chi = ScalarExpr::field(&ext, 2).unwrap();
        let chi_t = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![1, 0])).unwrap();
        let chi_x = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![0, 1])).unwrap();
        let bad = GaugeGenerator::new(&b, vec![&chi_t + &chi, chi_x]).unwrap();
        let betas = bianchi_identities(&lam, &bad, &Limits::default()).unwrap();
        assert!(betas.iter().any(|b| !b.is_zero()));
        let kernel = kernel_residuals(&lam, bad.components(), &Limits::default()).unwrap();
        assert!(kernel.iter().any(|r| !r.is_zero()));
        assert!(matches!(
            superpotential(&lam, &bad, &Limits::default()),
            Err(Error::BianchiObstruction { .. })
        ));
    }

    #[test]
    fn splitting_identity_is_exact() {
        // Σ v^i E_i = Σ β χ − D_σ ε̃^σ, with β ≡ 0 here.
        let (_b, lam, gen) = maxwell();
        let rc = reduced_current(&lam, &gen, &Limits::default()).unwrap();
        let omega = pairing_density(&lam, &gen).unwrap();
        let mut rebuilt = ScalarExpr::zero(gen.extended_bundle());
        for (sigma, t) in rc.tilde.iter().enumerate() {
            rebuilt = rebuilt.checked_sub(&total_derivative(t, sigma).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, omega);
    }

    #[test]
    fn curvature_times_parameter_is_the_potential() {
        let (b, lam, gen) = maxwell();
        let sp = superpotential(&lam, &gen, &Limits::default()).unwrap();
        let ext = gen.extended_bundle();
        let f = field_strength(&b).cast(ext).unwrap();
        let chi = ScalarExpr::field(ext, 2).unwrap();
        assert_eq!(sp.matrix[0][1], -(&f * &chi));
        assert_eq!(sp.matrix[1][0], &f * &chi);
        assert!(sp.matrix[0][0].is_zero());
        // c^0 = −D_x(f χ), c^1 = D_t(f χ).
        let fchi = &f * &chi;
        assert_eq!(sp.current[0], -total_derivative(&fchi, 1).unwrap());
        assert_eq!(sp.current[1], total_derivative(&fchi, 0).unwrap());
    }

    #[test]
    fn translation_is_natural() {
        let (b, lam, gen) = maxwell();
        let one = ScalarExpr::one(&b);
        let zero = ScalarExpr::zero(&b);
        for xi in [vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]] {
            let u = ProjectableVectorField::new(&b, xi, vec![zero.clone(), zero.clone()]).unwrap();
            let nat = naturality_residuals(&lam, &gen, &u, &Limits::default()).unwrap();
            assert!(nat.horizontal_defect.is_zero());
            assert!(nat.corrected_defect.is_zero());
            let mut div = ScalarExpr::zero(&nat.extended);
            for (sigma, e) in nat.energy_momentum.iter().enumerate() {
                div = div.checked_add(&total_derivative(e, sigma).unwrap()).unwrap();
            }
            assert!(div.is_zero());
        }
    }

    #[test]
    fn kernel_precondition_is_enforced() {
        let (b, lam, _gen) = maxwell();
        let ext = b.extend(vec!["chi".into()]).unwrap();
        let chi = ScalarExpr::field(&ext, 2).unwrap();
        let chi_t = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![1, 0])).unwrap();
        let chi_x = ScalarExpr::jet(&ext, 2, MultiIndex::new(vec![0, 1])).unwrap();
        let bad = GaugeGenerator::new(&b, vec![&chi_t + &chi, chi_x]).unwrap();
        let one = ScalarExpr::one(&b);
        let zero = ScalarExpr::zero(&b);
        let u = ProjectableVectorField::new(&b, vec![one, zero.clone()], vec![zero.clone(), zero])
            .unwrap();
        assert!(matches!(
            naturality_residuals(&lam, &bad, &u, &Limits::default()),
            Err(Error::KernelPrecondition { .. })
        ));
    }
}
