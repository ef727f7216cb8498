//! The integration-by-parts cascade.
//!
//! Given a scalar `W` that is linear in the jets of a designated set of
//! target fields, rewrite it exactly as
//!
//! `W = Σ_i a_i · ζ^i + Σ_σ D_σ(b^σ) + rest`
//!
//! where `a_i` multiplies the order-zero jet of target `i`, each `b^σ` is
//! again linear in target jets, and `rest` is target-free. The cascade peels
//! the graded-lexicographically largest target jet `ζ_γ` with `|γ| ≥ 1`,
//! shifting its coefficient through the smallest base direction contained in
//! `γ`:  `c·ζ_γ = D_σ(c·ζ_{γ−1_σ}) − D_σ(c)·ζ_{γ−1_σ}`. The choice of
//! largest jet and smallest direction makes the decomposition deterministic.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;
use crate::jetspace::{total_derivative, total_derivative_multi, BundleSpec, MultiIndex};
use crate::symkernel::{Atom, Factor, ScalarExpr};
use crate::Result;

/// A bundle extended by one auxiliary field per original field, used to form
/// linear pairings like `Σ ∂λ/∂y^i_α · ζ^i_α`.
pub(crate) struct AuxExtension {
    pub extended: Arc<BundleSpec>,
    /// Extended-bundle index of the auxiliary partner of each original field.
    pub aux_of: Vec<usize>,
}

/// Extend `bundle` with fields `<stem>_<field>` (uniquified when taken).
pub(crate) fn extend_with_aux(bundle: &Arc<BundleSpec>, stem: &str) -> Result<AuxExtension> {
    let m = bundle.dim_fiber();
    let mut names = Vec::with_capacity(m);
    for i in 0..m {
        let mut candidate = format!("{stem}_{}", bundle.field_name(i));
        // Avoid collisions both with existing names and with earlier picks.
        while bundle.base_index(&candidate).is_some()
            || bundle.field_index(&candidate).is_some()
            || names.contains(&candidate)
        {
            candidate.push('_');
        }
        names.push(candidate);
    }
    let extended = bundle.extend(names)?;
    Ok(AuxExtension { extended, aux_of: (m..2 * m).collect() })
}

/// Result of the cascade.
pub(crate) struct ByParts {
    /// Coefficient on the order-zero jet of each field of the ambient bundle
    /// (zero on non-targets).
    pub adjoint: Vec<ScalarExpr>,
    /// Boundary components `b^σ`, linear in target jets.
    pub boundary: Vec<ScalarExpr>,
    /// Target-free remainder.
    pub rest: ScalarExpr,
}

fn validate_linear(w: &ScalarExpr, targets: &BTreeSet<usize>) -> Result<()> {
    for term in w.terms() {
        let mut count: u32 = 0;
        for (factor, exp) in &term.factors {
            match factor {
                Factor::Atom(Atom::Jet { field, .. }) if targets.contains(field) => {
                    count += exp;
                }
                Factor::Apply(_, arg)
                    if arg.atoms().iter().any(
                        |a| matches!(a, Atom::Jet { field, .. } if targets.contains(field)),
                    ) =>
                {
                    return Err(Error::UnsupportedStructure(
                        "target field occurs inside a transcendental argument".into(),
                    ));
                }
                _ => {}
            }
        }
        if count > 1 {
            return Err(Error::UnsupportedStructure(
                "expression is not linear in the target fields".into(),
            ));
        }
    }
    Ok(())
}

/// Largest target jet of positive order still present, by graded-lex order of
/// the multi-index (ties broken by field index).
fn max_target_jet(w: &ScalarExpr, targets: &BTreeSet<usize>) -> Option<(usize, MultiIndex)> {
    w.atoms()
        .into_iter()
        .filter_map(|a| match a {
            Atom::Jet { field, mi } if targets.contains(&field) && mi.order() >= 1 => {
                Some((mi, field))
            }
            _ => None,
        })
        .max()
        .map(|(mi, field)| (field, mi))
}

pub(crate) fn by_parts(w: &ScalarExpr, targets: &BTreeSet<usize>) -> Result<ByParts> {
    let bundle = w.bundle().clone();
    for &t in targets {
        if t >= bundle.dim_fiber() {
            return Err(Error::FieldIndex { index: t, m: bundle.dim_fiber() });
        }
    }
    validate_linear(w, targets)?;

    let n = bundle.dim_base();
    let mut work = w.clone();
    let mut boundary = vec![ScalarExpr::zero(&bundle); n];
    while let Some((field, gamma)) = max_target_jet(&work, targets) {
        let atom = Atom::jet(field, gamma.clone());
        let coeff = work.partial(&atom);
        let sigma = gamma.first_nonzero().expect("positive order");
        let reduced = gamma.checked_sub(&MultiIndex::unit(n, sigma)).expect("entry positive");
        let zeta_reduced = ScalarExpr::jet(&bundle, field, reduced)?;
        boundary[sigma] = boundary[sigma].checked_add(&coeff.checked_mul(&zeta_reduced)?)?;
        let zeta_full = ScalarExpr::jet(&bundle, field, gamma)?;
        let dc = total_derivative(&coeff, sigma)?;
        work = work
            .checked_sub(&coeff.checked_mul(&zeta_full)?)?
            .checked_sub(&dc.checked_mul(&zeta_reduced)?)?;
    }

    let mut adjoint = vec![ScalarExpr::zero(&bundle); bundle.dim_fiber()];
    let zero_mi = MultiIndex::zero(n);
    for &t in targets {
        let atom = Atom::jet(t, zero_mi.clone());
        let a = work.partial(&atom);
        if !a.is_zero() {
            let zeta = ScalarExpr::jet(&bundle, t, zero_mi.clone())?;
            work = work.checked_sub(&a.checked_mul(&zeta)?)?;
        }
        adjoint[t] = a;
    }
    Ok(ByParts { adjoint, boundary, rest: work })
}

/// Replace the jets of the trailing auxiliary fields by total derivatives of
/// the given values and project onto the smaller bundle.
///
/// `expr` lives on a bundle extending `to` by auxiliary fields; occurrences
/// of the `k`-th auxiliary jet `ζ^k_α` become `D_α(values[k])`. The
/// expression must be polynomial in the auxiliary jets (no occurrences inside
/// transcendental arguments).
pub fn substitute_aux(
    expr: &ScalarExpr,
    to: &Arc<BundleSpec>,
    values: &[ScalarExpr],
) -> Result<ScalarExpr> {
    let from = expr.bundle();
    if !from.extends(to) {
        return Err(Error::incompatible(from, to));
    }
    let aux_start = to.dim_fiber();
    let aux_count = from.dim_fiber() - aux_start;
    if values.len() != aux_count {
        return Err(Error::UnsupportedStructure(format!(
            "expected {aux_count} replacement values, got {}",
            values.len()
        )));
    }
    for v in values {
        if v.bundle() != to {
            return Err(Error::incompatible(to, v.bundle()));
        }
    }
    let mut out = ScalarExpr::zero(to);
    for term in expr.terms() {
        let mut acc = ScalarExpr::constant(to, term.coeff.clone());
        for (factor, exp) in &term.factors {
            let mapped = match factor {
                Factor::Atom(Atom::Jet { field, mi }) if *field >= aux_start => {
                    total_derivative_multi(&values[*field - aux_start], mi)?
                }
                Factor::Atom(a) => ScalarExpr::atom(to, a.clone())?,
                Factor::Apply(f, arg) => {
                    if arg
                        .atoms()
                        .iter()
                        .any(|a| matches!(a, Atom::Jet { field, .. } if *field >= aux_start))
                    {
                        return Err(Error::UnsupportedStructure(
                            "auxiliary field occurs inside a transcendental argument".into(),
                        ));
                    }
                    ScalarExpr::apply(*f, arg.cast_down(to)?)
                }
            };
            acc = acc.checked_mul(&mapped.pow(*exp))?;
        }
        out = out.checked_add(&acc)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn setup() -> (Arc<BundleSpec>, AuxExtension) {
        let b = BundleSpec::new(vec!["t".into(), "x".into()], vec!["u".into()]).unwrap();
        let aux = extend_with_aux(&b, "zeta").unwrap();
        (b, aux)
    }

    #[test]
    fn aux_names_are_fresh() {
        let b = BundleSpec::new(vec!["t".into()], vec!["u".into(), "zeta_u".into()]).unwrap();
        let aux = extend_with_aux(&b, "zeta").unwrap();
        assert_eq!(aux.extended.dim_fiber(), 4);
        assert_eq!(aux.extended.field_name(2), "zeta_u_");
        assert_eq!(aux.extended.field_name(3), "zeta_zeta_u");
    }

    #[test]
    fn first_order_peel() {
        // W = u_t ζ_t: b^t = u_t ζ, remainder -u_tt ζ.
        let (_b, aux) = setup();
        let e = &aux.extended;
        let u_t = ScalarExpr::jet(e, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_tt = ScalarExpr::jet(e, 0, MultiIndex::new(vec![2, 0])).unwrap();
        let z = ScalarExpr::field(e, 1).unwrap();
        let z_t = ScalarExpr::jet(e, 1, MultiIndex::new(vec![1, 0])).unwrap();
        let w = &u_t * &z_t;
        let targets: BTreeSet<usize> = [1].into_iter().collect();
        let r = by_parts(&w, &targets).unwrap();
        assert_eq!(r.boundary[0], &u_t * &z);
        assert!(r.boundary[1].is_zero());
        assert_eq!(r.adjoint[1], -&u_tt);
        assert!(r.rest.is_zero());
    }

    #[test]
    fn decomposition_identity_holds() {
        // W = a ζ + D_σ b^σ + rest, exactly.
        let (_b, aux) = setup();
        let e = &aux.extended;
        let u = ScalarExpr::field(e, 0).unwrap();
        let u_x = ScalarExpr::jet(e, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let z_tx = ScalarExpr::jet(e, 1, MultiIndex::new(vec![1, 1])).unwrap();
        let z_x = ScalarExpr::jet(e, 1, MultiIndex::new(vec![0, 1])).unwrap();
        let t = ScalarExpr::base(e, 0).unwrap();
        let w = (&(&u * &u_x) * &z_tx) + (&t * &z_x) + (&u * &u);
        let targets: BTreeSet<usize> = [1].into_iter().collect();
        let r = by_parts(&w, &targets).unwrap();
        let z0 = ScalarExpr::field(e, 1).unwrap();
        let mut rebuilt = r.rest.clone();
        rebuilt = rebuilt + (&r.adjoint[1] * &z0);
        for sigma in 0..2 {
            rebuilt = rebuilt + total_derivative(&r.boundary[sigma], sigma).unwrap();
        }
        assert_eq!(rebuilt, w);
        assert_eq!(r.rest, &u * &u);
    }

    #[test]
    fn second_order_cascade_matches_hand_computation() {
        // W = u_xx ζ_xx: b^x = u_xx ζ_x − u_xxx ζ, adjoint u_xxxx.
        let (_b, aux) = setup();
        let e = &aux.extended;
        let u_xx = ScalarExpr::jet(e, 0, MultiIndex::new(vec![0, 2])).unwrap();
        let u_xxx = ScalarExpr::jet(e, 0, MultiIndex::new(vec![0, 3])).unwrap();
        let u_xxxx = ScalarExpr::jet(e, 0, MultiIndex::new(vec![0, 4])).unwrap();
        let z = ScalarExpr::field(e, 1).unwrap();
        let z_x = ScalarExpr::jet(e, 1, MultiIndex::new(vec![0, 1])).unwrap();
        let z_xx = ScalarExpr::jet(e, 1, MultiIndex::new(vec![0, 2])).unwrap();
        let w = &u_xx * &z_xx;
        let targets: BTreeSet<usize> = [1].into_iter().collect();
        let r = by_parts(&w, &targets).unwrap();
        let expect_bx = (&u_xx * &z_x) - (&u_xxx * &z);
        assert_eq!(r.boundary[1], expect_bx);
        assert_eq!(r.adjoint[1], u_xxxx);
    }

    #[test]
    fn rejects_nonlinear_targets() {
        let (_b, aux) = setup();
        let e = &aux.extended;
        let z = ScalarExpr::field(e, 1).unwrap();
        let targets: BTreeSet<usize> = [1].into_iter().collect();
        assert!(by_parts(&(&z * &z), &targets).is_err());
        let inside = ScalarExpr::apply(crate::symkernel::Func::Sin, z);
        assert!(by_parts(&inside, &targets).is_err());
    }

    #[test]
    fn aux_substitution() {
        let (b, aux) = setup();
        let e = &aux.extended;
        let u_t_small = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let z_x = ScalarExpr::jet(e, 1, MultiIndex::new(vec![0, 1])).unwrap();
        let u_big = ScalarExpr::field(e, 0).unwrap();
        let w = (&u_big * &z_x).scale(&q(1, 2));
        // ζ := u_t, so ζ_x becomes u_tx.
        let out = substitute_aux(&w, &b, &[u_t_small]).unwrap();
        let u_small = ScalarExpr::field(&b, 0).unwrap();
        let u_tx = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 1])).unwrap();
        assert_eq!(out, (&u_small * &u_tx).scale(&q(1, 2)));
    }
}
