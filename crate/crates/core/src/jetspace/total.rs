//! Total derivative operators on scalar expressions.

use crate::error::Error;
use crate::symkernel::{Atom, ScalarExpr};
use crate::Result;

use super::multiindex::MultiIndex;

/// Total derivative `D_σ`: the formal derivative along the base direction
/// `x^σ` treating every jet coordinate as a function of the base, so each
/// occurrence of `y^i_α` contributes `y^i_{α+1_σ} ∂f/∂y^i_α`.
pub fn total_derivative(f: &ScalarExpr, sigma: usize) -> Result<ScalarExpr> {
    let bundle = f.bundle();
    let n = bundle.dim_base();
    if sigma >= n {
        return Err(Error::BaseIndex { index: sigma, n });
    }
    let mut out = f.partial(&Atom::Base(sigma));
    for atom in f.atoms() {
        if let Atom::Jet { field, mi } = &atom {
            let bumped = ScalarExpr::jet(bundle, *field, mi.bump(sigma))?;
            out = &out + &(&bumped * &f.partial(&atom));
        }
    }
    Ok(out)
}

/// Iterated total derivative `D_α = D_1^{α_1} ··· D_n^{α_n}`. The factors
/// commute, so the application order is immaterial.
pub fn total_derivative_multi(f: &ScalarExpr, alpha: &MultiIndex) -> Result<ScalarExpr> {
    let n = f.bundle().dim_base();
    if alpha.len() != n {
        return Err(Error::MultiIndexLength { len: alpha.len(), n });
    }
    let mut out = f.clone();
    for (sigma, &k) in alpha.entries().iter().enumerate() {
        for _ in 0..k {
            out = total_derivative(&out, sigma)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetspace::BundleSpec;
    use crate::symkernel::Func;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn wave() -> Arc<BundleSpec> {
        BundleSpec::new(vec!["t".into(), "x".into()], vec!["u".into()]).unwrap()
    }

    #[test]
    fn derivative_of_jet_monomial() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_tt = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![2, 0])).unwrap();
        // D_t(u^2) = 2 u u_t, D_t(u_t) = u_tt.
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(total_derivative(&(&u * &u), 0).unwrap(), (&u * &u_t).scale(&two));
        assert_eq!(total_derivative(&u_t, 0).unwrap(), u_tt);
    }

    #[test]
    fn derivative_sees_explicit_base_dependence() {
        let b = wave();
        let t = ScalarExpr::base(&b, 0).unwrap();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let e = &t * &u;
        let expect = &u + &(&t * &u_t);
        assert_eq!(total_derivative(&e, 0).unwrap(), expect);
    }

    #[test]
    fn derivative_through_function() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let u_x = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let e = ScalarExpr::apply(Func::Sin, u.clone());
        let expect = &ScalarExpr::apply(Func::Cos, u) * &u_x;
        assert_eq!(total_derivative(&e, 1).unwrap(), expect);
    }

    #[test]
    fn total_derivatives_commute() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let x = ScalarExpr::base(&b, 1).unwrap();
        let e = &(&u * &u_t) * &x;
        let tx = total_derivative(&total_derivative(&e, 0).unwrap(), 1).unwrap();
        let xt = total_derivative(&total_derivative(&e, 1).unwrap(), 0).unwrap();
        assert_eq!(tx, xt);
    }

    #[test]
    fn multi_matches_iteration() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let e = &u * &u;
        let alpha = MultiIndex::new(vec![1, 2]);
        let via_multi = total_derivative_multi(&e, &alpha).unwrap();
        let mut via_steps = e;
        via_steps = total_derivative(&via_steps, 1).unwrap();
        via_steps = total_derivative(&via_steps, 1).unwrap();
        via_steps = total_derivative(&via_steps, 0).unwrap();
        assert_eq!(via_multi, via_steps);
    }
}
