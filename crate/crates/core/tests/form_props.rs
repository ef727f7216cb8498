//! Bicomplex structure of the contact-frame exterior calculus.

mod common;

use proptest::prelude::*;

use common::{bundle_and_form, bundle_strategy, form_strategy, poly_strategy, Pool};
use jetvar::jetspace::SplitField;
use jetvar::symkernel::ScalarExpr;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn horizontal_differential_squares_to_zero((_b, f) in bundle_and_form()) {
        prop_assert!(f.d_h().unwrap().d_h().unwrap().is_zero());
    }

    #[test]
    fn vertical_differential_squares_to_zero((_b, f) in bundle_and_form()) {
        prop_assert!(f.d_v().unwrap().d_v().unwrap().is_zero());
    }

    #[test]
    fn differentials_anticommute((_b, f) in bundle_and_form()) {
        let hv = f.d_h().unwrap().d_v().unwrap();
        let vh = f.d_v().unwrap().d_h().unwrap();
        prop_assert!(hv.checked_add(&vh).unwrap().is_zero());
    }

    #[test]
    fn horizontalization_is_idempotent_and_kills_contact_terms((_b, f) in bundle_and_form()) {
        let h = f.horizontal_part();
        prop_assert_eq!(h.horizontal_part(), h.clone());
        let contact = f.checked_sub(&h).unwrap();
        prop_assert!(contact.horizontal_part().is_zero());
        prop_assert!(h.is_horizontal());
    }

    #[test]
    fn interior_product_is_a_graded_derivation(
        (omega, eta, x) in bundle_strategy().prop_flat_map(|b| {
            let n = b.dim_base();
            (1usize..=n, 1usize..=2).prop_flat_map(move |(p, q)| {
                let b = b.clone();
                let xi = prop::collection::vec(
                    poly_strategy(b.clone(), Pool::BaseOnly, 2, false),
                    b.dim_base(),
                );
                let vert = prop::collection::vec(
                    poly_strategy(b.clone(), Pool::Jets(2), 2, false),
                    b.dim_fiber(),
                );
                let bb = b.clone();
                (
                    form_strategy(b.clone(), p),
                    form_strategy(b.clone(), q),
                    (xi, vert).prop_map(move |(xi, vert)| {
                        SplitField::new(&bb, xi, vert).expect("component shapes fit")
                    }),
                )
            })
        })
    ) {
        let p = omega.degree();
        let wedge = omega.wedge(&eta).unwrap();
        let lhs = wedge.interior(&x).unwrap();
        let first = omega.interior(&x).unwrap().wedge(&eta).unwrap();
        let second = omega.wedge(&eta.interior(&x).unwrap()).unwrap();
        let signed = if p % 2 == 0 { second } else { -second };
        prop_assert_eq!(lhs, first.checked_add(&signed).unwrap());
    }

    /// For evolutionary (vertical) fields the Lie derivative commutes with
    /// the horizontal differential.
    #[test]
    fn vertical_lie_commutes_with_horizontal_differential(
        (f, x) in bundle_strategy().prop_flat_map(|b| {
            let n = b.dim_base();
            let b_form = b.clone();
            let form = (0..=n).prop_flat_map(move |deg| form_strategy(b_form.clone(), deg));
            let b_field = b.clone();
            let vert = prop::collection::vec(
                poly_strategy(b, Pool::Jets(2), 2, false),
                b_field.dim_fiber(),
            );
            let field = vert.prop_map(move |v| {
                let xi = vec![ScalarExpr::zero(&b_field); b_field.dim_base()];
                SplitField::new(&b_field, xi, v).expect("vertical field")
            });
            (form, field)
        })
    ) {
        let lhs = f.lie(&x).unwrap().d_h().unwrap();
        let rhs = f.d_h().unwrap().lie(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
