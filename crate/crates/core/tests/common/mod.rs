//! Shared random generators for the property suites. Each suite links its
//! own copy, so not every generator is used everywhere.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use jetvar::calculus::{Covector, DiffForm};
use jetvar::jetspace::{BundleSpec, EvolutionaryField, MultiIndex, ProjectableVectorField};
use jetvar::symkernel::{Func, ScalarExpr};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Bundles with 1..=3 single-letter base coordinates and 1..=2 fields.
pub fn bundle_strategy() -> impl Strategy<Value = Arc<BundleSpec>> {
    (1usize..=3, 1usize..=2).prop_map(|(n, m)| {
        let base: Vec<String> = ["t", "x", "z"][..n].iter().map(|s| s.to_string()).collect();
        let fields: Vec<String> = ["u", "v"][..m].iter().map(|s| s.to_string()).collect();
        BundleSpec::new(base, fields).expect("pool names are valid")
    })
}

pub fn mi_strategy(n: usize, max_order: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max_order, n)
        .prop_filter("within order cap", move |e| e.iter().sum::<u32>() <= max_order)
        .prop_map(MultiIndex::new)
}

/// Which atoms a generated polynomial may mention.
#[derive(Clone, Copy)]
pub enum Pool {
    /// Base coordinates, jets up to the order, one parameter.
    Jets(u32),
    /// Base coordinates only (valid for projectable base components).
    BaseOnly,
    /// Base coordinates, order-zero jets, one parameter.
    ZeroOrder,
}

fn atom_strategy(bundle: Arc<BundleSpec>, pool: Pool) -> BoxedStrategy<ScalarExpr> {
    let n = bundle.dim_base();
    let m = bundle.dim_fiber();
    let base = {
        let b = bundle.clone();
        (0..n).prop_map(move |s| ScalarExpr::base(&b, s).expect("index in range"))
    };
    match pool {
        Pool::BaseOnly => base.boxed(),
        Pool::ZeroOrder => {
            let b = bundle.clone();
            let field = (0..m).prop_map(move |f| ScalarExpr::field(&b, f).expect("in range"));
            prop_oneof![3 => base, 3 => field, 1 => Just(ScalarExpr::param(&bundle, "c"))].boxed()
        }
        Pool::Jets(max_order) => {
            let b = bundle.clone();
            let jet = ((0..m), mi_strategy(n, max_order))
                .prop_map(move |(f, mi)| ScalarExpr::jet(&b, f, mi).expect("in range"));
            prop_oneof![2 => base, 5 => jet, 1 => Just(ScalarExpr::param(&bundle, "c"))].boxed()
        }
    }
}

fn coeff_strategy(bundle: Arc<BundleSpec>) -> impl Strategy<Value = ScalarExpr> {
    ((-4i64..=4).prop_filter("nonzero", |k| *k != 0), 1i64..=3)
        .prop_map(move |(num, den)| ScalarExpr::constant(&bundle, q(num, den)))
}

fn monomial_strategy(
    bundle: Arc<BundleSpec>,
    pool: Pool,
    with_apply: bool,
) -> impl Strategy<Value = ScalarExpr> {
    let atoms = prop::collection::vec((atom_strategy(bundle.clone(), pool), 1u32..=2), 0..=3);
    let apply = if with_apply {
        let arg = prop::collection::vec(atom_strategy(bundle.clone(), pool), 1..=2);
        let b = bundle.clone();
        prop::option::weighted(
            0.2,
            (prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Exp)], arg).prop_map(
                move |(f, parts)| {
                    let sum = parts.into_iter().fold(ScalarExpr::zero(&b), |acc, p| acc + p);
                    ScalarExpr::apply(f, sum)
                },
            ),
        )
        .boxed()
    } else {
        Just(None).boxed()
    };
    (coeff_strategy(bundle), atoms, apply).prop_map(|(coeff, factors, extra)| {
        let mut out = coeff;
        for (a, p) in factors {
            out = out * a.pow(p);
        }
        if let Some(f) = extra {
            out = out * f;
        }
        out
    })
}

/// Random polynomial over the pool; up to `max_terms` monomials.
pub fn poly_strategy(
    bundle: Arc<BundleSpec>,
    pool: Pool,
    max_terms: usize,
    with_apply: bool,
) -> impl Strategy<Value = ScalarExpr> {
    let b = bundle.clone();
    prop::collection::vec(monomial_strategy(bundle, pool, with_apply), 0..=max_terms)
        .prop_map(move |ms| ms.into_iter().fold(ScalarExpr::zero(&b), |acc, m| acc + m))
}

/// Evolutionary direction: one unrestricted polynomial per field.
pub fn evolutionary_strategy(
    bundle: Arc<BundleSpec>,
    max_order: u32,
) -> impl Strategy<Value = EvolutionaryField> {
    let m = bundle.dim_fiber();
    let b = bundle.clone();
    prop::collection::vec(poly_strategy(bundle, Pool::Jets(max_order), 3, false), m)
        .prop_map(move |comps| EvolutionaryField::new(&b, comps).expect("validated shape"))
}

/// Projectable field: base components over base coordinates only, fiber
/// components of jet order zero.
pub fn projectable_strategy(
    bundle: Arc<BundleSpec>,
) -> impl Strategy<Value = ProjectableVectorField> {
    let n = bundle.dim_base();
    let m = bundle.dim_fiber();
    let xi = prop::collection::vec(poly_strategy(bundle.clone(), Pool::BaseOnly, 2, false), n);
    let phi = prop::collection::vec(poly_strategy(bundle.clone(), Pool::ZeroOrder, 2, false), m);
    let b = bundle;
    (xi, phi)
        .prop_map(move |(xi, phi)| ProjectableVectorField::new(&b, xi, phi).expect("valid parts"))
}

pub fn covector_strategy(bundle: Arc<BundleSpec>, max_order: u32) -> BoxedStrategy<Covector> {
    let n = bundle.dim_base();
    let m = bundle.dim_fiber();
    let theta =
        (0..m, mi_strategy(n, max_order)).prop_map(|(field, mi)| Covector::Theta { field, mi });
    prop_oneof![2 => (0..n).prop_map(Covector::Dx), 3 => theta].boxed()
}

/// Random form of the given degree with polynomial coefficients.
pub fn form_strategy(bundle: Arc<BundleSpec>, degree: usize) -> impl Strategy<Value = DiffForm> {
    let term = (
        poly_strategy(bundle.clone(), Pool::Jets(3), 2, false),
        prop::collection::vec(covector_strategy(bundle.clone(), 2), degree),
    );
    let b = bundle;
    prop::collection::vec(term, 0..=3).prop_map(move |terms| {
        DiffForm::from_terms(&b, degree, terms).expect("words have requested degree")
    })
}

/// Bundle together with a random form of admissible degree (≤ n + 1).
pub fn bundle_and_form() -> impl Strategy<Value = (Arc<BundleSpec>, DiffForm)> {
    bundle_strategy().prop_flat_map(|bundle| {
        let n = bundle.dim_base();
        (0..=n + 1).prop_flat_map(move |degree| {
            let b = bundle.clone();
            form_strategy(bundle.clone(), degree).prop_map(move |f| (b.clone(), f))
        })
    })
}
