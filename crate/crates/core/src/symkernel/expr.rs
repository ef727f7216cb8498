//! Canonical-form scalar expressions.
//!
//! A [`ScalarExpr`] is a finite sum of monomials with rational coefficients.
//! Each monomial is a product of powers of [`Factor`]s, where a factor is
//! either an [`Atom`] or an elementary function (`sin`, `cos`, `exp`) applied
//! to a nested expression. The representation is canonical: factors within a
//! monomial are sorted ascending, terms are sorted descending by factor key,
//! coefficients are nonzero, and `sin(0)`, `cos(0)`, `exp(0)` are folded to
//! constants. Equality of expressions is therefore structural equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::jetspace::{BundleSpec, MultiIndex};
use crate::Result;

use super::atom::Atom;

/// Elementary transcendental functions admitted as monomial factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }

    /// Value at zero argument, used to fold `f(0)`.
    fn at_zero(self) -> BigRational {
        match self {
            Func::Sin => BigRational::zero(),
            Func::Cos | Func::Exp => BigRational::one(),
        }
    }
}

/// One multiplicative factor of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Atom(Atom),
    Apply(Func, ScalarExpr),
}

/// A product of factor powers with a rational coefficient. Factors are kept
/// sorted ascending with distinct keys and positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub factors: Vec<(Factor, u32)>,
}

impl Monomial {
    fn key(&self) -> &[(Factor, u32)] {
        &self.factors
    }

    fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Merge two sorted factor lists, adding exponents on equal keys.
    fn mul_factors(a: &[(Factor, u32)], b: &[(Factor, u32)]) -> Vec<(Factor, u32)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }
}

/// A scalar expression over a fixed bundle: polynomial in base coordinates,
/// jet coordinates, and parameters, with optional `sin`/`cos`/`exp` factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarExpr {
    bundle: Arc<BundleSpec>,
    terms: Vec<Monomial>,
}

impl ScalarExpr {
    fn from_map(bundle: Arc<BundleSpec>, map: BTreeMap<Vec<(Factor, u32)>, BigRational>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(factors, coeff)| Monomial { coeff, factors })
            .collect();
        ScalarExpr { bundle, terms }
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn zero(bundle: &Arc<BundleSpec>) -> Self {
        ScalarExpr { bundle: bundle.clone(), terms: Vec::new() }
    }

    pub fn constant(bundle: &Arc<BundleSpec>, q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(bundle);
        }
        ScalarExpr {
            bundle: bundle.clone(),
            terms: vec![Monomial { coeff: q, factors: Vec::new() }],
        }
    }

    pub fn one(bundle: &Arc<BundleSpec>) -> Self {
        Self::constant(bundle, BigRational::one())
    }

    pub fn from_int(bundle: &Arc<BundleSpec>, k: i64) -> Self {
        Self::constant(bundle, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn rational(bundle: &Arc<BundleSpec>, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::constant(bundle, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Expression consisting of a single atom, validated against the bundle.
    pub fn atom(bundle: &Arc<BundleSpec>, atom: Atom) -> Result<Self> {
        match &atom {
            Atom::Base(s) => {
                if *s >= bundle.dim_base() {
                    return Err(Error::BaseIndex { index: *s, n: bundle.dim_base() });
                }
            }
            Atom::Jet { field, mi } => {
                if *field >= bundle.dim_fiber() {
                    return Err(Error::FieldIndex { index: *field, m: bundle.dim_fiber() });
                }
                if mi.len() != bundle.dim_base() {
                    return Err(Error::MultiIndexLength { len: mi.len(), n: bundle.dim_base() });
                }
            }
            Atom::Param(_) => {}
        }
        Ok(ScalarExpr {
            bundle: bundle.clone(),
            terms: vec![Monomial {
                coeff: BigRational::one(),
                factors: vec![(Factor::Atom(atom), 1)],
            }],
        })
    }

    pub fn base(bundle: &Arc<BundleSpec>, sigma: usize) -> Result<Self> {
        Self::atom(bundle, Atom::Base(sigma))
    }

    pub fn jet(bundle: &Arc<BundleSpec>, field: usize, mi: MultiIndex) -> Result<Self> {
        Self::atom(bundle, Atom::Jet { field, mi })
    }

    pub fn field(bundle: &Arc<BundleSpec>, field: usize) -> Result<Self> {
        Self::jet(bundle, field, MultiIndex::zero(bundle.dim_base()))
    }

    pub fn param(bundle: &Arc<BundleSpec>, name: &str) -> Self {
        ScalarExpr {
            bundle: bundle.clone(),
            terms: vec![Monomial {
                coeff: BigRational::one(),
                factors: vec![(Factor::Atom(Atom::Param(name.to_string())), 1)],
            }],
        }
    }

    /// Apply an elementary function, folding a zero argument to its value.
    pub fn apply(func: Func, arg: ScalarExpr) -> Self {
        if arg.is_zero() {
            return Self::constant(&arg.bundle, func.at_zero());
        }
        let bundle = arg.bundle.clone();
        ScalarExpr {
            bundle,
            terms: vec![Monomial {
                coeff: BigRational::one(),
                factors: vec![(Factor::Apply(func, arg), 1)],
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|q| q.is_one()).unwrap_or(false)
    }

    /// If the expression is a rational constant (possibly zero), return it.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 if self.terms[0].is_constant() => Some(self.terms[0].coeff.clone()),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::incompatible(&self.bundle, &other.bundle));
        }
        let mut map: BTreeMap<Vec<(Factor, u32)>, BigRational> = BTreeMap::new();
        for t in self.terms.iter().chain(other.terms.iter()) {
            *map.entry(t.key().to_vec()).or_insert_with(BigRational::zero) += &t.coeff;
        }
        Ok(Self::from_map(self.bundle.clone(), map))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::incompatible(&self.bundle, &other.bundle));
        }
        let mut map: BTreeMap<Vec<(Factor, u32)>, BigRational> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let factors = Monomial::mul_factors(&a.factors, &b.factors);
                *map.entry(factors).or_insert_with(BigRational::zero) += &a.coeff * &b.coeff;
            }
        }
        Ok(Self::from_map(self.bundle.clone(), map))
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.bundle);
        }
        ScalarExpr {
            bundle: self.bundle.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Monomial { coeff: &t.coeff * q, factors: t.factors.clone() })
                .collect(),
        }
    }

    /// Divide by a rational scalar; errors on zero.
    pub fn div_q(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Division("division by zero".into()));
        }
        Ok(self.scale(&q.recip()))
    }

    /// Nonnegative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.bundle);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to a single atom. Atoms of other
    /// bundles simply never match, so the operation is total.
    pub fn partial(&self, atom: &Atom) -> Self {
        let mut out = Self::zero(&self.bundle);
        for term in &self.terms {
            for (k, (factor, exp)) in term.factors.iter().enumerate() {
                let dfactor = match factor {
                    Factor::Atom(a) => {
                        if a == atom {
                            Self::one(&self.bundle)
                        } else {
                            continue;
                        }
                    }
                    Factor::Apply(func, arg) => {
                        let darg = arg.partial(atom);
                        if darg.is_zero() {
                            continue;
                        }
                        let outer = match func {
                            Func::Sin => Self::apply(Func::Cos, arg.clone()),
                            Func::Cos => Self::apply(Func::Sin, arg.clone()).neg(),
                            Func::Exp => Self::apply(Func::Exp, arg.clone()),
                        };
                        &outer * &darg
                    }
                };
                let mut rest = Self::constant(
                    &self.bundle,
                    &term.coeff * BigRational::from_integer(BigInt::from(*exp)),
                );
                for (j, (f, e)) in term.factors.iter().enumerate() {
                    let e = if j == k { *e - 1 } else { *e };
                    if e > 0 {
                        rest = &rest * &single_factor(&self.bundle, f.clone(), e);
                    }
                }
                out = &out + &(&rest * &dfactor);
            }
        }
        out
    }

    /// Simultaneous substitution of atoms by expressions over the same bundle.
    pub fn substitute(&self, map: &BTreeMap<Atom, ScalarExpr>) -> Result<Self> {
        for value in map.values() {
            if value.bundle != self.bundle {
                return Err(Error::incompatible(&self.bundle, &value.bundle));
            }
        }
        let mut out = Self::zero(&self.bundle);
        for term in &self.terms {
            let mut acc = Self::constant(&self.bundle, term.coeff.clone());
            for (factor, exp) in &term.factors {
                let replaced = match factor {
                    Factor::Atom(a) => match map.get(a) {
                        Some(e) => e.clone(),
                        None => single_factor(&self.bundle, factor.clone(), 1),
                    },
                    Factor::Apply(func, arg) => Self::apply(*func, arg.substitute(map)?),
                };
                acc = &acc * &replaced.pow(*exp);
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// All atoms occurring in the expression, including inside function
    /// arguments.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms(&self, set: &mut BTreeSet<Atom>) {
        for term in &self.terms {
            for (factor, _) in &term.factors {
                match factor {
                    Factor::Atom(a) => {
                        set.insert(a.clone());
                    }
                    Factor::Apply(_, arg) => arg.collect_atoms(set),
                }
            }
        }
    }

    /// Highest jet order among occurring jet atoms; 0 for jet-free terms.
    pub fn max_jet_order(&self) -> u32 {
        self.atoms().iter().filter_map(|a| a.jet_order()).max().unwrap_or(0)
    }

    /// Total polynomial degree counting atoms and function factors once per
    /// power; function arguments do not contribute.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.factors.iter().map(|(_, e)| *e).sum::<u32>()).max().unwrap_or(0)
    }

    /// Lift to an extended bundle (same base, field list grown on the right).
    pub fn cast(&self, to: &Arc<BundleSpec>) -> Result<Self> {
        if to == &self.bundle {
            return Ok(self.clone());
        }
        if !to.extends(&self.bundle) {
            return Err(Error::incompatible(&self.bundle, to));
        }
        Ok(self.rebundle(to))
    }

    /// Project down to a sub-bundle; errors if any jet atom refers to a field
    /// outside the smaller fiber.
    pub fn cast_down(&self, to: &Arc<BundleSpec>) -> Result<Self> {
        if to == &self.bundle {
            return Ok(self.clone());
        }
        if !self.bundle.extends(to) {
            return Err(Error::incompatible(&self.bundle, to));
        }
        for atom in self.atoms() {
            if let Atom::Jet { field, .. } = atom {
                if field >= to.dim_fiber() {
                    return Err(Error::FieldIndex { index: field, m: to.dim_fiber() });
                }
            }
        }
        Ok(self.rebundle(to))
    }

    fn rebundle(&self, to: &Arc<BundleSpec>) -> Self {
        ScalarExpr {
            bundle: to.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Monomial {
                    coeff: t.coeff.clone(),
                    factors: t
                        .factors
                        .iter()
                        .map(|(f, e)| {
                            let f = match f {
                                Factor::Atom(a) => Factor::Atom(a.clone()),
                                Factor::Apply(func, arg) => Factor::Apply(*func, arg.rebundle(to)),
                            };
                            (f, *e)
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Exact rational evaluation. Every atom must receive a value and the
    /// expression must be free of transcendental factors.
    pub fn eval_q(&self, value: &dyn Fn(&Atom) -> Option<BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for term in &self.terms {
            let mut acc = term.coeff.clone();
            for (factor, exp) in &term.factors {
                let v = match factor {
                    Factor::Atom(a) => value(a).ok_or_else(|| {
                        Error::Evaluation(format!("no value supplied for atom {a:?}"))
                    })?,
                    Factor::Apply(func, _) => {
                        return Err(Error::Evaluation(format!(
                            "cannot evaluate {} exactly over the rationals",
                            func.name()
                        )))
                    }
                };
                let mut p = BigRational::one();
                for _ in 0..*exp {
                    p *= &v;
                }
                acc *= p;
            }
            total += acc;
        }
        Ok(total)
    }

    /// Leading coefficient in the canonical term order, if any.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.coeff)
    }
}

fn single_factor(bundle: &Arc<BundleSpec>, factor: Factor, exp: u32) -> ScalarExpr {
    ScalarExpr {
        bundle: bundle.clone(),
        terms: vec![Monomial { coeff: BigRational::one(), factors: vec![(factor, exp)] }],
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                self.$checked(rhs).expect("operands built over different bundles")
            }
        }
        impl $trait for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(mut self) -> ScalarExpr {
        for t in &mut self.terms {
            t.coeff = -std::mem::replace(&mut t.coeff, BigRational::zero());
        }
        self
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        self.clone().neg()
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::display::text_expr(self))
    }
}
