//! Exterior calculus in the contact-adapted coframe.
//!
//! Forms are expanded over words in the covectors `dx^σ` and `θ^i_α`, where
//! `θ^i_α = dy^i_α − y^i_{α+1_λ} dx^λ` is the contact basis. In this frame
//! the differential splits cleanly: `d = d_H + d_V` with
//!
//! * `d_H f = D_σ f · dx^σ`, `d_H dx^σ = 0`, `d_H θ^i_α = dx^λ ∧ θ^i_{α+1_λ}`;
//! * `d_V f = ∂f/∂y^i_α · θ^i_α`, `d_V dx^σ = d_V θ^i_α = 0`.
//!
//! Contractions against a [`SplitField`] use `X ⌟ dx^σ = ξ^σ` and
//! `X ⌟ θ^i_α = D_α(v^i)`, and Lie derivatives are Cartan's formula.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::Error;
use crate::jetspace::{total_derivative, BundleSpec, MultiIndex, SplitField};
use crate::symkernel::{Atom, ScalarExpr};
use crate::Result;

/// A basis covector of the contact-adapted coframe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Covector {
    Dx(usize),
    Theta { field: usize, mi: MultiIndex },
}

impl Covector {
    fn rank(&self) -> u8 {
        match self {
            Covector::Dx(_) => 0,
            Covector::Theta { .. } => 1,
        }
    }

    fn validate(&self, bundle: &BundleSpec) -> Result<()> {
        match self {
            Covector::Dx(sigma) => {
                if *sigma >= bundle.dim_base() {
                    return Err(Error::BaseIndex { index: *sigma, n: bundle.dim_base() });
                }
            }
            Covector::Theta { field, mi } => {
                if *field >= bundle.dim_fiber() {
                    return Err(Error::FieldIndex { index: *field, m: bundle.dim_fiber() });
                }
                if mi.len() != bundle.dim_base() {
                    return Err(Error::MultiIndexLength { len: mi.len(), n: bundle.dim_base() });
                }
            }
        }
        Ok(())
    }
}

impl Ord for Covector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Covector::Dx(a), Covector::Dx(b)) => a.cmp(b),
            (Covector::Theta { field: fa, mi: ma }, Covector::Theta { field: fb, mi: mb }) => {
                fa.cmp(fb).then_with(|| ma.cmp(mb))
            }
            _ => unreachable!("rank already distinguished the variants"),
        })
    }
}

impl PartialOrd for Covector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One summand of a form: a scalar coefficient times a strictly increasing
/// wedge word of basis covectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTerm {
    pub coeff: ScalarExpr,
    pub word: Vec<Covector>,
}

/// Sort a wedge word into strictly increasing order, tracking the sign of the
/// permutation. Returns `None` when a covector repeats (the term vanishes).
fn sort_word(word: &mut [Covector]) -> Option<bool> {
    let mut negate = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 {
            match word[j - 1].cmp(&word[j]) {
                Ordering::Greater => {
                    word.swap(j - 1, j);
                    negate = !negate;
                    j -= 1;
                }
                Ordering::Equal => return None,
                Ordering::Less => break,
            }
        }
    }
    Some(negate)
}

/// A differential form of homogeneous degree over a fixed bundle, stored in
/// the contact-adapted basis with canonical term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    bundle: Arc<BundleSpec>,
    degree: usize,
    terms: Vec<FormTerm>,
}

impl DiffForm {
    pub fn zero(bundle: &Arc<BundleSpec>, degree: usize) -> Self {
        DiffForm { bundle: bundle.clone(), degree, terms: Vec::new() }
    }

    /// Degree-zero form wrapping a scalar.
    pub fn scalar(f: ScalarExpr) -> Self {
        let bundle = f.bundle().clone();
        let mut map = BTreeMap::new();
        map.insert(Vec::new(), f);
        Self::from_map(bundle, 0, map)
    }

    pub fn dx(bundle: &Arc<BundleSpec>, sigma: usize) -> Result<Self> {
        Self::from_terms(bundle, 1, vec![(ScalarExpr::one(bundle), vec![Covector::Dx(sigma)])])
    }

    pub fn theta(bundle: &Arc<BundleSpec>, field: usize, mi: MultiIndex) -> Result<Self> {
        Self::from_terms(
            bundle,
            1,
            vec![(ScalarExpr::one(bundle), vec![Covector::Theta { field, mi }])],
        )
    }

    /// The coordinate covector `dy^i_α = θ^i_α + y^i_{α+1_λ} dx^λ`.
    pub fn dy(bundle: &Arc<BundleSpec>, field: usize, mi: MultiIndex) -> Result<Self> {
        let mut terms =
            vec![(ScalarExpr::one(bundle), vec![Covector::Theta { field, mi: mi.clone() }])];
        for lambda in 0..bundle.dim_base() {
            let coeff = ScalarExpr::jet(bundle, field, mi.bump(lambda))?;
            terms.push((coeff, vec![Covector::Dx(lambda)]));
        }
        Self::from_terms(bundle, 1, terms)
    }

    /// The base volume form `dx^0 ∧ ··· ∧ dx^{n-1}`.
    pub fn volume(bundle: &Arc<BundleSpec>) -> Self {
        let word: Vec<Covector> = (0..bundle.dim_base()).map(Covector::Dx).collect();
        Self::from_terms(bundle, bundle.dim_base(), vec![(ScalarExpr::one(bundle), word)])
            .expect("volume word is valid")
    }

    /// The contracted volume `ω_σ = ∂_σ ⌟ ω_0`, carrying the sign `(-1)^σ`.
    pub fn volume_contracted(bundle: &Arc<BundleSpec>, sigma: usize) -> Result<Self> {
        let n = bundle.dim_base();
        if sigma >= n {
            return Err(Error::BaseIndex { index: sigma, n });
        }
        let word: Vec<Covector> = (0..n).filter(|s| *s != sigma).map(Covector::Dx).collect();
        let sign = if sigma.is_multiple_of(2) { 1 } else { -1 };
        Self::from_terms(bundle, n - 1, vec![(ScalarExpr::from_int(bundle, sign), word)])
    }

    /// `ω_{σμ} = ∂_μ ⌟ ω_σ`, the degree `n-2` basis used by superpotentials.
    pub fn volume_contracted_pair(
        bundle: &Arc<BundleSpec>,
        sigma: usize,
        mu: usize,
    ) -> Result<Self> {
        let n = bundle.dim_base();
        if sigma >= n {
            return Err(Error::BaseIndex { index: sigma, n });
        }
        if mu >= n {
            return Err(Error::BaseIndex { index: mu, n });
        }
        if sigma == mu {
            return Ok(Self::zero(bundle, n.saturating_sub(2)));
        }
        // Contract ∂_μ into ω_σ: position of dx^μ in the word of ω_σ.
        let word: Vec<usize> = (0..n).filter(|s| *s != sigma).collect();
        let pos = word.iter().position(|s| *s == mu).expect("mu in word");
        let rest: Vec<Covector> = word.into_iter().filter(|s| *s != mu).map(Covector::Dx).collect();
        let sigma_sign = if sigma.is_multiple_of(2) { 1 } else { -1 };
        let pos_sign = if pos.is_multiple_of(2) { 1 } else { -1 };
        Self::from_terms(
            bundle,
            n - 2,
            vec![(ScalarExpr::from_int(bundle, sigma_sign * pos_sign), rest)],
        )
    }

    /// Build from coefficient/word pairs, normalizing orientation and order.
    pub fn from_terms(
        bundle: &Arc<BundleSpec>,
        degree: usize,
        terms: Vec<(ScalarExpr, Vec<Covector>)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<Covector>, ScalarExpr> = BTreeMap::new();
        for (coeff, mut word) in terms {
            if coeff.bundle() != bundle {
                return Err(Error::incompatible(bundle, coeff.bundle()));
            }
            if word.len() != degree {
                return Err(Error::DegreeMismatch { left: word.len(), right: degree });
            }
            for c in &word {
                c.validate(bundle)?;
            }
            let negate = match sort_word(&mut word) {
                Some(s) => s,
                None => continue,
            };
            let signed = if negate { coeff.neg() } else { coeff };
            match map.entry(word) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(signed);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().checked_add(&signed)?;
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(Self::from_map(bundle.clone(), degree, map))
    }

    fn from_map(
        bundle: Arc<BundleSpec>,
        degree: usize,
        map: BTreeMap<Vec<Covector>, ScalarExpr>,
    ) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(word, coeff)| FormTerm { coeff, word })
            .collect();
        DiffForm { bundle, degree, terms }
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every term is a pure `dx` word.
    pub fn is_horizontal(&self) -> bool {
        self.terms.iter().all(|t| t.word.iter().all(|c| matches!(c, Covector::Dx(_))))
    }

    /// Horizontalization: the projection killing every contact covector.
    pub fn horizontal_part(&self) -> Self {
        DiffForm {
            bundle: self.bundle.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|t| t.word.iter().all(|c| matches!(c, Covector::Dx(_))))
                .cloned()
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::incompatible(&self.bundle, &other.bundle));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut map: BTreeMap<Vec<Covector>, ScalarExpr> = BTreeMap::new();
        for t in self.terms.iter().chain(other.terms.iter()) {
            match map.entry(t.word.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.coeff.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().checked_add(&t.coeff)?;
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(Self::from_map(self.bundle.clone(), self.degree, map))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }

    /// Multiply every coefficient by a scalar expression.
    pub fn scale_expr(&self, f: &ScalarExpr) -> Result<Self> {
        if f.bundle() != &self.bundle {
            return Err(Error::incompatible(&self.bundle, f.bundle()));
        }
        let mut map = BTreeMap::new();
        for t in &self.terms {
            map.insert(t.word.clone(), t.coeff.checked_mul(f)?);
        }
        Ok(Self::from_map(self.bundle.clone(), self.degree, map))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::incompatible(&self.bundle, &other.bundle));
        }
        let degree = self.degree + other.degree;
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let coeff = a.coeff.checked_mul(&b.coeff)?;
                let mut word = a.word.clone();
                word.extend(b.word.iter().cloned());
                terms.push((coeff, word));
            }
        }
        Self::from_terms(&self.bundle, degree, terms)
    }

    /// Interior product with a split field. Errors on degree zero.
    pub fn interior(&self, x: &SplitField) -> Result<Self> {
        if x.bundle() != &self.bundle {
            return Err(Error::incompatible(&self.bundle, x.bundle()));
        }
        if self.degree == 0 {
            return Err(Error::InteriorDegreeZero);
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            for (k, cov) in t.word.iter().enumerate() {
                let pairing = match cov {
                    Covector::Dx(sigma) => x.xi()[*sigma].clone(),
                    Covector::Theta { field, mi } => x.theta_coefficient(*field, mi)?,
                };
                if pairing.is_zero() {
                    continue;
                }
                let mut coeff = t.coeff.checked_mul(&pairing)?;
                if k % 2 == 1 {
                    coeff = coeff.neg();
                }
                let word: Vec<Covector> = t
                    .word
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, c)| c.clone())
                    .collect();
                terms.push((coeff, word));
            }
        }
        Self::from_terms(&self.bundle, self.degree - 1, terms)
    }

    /// Horizontal differential.
    pub fn d_h(&self) -> Result<Self> {
        let n = self.bundle.dim_base();
        let mut terms: Vec<(ScalarExpr, Vec<Covector>)> = Vec::new();
        for t in &self.terms {
            // d_H(coeff) ∧ word.
            for sigma in 0..n {
                let dc = total_derivative(&t.coeff, sigma)?;
                if dc.is_zero() {
                    continue;
                }
                let mut word = Vec::with_capacity(t.word.len() + 1);
                word.push(Covector::Dx(sigma));
                word.extend(t.word.iter().cloned());
                terms.push((dc, word));
            }
            // coeff ∧ d_H(word), Leibniz with alternating signs.
            for (k, cov) in t.word.iter().enumerate() {
                let Covector::Theta { field, mi } = cov else { continue };
                for lambda in 0..n {
                    let mut coeff = t.coeff.clone();
                    if k % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    let mut word = Vec::with_capacity(t.word.len() + 1);
                    word.extend(t.word[..k].iter().cloned());
                    word.push(Covector::Dx(lambda));
                    word.push(Covector::Theta { field: *field, mi: mi.bump(lambda) });
                    word.extend(t.word[k + 1..].iter().cloned());
                    terms.push((coeff, word));
                }
            }
        }
        Self::from_terms(&self.bundle, self.degree + 1, terms)
    }

    /// Vertical (contact) differential.
    pub fn d_v(&self) -> Result<Self> {
        let mut terms: Vec<(ScalarExpr, Vec<Covector>)> = Vec::new();
        for t in &self.terms {
            for atom in t.coeff.atoms() {
                let Atom::Jet { field, mi } = atom else { continue };
                let dc = t.coeff.partial(&Atom::jet(field, mi.clone()));
                if dc.is_zero() {
                    continue;
                }
                let mut word = Vec::with_capacity(t.word.len() + 1);
                word.push(Covector::Theta { field, mi });
                word.extend(t.word.iter().cloned());
                terms.push((dc, word));
            }
        }
        Self::from_terms(&self.bundle, self.degree + 1, terms)
    }

    /// Full differential `d = d_H + d_V`.
    pub fn d(&self) -> Result<Self> {
        self.d_h()?.checked_add(&self.d_v()?)
    }

    /// Lie derivative along the prolongation of a split field, by Cartan's
    /// formula; for degree zero it reduces to `X ⌟ df`.
    pub fn lie(&self, x: &SplitField) -> Result<Self> {
        let d_self = self.d()?;
        let part1 = d_self.interior(x)?;
        if self.degree == 0 {
            return Ok(part1);
        }
        let part2 = self.interior(x)?.d()?;
        part1.checked_add(&part2)
    }

    /// Components `c^σ` of a horizontal `(n-1)`-form written as `c^σ ω_σ`.
    pub fn current_components(&self) -> Result<Vec<ScalarExpr>> {
        let n = self.bundle.dim_base();
        if self.degree + 1 != n {
            return Err(Error::DegreeMismatch { left: self.degree, right: n - 1 });
        }
        if !self.is_horizontal() {
            return Err(Error::UnsupportedStructure(
                "expected a horizontal form, found contact terms".into(),
            ));
        }
        let mut comps = vec![ScalarExpr::zero(&self.bundle); n];
        for t in &self.terms {
            let mut missing = Vec::new();
            let present: Vec<usize> = t
                .word
                .iter()
                .map(|c| match c {
                    Covector::Dx(s) => *s,
                    Covector::Theta { .. } => unreachable!("checked horizontal"),
                })
                .collect();
            for sigma in 0..n {
                if !present.contains(&sigma) {
                    missing.push(sigma);
                }
            }
            let sigma = missing[0];
            let coeff = if sigma % 2 == 0 { t.coeff.clone() } else { t.coeff.clone().neg() };
            comps[sigma] = comps[sigma].checked_add(&coeff)?;
        }
        Ok(comps)
    }

    /// Assemble `Σ c^σ ω_σ` from components.
    pub fn from_current_components(bundle: &Arc<BundleSpec>, comps: &[ScalarExpr]) -> Result<Self> {
        let n = bundle.dim_base();
        if comps.len() != n {
            return Err(Error::UnsupportedStructure(format!(
                "expected {n} current components, got {}",
                comps.len()
            )));
        }
        let mut out = Self::zero(bundle, n - 1);
        for (sigma, c) in comps.iter().enumerate() {
            let omega = Self::volume_contracted(bundle, sigma)?.scale_expr(c)?;
            out = out.checked_add(&omega)?;
        }
        Ok(out)
    }
}

impl Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        self.checked_add(rhs).expect("form addition over mismatched bundles or degrees")
    }
}

impl Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self.checked_sub(rhs).expect("form subtraction over mismatched bundles or degrees")
    }
}

impl Neg for DiffForm {
    type Output = DiffForm;
    fn neg(mut self) -> DiffForm {
        for t in &mut self.terms {
            t.coeff = std::mem::replace(&mut t.coeff, ScalarExpr::zero(&self.bundle)).neg();
        }
        self
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for cov in &t.word {
                match cov {
                    Covector::Dx(s) => write!(f, "∧dx^{}", self.bundle.base_name(*s))?,
                    Covector::Theta { field, mi } => {
                        write!(f, "∧θ^{}_{}", self.bundle.field_name(*field), mi)?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetspace::ProjectableVectorField;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn wave() -> Arc<BundleSpec> {
        BundleSpec::new(vec!["t".into(), "x".into()], vec!["u".into()]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn wedge_antisymmetry() {
        let b = wave();
        let dt = DiffForm::dx(&b, 0).unwrap();
        let dx = DiffForm::dx(&b, 1).unwrap();
        assert!(dt.wedge(&dt).unwrap().is_zero());
        let a = dt.wedge(&dx).unwrap();
        let c = dx.wedge(&dt).unwrap();
        assert_eq!(a, c.neg());
        assert_eq!(a, DiffForm::volume(&b));
    }

    #[test]
    fn contact_covector_matches_dy_decomposition() {
        let b = wave();
        let mi = MultiIndex::zero(2);
        let dy = DiffForm::dy(&b, 0, mi.clone()).unwrap();
        let theta = DiffForm::theta(&b, 0, mi).unwrap();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_x = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let horizontal = DiffForm::dx(&b, 0)
            .unwrap()
            .scale_expr(&u_t)
            .unwrap()
            .checked_add(&DiffForm::dx(&b, 1).unwrap().scale_expr(&u_x).unwrap())
            .unwrap();
        assert_eq!(dy, theta.checked_add(&horizontal).unwrap());
        assert_eq!(dy.horizontal_part(), horizontal);
        assert!(!dy.is_horizontal());
    }

    #[test]
    fn differential_squares_to_zero() {
        let b = wave();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let t = ScalarExpr::base(&b, 0).unwrap();
        let u_x = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let f = DiffForm::scalar(&(&u * &u_x) + &(&t * &u));
        let df = f.d().unwrap();
        assert!(df.d().unwrap().is_zero());
        assert!(f.d_h().unwrap().d_h().unwrap().is_zero());
        assert!(f.d_v().unwrap().d_v().unwrap().is_zero());
        let mixed =
            f.d_h().unwrap().d_v().unwrap().checked_add(&f.d_v().unwrap().d_h().unwrap()).unwrap();
        assert!(mixed.is_zero());
        // Degree one with a contact leg.
        let theta = DiffForm::theta(&b, 0, MultiIndex::zero(2)).unwrap();
        let w = theta.scale_expr(&(&u * &u)).unwrap();
        assert!(w.d().unwrap().d().unwrap().is_zero());
    }

    #[test]
    fn horizontal_differential_of_contact_basis() {
        let b = wave();
        let theta = DiffForm::theta(&b, 0, MultiIndex::zero(2)).unwrap();
        let d = theta.d_h().unwrap();
        // d_H θ = dx^t ∧ θ_t + dx^x ∧ θ_x.
        let expect = DiffForm::dx(&b, 0)
            .unwrap()
            .wedge(&DiffForm::theta(&b, 0, MultiIndex::new(vec![1, 0])).unwrap())
            .unwrap()
            .checked_add(
                &DiffForm::dx(&b, 1)
                    .unwrap()
                    .wedge(&DiffForm::theta(&b, 0, MultiIndex::new(vec![0, 1])).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(d, expect);
        assert!(theta.d_v().unwrap().is_zero());
        assert_eq!(theta.d().unwrap(), expect);
    }

    #[test]
    fn interior_of_volume() {
        let b = wave();
        let one = ScalarExpr::one(&b);
        let zero = ScalarExpr::zero(&b);
        let dt = ProjectableVectorField::new(&b, vec![one, zero.clone()], vec![zero]).unwrap();
        let vol = DiffForm::volume(&b);
        let contracted = vol.interior(&dt.split()).unwrap();
        assert_eq!(contracted, DiffForm::volume_contracted(&b, 0).unwrap());
        assert!(DiffForm::scalar(ScalarExpr::one(&b)).interior(&dt.split()).is_err());
    }

    #[test]
    fn lie_of_lagrangian_volume_matches_scalar_action() {
        // For projectable X, L_jX (λ ω0) = (jX(λ) + λ div ξ) ω0.
        let b = wave();
        let t = ScalarExpr::base(&b, 0).unwrap();
        let u = ScalarExpr::field(&b, 0).unwrap();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let lam = &(&u_t * &u_t) + &(&u * &u);
        let x =
            ProjectableVectorField::new(&b, vec![&t * &t, ScalarExpr::zero(&b)], vec![u.clone()])
                .unwrap();
        let s = x.split();
        let lie_form =
            DiffForm::scalar(lam.clone()).wedge(&DiffForm::volume(&b)).unwrap().lie(&s).unwrap();
        let div_xi = total_derivative(&s.xi()[0], 0)
            .unwrap()
            .checked_add(&total_derivative(&s.xi()[1], 1).unwrap())
            .unwrap();
        let scalar = s.lie_scalar(&lam).unwrap() + (&lam * &div_xi);
        let expect = DiffForm::volume(&b).scale_expr(&scalar).unwrap();
        assert_eq!(lie_form, expect);
    }

    #[test]
    fn current_component_roundtrip() {
        let b = wave();
        let u_t = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_x = ScalarExpr::jet(&b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let comps = vec![(&u_t * &u_x).neg(), (&u_t * &u_t).scale(&q(1, 2))];
        let form = DiffForm::from_current_components(&b, &comps).unwrap();
        assert_eq!(form.current_components().unwrap(), comps);
        // d_H of the current equals (D_σ c^σ) ω0.
        let dh = form.d_h().unwrap();
        let div = total_derivative(&comps[0], 0)
            .unwrap()
            .checked_add(&total_derivative(&comps[1], 1).unwrap())
            .unwrap();
        assert_eq!(dh, DiffForm::volume(&b).scale_expr(&div).unwrap());
    }
}
