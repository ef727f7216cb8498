//! Symmetric multi-indices for jet coordinates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::{Error, Result};

/// A symmetric multi-index `α = (α_1, …, α_n)` of derivative counts, one per
/// base coordinate. `|α| = Σ α_σ` is the jet order; `|α| = 0` denotes the
/// field itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// The zero multi-index of length `n`.
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// The elementary multi-index `e_σ` of length `n`.
    pub fn unit(n: usize, sigma: usize) -> Self {
        let mut v = vec![0; n];
        v[sigma] += 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn entry(&self, sigma: usize) -> u32 {
        self.0[sigma]
    }

    /// The jet order `|α|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Entrywise sum; the lengths must agree.
    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.len() != other.len() {
            return Err(Error::MultiIndexLength { len: other.len(), n: self.len() });
        }
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self + e_σ`.
    pub fn bump(&self, sigma: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[sigma] += 1;
        MultiIndex(v)
    }

    /// Entrywise difference if `other ⊆ self`, else `None`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        let mut v = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(v))
    }

    /// Whether `other ⊆ self` entrywise.
    pub fn contains(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// The smallest base index with a nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&k| k > 0)
    }

    /// `α! = Π α_σ!`.
    pub fn factorial(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &k in &self.0 {
            for j in 2..=u64::from(k) {
                acc *= j;
            }
        }
        acc
    }

    /// All multi-indices of length `n` with `|α| ≤ max_order`, in graded
    /// lexicographic order.
    pub fn all_up_to(n: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for k in 0..=max_order {
            out.extend(Self::of_order(n, k));
        }
        out
    }

    /// All multi-indices `α` with `α ≤ self` componentwise, including zero
    /// and `self` itself.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.len())];
        for (sigma, &cap) in self.0.iter().enumerate() {
            if cap == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for prefix in &out {
                for k in 0..=cap {
                    let mut e = prefix.0.clone();
                    e[sigma] = k;
                    next.push(MultiIndex(e));
                }
            }
            out = next;
        }
        out
    }

    /// All multi-indices of length `n` with `|α| = order`, lexicographically
    /// descending in the leading entry (canonical within one grade).
    pub fn of_order(n: usize, order: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, order: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if n == 1 {
                prefix.push(order);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in (0..=order).rev() {
                prefix.push(k);
                rec(n - 1, order - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, order, &mut Vec::new(), &mut out);
        out
    }
}

/// `(μ+α)! / (μ!·α!) = Π_σ C(μ_σ+α_σ, α_σ)`, as an exact rational.
pub fn mi_multinomial(mu: &MultiIndex, alpha: &MultiIndex) -> Result<BigRational> {
    if mu.len() != alpha.len() {
        return Err(Error::MultiIndexLength { len: alpha.len(), n: mu.len() });
    }
    let mut acc = BigUint::one();
    for (&m, &a) in mu.0.iter().zip(&alpha.0) {
        // C(m+a, a) computed multiplicatively.
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for j in 1..=u64::from(a) {
            num *= u64::from(m) + j;
            den *= j;
        }
        acc *= num / den;
    }
    Ok(BigRational::from_integer(acc.into()))
}

/// Graded lexicographic order: first by `|α|`, then lexicographically on the
/// entries. Indices of different lengths compare by length first.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
