//! Bundle specifications: named base coordinates and fields.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Maximum supported base dimension.
pub const MAX_BASE_DIM: usize = 4;

/// A fibered-manifold chart specification: `n` named base coordinates and
/// `m` named fields. Jet coordinates of any order over it are addressed by
/// `(field index, multi-index)`; the order grows on demand.
///
/// Extended bundles (auxiliary variation fields, gauge parameters) append
/// fields, so an expression over a bundle remains valid over any of its
/// extensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleSpec {
    base: Vec<String>,
    fields: Vec<String>,
}

impl BundleSpec {
    pub fn new(base: Vec<String>, fields: Vec<String>) -> Result<Arc<Self>> {
        if base.is_empty() {
            return Err(Error::InvalidBundle("at least one base coordinate required".into()));
        }
        if base.len() > MAX_BASE_DIM {
            return Err(Error::InvalidBundle(format!(
                "base dimension {} exceeds supported maximum {}",
                base.len(),
                MAX_BASE_DIM
            )));
        }
        if fields.is_empty() {
            return Err(Error::InvalidBundle("at least one field required".into()));
        }
        let mut all: Vec<&String> = base.iter().chain(fields.iter()).collect();
        all.sort();
        for w in all.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidBundle(format!("duplicate name {:?}", w[0])));
            }
        }
        for name in &all {
            if name.is_empty() {
                return Err(Error::InvalidBundle("empty name".into()));
            }
        }
        Ok(Arc::new(BundleSpec { base, fields }))
    }

    /// Number of base coordinates `n`.
    pub fn dim_base(&self) -> usize {
        self.base.len()
    }

    /// Number of fields `m`.
    pub fn dim_fiber(&self) -> usize {
        self.fields.len()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base
    }

    pub fn field_names(&self) -> &[String] {
        &self.fields
    }

    pub fn base_name(&self, sigma: usize) -> &str {
        &self.base[sigma]
    }

    pub fn field_name(&self, i: usize) -> &str {
        &self.fields[i]
    }

    pub fn base_index(&self, name: &str) -> Option<usize> {
        self.base.iter().position(|b| b == name)
    }

    pub fn field_index(&self, name: &str) -> Option<usize> {
        self.fields.iter().position(|f| f == name)
    }

    /// A new bundle with `extra` fields appended (fresh names required).
    pub fn extend(&self, extra: Vec<String>) -> Result<Arc<Self>> {
        let mut fields = self.fields.clone();
        fields.extend(extra);
        BundleSpec::new(self.base.clone(), fields)
    }

    /// Whether `self` equals `other` or extends it by appending fields.
    pub fn extends(&self, other: &BundleSpec) -> bool {
        self.base == other.base
            && self.fields.len() >= other.fields.len()
            && self.fields[..other.fields.len()] == other.fields[..]
    }

    /// Picks a field name not colliding with any existing base/field name.
    pub fn fresh_field_name(&self, stem: &str) -> String {
        let taken =
            |s: &str| self.base.iter().any(|b| b == s) || self.fields.iter().any(|f| f == s);
        if !taken(stem) {
            return stem.to_string();
        }
        let mut k = 2usize;
        loop {
            let cand = format!("{stem}{k}");
            if !taken(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    pub fn summary(&self) -> String {
        format!("[{}; {}]", self.base.join(","), self.fields.join(","))
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn construction_and_lookup() {
        let b = BundleSpec::new(names(&["t", "x"]), names(&["u"])).unwrap();
        assert_eq!(b.dim_base(), 2);
        assert_eq!(b.dim_fiber(), 1);
        assert_eq!(b.base_index("x"), Some(1));
        assert_eq!(b.field_index("u"), Some(0));
        assert_eq!(b.field_index("t"), None);
    }

    #[test]
    fn rejects_duplicates_and_oversize() {
        assert!(BundleSpec::new(names(&["t", "t"]), names(&["u"])).is_err());
        assert!(BundleSpec::new(names(&["t"]), names(&["t"])).is_err());
        assert!(BundleSpec::new(names(&["a", "b", "c", "d", "e"]), names(&["u"])).is_err());
    }

    #[test]
    fn extension() {
        let b = BundleSpec::new(names(&["t"]), names(&["q"])).unwrap();
        let e = b.extend(names(&["zeta"])).unwrap();
        assert!(e.extends(&b));
        assert!(!b.extends(&e));
        assert_eq!(e.field_index("zeta"), Some(1));
        assert!(b.extend(names(&["q"])).is_err());
    }

    #[test]
    fn fresh_names() {
        let b = BundleSpec::new(names(&["t"]), names(&["q", "zeta_q"])).unwrap();
        assert_eq!(b.fresh_field_name("zeta_q"), "zeta_q2");
    }
}
