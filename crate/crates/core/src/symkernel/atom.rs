//! Generating atoms of the scalar algebra.

use std::cmp::Ordering;

use crate::jetspace::MultiIndex;

/// A generator of the polynomial algebra: a base coordinate `x^σ`, a jet
/// coordinate `y^i_α` (with `|α| = 0` the field itself), or a named constant
/// parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Base(usize),
    Jet { field: usize, mi: MultiIndex },
    Param(String),
}

impl Atom {
    pub fn jet(field: usize, mi: MultiIndex) -> Self {
        Atom::Jet { field, mi }
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, Atom::Jet { .. })
    }

    /// Jet order of a jet atom, `None` otherwise.
    pub fn jet_order(&self) -> Option<u32> {
        match self {
            Atom::Jet { mi, .. } => Some(mi.order()),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Atom::Base(_) => 0,
            Atom::Jet { .. } => 1,
            Atom::Param(_) => 2,
        }
    }
}

/// Canonical atom order: base coordinates (by index), then jet coordinates
/// (by field index, then graded-lexicographic multi-index), then parameters
/// (by name).
impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Atom::Base(a), Atom::Base(b)) => a.cmp(b),
            (Atom::Jet { field: fa, mi: ma }, Atom::Jet { field: fb, mi: mb }) => {
                fa.cmp(fb).then_with(|| ma.cmp(mb))
            }
            (Atom::Param(a), Atom::Param(b)) => a.cmp(b),
            _ => unreachable!("rank already distinguished the variants"),
        })
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_order() {
        let base = Atom::Base(1);
        let field = Atom::jet(0, MultiIndex::zero(2));
        let jet = Atom::jet(0, MultiIndex::new(vec![1, 0]));
        let other_field = Atom::jet(1, MultiIndex::zero(2));
        let param = Atom::Param("omega".into());
        assert!(base < field);
        assert!(field < jet);
        assert!(jet < other_field);
        assert!(other_field < param);
    }
}
