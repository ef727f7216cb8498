//! Jet-bundle geometry: bundle descriptions, symmetric multi-indices, total
//! derivatives, and vector fields with their prolongations.

mod bundle;
mod fields;
mod multiindex;
mod total;

pub use bundle::{BundleSpec, MAX_BASE_DIM};
pub use fields::{EvolutionaryField, ProjectableVectorField, SplitField};
pub use multiindex::{mi_multinomial, MultiIndex};
pub use total::{total_derivative, total_derivative_multi};
