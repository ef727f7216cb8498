//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the kernel, the calculus layers and the DSL.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two expressions or forms over different bundle specifications were
    /// combined.
    #[error("incompatible bundles: {left} vs {right}")]
    IncompatibleBundle { left: String, right: String },

    /// A base-coordinate index outside `0..n`.
    #[error("base index {index} out of range (bundle has {n} base coordinates)")]
    BaseIndex { index: usize, n: usize },

    /// A field index outside `0..m`.
    #[error("field index {index} out of range (bundle has {m} fields)")]
    FieldIndex { index: usize, m: usize },

    /// A multi-index whose length does not match the base dimension.
    #[error("multi-index length {len} does not match base dimension {n}")]
    MultiIndexLength { len: usize, n: usize },

    /// Bundle construction with repeated or empty names, or unsupported
    /// dimensions.
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    /// Division by zero or by a non-constant expression.
    #[error("division: {0}")]
    Division(String),

    /// A negative or non-integer exponent.
    #[error("unsupported exponent: {0}")]
    Exponent(String),

    /// Numeric evaluation hit an elementary-function wrapper or an unbound
    /// atom.
    #[error("evaluation: {0}")]
    Evaluation(String),

    /// Forms of different degrees were added.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// Interior product with a degree-0 form.
    #[error("interior product of a degree-0 form is undefined")]
    InteriorDegreeZero,

    /// An operation received input of higher jet order than supported.
    #[error("unsupported order {order} (maximum {max})")]
    UnsupportedOrder { order: u32, max: u32 },

    /// A vector field failed a projectability or order restriction.
    #[error("invalid vector field: {0}")]
    InvalidVectorField(String),

    /// A gauge generator failed linearity or order validation.
    #[error("invalid gauge generator: {0}")]
    InvalidGaugeGenerator(String),

    /// A Noether current was requested for a non-symmetry.
    #[error("not an exact symmetry; Lie-derivative residual: {residual}")]
    NotASymmetry { residual: String },

    /// A superpotential was requested while the gauge identity is obstructed.
    #[error("nonzero gauge identity obstructs the superpotential: {details}")]
    BianchiObstruction { details: String },

    /// Superpotentials need at least two base dimensions.
    #[error("superpotential undefined for base dimension {n} (need n >= 2)")]
    DegenerateDimension { n: usize },

    /// The kernel-membership precondition failed.
    #[error("generator is not in the kernel of the Jacobi linearization: {details}")]
    KernelPrecondition { details: String },

    /// Input outside the supported structural fragment.
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    /// An identity that must hold by construction failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    /// A name lookup (Lagrangian, vector field, gauge block) failed.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// DSL parse error with 1-based position.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// JSON deserialization error.
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn incompatible(
        left: &crate::jetspace::BundleSpec,
        right: &crate::jetspace::BundleSpec,
    ) -> Self {
        Error::IncompatibleBundle { left: left.summary(), right: right.summary() }
    }
}
