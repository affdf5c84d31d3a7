//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or evaluating the
/// stability functionals.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// The decoration profile admits no nonzero tensor tuple although the
    /// decoration is declared nonzero — the profile is inconsistent.
    #[error("no admissible tensor tuple: decoration profile is inconsistent")]
    NoAdmissibleTuple,

    /// A semistability scan was requested with an empty weight grid.
    #[error("weight grid is empty")]
    EmptyWeightGrid,

    /// Two decoration profiles were combined over different catalogs.
    #[error("decoration profiles live over different catalogs")]
    CatalogMismatch,

    /// A slope was requested for a rank-zero subobject.
    #[error("slope undefined for a rank-zero subobject")]
    ZeroRank,

    /// A factor-stability check was requested for a pair that is not a
    /// strictly increasing step of the catalog order.
    #[error("interval [F, G] is empty: F < G does not hold in the catalog")]
    EmptyInterval,

    /// A Jordan-Hölder filtration was requested for a model that is not
    /// fr-semistable at the given parameter.
    #[error("model is not fr-semistable at the given delta")]
    NotSemistable,

    /// The catalog holds no equal-slope stable step to continue a
    /// Jordan-Hölder chain: the catalog is too coarse for this model.
    #[error("catalog too coarse: no equal-slope stable step available")]
    CatalogIncomplete,

    /// S-equivalence was asked of two models with different fr-slopes.
    #[error("fr-slopes differ: S-equivalence is undefined")]
    SlopeMismatch,

    /// The decorated Hilbert polynomial is not positive at the chosen twist,
    /// so linearization ratios are undefined (the twist is too small).
    #[error("decorated Hilbert polynomial not positive at m = {0}")]
    NonpositiveDecoratedPolynomial(i64),

    /// A special one-parameter subgroup index outside `1..=k-1`.
    #[error("one-parameter subgroup index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// An n-uple reduction was asked of an empty morphism list.
    #[error("empty target list: nothing to reduce")]
    EmptyList,

    /// A rational failed to parse as "p/q" with q > 0.
    #[error("malformed rational {0:?}: expected \"p/q\" with q > 0")]
    BadRational(String),

    /// Any structural validation failure, with field context.
    #[error("invalid input: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
