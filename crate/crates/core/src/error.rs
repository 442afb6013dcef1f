use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generator {0} is not positive")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {0}; the semigroup has infinite complement")]
    NonCofinite(i64),
    #[error("{0} is not a positive element of the semigroup")]
    BadAperyModulus(i64),
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("ideals live over different semigroups")]
    AmbientMismatch,
    #[error("second argument is not contained in the first")]
    NotASubmodule,
    #[error("the length formula needs a symmetric (Gorenstein) ambient semigroup")]
    NotGorensteinAmbient,
    #[error("not an ideal of the ring (some generator lies outside the semigroup)")]
    NotProperIdeal,
    #[error("rigidity oracles disagree: ext1 length {ext1}, torsion length {torsion}")]
    OracleDisagreement { ext1: usize, torsion: usize },
    #[error("({0}, {1}) does not generate a two-generated ideal")]
    NotTwoGenerated(i64, i64),
    #[error("linking element {0} is not in the ideal")]
    ElementNotInIdeal(i64),
    #[error("torsion found at degree {degree}, inside the stabilization window above {bound}")]
    BoundExceeded { degree: i64, bound: i64 },
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::OracleDisagreement { .. } | Error::BoundExceeded { .. } | Error::Invariant(_)
        )
    }
}
