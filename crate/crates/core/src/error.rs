use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("identically zero quadratic")]
    AllZero,
    #[error("discriminant is not the square of a rational")]
    NotASquareDiscriminant,
    /// The extension quadratic lost its leading term (abcd = 1); carries the root of
    /// the remaining linear equation, if it has one.
    #[error("leading coefficient vanishes (abcd = 1)")]
    DegenerateLeadingCoefficient { root: Option<Rational> },
    #[error("empty tuple")]
    EmptyTuple,
    #[error("element {index} is zero")]
    DegenerateElement { index: usize },
    #[error("elements {first} and {second} coincide")]
    DuplicateElement { first: usize, second: usize },
    #[error("vanishing denominator: {0}")]
    DegenerateDenominator(String),
    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),
    #[error("degenerate sign choice: {0}")]
    SignChoiceDegenerate(String),
    #[error("witness does not square to the pairwise product plus one: {0}")]
    InvalidWitness(String),
    #[error("parameter at a pole: {0}")]
    PoleParameter(String),
    #[error("degenerate family member: {0}")]
    DegenerateFamily(String),
    #[error("leading coefficient {0} of the quartic is not a rational square")]
    NonSquareLeadingCoefficient(Rational),
    #[error("quartic collapsed to degree {0} after removing square factors")]
    DegenerateQuartic(usize),
    #[error("curve is singular")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("quartic has no known affine rational point")]
    NoKnownPoint,
    #[error("grid is empty")]
    EmptyGrid,
    #[error("invalid job specification: {0}")]
    InvalidJob(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by the parameter choice rather than by malformed input.
    pub fn is_degenerate_parameter(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDenominator(_)
                | Error::DegenerateTriple(_)
                | Error::PoleParameter(_)
                | Error::DegenerateFamily(_)
                | Error::NonSquareLeadingCoefficient(_)
                | Error::DegenerateQuartic(_)
                | Error::SingularCurve
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
