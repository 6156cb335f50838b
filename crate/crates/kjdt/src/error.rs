use thiserror::Error;

/// Errors raised by tableau and slide operations.
///
/// Variants carry a short human-readable context string; structured detail
/// (the offending shape or box) is embedded in the message because callers
/// only ever report these, never branch on their payloads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape exceeds rectangle: {0}")]
    ShapeExceedsRectangle(String),
    #[error("invalid shape chain: {0}")]
    InvalidChain(String),
    #[error("not a union of alternating short ribbons: {0}")]
    NotAShortRibbon(String),
    #[error("not an inner corner: {0}")]
    NotAnInnerCorner(String),
    #[error("not an outer corner: {0}")]
    NotAnOuterCorner(String),
    #[error("rectification order leaves a nonempty inner shape: {0}")]
    IncompleteOrder(String),
    #[error("local rule precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("tableau does not have straight shape: {0}")]
    NotStraightShape(String),
    #[error("shapes do not abut: {0}")]
    ShapesDoNotAbut(String),
    #[error("polynomial is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("parse error: {0}")]
    Parse(String),
}
