//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Failures carry enough data to
//! reconstruct what went wrong without re-running: offending monomials,
//! operand sizes, vanishing factors, and so on.

use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic between operators or scalars over different coefficient
    /// rings (plain rationals vs parameter polynomials).
    #[error("coefficient ring mismatch: {lhs} vs {rhs} in {context}")]
    RingMismatch {
        lhs: &'static str,
        rhs: &'static str,
        context: &'static str,
    },

    /// The normal-ordering pre-estimate for a product exceeded the term
    /// budget, so the product was not computed.
    #[error(
        "term budget exceeded: composition estimates {estimate} intermediate terms \
         (budget {budget}, operands {lhs_terms} x {rhs_terms} terms)"
    )]
    BudgetExceeded {
        estimate: u64,
        budget: u64,
        lhs_terms: usize,
        rhs_terms: usize,
    },

    /// Malformed operator text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Instantiation was asked to substitute rationals but a parameter that
    /// occurs in the operator was left unassigned.
    #[error("missing assignment for parameter '{param}' which occurs in the operator")]
    MissingAssignment { param: char },

    /// A catalog constructor was asked for an index outside the range it can
    /// produce in closed form.
    #[error("no closed-form operator available: {what}")]
    Unsupported { what: String },

    /// An orthogonal-polynomial recurrence hit a vanishing denominator at the
    /// supplied rational parameters.
    #[error("degenerate recurrence index: {what}")]
    DegenerateIndex { what: String },

    /// A flag-space matrix was expected to be graded-triangular but an entry
    /// above the diagonal blocks is nonzero.
    #[error(
        "triangularity violation: image of {col_mono} contains {row_mono} \
         with nonzero coefficient {coeff}"
    )]
    TriangularityViolation {
        col_mono: String,
        row_mono: String,
        coeff: String,
    },

    /// A finite-sector computation needs fully rational model parameters.
    #[error("operation needs rational parameters but '{param}' is symbolic")]
    SymbolicParameter { param: char },

    /// Jet arithmetic at a point where a coefficient denominator vanishes.
    #[error("singular evaluation point ({x}, {y}): factor {factor} vanishes")]
    SingularPoint { x: String, y: String, factor: String },

    /// Reciprocal of a jet whose value at the base point is zero.
    #[error("jet has zero constant term, no reciprocal")]
    ZeroJetValue,

    /// Downstream linear algebra on a matrix that is singular where it must
    /// not be (evaluation matrices, coefficient extraction).
    #[error("singular matrix in {context}")]
    SingularMatrix { context: &'static str },

    /// Invalid argument combinations that are data errors, not bugs.
    #[error("invalid argument: {0}")]
    Invalid(String),
}
