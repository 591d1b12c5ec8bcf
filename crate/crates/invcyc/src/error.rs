use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the library.
///
/// Domain errors describe bad inputs; [`Error::Overflow`] and
/// [`Error::DegreeBudget`] describe computations that were refused rather
/// than silently truncated; [`Error::InternalCheck`] flags a failed
/// self-verification, i.e. a bug, never bad input.
#[derive(Debug, Error)]
pub enum Error {
    /// An input that must be prime is not.
    #[error("{value} is not prime")]
    NotPrime { value: i64 },

    /// A prime pair must satisfy 3 <= p < q.
    #[error("need odd primes with 3 <= p < q, got p={p}, q={q}")]
    BadPair { p: i64, q: i64 },

    /// A prime triple must satisfy 3 <= p < q < r.
    #[error("need odd primes with 3 <= p < q < r, got p={p}, q={q}, r={r}")]
    BadOrdering { p: i64, q: i64, r: i64 },

    /// r exceeds phi(pq): the closed-form family does not cover it.
    #[error("r = {r} exceeds phi(pq) = {phi_pq}; the factorization engine covers this range")]
    ROutsideFamily { r: i64, phi_pq: i64 },

    /// r is at most phi(pq): the factorization shortcut does not apply.
    #[error("r = {r} is at most phi(pq) = {phi_pq}; use the family engines")]
    RInsideFamily { r: i64, phi_pq: i64 },

    /// r admits no representation alpha*p + beta*q with alpha, beta > 0.
    #[error("r = {r} is not of the form alpha*{p} + beta*{q} with alpha, beta > 0")]
    NotRepresentable { p: i64, q: i64, r: i64 },

    /// A scalar argument fell outside its documented range.
    #[error("{what} = {value} is out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    /// No inverse exists because the inputs share a factor.
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: i64 },

    /// Arguments that must be pairwise coprime share a factor.
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    /// Polynomial division left a nonzero remainder.
    #[error("inexact division: remainder has a nonzero coefficient at x^{index}")]
    InexactDivision { index: usize },

    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// Exact 64-bit integer arithmetic would have wrapped around.
    #[error("integer overflow during {context}")]
    Overflow { context: &'static str },

    /// A construction was refused because its degree exceeds the budget.
    #[error("degree {degree} exceeds the budget of {budget}")]
    DegreeBudget { degree: u64, budget: u64 },

    /// A self-check failed; this falsifies the implementation, not the input.
    #[error("internal consistency check failed: {what}")]
    InternalCheck { what: String },

    /// An I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
