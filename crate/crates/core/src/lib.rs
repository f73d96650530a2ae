//! Minimal binary linear codes from partial-spread Boolean functions.
//!
//! This crate builds the dimension-(n+3) binary linear codes obtained by
//! appending three Boolean functions f, g, h to a simplex generator, where
//! f, g, h are sums of indicator functions of partial-spread components
//! selected by three index sets A1, A2, A3. It verifies every claimed
//! property of the construction two independent ways:
//!
//! * analytic route: closed-form Walsh spectra, the predicted weight
//!   distribution, and a Walsh-based minimality criterion;
//! * brute-force route: direct transform summation, full codeword
//!   enumeration, and exhaustive cover scans.
//!
//! The interesting instances are "violating" codes: minimal despite
//! failing the sufficient ratio condition wt_min/wt_max > 1/2.
//!
//! Modules build on each other in order: [`gf2`] (bit vectors, GF(2)
//! linear algebra, GF(2^t) fields), [`boolfn`] (truth tables and Walsh
//! transforms), [`spread`] (partial spreads, index-set systems, function
//! families), [`code`] (code construction and weight distributions), and
//! [`minimal`] (minimality decisions and the ratio test).

pub mod boolfn;
pub mod code;
pub mod gf2;
pub mod minimal;
pub mod spread;

use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by the module that raises them; all carry enough
/// context to name the violated precondition without a backtrace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two vectors (or a vector and a matrix) disagree on length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    /// Matrix rows do not share a common column count.
    #[error("matrix rows must share one column count")]
    RaggedRows,
    /// A Boolean-function domain dimension beyond the supported cap.
    #[error("domain dimension {n} exceeds the cap of {max}")]
    DomainTooLarge { n: u32, max: u32 },
    /// Field degree outside the checkable range.
    #[error("field degree {t} outside supported range 2..={max}")]
    FieldDegree { t: u32, max: u32 },
    /// Modulus degree does not match the requested field degree.
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: u32, found: u32 },
    /// The field modulus factors over GF(2).
    #[error("modulus {modulus:#b} is reducible over GF(2)")]
    ReducibleModulus { modulus: u64 },
    /// Rows handed to a basis operation are linearly dependent.
    #[error("rows are linearly dependent")]
    DependentRows,
    /// Subspace index outside 1..=count.
    #[error("subspace index {index} outside 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    /// An index set is empty or escapes 1..=max.
    #[error("index sets must be nonempty subsets of 1..={max}")]
    BadIndexSet { max: usize },
    /// A function family member degenerated to the zero function.
    #[error("family member {label} is the zero function")]
    ZeroMember { label: String },
    /// Two function family members coincide.
    #[error("family members {first} and {second} coincide")]
    EqualMembers { first: String, second: String },
    /// Enumeration or scan dimension beyond the configured cap.
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    /// A stated precondition of the called operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed truth-table or spectrum text.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
