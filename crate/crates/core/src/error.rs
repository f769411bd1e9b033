use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic supplied is not a prime number.
    NotPrime(u64),
    /// `p^m` exceeds the configured field-size cap.
    FieldTooLarge { p: u64, m: u32, cap: u64 },
    /// Extension degree must be at least one.
    ZeroDegree,
    /// A quantity that must be prime to `p` is not.
    NotCoprime { n: u64, p: u64 },
    /// `n` does not divide the order of the multiplicative group.
    OrderNotDividing { n: u64, order: u64 },
    /// Ramification data violating `n | p^t - 1`.
    RamificationConstraint { p: u64, t: u32, n: u64 },
    /// An element that should lie in the vector group `V` does not.
    OutsideVectorGroup,
    /// The supplied local action data is inconsistent.
    InvalidSpec(String),
    /// The distinguished class `d0` does not exist in characteristic 3.
    ClassUndefined,
    /// A map `V -> M` that was required to be a cocycle is not.
    NotACocycle,
    /// Operation requires a nontrivial tame part `n > 1`.
    RequiresTamePart,
    /// The epsilon-part of a lift is not the image of a derivation.
    NotDerivationImage(String),
    /// Binomial denominators are not invertible in the coefficient ring.
    DenominatorNotInvertible { choose: u32, characteristic: u64 },
    /// A graph of groups must be connected.
    DisconnectedGraph,
    /// Edge endpoint out of range.
    BadVertexIndex(usize),
    /// Group label parameters are invalid.
    InvalidLabel(String),
    /// Hurwitz genus computation produced a non-integral or negative genus.
    NonIntegralGenus(String),
    /// Catch-all for inconsistent inputs.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldTooLarge { p, m, cap } => {
                write!(f, "field of size {p}^{m} exceeds the cap of {cap} elements")
            }
            Error::ZeroDegree => write!(f, "extension degree must be at least 1"),
            Error::NotCoprime { n, p } => write!(f, "n = {n} is not coprime to p = {p}"),
            Error::OrderNotDividing { n, order } => {
                write!(f, "{n} does not divide the multiplicative order {order}")
            }
            Error::RamificationConstraint { p, t, n } => {
                write!(f, "n = {n} does not divide {p}^{t} - 1")
            }
            Error::OutsideVectorGroup => write!(f, "element is not in the vector group V"),
            Error::InvalidSpec(msg) => write!(f, "invalid local action: {msg}"),
            Error::ClassUndefined => write!(f, "the class d0 is not defined for p = 3"),
            Error::NotACocycle => write!(f, "map does not satisfy the cocycle identity"),
            Error::RequiresTamePart => write!(f, "operation requires n > 1"),
            Error::NotDerivationImage(msg) => write!(f, "lift is not a derivation image: {msg}"),
            Error::DenominatorNotInvertible { choose, characteristic } => {
                write!(f, "binomial denominator {choose}! is not invertible in characteristic {characteristic}")
            }
            Error::DisconnectedGraph => write!(f, "graph of groups is not connected"),
            Error::BadVertexIndex(i) => write!(f, "edge refers to missing vertex {i}"),
            Error::InvalidLabel(msg) => write!(f, "invalid group label: {msg}"),
            Error::NonIntegralGenus(msg) => write!(f, "Hurwitz formula inconsistent: {msg}"),
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
