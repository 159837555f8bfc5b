use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the ceiling {ceiling}")]
    PrimeTooLarge { p: u64, ceiling: u64 },
    #[error("operands use different moduli ({left} and {right})")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("residue {value} is not canonical modulo {p}")]
    ResidueOutOfRange { value: u64, p: u32 },
    #[error("duplicate residue {0} in set literal")]
    DuplicateResidue(u32),
    #[error("malformed set literal: {0}")]
    SetLiteral(String),
    #[error("size {size} out of range [0, {p}]")]
    SizeOutOfRange { size: usize, p: u32 },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("operation requires an odd prime, got p = {0}")]
    EvenModulus(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("|S| = {size} exceeds the expansion cap {cap}")]
    ExpansionCap { size: usize, cap: usize },
    #[error("no witness found after {attempts} attempts: {system}")]
    WitnessExhausted { attempts: usize, system: String },
    #[error("checkpoint `{name}` failed: {detail}")]
    Checkpoint { name: &'static str, detail: String },
    #[error("search needs about {needed} configurations, budget is {budget}; use sampled mode")]
    BudgetExceeded { needed: u128, budget: u128 },
}

impl Error {
    /// True when the error means a mathematical guarantee did not hold on a
    /// concrete instance, as opposed to bad input.
    pub fn is_check_failure(&self) -> bool {
        matches!(self, Error::Checkpoint { .. } | Error::WitnessExhausted { .. })
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
