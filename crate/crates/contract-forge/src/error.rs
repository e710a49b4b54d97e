//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by solvers, the oracle, the discretizer, and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A type profile violated its invariants (ordering, masses, finiteness).
    #[error("invalid type profile: {0}")]
    InvalidProfile(String),

    /// Market parameters violated their invariants.
    #[error("invalid market parameters: {0}")]
    InvalidParams(String),

    /// A contract menu violated its invariants.
    #[error("invalid contract menu: {0}")]
    InvalidMenu(String),

    /// A scalar argument was outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Menu and profile lengths must match for per-type operations.
    #[error("menu has {menu_len} contracts but the profile has {n} types")]
    LengthMismatch {
        /// Number of contracts in the menu.
        menu_len: usize,
        /// Number of types in the profile.
        n: usize,
    },

    /// The moral-hazard-only solver needs `params.fixed_effort`.
    #[error("moral-hazard-only solve requires params.fixed_effort (see default_fixed_effort)")]
    MissingFixedEffort,

    /// The joint grid search is exponential in the number of types.
    #[error("grid search supports at most {max} types, got {n}")]
    TooManyTypes {
        /// Requested profile size.
        n: usize,
        /// Supported maximum.
        max: usize,
    },

    /// A grid specification violated its invariants.
    #[error("invalid grid spec: {0}")]
    InvalidGrid(String),

    /// A continuous type distribution violated its invariants.
    #[error("invalid type distribution: {0}")]
    InvalidDistribution(String),

    /// A simulation configuration violated its invariants.
    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),

    /// A success probability left [0, 1] while clamping was disabled.
    #[error(
        "success probability {value} for type index {type_index} is outside [0, 1] \
         and clamp_probability is off"
    )]
    ProbabilityOutOfRange {
        /// Zero-based index of the offending type.
        type_index: usize,
        /// The unclamped probability θ·e.
        value: f64,
    },

    /// Link parameters produced a non-finite data rate.
    #[error("link budget produced a non-finite rate: {0}")]
    NonFiniteRate(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
