use thiserror::Error;

/// Errors from design formulas, simulation setup, and the verification grid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The arrival rate does not exceed the unit playback drain, so the ruin
    /// exponent is zero and every downstream formula degenerates.
    #[error("arrival rate {rate} must exceed the playback rate 1")]
    SubcriticalRate { rate: f64 },

    /// A scalar argument failed validation.
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// No policy can meet the interruption budget from this starting buffer.
    #[error("no feasible policy for D={d}, eps={eps}: requires D >= {d_min}")]
    InfeasibleTarget { d: f64, eps: f64, d_min: f64 },

    /// The free-rate exponent is too large for the second-order cost
    /// constants (needs alpha0 < 2, i.e. a free rate below ~2.313).
    #[error("alpha0={alpha0} out of range: cost constants need alpha0 < 2")]
    ExponentOutOfRange { alpha0: f64 },

    /// An expanded state (buffer, budget) left the feasible region.
    #[error("state (x={x}, p={p}) is outside the feasible region")]
    OutOfRegion { x: f64, p: f64 },

    /// A finite-difference stencil around this point would leave the region.
    #[error("stencil around (x={x}, p={p}) leaves the feasible region")]
    StencilOutOfRegion { x: f64, p: f64 },

    /// Numeric failure in a closed-form evaluation; not silently clamped.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The budget coordinate left (0, 1] during expanded-state integration.
    #[error("integration failure: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
