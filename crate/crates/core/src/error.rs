use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Physicality conditions on a lossy beamsplitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `|t|^2 + |r|^2 <= 1`
    Passivity,
    /// `|t r* + r t*| <= alpha`, equivalently `2 t r0 |cos θ| <= α`
    Coherence,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inequality::Passivity => write!(f, "|t|^2 + |r|^2 <= 1"),
            Inequality::Coherence => write!(f, "2tr₀|cos θ| ≤ α"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("occupation ({n_a}, {n_b}) exceeds the two-photon truncation")]
    Truncation { n_a: usize, n_b: usize },

    #[error("basis index {0} is outside 0..6")]
    IndexOutOfRange(usize),

    #[error("{name} = {value} is not a probability in [0, 1]")]
    Probability { name: &'static str, value: f64 },

    #[error("unphysical beamsplitter, violates {inequality}: {detail}")]
    Unphysical { inequality: Inequality, detail: String },

    #[error("operator is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("channel '{label}' is not trace preserving (residual {residual:.3e})")]
    Incomplete { label: String, residual: f64 },

    #[error("mode map is not an isometry (residual {0:.3e})")]
    NotIsometry(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn probability(name: &'static str, value: f64) -> Result<f64> {
        if (0.0..=1.0).contains(&value) {
            Ok(value)
        } else {
            Err(Error::Probability { name, value })
        }
    }
}
