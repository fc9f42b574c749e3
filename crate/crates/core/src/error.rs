use std::fmt;

/// Compartment of the SIR model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Compartment {
    S,
    I,
    R,
}

impl Compartment {
    pub const ALL: [Compartment; 3] = [Compartment::S, Compartment::I, Compartment::R];

    pub fn as_str(self) -> &'static str {
        match self {
            Compartment::S => "S",
            Compartment::I => "I",
            Compartment::R => "R",
        }
    }
}

impl fmt::Display for Compartment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration failed at t={t}: {compartment}={value} is below the negativity tolerance")]
    Integration {
        t: f64,
        compartment: Compartment,
        value: f64,
    },

    #[error("integration produced a non-finite {compartment} at t={t}")]
    NonFinite { t: f64, compartment: Compartment },

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("dt_cost={dt_cost} is not a positive multiple of dt_output={dt_output} aligned with the horizon")]
    Alignment { dt_cost: f64, dt_output: f64 },

    #[error("t={t} is not on the output grid")]
    OffGrid { t: f64 },

    #[error("grid cell {coords}: {source}")]
    Cell {
        coords: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Whether this error (or the error it wraps) came from the numerics
    /// rather than from invalid input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Integration { .. } | Error::NonFinite { .. } | Error::NoBracket { .. } => true,
            Error::Cell { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
