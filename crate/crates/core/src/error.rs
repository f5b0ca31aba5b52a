use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the physical domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed form was evaluated exactly on one of its poles.
    #[error("pole: {0}")]
    Pole(String),

    /// ODE step too coarse for the oscillation scale of the system.
    #[error("step {dt:e} s exceeds resolution limit {limit:e} s")]
    Resolution { dt: f64, limit: f64 },

    /// Adaptive quadrature exhausted its evaluation budget.
    #[error("quadrature did not converge after {evaluations} evaluations (partial value {partial:e}, error estimate {est_error:e})")]
    Convergence {
        partial: f64,
        est_error: f64,
        evaluations: usize,
    },

    /// The integrand picked up an imaginary part on the imaginary-frequency axis.
    #[error("integrand not real at xi = {xi:e}: imaginary part {imag:e}")]
    NonRealIntegrand { xi: f64, imag: f64 },

    #[error("unknown figure id {0}")]
    UnknownFigure(u8),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Failure of a grid evaluation, tagged with the distance.
    #[error("at z = {z:e} m: {source}")]
    AtDistance { z: f64, source: Box<Error> },
}

impl Error {
    pub fn at_distance(self, z: f64) -> Self {
        match self {
            Error::AtDistance { .. } => self,
            other => Error::AtDistance {
                z,
                source: Box::new(other),
            },
        }
    }
}

pub(crate) fn require_distance(z: f64) -> Result<()> {
    if z.is_finite() && z > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "atom-surface distance must be positive, got {z:e} m"
        )))
    }
}
