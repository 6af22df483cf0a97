use crate::dirichlet::SolveTrace;

/// Crate-wide error type.
///
/// Input validation failures and numerical failures are kept apart so that
/// callers (in particular the CLI) can map them to distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty ball: {0}")]
    EmptyBall(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("ball escapes domain: {0}")]
    BallEscapesDomain(String),

    #[error("no boundary strip: {0}")]
    NoBoundaryStrip(String),

    #[error("degenerate problem: {0}")]
    DegenerateProblem(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A fixed-point solve ran out of iterations. The trace taken so far is
    /// attached so the caller can inspect the stalled run.
    #[error("no convergence after {iterations} iterations (last sup-delta {last_delta:.3e})")]
    NonConvergence {
        iterations: usize,
        last_delta: f64,
        trace: Box<SolveTrace>,
    },
}

impl Error {
    /// True for errors caused by malformed input rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::EmptyBall(_)
                | Error::BallEscapesDomain(_)
                | Error::NoBoundaryStrip(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
