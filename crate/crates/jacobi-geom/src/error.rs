use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bracket algebra does not close on the basis (residual {0:.3e})")]
    NotClosed(f64),
    #[error("singular matrix")]
    Singular,
    #[error("group tags differ")]
    GroupMismatch,
    #[error("chart not usable here: {0}")]
    BadChart(&'static str),
    #[error("degenerate denominator")]
    Degenerate,
    #[error("point outside chart domain")]
    OutOfDomain,
    #[error("generator does not act on this space")]
    BadGenerator,
    #[error("value does not decompose on the algebra (residual {0:.3e})")]
    NotInAlgebra(f64),
    #[error("frame constants vary across sample points (spread {0:.3e})")]
    NotInvariant(f64),
    #[error("no geodesic-vector family row {0}")]
    BadRow(usize),
    #[error("geodesic left the chart domain at t = {0}")]
    LeftDomain(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
