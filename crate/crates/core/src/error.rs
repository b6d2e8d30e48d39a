use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown parity tag {0:?} (expected \"even\" or \"odd\")")]
    InvalidParity(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("cutoff {cutoff} exceeds the cap {cap} before convergence at g = {g}")]
    CapacityExceeded { g: f64, cutoff: usize, cap: usize },

    #[error("secular matrix has full rank at the claimed root (smallest pivot ratio {0:e})")]
    NotSingular(f64),

    #[error("null space of dimension {0} at the claimed root; dark state is not unique")]
    DegenerateNullSpace(usize),

    #[error("no local gap minimum inside [{lo}, {hi}]")]
    NoLocalMinimum { lo: f64, hi: f64 },

    #[error("spectrum window holds no levels")]
    EmptyWindow,

    #[error("no asymptotic solution found: {0}")]
    NoSolution(String),

    #[error("Jacobian singular at every start")]
    SingularJacobian,

    #[error("derivative of the secular polynomial vanishes at the evaluation point")]
    ZeroDerivative,
}

pub type Result<T> = std::result::Result<T, Error>;
