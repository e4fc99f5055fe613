use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("packet width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("pre- and post-selected states are orthogonal (|<f|i>| = {0:e}); weak value diverges")]
    OrthogonalSelection(f64),
    #[error("grid needs at least 3 strictly increasing points")]
    EmptyGrid,
    #[error("{0:e} of the total weight falls outside the detector grid")]
    GridTooNarrow(f64),
    #[error("tan(theta/2) diverges at theta = {0}")]
    TanPole(f64),
    #[error("non-positive input: {0}")]
    NonPositiveInputs(&'static str),
    #[error("no scanned limit stays within deviation tolerance {0}")]
    NoValidLimit(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
