use thiserror::Error;

/// Errors raised by the dark-state toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("level label {label} is not valid for d = {d}")]
    InvalidLabel { label: String, d: usize },

    #[error("cannot parse level label {0:?}")]
    LabelParse(String),

    #[error("local dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("number of sites must be at least 1")]
    NoSites,

    #[error("state space d^N = {d}^{n} exceeds the dense size cap of {cap}")]
    SizeCap { d: usize, n: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cannot normalize the zero vector")]
    ZeroNorm,

    #[error("site index {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("duplicate site index {0}")]
    DuplicateSite(usize),

    #[error("level index {level} out of range for d = {d}")]
    LevelOutOfRange { level: usize, d: usize },

    #[error("levels must differ, got ({0}, {0})")]
    EqualLevels(usize),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error(
        "werner parameter beta = {beta} outside the positive range [{min}, {max}] for d = {d}"
    )]
    WernerOutOfRange {
        beta: f64,
        d: usize,
        min: f64,
        max: f64,
    },

    #[error("state has basis terms with nonzero total label sum")]
    NonzeroLabelSum,

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
