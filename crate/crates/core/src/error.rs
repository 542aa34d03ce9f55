use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state is not in the sector: {0}")]
    StateNotInSector(String),

    #[error("site {site} out of range for {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} exceeds dense limit {limit}")]
    DenseLimitExceeded { dim: usize, limit: usize },

    #[error("solver did not converge after {iterations} iterations (best residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("excitation mismatch: labels carry {labels} excitations, sector has {sector}")]
    ExcitationMismatch { labels: u32, sector: u32 },

    #[error("unsupported sector (L={sites}, N={excitations}): {reason}")]
    UnsupportedSector {
        sites: usize,
        excitations: u32,
        reason: &'static str,
    },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("ground state is degenerate; classification refused")]
    DegenerateGround,

    #[error("invalid polariton: {0}")]
    InvalidPolariton(String),

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
