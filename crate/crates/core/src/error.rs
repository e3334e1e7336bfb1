use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("could not calibrate disk radius for n={n}, k_bar={k_bar}, alpha={alpha}: {reason}")]
    Calibration {
        n: u64,
        k_bar: f64,
        alpha: f64,
        reason: String,
    },

    #[error("point {id} has radius {r} outside the disk [0, {radius}]")]
    PointOutsideDisk { id: u32, r: f64, radius: f64 },

    #[error("estimated edge storage of {estimated} bytes exceeds the cap of {cap} bytes")]
    MemoryCap { estimated: u64, cap: u64 },

    #[error("quadratic oracle refused n={0}; use the forced variant for more than 100000 vertices")]
    OracleTooLarge(usize),

    #[error("only {found} vertices with degree >= {k_min}, need at least {required}")]
    InsufficientTail {
        k_min: usize,
        found: usize,
        required: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
