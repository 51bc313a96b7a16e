use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Gamma-type evaluation too close to a pole to be meaningful.
    #[error("argument {re}+{im}i is within {dist:.2e} of a pole")]
    PoleProximity { re: f64, im: f64, dist: f64 },

    /// A signed transform was requested with a parity index incompatible
    /// with the symmetry of the data.
    #[error("parity mismatch: operation requires parity {required}, data has parity {found}")]
    ParityMismatch { required: u8, found: u8 },

    /// The repeated-integral evaluation only converges when the spectral
    /// parameters are strictly ordered by real part.
    #[error("spectral parameters ({0}, {1}, {2}) violate Re l1 > Re l2 > Re l3")]
    ConvergenceCone(f64, f64, f64),

    /// A sum or tail bound needed more coefficients than the table holds.
    #[error("coefficient table holds {available} entries, need {needed}")]
    InsufficientTable { needed: u64, available: u64 },

    /// The sharpening kernel divides by a Fourier transform that vanishes
    /// (or nearly vanishes) inside the band being corrected.
    #[error("kernel profile dips to {min:.2e} on the band; sharpening would amplify noise unboundedly")]
    KernelSingularity { min: f64 },

    /// A cached table failed structural parsing.
    #[error("cache file malformed: {0}")]
    CacheFormat(String),

    /// A cached table parsed but its checksum does not match.
    #[error("cache checksum mismatch (file truncated or edited)")]
    CacheChecksum,

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    /// Integer work exceeded the headroom guaranteed overflow-free.
    #[error("integer overflow risk: {0}")]
    Overflow(String),

    #[error("{a} has no inverse modulo {modulus}")]
    NonInvertible { a: i64, modulus: i64 },

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
