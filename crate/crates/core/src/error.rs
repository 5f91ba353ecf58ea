//! Error type shared by every module of the crate.

use crate::seq::Eigenvalue;

/// Errors reported by sequence construction, generators, channel codecs and
/// file I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A sequence needs at least one entry.
    #[error("sequence must contain at least one entry")]
    EmptySequence,

    /// Sequences carry finite amplitudes only.
    #[error("non-finite entry at index {index}")]
    NonFiniteEntry { index: usize },

    /// Two sequences that must share a period do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A basis or generator index fell outside `0..N`.
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// Generator superscripts run over `{0, 1, 2, 3}`.
    #[error("generator index {0} out of range (expected 0..=3)")]
    GeneratorIndexOutOfRange(u8),

    /// The zero sequence belongs to every eigenspace and cannot be classified.
    #[error("the zero sequence cannot be classified")]
    ZeroSequence,

    /// A sequence failed the eigenvector residual test.
    #[error("not invariant for {lambda}: relative residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotInvariant {
        lambda: Eigenvalue,
        residual: f64,
        tolerance: f64,
    },

    /// An eigenspace selection outside the supported designs.
    #[error("invalid eigenspace selection: {0}")]
    InvalidSelection(String),

    /// The adder channel takes two to four simultaneous users.
    #[error("user count {0} outside supported range 2..=4")]
    UserCount(usize),

    /// Number of data words and number of signatures must agree.
    #[error("count mismatch: {words} words for {signatures} signatures")]
    CountMismatch { words: usize, signatures: usize },

    /// A digital word exceeded the configured bit depth.
    #[error("word {word} out of range for {bits}-bit conversion")]
    WordOutOfRange { word: u64, bits: u32 },

    /// Frame parameters failed validation.
    #[error("invalid frame config: {0}")]
    InvalidConfig(String),

    /// The fast receiver divides by the first sample of each signature.
    #[error("signature has zero sample at index 0; the fast receiver requires x[0] != 0")]
    ZeroDcComponent,

    /// Signatures must carry energy to be usable.
    #[error("signature is the zero sequence")]
    ZeroSignature,

    /// A signature pool needs at least one entry.
    #[error("signature pool is empty")]
    EmptyPool,

    /// Estimation was requested for an eigenspace with no pooled signatures.
    #[error("signature pool has no entries for eigenvalue {0}")]
    EmptyGroup(Eigenvalue),

    /// Proportional signatures are indistinguishable to the variance detector.
    #[error("pool entries {0} and {1} are proportional")]
    ProportionalSignatures(usize, usize),

    /// Too few samples survived the near-zero division mask.
    #[error("pool entry {index} leaves fewer than 2 usable samples after masking")]
    TooFewUsableSamples { index: usize },

    /// Noise level must be a finite non-negative number.
    #[error("invalid noise level {0}")]
    InvalidSigma(f64),

    /// Eigenvalue labels are `+1`, `-1`, `+j`, `-j`.
    #[error("cannot parse eigenvalue {0:?} (expected +1, -1, +j or -j)")]
    ParseEigenvalue(String),

    /// Malformed sequence, pool, matrix or config file.
    #[error("invalid file format: {0}")]
    FileFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
