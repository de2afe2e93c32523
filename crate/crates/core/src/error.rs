use alloc::string::String;

use crate::rational::Rational;

/// Which side of a two-operand query an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Side::First => f.write_str("first"),
            Side::Second => f.write_str("second"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("box is empty on axis {axis} (lo >= hi)")]
    EmptyBox { axis: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("non-diagonal matrix; use the numeric multiplicity fallback")]
    UnsupportedMatrix,
    #[error("band is unbounded")]
    UnboundedBand,
    #[error("multiplicity function vanishes identically")]
    EmptyBand,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{side} lattice is not a sampling matrix for its band (multiplicity reaches {max})")]
    NotSamplingMatrix { side: Side, max: Rational },
    #[error("lattice list is empty")]
    EmptyList,
    #[error("period {period} is not an integer multiple of the step {step}")]
    Incommensurable { period: Rational, step: Rational },
    #[error("no model frequency n/P falls in the band; smallest working period is {suggested}")]
    EmptyBandGrid { suggested: Rational },
    #[error("models have different periods")]
    PeriodMismatch,
    #[error("analysis ranges are not disjoint (cross gram norm {cross_gram:e})")]
    NotDisjoint { cross_gram: f64 },
    #[error("lattice is not a sampling matrix; the frame is not tight")]
    NotTight,
    #[error("ambiguous rank decision: singular value ratio {ratio:e} inside the guard band")]
    RankAmbiguous { ratio: f64 },
    #[error("generator lists differ in length ({first} vs {second})")]
    LengthMismatch { first: usize, second: usize },
    #[error("generator {index} has no time-domain profile")]
    MissingTimeProfile { index: usize },
    #[error("dilation must be expansive (|a| > 1)")]
    NotExpansive,
    #[error("dilation factor is zero")]
    ZeroFactor,
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
