use thiserror::Error;

use crate::weyl::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window size n = {0} is too small (need n >= 2)")]
    RankTooSmall(usize),

    #[error("invalid window {window:?} for type {family}: {reason}")]
    InvalidWindow {
        family: Family,
        window: Vec<i32>,
        reason: &'static str,
    },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("root {root} is not a root of type {family} with n = {n}")]
    InvalidRoot {
        family: Family,
        n: usize,
        root: String,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("unsupported parabolic subset: {0}")]
    UnsupportedParabolic(String),

    #[error("descriptor mismatch: {0}")]
    Mismatch(String),

    #[error("operation requires type A input")]
    TypeAOnly,

    #[error("operation requires type C input")]
    TypeCOnly,

    #[error("{w} is not a minimal coset representative for J = {j:?}")]
    NotMinimal { w: String, j: Vec<usize> },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("guard violated: {0}")]
    GuardViolated(String),

    #[error("chain does not match the requested parabolic: {0}")]
    WrongChain(String),

    #[error("case classification failed: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
