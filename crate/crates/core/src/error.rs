use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("box dimensions must be positive, got ({0}, {1}, {2})")]
    NonPositiveParams(i64, i64, i64),

    #[error("{what} = {value} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("monomial ideal has infinite colength")]
    InfiniteColength,

    #[error("not a plane partition: {0}")]
    InvalidPartition(String),

    #[error("partition does not fit in the {0}x{1}x{2} box")]
    OutsideBox(usize, usize, usize),

    #[error("generators do not form an antichain")]
    NotAntichain,

    #[error("finite-field oracle: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
