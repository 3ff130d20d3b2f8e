use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class has {found} multiplicities but the surface blows up {expected} points")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid surface data: {0}")]
    InvalidContext(String),

    #[error("point index {index} is out of range for r = {r}")]
    IndexOutOfRange { index: usize, r: usize },

    #[error("quadratic transform needs three distinct points, got {0:?}")]
    DegenerateStep([usize; 3]),

    #[error("{0} needs a uniform class dH - m(E1+...+Er); use check_ample for arbitrary multiplicities")]
    NotUniform(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration would visit {required} candidate classes, above the cap of {cap}")]
    EnumerationTooLarge { required: u128, cap: u128 },
}

pub(crate) fn add(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn sub(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

pub(crate) fn mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}
