use thiserror::Error;

/// Domain errors raised by the lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface type {0}: expected an integer in 1..=7")]
    InvalidSurfaceType(i64),
    #[error("the zero class has no primitivity")]
    ZeroClass,
    #[error("matrix ({c},{a};{d},{b}) is not in SL2(Z): cb - ad = {det}")]
    NotSl2 {
        c: String,
        a: String,
        d: String,
        b: String,
        det: String,
    },
    #[error("relative transform along {fibration} requires {lambda} | d, got d = {d}")]
    Divisibility {
        fibration: &'static str,
        lambda: u32,
        d: String,
    },
    #[error("letters from different surface types ({0} and {1}) cannot be combined")]
    MixedSurfaceTypes(u8, u8),
    #[error("not an isometry of the Euler form")]
    NotAnIsometry,
    #[error("sublattice model is not admissible: {0}")]
    InadmissibleModel(String),
    #[error("non-split type {0}: factorization is only available for split types 1, 3, 5, 7")]
    NonSplit(u8),
    #[error("class is not in Delta")]
    NotInDelta,
    #[error("class is not isotropic")]
    NotIsotropic,
    #[error("class is not primitive")]
    NotPrimitive,
    #[error("isometry does not preserve Delta")]
    DeltaNotPreserved,
}

pub type Result<T> = std::result::Result<T, Error>;
