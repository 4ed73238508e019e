use alloc::string::String;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` must have a positive weight")]
    ZeroWeight(String),
    #[error("{count} variables requested, at most {max} supported")]
    TooManyVariables { count: usize, max: usize },
    #[error("invalid elimination block of size {block} in a ring with {vars} variables")]
    InvalidBlock { block: usize, vars: usize },
    #[error("monomial exponent exceeds the cap of {cap}")]
    ExponentOverflow { cap: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("operands live in different rings")]
    SpecMismatch,
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("resource budget exhausted after {steps} reduction steps")]
    ResourceExhausted { steps: u64 },
    #[error("ideal has no cached Gröbner basis")]
    NoBasis,
    #[error("quotient is not zero beyond degree {top_degree}")]
    NotFinite { top_degree: u32 },
    #[error("`{0}` is not homogeneous of the expected degree")]
    NonHomogeneous(String),
    #[error("top graded piece has dimension {dim}, expected 1")]
    TopNotOneDimensional { dim: usize },
    #[error("ring `{0}` has no point class")]
    NoPointClass(String),
    #[error("top-degree class reduces to zero")]
    ZeroTopClass,
    #[error("morphism is not well defined: relation `{0}` does not map to zero")]
    NotWellDefined(String),
    #[error("class is not in the image of the restriction map")]
    NotInImage,
    #[error("class is not in the subring generated by the given classes")]
    NotInSubring,
    #[error("pushforward depends on the chosen preimage")]
    PreimageDependent,
    #[error("class does not descend: perpendicularity system is inconsistent")]
    NoDescent,
    #[error("kernel generators do not cut out the center: {0}")]
    KernelMismatch(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("polynomial is not symmetric: residual `{0}`")]
    NotSymmetric(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("non-integral Euler characteristic {0}")]
    NonIntegral(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("stage `{0}` did not pass; dependents cannot run")]
    PrerequisiteFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
