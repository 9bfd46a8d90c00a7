use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants map one-to-one onto the machine-readable codes emitted by the
/// command line front end (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("modulus must be monic and nonconstant")]
    InvalidModulus,
    #[error("unrecognised field specification `{0}`")]
    BadFieldSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("square class of zero is undefined")]
    ZeroElement,
    #[error("square classes are not implemented for this field")]
    UnsupportedField,
    #[error("integer {0} could not be fully factored")]
    IntegerFactorizationLimit(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("operation requires a finite field")]
    NotFiniteField,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("characteristic 2 forms cannot be diagonalized")]
    CharacteristicTwo,
    #[error("diagonal entry is zero (degenerate form)")]
    ZeroDiagonalEntry,
    #[error("operation requires a different base field")]
    WrongField,
    #[error("place is not a monic irreducible polynomial")]
    NotIrreducible,
    #[error("trace form of the extension is degenerate")]
    InseparableModulus,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("Bezoutian of a constant pair is empty")]
    DegreeZero,
    #[error("map is constant")]
    ConstantMap,
    #[error("Bezoutian is degenerate: numerator and denominator share a factor")]
    DegenerateBezoutian,
    #[error("Scheja-Storch pairing matrix is singular")]
    SingularTheta,
    #[error("modulus does not divide the germ polynomial")]
    ModulusDoesNotDivide,
    #[error("denominator vanishes at the cluster")]
    DenominatorVanishes,
    #[error("multiplicity must be positive")]
    NotAZero,
    #[error("cluster does not divide the numerator to exactly the given multiplicity")]
    WrongMultiplicity,
    #[error("local class changed between truncation orders")]
    UnstableTruncation,
    #[error("map is not separable (df vanishes identically)")]
    NonSeparable,
    #[error("unit must be nonzero")]
    ZeroUnit,
    #[error("polynomial must be monic")]
    NonMonic,
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("negative multiple of h has no effective representative")]
    VirtualClass,
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::InvalidModulus => "InvalidModulus",
            Error::BadFieldSpec(_) => "BadFieldSpec",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::ZeroElement => "ZeroElement",
            Error::UnsupportedField => "UnsupportedField",
            Error::IntegerFactorizationLimit(_) => "IntegerFactorizationLimit",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotFiniteField => "NotFiniteField",
            Error::NotSymmetric => "NotSymmetric",
            Error::CharacteristicTwo => "CharacteristicTwo",
            Error::ZeroDiagonalEntry => "ZeroDiagonalEntry",
            Error::WrongField => "WrongField",
            Error::NotIrreducible => "NotIrreducible",
            Error::InseparableModulus => "InseparableModulus",
            Error::BothZero => "BothZero",
            Error::DegreeZero => "DegreeZero",
            Error::ConstantMap => "ConstantMap",
            Error::DegenerateBezoutian => "DegenerateBezoutian",
            Error::SingularTheta => "SingularTheta",
            Error::ModulusDoesNotDivide => "ModulusDoesNotDivide",
            Error::DenominatorVanishes => "DenominatorVanishes",
            Error::NotAZero => "NotAZero",
            Error::WrongMultiplicity => "WrongMultiplicity",
            Error::UnstableTruncation => "UnstableTruncation",
            Error::NonSeparable => "NonSeparable",
            Error::ZeroUnit => "ZeroUnit",
            Error::NonMonic => "NonMonic",
            Error::DegreeTooSmall => "DegreeTooSmall",
            Error::VirtualClass => "VirtualClass",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
