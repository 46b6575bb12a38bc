use core::fmt;

/// Errors raised while building or checking algebraic objects and families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrime(u32),
    EvenCharacteristic,
    InvalidDegree(usize),
    FieldTooLarge { p: u32, n: usize },
    InvalidModulus(&'static str),
    ReducibleModulus,
    NotBasicPrimitive,
    NotPlanar { shift: u32 },
    CharacteristicTooSmall(u32),
    InvalidParameters(&'static str),
    LengthMismatch { left: usize, right: usize },
    ModulusMismatch { left: u8, right: u8 },
    MalformedFamily(&'static str),
    FullModeTooLarge { q: usize },
    NotAModule,
    ZeroVector,
    NoUnitEntry,
    UnsupportedModulus(u8),
}

impl Error {
    /// Stable machine-readable code for reports and exit diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrime(_) => "NonPrime",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::NotBasicPrimitive => "NotBasicPrimitive",
            Error::NotPlanar { .. } => "NotPlanar",
            Error::CharacteristicTooSmall(_) => "CharacteristicTooSmall",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ModulusMismatch { .. } => "ModulusMismatch",
            Error::MalformedFamily(_) => "MalformedFamily",
            Error::FullModeTooLarge { .. } => "FullModeTooLarge",
            Error::NotAModule => "NotAModule",
            Error::ZeroVector => "ZeroVector",
            Error::NoUnitEntry => "NoUnitEntry",
            Error::UnsupportedModulus(_) => "UnsupportedModulus",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::EvenCharacteristic => f.write_str("characteristic must be an odd prime"),
            Error::InvalidDegree(n) => write!(f, "unsupported extension degree {n}"),
            Error::FieldTooLarge { p, n } => write!(f, "field of order {p}^{n} is too large"),
            Error::InvalidModulus(why) => write!(f, "invalid modulus: {why}"),
            Error::ReducibleModulus => f.write_str("modulus is reducible"),
            Error::NotBasicPrimitive => {
                f.write_str("modulus does not yield a Teichmüller generator of full order")
            }
            Error::NotPlanar { shift } => {
                write!(f, "function is not planar: difference map for shift #{shift} is not a bijection")
            }
            Error::CharacteristicTooSmall(p) => {
                write!(f, "characteristic {p} is too small; the cubic construction needs p >= 5")
            }
            Error::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::ModulusMismatch { left, right } => {
                write!(f, "root orders differ: {left} vs {right}")
            }
            Error::MalformedFamily(why) => write!(f, "malformed family: {why}"),
            Error::FullModeTooLarge { q } => {
                write!(f, "full verification is limited to q <= 81 (got q = {q}); use sampled mode")
            }
            Error::NotAModule => f.write_str("exponent set is not a module"),
            Error::ZeroVector => f.write_str("the zero vector is not a projective point"),
            Error::NoUnitEntry => f.write_str("vector has no unit entry"),
            Error::UnsupportedModulus(m) => write!(f, "unsupported root order {m}"),
        }
    }
}

impl core::error::Error for Error {}
