use std::fmt;

/// Errors produced by coloring construction, counting, and search entry points.
#[derive(Debug)]
pub enum Error {
    /// Coloring text or bit vector does not match the group size.
    WrongLength { expected: usize, got: usize },
    /// Coloring text contains a character other than 0/1 and separators.
    IllegalCharacter(char),
    /// Operation is defined for cyclic colorings only.
    NotCyclic,
    /// Operation is defined for interval colorings only.
    NotInterval,
    /// Unit multiplication requires gcd(m, n) = 1.
    UnitNotCoprime { m: u64, n: usize },
    /// Pair intersection indices must satisfy 1 <= i < j <= k.
    IndexOrder { i: usize, j: usize, k: usize },
    /// Arithmetic-progression parameter outside the interval.
    ApOutOfRange { start: usize, step: usize, k: usize, n: usize },
    /// Progression length not supported by this operation.
    UnsupportedK(usize),
    /// Tail string length must equal n mod b.
    TailLength { expected: usize, got: usize },
    /// Block template must contain exactly one star slot.
    TemplateStars { expected: usize, got: usize },
    /// Template admits monochromatic progressions for some star fill.
    StarPropertyFailed,
    /// Modulus of the closed-form count must be prime.
    CompositeModulus(u64),
    /// Identity requires n in a specific residue class.
    WrongResidue { n: usize, required: &'static str },
    /// Search size exceeds the configured feasibility cap.
    CapExceeded { n: usize, cap: usize },
    /// Pattern length does not match the pattern set.
    PatternLength { expected: usize, got: usize },
    /// Polygon is not simple (or otherwise degenerate).
    PolygonInvalid(&'static str),
    /// Checkpoint file is malformed or inconsistent with the request.
    Checkpoint(String),
    /// Underlying I/O failure (checkpoint read/write).
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::WrongLength { expected, got } => {
                write!(f, "expected {expected} bits, got {got}")
            }
            Error::IllegalCharacter(c) => write!(f, "illegal character {c:?} in coloring"),
            Error::NotCyclic => write!(f, "operation requires a cyclic coloring"),
            Error::NotInterval => write!(f, "operation requires an interval coloring"),
            Error::UnitNotCoprime { m, n } => {
                write!(f, "multiplier {m} is not a unit modulo {n}")
            }
            Error::IndexOrder { i, j, k } => {
                write!(f, "need 1 <= i < j <= k, got i={i}, j={j}, k={k}")
            }
            Error::ApOutOfRange { start, step, k, n } => write!(
                f,
                "progression (start={start}, step={step}, k={k}) does not fit in [{n}]"
            ),
            Error::UnsupportedK(k) => write!(f, "unsupported progression length k={k}"),
            Error::TailLength { expected, got } => {
                write!(f, "tail must have length {expected}, got {got}")
            }
            Error::TemplateStars { expected, got } => {
                write!(f, "template must have exactly {expected} star slot(s), got {got}")
            }
            Error::StarPropertyFailed => {
                write!(f, "template admits non-degenerate monochromatic progressions")
            }
            Error::CompositeModulus(p) => write!(f, "{p} is not prime"),
            Error::WrongResidue { n, required } => {
                write!(f, "n={n} does not satisfy {required}")
            }
            Error::CapExceeded { n, cap } => {
                write!(f, "n={n} exceeds the feasibility cap {cap}")
            }
            Error::PatternLength { expected, got } => {
                write!(f, "pattern of length {got} in a set of length-{expected} patterns")
            }
            Error::PolygonInvalid(why) => write!(f, "invalid polygon: {why}"),
            Error::Checkpoint(msg) => write!(f, "checkpoint: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e)
    }
}
