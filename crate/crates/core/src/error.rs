use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes do not fit together.
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// A multiplication table that is not a group.
    MalformedGroup(String),
    /// An element list that is not closed under the group law.
    MalformedSubgroup(String),
    /// The action matrix of a group element has determinant other than ±1.
    NonUnimodularAction { element: usize },
    /// `action(g) * action(h) != action(gh)`.
    NotAHomomorphism { left: usize, right: usize },
    /// Lattices or maps defined over different groups.
    IncompatibleModules(String),
    /// A lattice map that does not commute with the group actions.
    NotEquivariant { element: usize },
    /// An operation that is only implemented for some groups.
    UnsupportedGroup(String),
    /// Cohomology is only implemented in degrees 0, 1 and 2.
    UnsupportedDegree(usize),
    /// Input too large for the dense cochain representation.
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// A cone that is not a cone of the fan.
    ConeNotInFan,
    /// A cone whose ray set is not preserved by the group.
    NotDescendable,
    /// The operation needs a fan with cones of dimension at most one.
    NotPureDivisorial,
    /// The operation needs a smooth fan.
    NotSmooth,
    /// The fan failed validation; the message lists the first issue.
    InvalidFan(String),
    /// A lattice map that does not carry every cone into a cone.
    NotAFanMorphism(String),
    /// A failure inside one stage of a multi-stage computation.
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
    /// A postcondition that must hold for valid input was violated.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => write!(f, "{context}: expected dimension {expected}, found {found}"),
            Error::MalformedGroup(msg) => write!(f, "malformed group: {msg}"),
            Error::MalformedSubgroup(msg) => write!(f, "malformed subgroup: {msg}"),
            Error::NonUnimodularAction { element } => {
                write!(f, "action matrix for group element {element} is not unimodular")
            }
            Error::NotAHomomorphism { left, right } => write!(
                f,
                "action is not a homomorphism: action({left})*action({right}) != action({left}*{right})"
            ),
            Error::IncompatibleModules(msg) => write!(f, "incompatible modules: {msg}"),
            Error::NotEquivariant { element } => {
                write!(f, "map does not commute with the action of group element {element}")
            }
            Error::UnsupportedGroup(msg) => write!(f, "unsupported group: {msg}"),
            Error::UnsupportedDegree(n) => {
                write!(f, "cohomology in degree {n} is not supported (degrees 0, 1, 2 only)")
            }
            Error::ResourceLimit { what, value, limit } => {
                write!(f, "resource limit exceeded: {what} is {value}, limit {limit}")
            }
            Error::ConeNotInFan => write!(f, "cone is not in the fan"),
            Error::NotDescendable => {
                write!(f, "cone is not stable under the group action, so it does not descend")
            }
            Error::NotPureDivisorial => write!(f, "fan is not of pure divisorial type"),
            Error::NotSmooth => write!(f, "fan is not smooth"),
            Error::InvalidFan(msg) => write!(f, "invalid fan: {msg}"),
            Error::NotAFanMorphism(msg) => write!(f, "not a fan morphism: {msg}"),
            Error::Stage { stage, source } => write!(f, "{stage}: {source}"),
            Error::Internal(msg) => write!(f, "internal consistency error: {msg}"),
        }
    }
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Stage { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}
