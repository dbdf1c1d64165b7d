use thiserror::Error;

use crate::diagram::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: {}", join_violations(.0))]
    InvalidDiagram(Vec<Violation>),

    #[error("diagram is not connected")]
    Disconnected,

    #[error("state has {got} signs but the diagram has {expected} trivalent vertices")]
    StateDomain { expected: usize, got: usize },

    #[error("state sum over {vertices} vertices exceeds the cap of {cap} (2^{vertices} states)")]
    StateCapExceeded { vertices: usize, cap: usize },

    #[error("weight polynomial is zero")]
    ZeroPolynomial,

    #[error("diagram has no proper trivalent vertices")]
    NoProperVertices,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("expected an even leg count, got {0}")]
    OddLegCount(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition is already admissible")]
    AlreadyAdmissible,

    #[error("parse error: {0}")]
    Parse(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
