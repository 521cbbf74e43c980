use alloc::string::String;

/// Errors raised by the checked entry points of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("({0}, {0}) is a loop; pairs must join distinct vertices")]
    Loop(usize),
    #[error("{what}: {size} exceeds the capacity limit {cap}")]
    Capacity {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    #[error("usage: {0}")]
    Usage(String),
    #[error("precondition violated: {0}")]
    Contract(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
