use alloc::string::String;

use crate::order::PreorderViolation;
use crate::parse::ParseError;
use crate::plans::ConsistencyConjunct;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("formula `{0}` must be propositional here")]
    NotPropositional(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("too many atoms: {count} (at most {max} supported)")]
    TooManyAtoms { count: usize, max: usize },
    #[error("unknown plan `{0}`")]
    UnknownPlan(String),
    #[error("duplicate plan `{0}`")]
    DuplicatePlan(String),
    #[error("post-condition of `{plan}` is not a conjunction of literals: {post}")]
    PostNotLiteralConjunction { plan: String, post: String },
    #[error("post-condition of `{plan}` is contradictory on atom `{atom}`")]
    ContradictoryPost { plan: String, atom: String },
    #[error("unknown world {0}")]
    UnknownWorld(u32),
    #[error("duplicate world {0}")]
    DuplicateWorld(u32),
    #[error("{what}: expected {expected} entries, found {found}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{order} order is not a preorder: {violation}")]
    InvalidOrder { order: char, violation: PreorderViolation },
    #[error("cannot evaluate formulas on an empty model")]
    EmptyModel,
    #[error("worlds {0} and {1} share a valuation")]
    NonInjectiveValuation(u32, u32),
    #[error("knowledge base is inconsistent")]
    InconsistentKnowledge,
    #[error("priority edge ({0}, {1}) refers to a missing node")]
    NodeOutOfRange(usize, usize),
    #[error("priority relation is cyclic through node {0}")]
    CyclicPriority(usize),
    #[error("duplicate priority node `{0}`")]
    DuplicateNode(String),
    #[error("intention `{plan}` is not consistent with the model: {conjunct} fails")]
    NotPConsistent {
        plan: String,
        conjunct: ConsistencyConjunct,
    },
}
