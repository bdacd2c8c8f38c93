use alloc::string::String;

use crate::partition::PartitionDefect;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(String, String),
    #[error("graph has {0} vertices; at most 63 are supported")]
    TooManyVertices(usize),
    #[error("arguments must be distinct")]
    EqualArguments,
    #[error("invalid Whitehead partition: {0:?}")]
    InvalidPartition(PartitionDefect),
    #[error("generator is not in max(P)")]
    NotMaximal,
    #[error("partitions {0} and {1} are not compatible")]
    Incompatible(usize, usize),
    #[error("collection has {0} partitions; at most 64 are supported")]
    CollectionTooLarge(usize),
    #[error("partition is not a member of the collection")]
    PartitionNotInCollection,
    #[error("label does not occur in the complex")]
    LabelAbsent,
    #[error("edge is not labeled by the requested vertex")]
    WrongEdgeLabel,
    #[error("vertex set is not a maximal clique")]
    NotMaximalClique,
    #[error("tori share no vertex")]
    NoCommonVertex,
    #[error("vertex is not twist-dominant")]
    NotTwistDominant,
    #[error("label order does not extend the twist order")]
    InvalidOrder,
    #[error("structure does not match the complex: {0}")]
    StructureMismatch(&'static str),
    #[error("straightening radicand is nonpositive in cube {cube} column {column}")]
    RadicandNonPositive { cube: usize, column: usize },
    #[error("isometry acts nontrivially on H_1")]
    NontrivialH1,
    #[error("blowup construction failed: {0}")]
    Construction(&'static str),
    #[error("malformed word: {0}")]
    ParseWord(String),
}
