use crate::label::Label;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Label),
    #[error("edge endpoint {endpoint} outside vertex range 1..={n1}")]
    EndpointOutOfRange { endpoint: Label, n1: u32 },
    #[error("graph is disconnected: component at label {component} does not reach {unreached}")]
    Disconnected { component: Label, unreached: Label },
    #[error("vertex count must be at least 1")]
    EmptyGraph,
    #[error("not a tree: expected {expected} edges for {vertices} vertices, found {found}")]
    EdgeCountMismatch {
        vertices: usize,
        expected: usize,
        found: usize,
    },
    #[error("not a tree: cycle through vertex {0}")]
    CycleInTree(Label),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(Label),
    #[error("tree has fewer than two vertices")]
    TreeTooSmall,
    #[error("merging replicas produced a self-loop at {0}: corrupted g-tree")]
    CorruptGTree(Label),
    #[error("g-tree base labels do not cover 1..={n1}: missing {missing}")]
    BaseLabelGap { n1: u32, missing: u32 },
    #[error("inconsistent code: replica {replica} has base above inferred n1 = {n1}")]
    ReplicaBaseOutOfRange { replica: Label, n1: u32 },
    #[error("inconsistent code: replica set for base {base} skips index {missing}")]
    ReplicaIndexGap { base: u32, missing: u32 },
    #[error("inconsistent code: replica labels present in a two-vertex code")]
    ReplicaInTrivialCode,
    #[error("malformed code: no pendant candidate left at token {position}")]
    PendantExhausted { position: usize },
    #[error("malformed code: final pendant pair not found")]
    NoFinalPair,
    #[error("enumeration size {0} outside supported range 2..=8")]
    EnumerationOutOfRange(u32),
    #[error("directed cycle detected: {}", format_cycle(.witness))]
    DirectedCycle { witness: Vec<Label> },
    #[error("scheme {scheme} requires directed input")]
    DirectionsRequired { scheme: &'static str },
    #[error("cannot resolve code position {position} to a source edge")]
    EdgeResolution { position: usize },
    #[error("junction marks in file disagree with recomputed marks at token {position}")]
    JunctionMarkMismatch { position: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("code file error at byte {offset}: {message}")]
    CodeFile { offset: usize, message: String },
    #[error("start vertex {0} not present in graph")]
    StartVertexMissing(Label),
    #[error("input graph has cycles; method `none` requires a tree")]
    NotATreeInput,
}

fn format_cycle(witness: &[Label]) -> String {
    witness
        .iter()
        .map(Label::to_string)
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;
