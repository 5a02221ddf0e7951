use thiserror::Error;

/// Errors raised by graph construction, labeling operators, orientation
/// moves, and enumeration caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("cycle graph on {0} vertex collapses to a self-loop")]
    CycleTooSmall(usize),

    #[error("Prufer entry {value} at position {position} out of range for {n} vertices")]
    PruferEntryOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("graph is not a forest")]
    NotAForest,

    #[error("vertices {u} and {v} lie in different components")]
    DisconnectedPair { u: usize, v: usize },

    #[error("{what} {requested} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("line {line}: {message}")]
    EdgeListLine { line: usize, message: String },

    #[error("expected {expected} labels, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("label {0} appears more than once")]
    DuplicateLabel(usize),

    #[error("cannot parse labeling: {0}")]
    LabelingSyntax(String),

    #[error("toggle labels must differ, got {0} twice")]
    ToggleLabelsEqual(usize),

    #[error("operator needs at least {needed} vertices, graph has {n}")]
    TooFewVertices { needed: usize, n: usize },

    #[error("h = {h} out of range 1..={max} for n = {n}")]
    HOutOfRange { h: usize, n: usize, max: usize },

    #[error("k = {k} out of range 0..={max} for n = {n}")]
    KOutOfRange { k: usize, n: usize, max: usize },

    #[error("slide path is empty")]
    EmptyPath,

    #[error("slide path repeats vertex {0}")]
    PathRepeatsVertex(usize),

    #[error("slide path step {u}-{v} is not an edge")]
    PathStepNotEdge { u: usize, v: usize },

    #[error("orientation bits {bits:#x} contain a directed cycle")]
    CyclicOrientation { bits: u64 },

    #[error("vertex {0} is neither a source nor a sink")]
    FlipIllegal(usize),

    #[error("double flip: vertex {0} is not a source")]
    DoubleFlipNotSource(usize),

    #[error("double flip: vertex {0} is not a sink")]
    DoubleFlipNotSink(usize),

    #[error("double flip: source and sink must differ, got {0} twice")]
    DoubleFlipSameVertex(usize),

    #[error("double flip: vertices {u} and {v} are adjacent")]
    DoubleFlipAdjacent { u: usize, v: usize },

    #[error("graph has {graph_n} vertices but labeling has {labeling_n}")]
    SizeMismatch { graph_n: usize, labeling_n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
