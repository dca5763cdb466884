use thiserror::Error;

use crate::io::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("dangling endpoint: arrow `{label}` refers to vertex {index}, but the quiver has {count} vertices")]
    DanglingEndpoint {
        label: String,
        index: usize,
        count: usize,
    },
    #[error("duplicate arrow label `{0}`")]
    DuplicateLabel(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("truncation bound L must be at least 1, got {0}")]
    InvalidLoewyBound(usize),
    #[error("layer index {layer} is outside 0..={bound}")]
    LayerOutOfRange { layer: usize, bound: usize },
    #[error("path of length {length} is zero in the algebra (L = {bound})")]
    PathTooLong { length: usize, bound: usize },
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("sequence shape {found_rows}x{found_cols} does not match expected {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("sequence is not realizable as a radical layering")]
    NotRealizable,
    #[error("sequence not embeddable in projective cover layers at vertex {vertex}, layer {layer}")]
    NotEmbeddable { vertex: usize, layer: usize },
    #[error("enumeration cap exceeded: total dimension {dimension} > {cap}")]
    CapExceeded { dimension: u64, cap: u64 },
    #[error("arithmetic overflow while counting paths")]
    Overflow,
    #[error("{0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
