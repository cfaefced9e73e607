use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid block geometry {w}x{h}: a block needs at least two pixels")]
    InvalidGeometry { w: usize, h: usize },

    #[error("image too small for geometry: {image_w}x{image_h} image, {block_w}x{block_h} blocks")]
    ImageTooSmall {
        image_w: usize,
        image_h: usize,
        block_w: usize,
        block_h: usize,
    },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("empty chunk")]
    EmptyChunk,

    /// The codec was handed a payload that does not match the block's capacity.
    #[error("block carries {expected} bit(s) but {given} were supplied")]
    ChunkLength { expected: usize, given: usize },

    #[error("pixel overflow: value {value} cannot be raised by {delta}")]
    Overflow { value: u8, delta: u8 },

    #[error("malformed stego block {values:?}: {reason}")]
    MalformedBlock { values: Vec<u8>, reason: &'static str },

    #[error("payload of {requested} bits exceeds capacity={capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("integrity check failed: expected checksum {expected:016x}, restored {actual:016x}")]
    Integrity { expected: u64, actual: u64 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("metadata error: {0}")]
    Metadata(String),

    #[error("{0}")]
    Report(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
