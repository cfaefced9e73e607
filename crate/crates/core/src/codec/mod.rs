//! Block codecs.
//!
//! Each codec lives in its own module as a set of free functions working on a
//! single [`BlockView`]. [`BlockCodec`] wraps them behind one interface so the
//! pipeline and the oracle can treat all four uniformly.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitPayload;
use crate::block::{BlockView, PredictionError};
use crate::error::{Error, Result};

pub mod ipvo;
pub mod ppvok;
pub mod pvo;
pub mod pvok;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodecId {
    Pvo,
    Ipvo,
    Pvok,
    Ppvok,
}

impl CodecId {
    pub const ALL: [CodecId; 4] = [CodecId::Pvo, CodecId::Ipvo, CodecId::Pvok, CodecId::Ppvok];

    pub fn name(self) -> &'static str {
        match self {
            CodecId::Pvo => "PVO",
            CodecId::Ipvo => "IPVO",
            CodecId::Pvok => "PVOK",
            CodecId::Ppvok => "PPVOK",
        }
    }

    /// The largest amount any pixel can be raised by embedding.
    pub fn lift(self) -> u8 {
        match self {
            CodecId::Ppvok => 2,
            _ => 1,
        }
    }

    pub fn codec(self) -> &'static dyn BlockCodec {
        match self {
            CodecId::Pvo => &pvo::Pvo,
            CodecId::Ipvo => &ipvo::Ipvo,
            CodecId::Pvok => &pvok::Pvok,
            CodecId::Ppvok => &ppvok::Ppvok,
        }
    }
}

impl fmt::Display for CodecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodecId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "pvo" => Ok(CodecId::Pvo),
            "ipvo" => Ok(CodecId::Ipvo),
            "pvok" => Ok(CodecId::Pvok),
            "ppvok" => Ok(CodecId::Ppvok),
            _ => Err(Error::Metadata(format!("unknown codec {s:?}"))),
        }
    }
}

/// Uniform block-level interface over the four codecs.
pub trait BlockCodec: Send + Sync {
    fn id(&self) -> CodecId;

    /// Bits the (unmodified) block can carry; 0 for ineligible blocks.
    fn capacity(&self, block: &BlockView) -> usize;

    /// Embeds `chunk`, whose length must equal [`BlockCodec::capacity`].
    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView>;

    /// Recovers the original block and the bits it carried.
    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)>;

    /// Prediction error as the decoder sees it; `None` where the codec leaves it undefined.
    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError>;

    fn lift(&self) -> u8 {
        self.id().lift()
    }
}

pub(crate) fn raise(values: &mut [u8], pos: usize, delta: u8) -> Result<()> {
    let value = values[pos];
    values[pos] = value
        .checked_add(delta)
        .ok_or(Error::Overflow { value, delta })?;
    Ok(())
}

pub(crate) fn single_bit(chunk: &[bool], expected: usize) -> Result<Option<bool>> {
    if chunk.len() != expected {
        return Err(Error::ChunkLength {
            expected,
            given: chunk.len(),
        });
    }
    Ok(chunk.first().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codec_names_parse() {
        for id in CodecId::ALL {
            assert_eq!(id.name().parse::<CodecId>().unwrap(), id);
            assert_eq!(id.codec().id(), id);
        }
        assert_eq!("ppvo-k".parse::<CodecId>().unwrap(), CodecId::Ppvok);
        assert!("lsb".parse::<CodecId>().is_err());
    }
}
