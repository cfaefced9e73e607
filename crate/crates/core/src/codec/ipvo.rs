//! Improved PVO: the prediction error takes the spatial order of the two
//! top-ranked pixels into account, so blocks with a tied maximum (e = 0) carry
//! a bit as well.
//!
//! The physical edit is always an increment of the maximum-ranked pixel; the
//! sign of the error only records which of the two pixels comes first.

use crate::bits::BitPayload;
use crate::block::{BlockView, PredictionError};
use crate::codec::{raise, single_bit, BlockCodec, CodecId};
use crate::error::Result;

/// Index-aware prediction error. `u < v` are 0-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IpvoError {
    pub u: usize,
    pub v: usize,
    pub e: PredictionError,
}

pub fn ipvo_error(block: &BlockView) -> IpvoError {
    assert!(block.len() >= 2, "IPVO needs at least two pixels");
    let rank = block.rank();
    let (a, b) = (rank.top(), rank.second());
    let (u, v) = (a.min(b), a.max(b));
    let x = block.values();
    IpvoError {
        u,
        v,
        e: PredictionError(i32::from(x[u]) - i32::from(x[v])),
    }
}

/// `bit` must be `Some` exactly when the error is 0 or 1.
pub fn ipvo_embed_block(block: &BlockView, bit: Option<bool>) -> Result<BlockView> {
    let e = ipvo_error(block).e.value();
    let top = block.rank().top();
    let delta = match e {
        0 | 1 => u8::from(single_bit(bit.as_slice(), 1)?.unwrap_or_default()),
        _ => {
            single_bit(bit.as_slice(), 0)?;
            1
        }
    };
    let mut out = block.clone();
    raise(out.values_mut(), top, delta)?;
    Ok(out)
}

pub fn ipvo_extract_block(block: &BlockView) -> (BlockView, Option<bool>) {
    let stego_e = ipvo_error(block).e.value();
    let top = block.rank().top();
    let (bit, lowered) = match stego_e {
        0 => (Some(false), false),
        -1 => (Some(true), true),
        1 => (Some(false), false),
        2 => (Some(true), true),
        // ẽ <= -2 or ẽ > 2: a shifted block
        _ => (None, true),
    };
    let mut out = block.clone();
    if lowered {
        out.values_mut()[top] -= 1;
    }
    (out, bit)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Ipvo;

impl BlockCodec for Ipvo {
    fn id(&self) -> CodecId {
        CodecId::Ipvo
    }

    fn capacity(&self, block: &BlockView) -> usize {
        usize::from(matches!(ipvo_error(block).e.value(), 0 | 1))
    }

    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView> {
        ipvo_embed_block(block, single_bit(chunk, self.capacity(block))?)
    }

    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)> {
        let (restored, bit) = ipvo_extract_block(block);
        Ok((restored, BitPayload::new(bit.into_iter().collect())))
    }

    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError> {
        Some(ipvo_error(block).e)
    }
}
