//! Classic pixel-value ordering: the maximum pixel carries one bit when it sits
//! exactly one above the second-ranked pixel, and is shifted up by one when the
//! gap is larger.

use crate::bits::BitPayload;
use crate::block::{BlockView, PredictionError};
use crate::codec::{raise, single_bit, BlockCodec, CodecId};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvoKind {
    /// e = 0, untouched.
    Identity,
    /// e = 1, carries the contained bit.
    Embedded(bool),
    /// e > 1, maximum raised by one.
    Shifted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvoBlockOutcome {
    pub kind: PvoKind,
    pub block: BlockView,
}

/// `x[γ(n)] - x[γ(n-1)]`. Panics on blocks with fewer than two pixels.
pub fn pvo_error(block: &BlockView) -> PredictionError {
    assert!(block.len() >= 2, "PVO needs at least two pixels");
    let rank = block.rank();
    let v = block.values();
    PredictionError(i32::from(v[rank.top()]) - i32::from(v[rank.second()]))
}

/// `bit` must be `Some` exactly when the prediction error is 1.
pub fn pvo_embed_block(block: &BlockView, bit: Option<bool>) -> Result<PvoBlockOutcome> {
    let e = pvo_error(block).value();
    let top = block.rank().top();
    let mut out = block.clone();
    let kind = match e {
        0 => {
            single_bit(bit.as_slice(), 0)?;
            PvoKind::Identity
        }
        1 => {
            let b = single_bit(bit.as_slice(), 1)?.unwrap_or_default();
            raise(out.values_mut(), top, u8::from(b))?;
            PvoKind::Embedded(b)
        }
        _ => {
            single_bit(bit.as_slice(), 0)?;
            raise(out.values_mut(), top, 1)?;
            PvoKind::Shifted
        }
    };
    Ok(PvoBlockOutcome { kind, block: out })
}

pub fn pvo_extract_block(block: &BlockView) -> (BlockView, Option<bool>) {
    let e = pvo_error(block).value();
    let top = block.rank().top();
    let mut out = block.clone();
    let bit = match e {
        0 => None,
        1 => Some(false),
        2 => {
            out.values_mut()[top] -= 1;
            Some(true)
        }
        _ => {
            out.values_mut()[top] -= 1;
            None
        }
    };
    (out, bit)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Pvo;

impl BlockCodec for Pvo {
    fn id(&self) -> CodecId {
        CodecId::Pvo
    }

    fn capacity(&self, block: &BlockView) -> usize {
        usize::from(pvo_error(block).value() == 1)
    }

    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView> {
        let bit = single_bit(chunk, self.capacity(block))?;
        Ok(pvo_embed_block(block, bit)?.block)
    }

    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)> {
        let (restored, bit) = pvo_extract_block(block);
        Ok((restored, BitPayload::new(bit.into_iter().collect())))
    }

    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError> {
        Some(pvo_error(block))
    }
}
