//! PVO-k: the θ tied maximum pixels move together and carry one bit when they
//! sit exactly one above the next level.

use crate::bits::BitPayload;
use crate::block::{BlockView, PredictionError};
use crate::codec::{raise, single_bit, BlockCodec, CodecId};
use crate::error::Result;

/// `O1 - O2`; `None` for single-level blocks, which are never modified.
pub fn pvok_error(block: &BlockView) -> Option<PredictionError> {
    block.order_statistics().top_gap().map(PredictionError)
}

fn raise_maxima(block: &BlockView, delta: u8) -> Result<BlockView> {
    let o1 = block.max();
    let mut out = block.clone();
    let values = out.values_mut();
    for pos in 0..values.len() {
        if values[pos] == o1 {
            raise(values, pos, delta)?;
        }
    }
    Ok(out)
}

/// `bit` must be `Some` exactly when the error is 1.
pub fn pvok_embed_block(block: &BlockView, bit: Option<bool>) -> Result<BlockView> {
    match pvok_error(block).map(PredictionError::value) {
        None => {
            single_bit(bit.as_slice(), 0)?;
            Ok(block.clone())
        }
        Some(1) => {
            let b = single_bit(bit.as_slice(), 1)?.unwrap_or_default();
            raise_maxima(block, u8::from(b))
        }
        Some(_) => {
            single_bit(bit.as_slice(), 0)?;
            raise_maxima(block, 1)
        }
    }
}

pub fn pvok_extract_block(block: &BlockView) -> (BlockView, Option<bool>) {
    let lower = |b: &BlockView| {
        let o1 = b.max();
        BlockView::new(b.values().iter().map(|&v| if v == o1 { v - 1 } else { v }).collect())
    };
    match pvok_error(block).map(PredictionError::value) {
        None => (block.clone(), None),
        Some(1) => (block.clone(), Some(false)),
        Some(2) => (lower(block), Some(true)),
        Some(_) => (lower(block), None),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Pvok;

impl BlockCodec for Pvok {
    fn id(&self) -> CodecId {
        CodecId::Pvok
    }

    fn capacity(&self, block: &BlockView) -> usize {
        usize::from(pvok_error(block) == Some(PredictionError(1)))
    }

    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView> {
        pvok_embed_block(block, single_bit(chunk, self.capacity(block))?)
    }

    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)> {
        let (restored, bit) = pvok_extract_block(block);
        Ok((restored, BitPayload::new(bit.into_iter().collect())))
    }

    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError> {
        pvok_error(block)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b<const N: usize>(v: [u8; N]) -> BlockView {
        BlockView::from(v)
    }

    #[test]
    fn error_examples() {
        assert_eq!(pvok_error(&b([7, 7, 7, 6])), Some(PredictionError(1)));
        assert_eq!(pvok_error(&b([9, 9, 5, 5])), Some(PredictionError(4)));
        assert_eq!(pvok_error(&b([5, 5, 5, 5])), None);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(pvok_embed_block(&b([7, 7, 7, 6]), Some(true)).unwrap(), b([8, 8, 8, 6]));
        assert_eq!(pvok_embed_block(&b([7, 7, 7, 6]), Some(false)).unwrap(), b([7, 7, 7, 6]));
        assert_eq!(pvok_embed_block(&b([9, 9, 5, 5]), None).unwrap(), b([10, 10, 5, 5]));
        assert_eq!(pvok_embed_block(&b([5, 5, 5, 5]), None).unwrap(), b([5, 5, 5, 5]));
        assert!(pvok_embed_block(&b([5, 5, 5, 5]), Some(true)).is_err());
    }

    #[test]
    fn extract_examples() {
        assert_eq!(pvok_extract_block(&b([8, 8, 8, 6])), (b([7, 7, 7, 6]), Some(true)));
        assert_eq!(pvok_extract_block(&b([7, 7, 7, 6])), (b([7, 7, 7, 6]), Some(false)));
        assert_eq!(pvok_extract_block(&b([10, 10, 5, 5])), (b([9, 9, 5, 5]), None));
    }

    #[test]
    fn overflow_is_signalled() {
        assert!(pvok_embed_block(&b([255, 255, 3, 3]), None).is_err());
    }

    #[test]
    fn multiplicity_of_maxima_is_preserved() {
        for values in crate::oracle::all_blocks(4, 6) {
            let x = BlockView::new(values);
            let bits: &[Option<bool>] = if Pvok.capacity(&x) == 1 {
                &[Some(false), Some(true)]
            } else {
                &[None]
            };
            for &bit in bits {
                let y = pvok_embed_block(&x, bit).unwrap();
                assert_eq!(
                    x.order_statistics().theta(),
                    y.order_statistics().theta(),
                    "{x:?} -> {y:?}"
                );
            }
        }
    }

    #[test]
    fn error_map_is_injective() {
        let mut outs = Vec::new();
        for (x, bit) in [(b([7, 6]), Some(false)), (b([7, 6]), Some(true))] {
            outs.push(pvok_error(&pvok_embed_block(&x, bit).unwrap()).unwrap().value());
        }
        for gap in 2..10u8 {
            let x = b([10 + gap, 10]);
            outs.push(pvok_error(&pvok_embed_block(&x, None).unwrap()).unwrap().value());
        }
        let mut dedup = outs.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), outs.len(), "{outs:?}");
        assert_eq!(&outs[..3], &[1, 2, 3]);
    }
}
