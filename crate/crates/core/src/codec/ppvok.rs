//! PPVO-k: every first-order pixel of an eligible block carries a bit.
//!
//! A block is eligible when its first-order value `O1` sits exactly one above
//! the second-order value `O2`. Its θ first-order pixels then carry a chunk of
//! θ bits, encoded by the chunk's class:
//!
//! | chunk       | edit                                   | stego error |
//! |-------------|----------------------------------------|-------------|
//! | all zeros   | every first-order pixel `+1`           | 2           |
//! | all ones    | every first-order pixel `+2`           | 3           |
//! | mixed       | i-th first-order pixel (by index) `+b_i` | 1         |
//!
//! Ineligible blocks with `e >= 2` shift all first-order pixels by `+2`, which
//! lands their stego error at `e + 2 >= 4`. Single-level blocks are left alone
//! (error 0). The stego error therefore separates embedded blocks {1, 2, 3}
//! from the rest {0} ∪ [4, ∞).
//!
//! Decoding a mixed block gathers the pixels holding the two top values (the
//! original first-order pixels, now at `O1 + 1` and `O1`) and compares each
//! against their mean: above the mean reads as 1, below as 0.

use crate::bits::{classify_chunk, BitPayload, ChunkClass};
use crate::block::{BlockView, PredictionError};
use crate::codec::{raise, BlockCodec, CodecId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PpvokBlockPlan {
    /// Number of first-order pixels.
    pub theta: usize,
    pub o1: u8,
    pub o2: Option<u8>,
    /// `O1 - O2`, 0 for single-level blocks.
    pub e: PredictionError,
    pub eligible: bool,
    /// Bits this block carries: θ when eligible, else 0.
    pub chunk_len: usize,
}

pub fn ppvok_plan(block: &BlockView) -> PpvokBlockPlan {
    assert!(block.len() >= 2, "PPVO-k needs at least two pixels");
    let stats = block.order_statistics();
    let e = stats.top_gap().unwrap_or(0);
    let eligible = e == 1;
    PpvokBlockPlan {
        theta: stats.theta(),
        o1: stats.o1(),
        o2: stats.o2(),
        e: PredictionError(e),
        eligible,
        chunk_len: if eligible { stats.theta() } else { 0 },
    }
}

/// Positions holding a value `>= floor`, ascending by index.
pub fn theta_index_order(block: &BlockView, floor: u8) -> Vec<usize> {
    block
        .values()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v >= floor)
        .map(|(i, _)| i)
        .collect()
}

/// `chunk` must be `Some` with exactly θ bits iff the block is eligible.
pub fn ppvok_embed_block(block: &BlockView, chunk: Option<&[bool]>) -> Result<BlockView> {
    let plan = ppvok_plan(block);
    let given = chunk.map_or(0, <[bool]>::len);
    if given != plan.chunk_len || (plan.eligible && chunk.is_none()) {
        return Err(Error::ChunkLength {
            expected: plan.chunk_len,
            given,
        });
    }
    let first_order = theta_index_order(block, plan.o1);
    let mut out = block.clone();
    let values = out.values_mut();
    match (plan.e.value(), chunk) {
        (0, _) => {}
        (1, Some(bits)) => match classify_chunk(bits)? {
            ChunkClass::AllZero => first_order.iter().try_for_each(|&p| raise(values, p, 1))?,
            ChunkClass::AllOne => first_order.iter().try_for_each(|&p| raise(values, p, 2))?,
            ChunkClass::Mixed => first_order
                .iter()
                .zip(bits)
                .try_for_each(|(&p, &bit)| raise(values, p, u8::from(bit)))?,
        },
        _ => first_order.iter().try_for_each(|&p| raise(values, p, 2))?,
    }
    Ok(out)
}

/// Stego-side error: `O1 - O2` of the received block, 0 for a single level.
pub fn ppvok_stego_error(block: &BlockView) -> PredictionError {
    PredictionError(block.order_statistics().top_gap().unwrap_or(0))
}

pub fn ppvok_extract_block(block: &BlockView) -> Result<(BlockView, Option<BitPayload>)> {
    let stats = block.order_statistics();
    let stego_e = stats.top_gap().unwrap_or(0);
    let o1 = stats.o1();
    let lower_first_order = |delta: u8| {
        BlockView::new(
            block
                .values()
                .iter()
                .map(|&v| if v == o1 { v - delta } else { v })
                .collect(),
        )
    };
    match stego_e {
        0 => Ok((block.clone(), None)),
        2 => Ok((lower_first_order(1), Some(BitPayload::zeros(stats.theta())))),
        3 => Ok((
            lower_first_order(2),
            Some(BitPayload::new(vec![true; stats.theta()])),
        )),
        1 => extract_mixed(block, stats.levels()[1]),
        // shifted, original error is stego_e - 2
        _ => Ok((lower_first_order(2), None)),
    }
}

fn extract_mixed(block: &BlockView, second_level: u8) -> Result<(BlockView, Option<BitPayload>)> {
    let gathered = theta_index_order(block, second_level);
    let values = block.values();
    let sum: u32 = gathered.iter().map(|&p| u32::from(values[p])).sum();
    let count = gathered.len() as u32;
    let mut out = block.clone();
    let mut bits = BitPayload::empty();
    for &p in &gathered {
        // v vs mean, compared as v * count vs sum
        let scaled = u32::from(values[p]) * count;
        if scaled > sum {
            bits.push(true);
            out.values_mut()[p] -= 1;
        } else if scaled < sum {
            bits.push(false);
        } else {
            return Err(Error::MalformedBlock {
                values: values.to_vec(),
                reason: "pixel equals the first-order mean",
            });
        }
    }
    Ok((out, Some(bits)))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Ppvok;

impl BlockCodec for Ppvok {
    fn id(&self) -> CodecId {
        CodecId::Ppvok
    }

    fn capacity(&self, block: &BlockView) -> usize {
        ppvok_plan(block).chunk_len
    }

    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView> {
        let chunk = (!chunk.is_empty() || ppvok_plan(block).eligible).then_some(chunk);
        ppvok_embed_block(block, chunk)
    }

    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)> {
        let (restored, bits) = ppvok_extract_block(block)?;
        Ok((restored, bits.unwrap_or_default()))
    }

    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError> {
        Some(ppvok_stego_error(block))
    }
}
