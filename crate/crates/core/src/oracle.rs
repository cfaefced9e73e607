//! Brute-force verification of the codecs and the pipeline.
//!
//! Everything here is written against the raw pixel values only: prediction
//! errors, exclusion, and chunk assignment are recomputed with plain loops and
//! never call into the production branch logic. The only production code
//! exercised is the [`BlockCodec`] under test.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::BitPayload;
use crate::block::{BlockView, PredictionError};
use crate::codec::{ppvok::Ppvok, BlockCodec, CodecId};
use crate::error::{Error, Result};
use crate::image::{BlockGeometry, GrayImage};

/// Every block of `n` pixels with values in `0..range`, in lexicographic order
/// (first pixel varies fastest).
pub fn all_blocks(n: usize, range: u8) -> impl Iterator<Item = Vec<u8>> {
    let r = usize::from(range);
    let total = r.pow(n as u32);
    (0..total).map(move |k| decode_index(k, n, r))
}

fn decode_index(mut k: usize, n: usize, r: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in &mut v {
        *slot = (k % r) as u8;
        k /= r;
    }
    v
}

/// All chunks of `len` bits, counting up in binary with the first bit most significant.
pub fn all_chunks(len: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << len).map(move |m| (0..len).map(|i| (m >> (len - 1 - i)) & 1 == 1).collect())
}

/// Prediction error of a stego block recomputed from scratch.
///
/// `None` only for PVO-k single-level blocks.
pub fn reference_error(codec: CodecId, values: &[u8]) -> Option<i32> {
    let max = *values.iter().max()?;
    let mut distinct: Vec<u8> = values.to_vec();
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    match codec {
        CodecId::Pvo => {
            // remove one copy of the maximum, take the max of the rest
            let top = values.iter().rposition(|&v| v == max)?;
            let rest = values.iter().enumerate().filter(|&(i, _)| i != top).map(|(_, &v)| v).max()?;
            Some(i32::from(max) - i32::from(rest))
        }
        CodecId::Ipvo => {
            let top = values.iter().rposition(|&v| v == max)?;
            let second_value = values.iter().enumerate().filter(|&(i, _)| i != top).map(|(_, &v)| v).max()?;
            let second = (0..values.len()).rev().find(|&i| i != top && values[i] == second_value)?;
            let (u, v) = (top.min(second), top.max(second));
            Some(i32::from(values[u]) - i32::from(values[v]))
        }
        CodecId::Pvok => (distinct.len() > 1).then(|| i32::from(distinct[0]) - i32::from(distinct[1])),
        CodecId::Ppvok => Some(if distinct.len() > 1 {
            i32::from(distinct[0]) - i32::from(distinct[1])
        } else {
            0
        }),
    }
}

/// Stego errors that only embedded (data-carrying) blocks may produce.
pub fn is_carrier_code(codec: CodecId, stego_error: Option<i32>) -> bool {
    match (codec, stego_error) {
        (CodecId::Pvo | CodecId::Pvok, Some(e)) => (1..=2).contains(&e),
        (CodecId::Ipvo, Some(e)) => (-1..=2).contains(&e),
        (CodecId::Ppvok, Some(e)) => (1..=3).contains(&e),
        (_, None) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub codec: CodecId,
    pub block: Vec<u8>,
    pub payload: BitPayload,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "codec={} block={:?} payload={} reason={}",
            self.codec,
            self.block,
            if self.payload.is_empty() { "-".to_string() } else { self.payload.to_string() },
            self.reason
        )
    }
}

/// Outcome of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub codec: CodecId,
    /// Number of (block, payload) pairs checked.
    pub cases: usize,
    pub failure_count: usize,
    /// The first few failures in enumeration order.
    pub failures: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const KEPT_FAILURES: usize = 8;

/// Checks one (block, payload) pair: round trip, distortion bound, and that the
/// stego error lands on the right side of the carrier/non-carrier partition.
pub fn check_case(codec: &dyn BlockCodec, block: &[u8], chunk: &[bool]) -> std::result::Result<(), String> {
    let id = codec.id();
    let x = BlockView::new(block.to_vec());
    let y = codec.embed(&x, chunk).map_err(|e| format!("embed failed: {e}"))?;
    let (restored, bits) = codec.extract(&y).map_err(|e| format!("extract failed: {e}"))?;
    if restored != x {
        return Err(format!("restored {:?} from stego {:?}", restored.values(), y.values()));
    }
    if bits.bits() != chunk {
        return Err(format!("extracted bits {bits} from stego {:?}", y.values()));
    }

    let max = *block.iter().max().expect("non-empty block");
    let mut changed = 0;
    for (i, (&a, &b)) in block.iter().zip(y.values()).enumerate() {
        if b < a || b - a > id.lift() {
            return Err(format!("pixel {i} moved {a} -> {b}"));
        }
        if a != b {
            changed += 1;
            if a != max {
                return Err(format!("non-maximum pixel {i} modified"));
            }
        }
    }
    if matches!(id, CodecId::Pvo | CodecId::Ipvo) && changed > 1 {
        return Err(format!("{changed} pixels modified"));
    }

    let stego_error = reference_error(id, y.values());
    if is_carrier_code(id, stego_error) != !chunk.is_empty() {
        return Err(format!(
            "stego error {stego_error:?} on the wrong side of the carrier partition"
        ));
    }
    Ok(())
}

fn check_block(codec: &dyn BlockCodec, block: &[u8]) -> (usize, Vec<Counterexample>) {
    let cap = codec.capacity(&BlockView::new(block.to_vec()));
    let mut cases = 0;
    let mut failures = Vec::new();
    for chunk in all_chunks(cap) {
        cases += 1;
        if let Err(reason) = check_case(codec, block, &chunk) {
            failures.push(Counterexample {
                codec: codec.id(),
                block: block.to_vec(),
                payload: BitPayload::new(chunk),
                reason,
            });
        }
    }
    (cases, failures)
}

fn aggregate(codec: CodecId, results: Vec<(usize, Vec<Counterexample>)>) -> CheckReport {
    let mut report = CheckReport {
        codec,
        cases: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for (cases, failures) in results {
        report.cases += cases;
        report.failure_count += failures.len();
        for f in failures {
            if report.failures.len() < KEPT_FAILURES {
                report.failures.push(f);
            }
        }
    }
    report
}

/// Every block of `n` pixels over `0..range` with every legal payload.
///
/// `range` must keep `range - 1 + lift <= 255` so no block overflows.
pub fn exhaustive_block_check(codec: &dyn BlockCodec, n: usize, range: u8) -> CheckReport {
    let r = usize::from(range);
    let total = r.pow(n as u32);
    let results: Vec<_> = (0..total)
        .into_par_iter()
        .map(|k| check_block(codec, &decode_index(k, n, r)))
        .collect();
    aggregate(codec.id(), results)
}

/// `cases` random blocks of 4, 6, or 9 pixels drawn in narrow value windows so
/// ties and unit gaps are frequent, each with a random legal payload.
pub fn randomized_block_check(codec: &dyn BlockCodec, cases: usize, seed: u64) -> CheckReport {
    let ceiling = 255 - codec.lift();
    let results: Vec<_> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let n = [4, 6, 9][rng.gen_range(0..3)];
            let spread: u8 = rng.gen_range(1..=8);
            let base = rng.gen_range(0..=ceiling - spread);
            let block: Vec<u8> = (0..n).map(|_| base + rng.gen_range(0..=spread)).collect();
            let cap = codec.capacity(&BlockView::new(block.clone()));
            let chunk: Vec<bool> = (0..cap).map(|_| rng.gen()).collect();
            match check_case(codec, &block, &chunk) {
                Ok(()) => (1, Vec::new()),
                Err(reason) => (
                    1,
                    vec![Counterexample {
                        codec: codec.id(),
                        block,
                        payload: BitPayload::new(chunk),
                        reason,
                    }],
                ),
            }
        })
        .collect();
    aggregate(codec.id(), results)
}

/// PPVO-k with the all-zero and all-one decode branches swapped. A fault-injection
/// fixture for the verification harness; never use it to hide data.
#[derive(Clone, Copy, Debug, Default)]
pub struct SwappedDecodeTable;

impl BlockCodec for SwappedDecodeTable {
    fn id(&self) -> CodecId {
        CodecId::Ppvok
    }

    fn capacity(&self, block: &BlockView) -> usize {
        Ppvok.capacity(block)
    }

    fn embed(&self, block: &BlockView, chunk: &[bool]) -> Result<BlockView> {
        Ppvok.embed(block, chunk)
    }

    fn extract(&self, block: &BlockView) -> Result<(BlockView, BitPayload)> {
        let o1 = block.max();
        let theta = block.values().iter().filter(|&&v| v == o1).count();
        let lowered = |d: u8| BlockView::new(block.values().iter().map(|&v| if v == o1 { v - d } else { v }).collect());
        match reference_error(CodecId::Ppvok, block.values()) {
            Some(2) => Ok((lowered(2), BitPayload::new(vec![true; theta]))),
            Some(3) => Ok((lowered(1), BitPayload::zeros(theta))),
            _ => Ppvok.extract(block),
        }
    }

    fn prediction_error(&self, block: &BlockView) -> Option<PredictionError> {
        Ppvok.prediction_error(block)
    }
}

/// Sequential re-implementation of [`crate::pipeline::embed_image`].
pub fn naive_pipeline_recompose(
    image: &GrayImage,
    payload: &BitPayload,
    codec: CodecId,
    geometry: BlockGeometry,
) -> Result<GrayImage> {
    let (bw, bh) = (geometry.block_w(), geometry.block_h());
    let (nx, ny) = (image.width() / bw, image.height() / bh);
    if nx == 0 || ny == 0 {
        return Err(Error::ImageTooSmall {
            image_w: image.width(),
            image_h: image.height(),
            block_w: bw,
            block_h: bh,
        });
    }
    let ceiling: u8 = match codec {
        CodecId::Ppvok => 253,
        CodecId::Pvo | CodecId::Ipvo | CodecId::Pvok => 254,
    };
    let block_codec = codec.codec();

    let mut origins = Vec::new();
    for by in 0..ny {
        for bx in 0..nx {
            origins.push((bx * bw, by * bh));
        }
    }
    let read = |img: &GrayImage, (ox, oy): (usize, usize)| {
        let mut v = Vec::new();
        for y in oy..oy + bh {
            for x in ox..ox + bw {
                v.push(img.get(x, y));
            }
        }
        v
    };

    let mut total = 0;
    for &o in &origins {
        let v = read(image, o);
        if v.iter().all(|&p| p <= ceiling) {
            total += block_codec.capacity(&BlockView::new(v));
        }
    }
    if payload.len() > total {
        return Err(Error::CapacityExceeded {
            requested: payload.len(),
            capacity: total,
        });
    }

    let mut out = image.clone();
    let mut next = 0;
    for &o in &origins {
        if next >= payload.len() {
            break;
        }
        let v = read(image, o);
        if v.iter().any(|&p| p > ceiling) {
            continue;
        }
        let block = BlockView::new(v);
        let cap = block_codec.capacity(&block);
        let mut chunk = Vec::with_capacity(cap);
        for _ in 0..cap {
            chunk.push(payload.bits().get(next).copied().unwrap_or(false));
            next += 1;
        }
        let stego = block_codec.embed(&block, &chunk)?;
        let (ox, oy) = o;
        let mut it = stego.values().iter();
        for y in oy..oy + bh {
            for x in ox..ox + bw {
                out.set(x, y, *it.next().expect("block size"));
            }
        }
    }
    Ok(out)
}
