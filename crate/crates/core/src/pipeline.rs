//! Image-level embedding, extraction, and capacity analysis.
//!
//! Blocks are visited in partition order. Blocks whose maximum could overflow
//! are excluded up front through a [`LocationMap`], which travels with the
//! rest of the auxiliary data in [`EmbedMetadata`] rather than inside the
//! image. Embedding stops after the block in which the payload runs out; every
//! block past that prefix is left untouched.
//!
//! Per-block work runs on the rayon pool. Chunk offsets are fixed by a
//! sequential scan over the partition first, so the output is byte-identical to
//! a sequential run.

use rayon::prelude::*;

use crate::bits::BitPayload;
use crate::block::BlockView;
use crate::codec::CodecId;
use crate::error::{Error, Result};
use crate::image::{partition, BlockGeometry, BlockPartition, GrayImage};
use crate::metrics::psnr;

/// Seed for the payload used to measure PSNR at maximum capacity.
pub const MAX_PAYLOAD_SEED: u64 = 0;

/// One bit per block in partition order; `true` marks a block excluded for overflow risk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocationMap {
    excluded: Vec<bool>,
}

impl LocationMap {
    pub fn new(excluded: Vec<bool>) -> Self {
        Self { excluded }
    }

    pub fn all_included(len: usize) -> Self {
        Self::new(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.excluded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn is_excluded(&self, block: usize) -> bool {
        self.excluded[block]
    }

    pub fn exclude(&mut self, block: usize) {
        self.excluded[block] = true;
    }

    pub fn excluded_count(&self) -> usize {
        self.excluded.iter().filter(|&&x| x).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.excluded
    }
}

/// Auxiliary data needed to extract a payload and restore the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedMetadata {
    pub codec: CodecId,
    pub geometry: BlockGeometry,
    pub image_w: usize,
    pub image_h: usize,
    pub payload_bit_length: usize,
    pub processed_block_count: usize,
    pub location_map: LocationMap,
    /// FNV-1a 64 of the carrier's pixel bytes.
    pub carrier_checksum: u64,
}

/// Maximum single-pass capacity of one codec on one image.
#[derive(Clone, Debug, PartialEq)]
pub struct CapacityReport {
    pub codec: CodecId,
    /// Free-form image label, used as the `image` column of CSV reports.
    pub image: String,
    pub geometry: BlockGeometry,
    pub capacity_bits: usize,
    /// Non-excluded blocks with non-zero capacity.
    pub eligible_blocks: usize,
    pub excluded_blocks: usize,
    /// PSNR of the carrier against a stego image holding `capacity_bits` random bits.
    pub psnr_at_max: f64,
}

impl CapacityReport {
    pub fn with_image(mut self, image: impl Into<String>) -> Self {
        self.image = image.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub best: BlockGeometry,
    pub reports: Vec<CapacityReport>,
}

impl SweepResult {
    pub fn best_report(&self) -> &CapacityReport {
        self.reports
            .iter()
            .find(|r| r.geometry == self.best)
            .expect("best geometry has a report")
    }
}

fn read_blocks(image: &GrayImage, part: &BlockPartition) -> Vec<BlockView> {
    (0..part.len())
        .into_par_iter()
        .map(|i| image.read_block(part.origin(i), part.geometry()))
        .collect()
}

fn map_for_blocks(blocks: &[BlockView], codec: CodecId) -> LocationMap {
    let ceiling = 255 - codec.lift();
    LocationMap::new(blocks.par_iter().map(|b| b.max() > ceiling).collect())
}

pub fn build_location_map(
    image: &GrayImage,
    geometry: BlockGeometry,
    codec: CodecId,
) -> Result<LocationMap> {
    let part = partition(image, geometry)?;
    Ok(map_for_blocks(&read_blocks(image, &part), codec))
}

fn block_capacities(blocks: &[BlockView], codec: CodecId, map: &LocationMap) -> Vec<usize> {
    let c = codec.codec();
    blocks
        .par_iter()
        .enumerate()
        .map(|(i, b)| if map.is_excluded(i) { 0 } else { c.capacity(b) })
        .collect()
}

/// Capacity under an explicit location map, which must cover the partition.
pub fn capacity_with_map(
    image: &GrayImage,
    codec: CodecId,
    geometry: BlockGeometry,
    map: &LocationMap,
) -> Result<usize> {
    let part = partition(image, geometry)?;
    check_map_len(map, &part)?;
    let blocks = read_blocks(image, &part);
    Ok(block_capacities(&blocks, codec, map).iter().sum())
}

fn check_map_len(map: &LocationMap, part: &BlockPartition) -> Result<()> {
    if map.len() != part.len() {
        return Err(Error::DimensionMismatch(format!(
            "location map covers {} blocks, partition has {}",
            map.len(),
            part.len()
        )));
    }
    Ok(())
}

pub fn capacity(image: &GrayImage, codec: CodecId, geometry: BlockGeometry) -> Result<CapacityReport> {
    let part = partition(image, geometry)?;
    let blocks = read_blocks(image, &part);
    let map = map_for_blocks(&blocks, codec);
    let caps = block_capacities(&blocks, codec, &map);
    let capacity_bits = caps.iter().sum();
    let payload = BitPayload::random(capacity_bits, MAX_PAYLOAD_SEED);
    let (stego, _) = embed_image(image, &payload, codec, geometry)?;
    Ok(CapacityReport {
        codec,
        image: String::new(),
        geometry,
        capacity_bits,
        eligible_blocks: caps.iter().filter(|&&c| c > 0).count(),
        excluded_blocks: map.excluded_count(),
        psnr_at_max: psnr(image, &stego)?,
    })
}

/// Picks the geometry with the largest capacity. Ties go to the smaller block
/// area, then to geometries with `block_w <= block_h`, then to the earlier candidate.
/// Candidates larger than the image are skipped.
pub fn sweep_block_sizes(
    image: &GrayImage,
    codec: CodecId,
    candidates: &[BlockGeometry],
) -> Result<SweepResult> {
    let mut reports = Vec::with_capacity(candidates.len());
    for &g in candidates {
        match capacity(image, codec, g) {
            Ok(r) => reports.push(r),
            Err(Error::ImageTooSmall { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let best = reports
        .iter()
        .min_by_key(|r| {
            let g = r.geometry;
            (
                std::cmp::Reverse(r.capacity_bits),
                g.pixel_count(),
                g.block_w() > g.block_h(),
            )
        })
        .map(|r| r.geometry)
        .ok_or_else(|| Error::Report("no candidate geometry fits the image".into()))?;
    Ok(SweepResult { best, reports })
}

pub fn embed_image(
    image: &GrayImage,
    payload: &BitPayload,
    codec: CodecId,
    geometry: BlockGeometry,
) -> Result<(GrayImage, EmbedMetadata)> {
    let part = partition(image, geometry)?;
    let blocks = read_blocks(image, &part);
    let location_map = map_for_blocks(&blocks, codec);
    let caps = block_capacities(&blocks, codec, &location_map);
    let total: usize = caps.iter().sum();
    if payload.len() > total {
        return Err(Error::CapacityExceeded {
            requested: payload.len(),
            capacity: total,
        });
    }

    // Sequential scan: chunk offset of every block in the processed prefix.
    let mut starts = Vec::new();
    let mut end = 0;
    if !payload.is_empty() {
        for &c in &caps {
            starts.push(end);
            end += c;
            if end >= payload.len() {
                break;
            }
        }
    }
    let processed = starts.len();
    let mut padded = payload.bits().to_vec();
    padded.resize(end, false);

    let c = codec.codec();
    let embedded = (0..processed)
        .into_par_iter()
        .filter(|&i| !location_map.is_excluded(i))
        .map(|i| {
            let chunk = &padded[starts[i]..starts[i] + caps[i]];
            c.embed(&blocks[i], chunk).map(|b| (i, b))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut stego = image.clone();
    for (i, block) in &embedded {
        stego.write_block(part.origin(*i), geometry, block);
    }
    let meta = EmbedMetadata {
        codec,
        geometry,
        image_w: image.width(),
        image_h: image.height(),
        payload_bit_length: payload.len(),
        processed_block_count: processed,
        location_map,
        carrier_checksum: image.checksum(),
    };
    Ok((stego, meta))
}

/// Recovers the payload and the bit-exact carrier.
pub fn extract_image(stego: &GrayImage, meta: &EmbedMetadata) -> Result<(GrayImage, BitPayload)> {
    if (stego.width(), stego.height()) != (meta.image_w, meta.image_h) {
        return Err(Error::DimensionMismatch(format!(
            "metadata describes a {}x{} image, got {}x{}",
            meta.image_w,
            meta.image_h,
            stego.width(),
            stego.height()
        )));
    }
    let part = partition(stego, meta.geometry)?;
    check_map_len(&meta.location_map, &part)?;
    if meta.processed_block_count > part.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} processed blocks declared, image has {}",
            meta.processed_block_count,
            part.len()
        )));
    }

    let c = meta.codec.codec();
    let geometry = meta.geometry;
    let decoded = (0..meta.processed_block_count)
        .into_par_iter()
        .filter(|&i| !meta.location_map.is_excluded(i))
        .map(|i| {
            let block = stego.read_block(part.origin(i), geometry);
            c.extract(&block).map(|(restored, bits)| (i, restored, bits))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut restored = stego.clone();
    let mut payload = BitPayload::empty();
    for (i, block, bits) in &decoded {
        restored.write_block(part.origin(*i), geometry, block);
        payload.extend_from_slice(bits.bits());
    }
    if payload.len() < meta.payload_bit_length {
        return Err(Error::Metadata(format!(
            "stego carries {} bits, metadata declares {}",
            payload.len(),
            meta.payload_bit_length
        )));
    }
    payload.truncate(meta.payload_bit_length);

    let actual = restored.checksum();
    if actual != meta.carrier_checksum {
        return Err(Error::Integrity {
            expected: meta.carrier_checksum,
            actual,
        });
    }
    Ok((restored, payload))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> BlockGeometry {
        BlockGeometry::square2()
    }

    fn img(w: usize, h: usize, px: &[u8]) -> GrayImage {
        GrayImage::new(w, h, px.to_vec()).unwrap()
    }

    #[test]
    fn location_map_thresholds() {
        let map = |px: &[u8], c| build_location_map(&img(2, 2, px), g2(), c).unwrap().is_excluded(0);
        assert!(map(&[255, 255, 254, 200], CodecId::Ppvok));
        assert!(!map(&[254, 3, 1, 0], CodecId::Pvo));
        assert!(map(&[254, 254, 253, 1], CodecId::Ppvok));
        assert!(!map(&[253, 253, 252, 1], CodecId::Ppvok));
        assert!(map(&[255, 0, 0, 0], CodecId::Ipvo));
    }

    #[test]
    fn empty_payload_is_identity() {
        let carrier = GrayImage::from_fn(8, 8, |x, y| (x * 3 + y) as u8).unwrap();
        for codec in CodecId::ALL {
            let (stego, meta) = embed_image(&carrier, &BitPayload::empty(), codec, g2()).unwrap();
            assert_eq!(stego, carrier);
            assert_eq!(meta.processed_block_count, 0);
            let (restored, payload) = extract_image(&stego, &meta).unwrap();
            assert_eq!(restored, carrier);
            assert!(payload.is_empty());
        }
    }

    // 4x2 image whose two 2x2 blocks are [6,6,5,5] and [9,9,5,5].
    fn two_block_image() -> GrayImage {
        img(4, 2, &[6, 6, 9, 9, 5, 5, 5, 5])
    }

    #[test]
    fn ppvok_two_block_example() {
        let carrier = two_block_image();
        let (stego, meta) =
            embed_image(&carrier, &"11".parse().unwrap(), CodecId::Ppvok, g2()).unwrap();
        assert_eq!(stego.pixels(), &[8, 8, 9, 9, 5, 5, 5, 5]);
        assert_eq!(meta.processed_block_count, 1);

        let err = embed_image(&carrier, &"110".parse().unwrap(), CodecId::Ppvok, g2()).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { requested: 3, capacity: 2 }));
    }

    #[test]
    fn shifted_blocks_inside_prefix() {
        // block 0 ineligible (e = 4), block 1 eligible
        let carrier = img(4, 2, &[9, 9, 6, 6, 5, 5, 5, 5]);
        let (stego, meta) =
            embed_image(&carrier, &"1".parse().unwrap(), CodecId::Ppvok, g2()).unwrap();
        // block 1 is [6,6,5,5] with θ = 2: chunk "1" is padded to "10"
        assert_eq!(stego.pixels(), &[11, 11, 7, 6, 5, 5, 5, 5]);
        assert_eq!(meta.processed_block_count, 2);
        let (restored, payload) = extract_image(&stego, &meta).unwrap();
        assert_eq!(restored, carrier);
        assert_eq!(payload.to_string(), "1");
    }

    #[test]
    fn padded_chunk_is_truncated_on_extract() {
        // θ = 3 block carrying "1" padded to "100"
        let carrier = img(2, 2, &[6, 6, 6, 5]);
        let (stego, meta) =
            embed_image(&carrier, &"1".parse().unwrap(), CodecId::Ppvok, g2()).unwrap();
        assert_eq!(stego.pixels(), &[7, 6, 6, 5]);
        let (restored, payload) = extract_image(&stego, &meta).unwrap();
        assert_eq!(payload.to_string(), "1");
        assert_eq!(restored, carrier);
    }

    #[test]
    fn constant_image_has_zero_capacity() {
        let carrier = GrayImage::filled(16, 16, 128).unwrap();
        for codec in [CodecId::Pvo, CodecId::Pvok, CodecId::Ppvok] {
            let r = capacity(&carrier, codec, g2()).unwrap();
            assert_eq!(r.capacity_bits, 0, "{codec}");
            assert!(r.psnr_at_max.is_infinite());
        }
        // IPVO reads a tied maximum as e = 0, which carries a bit.
        assert_eq!(capacity(&carrier, CodecId::Ipvo, g2()).unwrap().capacity_bits, 64);
        let sweep = sweep_block_sizes(&carrier, CodecId::Ppvok, &BlockGeometry::default_candidates()).unwrap();
        assert_eq!(sweep.best, g2());
        let single = sweep_block_sizes(&carrier, CodecId::Pvo, &[BlockGeometry::new(3, 3).unwrap()]).unwrap();
        assert_eq!(single.best, BlockGeometry::new(3, 3).unwrap());
    }

    #[test]
    fn sweep_tie_prefers_narrow_blocks() {
        let carrier = GrayImage::filled(12, 12, 7).unwrap();
        let cands = [BlockGeometry::new(3, 2).unwrap(), BlockGeometry::new(2, 3).unwrap()];
        assert_eq!(sweep_block_sizes(&carrier, CodecId::Pvo, &cands).unwrap().best, cands[1]);
    }

    #[test]
    fn capacity_counts_per_codec() {
        // blocks: [4,3,0,0] e=1 for PVO/PVOK/PPVOK; [5,5,1,1] tie → IPVO only;
        // [6,6,6,5] θ=3 PPVOK gets 3 bits; [255,254,0,0] excluded everywhere.
        let carrier = img(
            8,
            2,
            &[4, 3, 5, 5, 6, 6, 255, 254, 0, 0, 1, 1, 6, 5, 0, 0],
        );
        let cap = |c| capacity(&carrier, c, g2()).unwrap();
        // per included block, in partition order
        let bits = |per: [usize; 3]| per.iter().sum::<usize>();
        assert_eq!(cap(CodecId::Pvo).capacity_bits, bits([1, 0, 0]));
        assert_eq!(cap(CodecId::Ipvo).capacity_bits, bits([1, 1, 1]));
        assert_eq!(cap(CodecId::Pvok).capacity_bits, bits([1, 0, 1]));
        assert_eq!(cap(CodecId::Ppvok).capacity_bits, bits([1, 0, 3]));
        assert_eq!(cap(CodecId::Ppvok).excluded_blocks, 1);
        assert_eq!(cap(CodecId::Ppvok).eligible_blocks, 2);
    }

    #[test]
    fn excluding_blocks_never_raises_capacity() {
        let carrier = crate::synth::smooth_random(32, 32, 3);
        for codec in CodecId::ALL {
            let mut map = build_location_map(&carrier, g2(), codec).unwrap();
            let mut prev = capacity_with_map(&carrier, codec, g2(), &map).unwrap();
            for i in (0..map.len()).step_by(7) {
                map.exclude(i);
                let now = capacity_with_map(&carrier, codec, g2(), &map).unwrap();
                assert!(now <= prev);
                prev = now;
            }
        }
    }

    #[test]
    fn extract_rejects_mismatched_metadata() {
        let carrier = crate::synth::smooth_random(16, 16, 1);
        let payload = BitPayload::random(5, 1);
        let (stego, meta) = embed_image(&carrier, &payload, CodecId::Ppvok, g2()).unwrap();
        let mut wrong = meta.clone();
        wrong.image_w = 18;
        assert!(matches!(extract_image(&stego, &wrong), Err(Error::DimensionMismatch(_))));

        let mut tampered = stego.clone();
        let last = tampered.pixels().len() - 1;
        tampered.pixels_mut()[last] ^= 1;
        assert!(matches!(extract_image(&tampered, &meta), Err(Error::Integrity { .. })));
    }
}
