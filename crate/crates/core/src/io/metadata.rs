//! The `key=value` metadata sidecar written next to every stego image.
//!
//! ```text
//! version=1
//! codec=PPVOK
//! block_w=2
//! block_h=2
//! image_w=512
//! image_h=512
//! payload_bits=1000
//! processed_blocks=1873
//! checksum=8d1f0c2a9b3e4f57
//! locmap=000...
//! ```
//!
//! `locmap` holds one bit per block in partition order, most significant bit
//! first within each hex digit, zero-padded to a whole nibble.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::codec::CodecId;
use crate::error::{Error, Result};
use crate::image::{partition_dims, BlockGeometry};
use crate::pipeline::{EmbedMetadata, LocationMap};

pub const METADATA_VERSION: u32 = 1;

const KEYS: [&str; 10] = [
    "version",
    "codec",
    "block_w",
    "block_h",
    "image_w",
    "image_h",
    "payload_bits",
    "processed_blocks",
    "checksum",
    "locmap",
];

fn meta_err(msg: impl Into<String>) -> Error {
    Error::Metadata(msg.into())
}

pub fn locmap_to_hex(map: &LocationMap) -> String {
    map.as_slice()
        .chunks(4)
        .map(|nibble| {
            let v = nibble
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, &bit)| acc | (u32::from(bit) << (3 - k)));
            char::from_digit(v, 16).expect("nibble < 16")
        })
        .collect()
}

/// Decodes `len` bits; the hex string must have exactly `ceil(len / 4)` digits and zero padding.
pub fn locmap_from_hex(hex: &str, len: usize) -> Result<LocationMap> {
    let digits = hex.chars().count();
    if digits != len.div_ceil(4) {
        return Err(meta_err(format!(
            "locmap has {digits} hex digits, {len} blocks need {}",
            len.div_ceil(4)
        )));
    }
    let mut bits = Vec::with_capacity(digits * 4);
    for c in hex.chars() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| meta_err(format!("malformed hex digit {c:?} in locmap")))?;
        bits.extend((0..4).rev().map(|k| (v >> k) & 1 == 1));
    }
    if bits[len..].iter().any(|&b| b) {
        return Err(meta_err("locmap padding bits must be zero"));
    }
    bits.truncate(len);
    Ok(LocationMap::new(bits))
}

pub fn write_metadata(meta: &EmbedMetadata) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "version={METADATA_VERSION}");
    let _ = writeln!(out, "codec={}", meta.codec.name());
    let _ = writeln!(out, "block_w={}", meta.geometry.block_w());
    let _ = writeln!(out, "block_h={}", meta.geometry.block_h());
    let _ = writeln!(out, "image_w={}", meta.image_w);
    let _ = writeln!(out, "image_h={}", meta.image_h);
    let _ = writeln!(out, "payload_bits={}", meta.payload_bit_length);
    let _ = writeln!(out, "processed_blocks={}", meta.processed_block_count);
    let _ = writeln!(out, "checksum={:016x}", meta.carrier_checksum);
    let _ = writeln!(out, "locmap={}", locmap_to_hex(&meta.location_map));
    out
}

pub fn read_metadata(text: &str) -> Result<EmbedMetadata> {
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| meta_err(format!("line {}: expected key=value", lineno + 1)))?;
        if !KEYS.contains(&key) {
            return Err(meta_err(format!("unknown key {key:?}")));
        }
        if fields.insert(key, value).is_some() {
            return Err(meta_err(format!("duplicate key {key:?}")));
        }
    }
    let get = |key: &str| fields.get(key).copied().ok_or_else(|| meta_err(format!("missing key {key:?}")));
    let num = |key: &str| -> Result<usize> {
        get(key)?
            .parse()
            .map_err(|_| meta_err(format!("{key} is not a non-negative integer")))
    };

    let version = num("version")?;
    if version != METADATA_VERSION as usize {
        return Err(meta_err(format!("unsupported version {version}")));
    }
    let codec: CodecId = get("codec")?.parse()?;
    let geometry = BlockGeometry::new(num("block_w")?, num("block_h")?)?;
    let image_w = num("image_w")?;
    let image_h = num("image_h")?;
    let payload_bit_length = num("payload_bits")?;
    let processed_block_count = num("processed_blocks")?;
    let checksum = get("checksum")?;
    if checksum.len() != 16 || !checksum.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(meta_err("checksum must be 16 hex digits"));
    }
    let carrier_checksum = u64::from_str_radix(checksum, 16).map_err(|_| meta_err("malformed checksum"))?;
    let blocks = partition_dims(image_w, image_h, geometry)?.len();
    if processed_block_count > blocks {
        return Err(meta_err(format!(
            "processed_blocks {processed_block_count} exceeds {blocks} blocks"
        )));
    }
    let location_map = locmap_from_hex(get("locmap")?, blocks)?;
    Ok(EmbedMetadata {
        codec,
        geometry,
        image_w,
        image_h,
        payload_bit_length,
        processed_block_count,
        location_map,
        carrier_checksum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> EmbedMetadata {
        EmbedMetadata {
            codec: CodecId::Ppvok,
            geometry: BlockGeometry::square2(),
            image_w: 4,
            image_h: 4,
            payload_bit_length: 3,
            processed_block_count: 2,
            location_map: LocationMap::new(vec![false, false, true, false]),
            carrier_checksum: 0x0123_4567_89ab_cdef,
        }
    }

    #[test]
    fn locmap_examples() {
        assert_eq!(locmap_to_hex(&LocationMap::all_included(4)), "0");
        assert_eq!(locmap_to_hex(&LocationMap::new(vec![false, false, true, false])), "2");
        assert_eq!(locmap_to_hex(&LocationMap::new(vec![true, false, false, false, true])), "88");
        assert_eq!(locmap_from_hex("88", 5).unwrap().as_slice(), &[true, false, false, false, true]);
        assert!(locmap_from_hex("89", 5).is_err());
        assert!(locmap_from_hex("8", 5).is_err());
        assert!(locmap_from_hex("g", 4).is_err());
    }

    #[test]
    fn text_layout() {
        let text = write_metadata(&sample());
        assert_eq!(
            text,
            "version=1\ncodec=PPVOK\nblock_w=2\nblock_h=2\nimage_w=4\nimage_h=4\n\
             payload_bits=3\nprocessed_blocks=2\nchecksum=0123456789abcdef\nlocmap=2\n"
        );
        assert_eq!(read_metadata(&text).unwrap(), sample());
    }

    #[test]
    fn rejects_bad_documents() {
        let text = write_metadata(&sample());
        assert!(read_metadata(&format!("{text}colour=red\n")).is_err());
        assert!(read_metadata(&text.replace("locmap=2\n", "")).is_err());
        assert!(read_metadata(&text.replace("locmap=2", "locmap=z")).is_err());
        assert!(read_metadata(&text.replace("checksum=0123456789abcdef", "checksum=0123")).is_err());
        assert!(read_metadata(&text.replace("version=1", "version=2")).is_err());
        assert!(read_metadata(&format!("{text}version=1\n")).is_err());
        assert!(read_metadata(&text.replace("processed_blocks=2", "processed_blocks=5")).is_err());
    }

    fn arb_meta() -> impl Strategy<Value = EmbedMetadata> {
        (
            prop::sample::select(CodecId::ALL.to_vec()),
            1usize..5,
            1usize..5,
            1usize..40,
            1usize..40,
            any::<u64>(),
            any::<usize>(),
            any::<u64>(),
        )
            .prop_filter_map("geometry must fit", |(codec, bw, bh, w, h, bits, processed, checksum)| {
                let geometry = BlockGeometry::new(bw, bh).ok()?;
                let blocks = partition_dims(w, h, geometry).ok()?.len();
                let excluded = (0..blocks).map(|i| (checksum >> (i % 64)) & 1 == 1).collect();
                Some(EmbedMetadata {
                    codec,
                    geometry,
                    image_w: w,
                    image_h: h,
                    payload_bit_length: (bits % 100_000) as usize,
                    processed_block_count: processed % (blocks + 1),
                    location_map: LocationMap::new(excluded),
                    carrier_checksum: checksum,
                })
            })
    }

    proptest! {
        #[test]
        fn round_trip(meta in arb_meta()) {
            prop_assert_eq!(read_metadata(&write_metadata(&meta)).unwrap(), meta);
        }
    }
}
