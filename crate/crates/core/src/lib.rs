//! Reversible data hiding in 8-bit grayscale images with pixel-value-ordering codecs.
//!
//! Four block codecs are provided: PVO, IPVO, PVO-k and PPVO-k. All of them tile
//! the carrier into fixed-size blocks, sort each block, and expand the gap
//! between the top order statistics to carry payload bits. Extraction returns
//! the payload together with the bit-exact original carrier.
//!
//! ```
//! use rdh::{BitPayload, BlockGeometry, CodecId, embed_image, extract_image, synth};
//!
//! let carrier = synth::smooth_random(64, 64, 1);
//! let payload = BitPayload::random(200, 7);
//! let (stego, meta) = embed_image(&carrier, &payload, CodecId::Ppvok, BlockGeometry::square2())?;
//! let (restored, recovered) = extract_image(&stego, &meta)?;
//! assert_eq!(restored, carrier);
//! assert_eq!(recovered, payload);
//! # Ok::<(), rdh::Error>(())
//! ```

pub mod bits;
pub mod block;
pub mod cli;
pub mod codec;
pub mod error;
pub mod image;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod pipeline;
pub mod synth;

pub use bits::{classify_chunk, BitPayload, ChunkClass};
pub use block::{order_statistics, rank_block, BlockView, OrderStatistics, PredictionError, RankMap};
pub use codec::{BlockCodec, CodecId};
pub use error::{Error, Result};
pub use image::{partition, BlockGeometry, BlockOrigin, BlockPartition, GrayImage};
pub use metrics::psnr;
pub use pipeline::{
    build_location_map, capacity, embed_image, extract_image, sweep_block_sizes, CapacityReport,
    EmbedMetadata, LocationMap, SweepResult,
};
