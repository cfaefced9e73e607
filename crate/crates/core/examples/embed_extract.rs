//! Hide a message in a carrier and get both back, bit-exact.
//!
//! ```text
//! cargo run --example embed_extract
//! cargo run --example embed_extract -- carrier.pgm ipvo
//! ```

use rdh::io::load_pgm;
use rdh::{embed_image, extract_image, psnr, synth, BitPayload, BlockGeometry, CodecId};

fn main() -> Result<(), rdh::Error> {
    let mut args = std::env::args().skip(1);
    let carrier = match args.next() {
        Some(path) => load_pgm(path)?,
        None => synth::smooth_random(256, 256, 1),
    };
    let codec: CodecId = args.next().as_deref().unwrap_or("ppvok").parse()?;

    let message = b"reversible";
    let payload = BitPayload::from_bytes(message);
    let (stego, meta) = embed_image(&carrier, &payload, codec, BlockGeometry::square2())?;
    println!(
        "{codec}: {} bits in {} blocks, psnr={:.2} dB",
        payload.len(),
        meta.processed_block_count,
        psnr(&carrier, &stego)?
    );

    let (restored, recovered) = extract_image(&stego, &meta)?;
    assert_eq!(restored, carrier);
    println!("recovered {:?}", String::from_utf8_lossy(&recovered.to_bytes()));
    Ok(())
}
