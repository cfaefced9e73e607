//! The text sidecar that extraction needs: write it, read it back, and see
//! how a stale sidecar is caught.

use rdh::io::{read_metadata, write_metadata};
use rdh::{embed_image, extract_image, synth, BitPayload, BlockGeometry, CodecId};

fn main() -> Result<(), rdh::Error> {
    let carrier = synth::smooth_random(64, 48, 2);
    let payload = BitPayload::random(120, 2);
    let (stego, meta) = embed_image(&carrier, &payload, CodecId::Pvok, BlockGeometry::new(2, 3)?)?;

    let text = write_metadata(&meta);
    print!("{text}");
    let parsed = read_metadata(&text)?;
    assert_eq!(parsed, meta);

    let mut stale = parsed;
    stale.carrier_checksum ^= 1;
    match extract_image(&stego, &stale) {
        Err(e) => println!("stale sidecar rejected: {e}"),
        Ok(_) => unreachable!("checksum mismatch must be detected"),
    }
    Ok(())
}
