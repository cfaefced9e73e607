//! Capacity of all four codecs on one image, printed as CSV.
//!
//! ```text
//! cargo run --example compare_codecs -- path/to/airplane.pgm
//! cargo run --example compare_codecs            # synthetic smooth image
//! ```

use rdh::io::{load_pgm, write_capacity_csv};
use rdh::{capacity, synth, BlockGeometry, CodecId};

fn main() -> Result<(), rdh::Error> {
    let (image, label) = match std::env::args().nth(1) {
        Some(path) => (load_pgm(&path)?, path),
        None => (synth::gradient_plateau(512, 512), "gradient-plateau".to_string()),
    };
    let reports = CodecId::ALL
        .iter()
        .map(|&c| capacity(&image, c, BlockGeometry::square2()).map(|r| r.with_image(label.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", write_capacity_csv(&reports)?);
    Ok(())
}
