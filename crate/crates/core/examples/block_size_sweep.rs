//! Capacity per block geometry, and the one the sweep picks.

use rdh::io::{format_psnr, load_pgm};
use rdh::{sweep_block_sizes, synth, BlockGeometry, CodecId};

fn main() -> Result<(), rdh::Error> {
    let image = match std::env::args().nth(1) {
        Some(path) => load_pgm(path)?,
        None => synth::gradient_plateau(256, 256),
    };
    for codec in CodecId::ALL {
        let sweep = sweep_block_sizes(&image, codec, &BlockGeometry::default_candidates())?;
        let cells: Vec<String> = sweep.reports.iter().map(|r| format!("{}={}", r.geometry, r.capacity_bits)).collect();
        let best = sweep.best_report();
        println!(
            "{:<6} {}  best={} psnr={}",
            codec.name(),
            cells.join(" "),
            best.geometry,
            format_psnr(best.psnr_at_max)
        );
    }
    Ok(())
}
