use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Peak signal-to-noise ratio in dB for 8-bit images; `f64::INFINITY` when the images are identical.
pub fn psnr(original: &GrayImage, modified: &GrayImage) -> Result<f64> {
    if (original.width(), original.height()) != (modified.width(), modified.height()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            original.width(),
            original.height(),
            modified.width(),
            modified.height()
        )));
    }
    let sse: u64 = original
        .pixels()
        .iter()
        .zip(modified.pixels())
        .map(|(&a, &b)| {
            let d = u64::from(a.abs_diff(b));
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / original.pixels().len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}
