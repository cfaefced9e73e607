//! Deterministic synthetic carriers for tests, examples, and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::GrayImage;

/// A smooth image: a diagonal triangle-wave ramp rising one level every two
/// pixels, with flat 64×64 plateaus laid over it in a diagonal pattern.
pub fn gradient_plateau(width: usize, height: usize) -> GrayImage {
    let triangle = |t: usize| {
        let t = t % 320;
        if t < 160 {
            t
        } else {
            319 - t
        }
    };
    GrayImage::from_fn(width, height, |x, y| {
        if (x / 64 + y / 64) % 4 == 0 {
            100
        } else {
            (40 + triangle((x + y).div_ceil(2))) as u8
        }
    })
    .expect("non-empty dimensions")
}

/// Independent uniform pixels.
pub fn uniform_random(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |_, _| rng.gen()).expect("non-empty dimensions")
}

/// A random walk along rows with small steps, clamped to `[0, 255]`, so both
/// smooth regions and saturated pixels near 255 occur.
pub fn smooth_random(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prev_row: Vec<i32> = (0..width).map(|_| rng.gen_range(0..=255)).collect();
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..height {
        let mut left = prev_row[0];
        let row: Vec<i32> = prev_row
            .iter()
            .map(|&up| {
                let base = (up + left) / 2;
                let v = (base + rng.gen_range(-2..=2)).clamp(0, 255);
                left = v;
                v
            })
            .collect();
        pixels.extend(row.iter().map(|&v| v as u8));
        prev_row = row;
    }
    GrayImage::new(width, height, pixels).expect("non-empty dimensions")
}
