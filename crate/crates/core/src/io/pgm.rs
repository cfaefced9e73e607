//! Portable graymap reading (P5 binary and P2 ASCII) and canonical P5 writing.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments.
    fn skip_filler(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_filler();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(self.pos) {
                None => parse_err(start, format!("truncated data: expected {what}")),
                Some(&c) => parse_err(start, format!("expected {what}, found {:?}", c as char)),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(start, format!("{what} out of range")))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(parse_err(0, "unsupported magic")),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    cur.skip_filler();
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(parse_err(maxval_at, format!("maxval {maxval} not in 1..=255")));
    }
    if width == 0 || height == 0 {
        return Err(parse_err(2, format!("zero-sized image {width}x{height}")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| parse_err(2, "image dimensions overflow"))?;

    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(parse_err(cur.pos, "expected whitespace after maxval")),
        }
        let raster = bytes
            .get(cur.pos..cur.pos + count)
            .ok_or_else(|| parse_err(bytes.len(), format!("truncated data: need {count} pixel bytes")))?;
        if let Some(i) = raster.iter().position(|&v| usize::from(v) > maxval) {
            return Err(parse_err(cur.pos + i, format!("sample exceeds maxval {maxval}")));
        }
        raster.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        for _ in 0..count {
            cur.skip_filler();
            let at = cur.pos;
            let v = cur.number("sample")?;
            if v > maxval {
                return Err(parse_err(at, format!("sample {v} exceeds maxval {maxval}")));
            }
            pixels.push(v as u8);
        }
        pixels
    };
    GrayImage::new(width, height, pixels)
}

pub fn write_pgm(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    read_pgm(&std::fs::read(path)?)
}

pub fn save_pgm(path: impl AsRef<Path>, image: &GrayImage) -> Result<()> {
    std::fs::write(path, write_pgm(image))?;
    Ok(())
}
