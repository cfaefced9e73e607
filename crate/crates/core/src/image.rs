//! Carrier images and their tiling into fixed-size blocks.

use std::fmt;
use std::str::FromStr;

use crate::block::BlockView;
use crate::error::{Error, Result};

/// An 8-bit grayscale raster stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "zero-sized image {width}x{height}"
            )));
        }
        match width.checked_mul(height) {
            Some(len) if len == pixels.len() => Ok(Self {
                width,
                height,
                pixels,
            }),
            _ => Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width.saturating_mul(height),
                pixels.len()
            ))),
        }
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.width + x] = value;
    }

    /// 64-bit FNV-1a over the raw pixel bytes.
    pub fn checksum(&self) -> u64 {
        fnv1a64(&self.pixels)
    }

    /// Copies the pixels of the block at `origin` into a [`BlockView`].
    pub fn read_block(&self, origin: BlockOrigin, geometry: BlockGeometry) -> BlockView {
        let mut values = Vec::with_capacity(geometry.pixel_count());
        for dy in 0..geometry.block_h() {
            let row = (origin.y + dy) * self.width + origin.x;
            values.extend_from_slice(&self.pixels[row..row + geometry.block_w()]);
        }
        BlockView::new(values)
    }

    /// Writes `block` back at `origin`. The block must have the geometry's pixel count.
    pub fn write_block(&mut self, origin: BlockOrigin, geometry: BlockGeometry, block: &BlockView) {
        debug_assert_eq!(block.len(), geometry.pixel_count());
        for (dy, row_values) in block.values().chunks(geometry.block_w()).enumerate() {
            let row = (origin.y + dy) * self.width + origin.x;
            self.pixels[row..row + geometry.block_w()].copy_from_slice(row_values);
        }
    }
}

impl fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("checksum", &format_args!("{:016x}", self.checksum()))
            .finish()
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |hash, &b| (hash ^ u64::from(b)).wrapping_mul(PRIME))
}

/// Block width and height in pixels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockGeometry {
    block_w: usize,
    block_h: usize,
}

impl BlockGeometry {
    pub fn new(block_w: usize, block_h: usize) -> Result<Self> {
        if block_w == 0 || block_h == 0 || block_w.saturating_mul(block_h) < 2 {
            return Err(Error::InvalidGeometry {
                w: block_w,
                h: block_h,
            });
        }
        Ok(Self { block_w, block_h })
    }

    pub const fn square2() -> Self {
        Self {
            block_w: 2,
            block_h: 2,
        }
    }

    pub fn block_w(&self) -> usize {
        self.block_w
    }

    pub fn block_h(&self) -> usize {
        self.block_h
    }

    pub fn pixel_count(&self) -> usize {
        self.block_w * self.block_h
    }

    /// Candidate set used by the block-size sweep when none is given.
    pub fn default_candidates() -> Vec<BlockGeometry> {
        [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4)]
            .into_iter()
            .map(|(w, h)| Self { block_w: w, block_h: h })
            .collect()
    }
}

impl Default for BlockGeometry {
    fn default() -> Self {
        Self::square2()
    }
}

impl fmt::Display for BlockGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.block_w, self.block_h)
    }
}

impl FromStr for BlockGeometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Metadata(format!("block geometry must look like WxH, got {s:?}"));
        let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let w = w.trim().parse().map_err(|_| bad())?;
        let h = h.trim().parse().map_err(|_| bad())?;
        Self::new(w, h)
    }
}

/// Top-left pixel of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockOrigin {
    pub x: usize,
    pub y: usize,
}

/// Non-overlapping row-major tiling of an image.
///
/// Pixels in the right and bottom margins that do not fill a whole block form the
/// residual region; no codec ever touches them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    geometry: BlockGeometry,
    image_w: usize,
    image_h: usize,
    blocks_x: usize,
    blocks_y: usize,
}

impl BlockPartition {
    pub fn geometry(&self) -> BlockGeometry {
        self.geometry
    }

    pub fn len(&self) -> usize {
        self.blocks_x * self.blocks_y
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Blocks per row and per column of the block grid.
    pub fn grid(&self) -> (usize, usize) {
        (self.blocks_x, self.blocks_y)
    }

    pub fn origin(&self, index: usize) -> BlockOrigin {
        BlockOrigin {
            x: (index % self.blocks_x) * self.geometry.block_w(),
            y: (index / self.blocks_x) * self.geometry.block_h(),
        }
    }

    pub fn origins(&self) -> impl ExactSizeIterator<Item = BlockOrigin> + '_ {
        (0..self.len()).map(move |i| self.origin(i))
    }

    /// Pixel coordinates outside every block, in row-major order.
    pub fn residual_region(&self) -> Vec<(usize, usize)> {
        let covered_w = self.blocks_x * self.geometry.block_w();
        let covered_h = self.blocks_y * self.geometry.block_h();
        let mut out = Vec::new();
        for y in 0..self.image_h {
            for x in 0..self.image_w {
                if x >= covered_w || y >= covered_h {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

pub fn partition(image: &GrayImage, geometry: BlockGeometry) -> Result<BlockPartition> {
    partition_dims(image.width(), image.height(), geometry)
}

pub(crate) fn partition_dims(
    image_w: usize,
    image_h: usize,
    geometry: BlockGeometry,
) -> Result<BlockPartition> {
    let blocks_x = image_w / geometry.block_w();
    let blocks_y = image_h / geometry.block_h();
    if blocks_x == 0 || blocks_y == 0 {
        return Err(Error::ImageTooSmall {
            image_w,
            image_h,
            block_w: geometry.block_w(),
            block_h: geometry.block_h(),
        });
    }
    Ok(BlockPartition {
        geometry,
        image_w,
        image_h,
        blocks_x,
        blocks_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(w: usize, h: usize) -> BlockGeometry {
        BlockGeometry::new(w, h).unwrap()
    }

    #[test]
    fn exact_tiling_of_512_square() {
        let img = GrayImage::filled(512, 512, 0).unwrap();
        let p = partition(&img, geom(2, 2)).unwrap();
        assert_eq!(p.len(), 65_536);
        assert!(p.residual_region().is_empty());
    }

    #[test]
    fn five_by_four_leaves_right_column() {
        let img = GrayImage::filled(5, 4, 0).unwrap();
        let p = partition(&img, geom(2, 2)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.residual_region(), vec![(4, 0), (4, 1), (4, 2), (4, 3)]);
    }

    #[test]
    fn three_by_three_on_512() {
        let img = GrayImage::filled(512, 512, 0).unwrap();
        let p = partition(&img, geom(3, 3)).unwrap();
        assert_eq!(p.len(), 28_900);
        // 2-pixel strips on the right and bottom.
        assert_eq!(p.residual_region().len(), 512 * 512 - 510 * 510);
    }

    #[test]
    fn too_small_image_is_rejected() {
        let img = GrayImage::filled(1, 5, 0).unwrap();
        let err = partition(&img, geom(2, 2)).unwrap_err();
        assert!(err.to_string().contains("image too small for geometry"));
    }

    #[test]
    fn geometry_needs_two_pixels() {
        assert!(BlockGeometry::new(1, 1).is_err());
        assert!(BlockGeometry::new(0, 4).is_err());
        assert!(BlockGeometry::new(1, 2).is_ok());
        assert_eq!("3x2".parse::<BlockGeometry>().unwrap(), geom(3, 2));
        assert!("3by2".parse::<BlockGeometry>().is_err());
    }

    #[test]
    fn block_order_is_row_major_and_deterministic() {
        let img = GrayImage::from_fn(6, 4, |x, y| (y * 6 + x) as u8).unwrap();
        let p = partition(&img, geom(2, 2)).unwrap();
        let origins: Vec<_> = p.origins().map(|o| (o.x, o.y)).collect();
        assert_eq!(origins, vec![(0, 0), (2, 0), (4, 0), (0, 2), (2, 2), (4, 2)]);
        assert_eq!(p, partition(&img, geom(2, 2)).unwrap());
        assert_eq!(img.read_block(p.origin(1), geom(2, 2)).values(), &[2, 3, 8, 9]);
    }

    #[test]
    fn block_write_round_trips() {
        let mut img = GrayImage::from_fn(4, 4, |x, y| (x * 10 + y) as u8).unwrap();
        let g = geom(2, 2);
        let o = BlockOrigin { x: 2, y: 2 };
        let b = BlockView::new(vec![1, 2, 3, 4]);
        img.write_block(o, g, &b);
        assert_eq!(img.read_block(o, g), b);
        assert_eq!(img.get(3, 3), 4);
    }

    #[test]
    fn fnv_known_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }
}
