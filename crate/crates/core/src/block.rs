//! Per-block views and the order statistics every codec is built on.
//!
//! In-block indices are row-major. [`RankMap::gamma`] speaks the 1-based
//! convention (`gamma(n)` is the maximum); everything else in the crate uses
//! 0-based slice positions.

use std::fmt;

/// The pixel values of one block in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockView {
    values: Vec<u8>,
}

impl BlockView {
    pub fn new(values: Vec<u8>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [u8] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> u8 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn rank(&self) -> RankMap {
        rank_block(self)
    }

    pub fn order_statistics(&self) -> OrderStatistics {
        order_statistics(self)
    }
}

impl From<Vec<u8>> for BlockView {
    fn from(values: Vec<u8>) -> Self {
        Self::new(values)
    }
}

impl<const N: usize> From<[u8; N]> for BlockView {
    fn from(values: [u8; N]) -> Self {
        Self::new(values.to_vec())
    }
}

impl fmt::Debug for BlockView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

/// Ascending stable sort permutation of a block.
///
/// Equal values keep in-block index order, so the maximum-ranked pixel is the
/// one with the largest index among all maximum-valued pixels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMap {
    // order[r] = 0-based position of the pixel with 0-based rank r.
    order: Vec<usize>,
}

impl RankMap {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// 1-based: the in-block index of the pixel with rank `rank`.
    pub fn gamma(&self, rank: usize) -> usize {
        self.order[rank - 1] + 1
    }

    /// 0-based positions in ascending rank order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of the maximum-ranked pixel.
    pub fn top(&self) -> usize {
        self.order[self.order.len() - 1]
    }

    /// Position of the second-ranked pixel.
    pub fn second(&self) -> usize {
        self.order[self.order.len() - 2]
    }
}

pub fn rank_block(block: &BlockView) -> RankMap {
    let mut order: Vec<usize> = (0..block.len()).collect();
    // sort_by_key is stable
    order.sort_by_key(|&i| block.values[i]);
    RankMap { order }
}

/// Distinct value levels of a block in descending order with their multiplicities.
///
/// Level 0 holds the first-order pixels (value `O1`, count `θ`), level 1 the
/// second-order pixels (`O2`, `δ`), and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStatistics {
    levels: Vec<u8>,
    multiplicities: Vec<usize>,
}

impl OrderStatistics {
    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn o1(&self) -> u8 {
        self.levels[0]
    }

    pub fn o2(&self) -> Option<u8> {
        self.levels.get(1).copied()
    }

    pub fn theta(&self) -> usize {
        self.multiplicities[0]
    }

    pub fn delta(&self) -> Option<usize> {
        self.multiplicities.get(1).copied()
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// `O1 - O2`, or `None` for a single-level block.
    pub fn top_gap(&self) -> Option<i32> {
        self.o2().map(|o2| i32::from(self.o1()) - i32::from(o2))
    }
}

pub fn order_statistics(block: &BlockView) -> OrderStatistics {
    let mut counts = [0usize; 256];
    for &v in block.values() {
        counts[usize::from(v)] += 1;
    }
    let (levels, multiplicities) = (0..=255u8)
        .rev()
        .filter(|&v| counts[usize::from(v)] > 0)
        .map(|v| (v, counts[usize::from(v)]))
        .unzip();
    OrderStatistics {
        levels,
        multiplicities,
    }
}

/// A signed grayscale difference between two designated order statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredictionError(pub i32);

impl PredictionError {
    pub fn value(self) -> i32 {
        self.0
    }
}

impl fmt::Display for PredictionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
