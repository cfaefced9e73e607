//! Secret bit sequences and their per-block chunks.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An opaque sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPayload {
    bits: Vec<bool>,
}

impl BitPayload {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![false; len])
    }

    /// Reproducible pseudo-random bits: the same `(len, seed)` always gives the same sequence.
    pub fn random(len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new((0..len).map(|_| rng.gen()).collect())
    }

    /// Unpacks bytes MSB-first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let bits = bytes
            .iter()
            .flat_map(|&b| (0..8).rev().map(move |k| (b >> k) & 1 == 1))
            .collect();
        Self::new(bits)
    }

    /// Unpacks `bit_len` bits MSB-first, ignoring trailing padding.
    pub fn from_bytes_truncated(bytes: &[u8], bit_len: usize) -> Result<Self> {
        if bit_len > bytes.len() * 8 {
            return Err(Error::Parse {
                offset: bytes.len(),
                message: format!("payload holds {} bits, need {bit_len}", bytes.len() * 8),
            });
        }
        let mut p = Self::from_bytes(bytes);
        p.bits.truncate(bit_len);
        Ok(p)
    }

    /// Packs MSB-first; the final byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (k, &bit)| acc | (u8::from(bit) << (7 - k)))
            })
            .collect()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from_slice(&mut self, bits: &[bool]) {
        self.bits.extend_from_slice(bits);
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }

    pub fn classify(&self) -> Result<ChunkClass> {
        classify_chunk(&self.bits)
    }
}

impl From<Vec<bool>> for BitPayload {
    fn from(bits: Vec<bool>) -> Self {
        Self::new(bits)
    }
}

impl fmt::Display for BitPayload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPayload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPayload({self})")
    }
}

impl FromStr for BitPayload {
    type Err = Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .enumerate()
            .map(|(offset, c)| match c {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(Error::Parse {
                    offset,
                    message: format!("not a bit: {:?}", c as char),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Classification of a per-block chunk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChunkClass {
    /// Every bit is 0.
    AllZero,
    /// Every bit is 1.
    AllOne,
    /// Both values occur.
    Mixed,
}

pub fn classify_chunk(chunk: &[bool]) -> Result<ChunkClass> {
    let first = *chunk.first().ok_or(Error::EmptyChunk)?;
    if chunk.iter().all(|&b| b == first) {
        Ok(if first {
            ChunkClass::AllOne
        } else {
            ChunkClass::AllZero
        })
    } else {
        Ok(ChunkClass::Mixed)
    }
}
