//! Compression-ratio proxy for algorithmic complexity.
//!
//! The dataset is laid out row-major as little-endian binary64 and compressed
//! with raw DEFLATE (flate2, miniz_oxide backend) at a pinned level.

use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub const CODEC_ID: &str = "deflate-raw/miniz_oxide";
pub const DEFAULT_LEVEL: u32 = 9;

/// compressed bytes / original bytes for an arbitrary payload.
pub fn compression_ratio_bytes(bytes: &[u8], level: u32) -> Result<f64> {
    if bytes.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut enc = DeflateEncoder::new(Vec::with_capacity(bytes.len() / 2), Compression::new(level));
    enc.write_all(bytes)?;
    let compressed = enc.finish()?;
    Ok(compressed.len() as f64 / bytes.len() as f64)
}

/// Compression ratio of the canonical byte layout of `d`.
pub fn compression_ratio(d: &Dataset, level: u32) -> Result<f64> {
    compression_ratio_bytes(&d.to_le_bytes(), level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const MIB_VALUES: usize = (1 << 20) / 8;

    #[test]
    fn constant_mebibyte_compresses_well() {
        let d = Dataset::from_flat(MIB_VALUES / 8, 8, vec![3.25; MIB_VALUES], "t").unwrap();
        let r = compression_ratio(&d, DEFAULT_LEVEL).unwrap();
        assert!(r < 0.05, "{r}");
    }

    #[test]
    fn random_mebibyte_does_not() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let bytes: Vec<u8> = (0..(1 << 20)).map(|_| rng.random()).collect();
        let r = compression_ratio_bytes(&bytes, DEFAULT_LEVEL).unwrap();
        assert!(r > 0.95, "{r}");
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(compression_ratio_bytes(&[], 9).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn layout_is_little_endian_row_major() {
        let d = Dataset::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]], "t").unwrap();
        let bytes = d.to_le_bytes();
        assert_eq!(bytes.len(), 32);
        assert_eq!(&bytes[8..16], &2.0f64.to_le_bytes());
        assert_eq!(&bytes[16..24], &3.0f64.to_le_bytes());
    }
}
