//! Deterministic fallback embedder.
//!
//! Tokens are lowercase alphanumeric runs. Each token is hashed with 64-bit
//! FNV-1a into one of `dimension` buckets; the bucket counts are then
//! L2-normalised. The scheme is fixed so that embeddings are bit-identical
//! across runs, platforms and thread counts.

use crate::{Error, Result};

pub const MIN_EMBED_DIMENSION: usize = 8;

/// Text → fixed-dimension vector, deterministic per input.
pub trait Embedder: Send + Sync {
    fn dimension(&self) -> usize;
    fn embed(&self, text: &str) -> Result<Vec<f64>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashingEmbedder {
    dimension: usize,
}

impl HashingEmbedder {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension < MIN_EMBED_DIMENSION {
            return Err(Error::DimensionTooSmall {
                min: MIN_EMBED_DIMENSION,
                actual: dimension,
            });
        }
        Ok(Self { dimension })
    }
}

impl Embedder for HashingEmbedder {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        embed_text(text, self.dimension)
    }
}

/// Lowercased alphanumeric tokens of `text`, in order.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

pub fn embed_text(content: &str, dimension: usize) -> Result<Vec<f64>> {
    if dimension < MIN_EMBED_DIMENSION {
        return Err(Error::DimensionTooSmall {
            min: MIN_EMBED_DIMENSION,
            actual: dimension,
        });
    }
    let mut v = vec![0.0; dimension];
    let mut any = false;
    for token in tokenize(content) {
        v[(fnv1a(token.as_bytes()) % dimension as u64) as usize] += 1.0;
        any = true;
    }
    if !any {
        return Err(Error::EmptyText);
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::cosine_similarity;

    #[test]
    fn deterministic() {
        assert_eq!(
            embed_text("apple", 64).unwrap(),
            embed_text("apple", 64).unwrap()
        );
    }

    #[test]
    fn empty_and_tokenless_text_rejected() {
        assert!(matches!(embed_text("", 64), Err(Error::EmptyText)));
        assert!(matches!(embed_text(" ,;! ", 64), Err(Error::EmptyText)));
        assert!(matches!(
            embed_text("a", 4),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn shared_tokens_are_closer() {
        // Oracle: bag counts computed by hand. "apple pie apple" is 2·e_apple + e_pie
        // (distinct buckets for these tokens at d = 64), so its cosine with "apple"
        // is 2/sqrt(5); "unrelated zebra" shares no bucket with "apple".
        let bucket = |t: &str| (fnv1a(t.as_bytes()) % 64) as usize;
        assert_ne!(bucket("apple"), bucket("pie"));
        assert_ne!(bucket("apple"), bucket("unrelated"));
        assert_ne!(bucket("apple"), bucket("zebra"));

        let apple = embed_text("apple", 64).unwrap();
        let pie = embed_text("apple pie apple", 64).unwrap();
        let zebra = embed_text("unrelated zebra", 64).unwrap();
        let near = cosine_similarity(&apple, &pie).unwrap();
        let far = cosine_similarity(&apple, &zebra).unwrap();
        assert!((near - 2.0 / 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(far, 0.0);
        assert!(near > far);
    }

    #[test]
    fn case_and_punctuation_insensitive() {
        assert_eq!(
            embed_text("Maya's Bicycle!", 32).unwrap(),
            embed_text("maya s bicycle", 32).unwrap()
        );
    }

    #[test]
    fn identical_across_threads() {
        let base = embed_text("the red bicycle in the garage", 128).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                std::thread::spawn(|| embed_text("the red bicycle in the garage", 128).unwrap())
            })
            .collect();
        for h in handles {
            let v = h.join().unwrap();
            assert!(v.iter().zip(&base).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }
}
