use std::fmt;

use crate::error::{Error, Result};
use crate::real::Real;

/// Bit string of `M · nbits` genes, most significant bit first within each
/// weight group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    pub bits: Vec<bool>,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Chromosome {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit `{other}`")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Chromosome::new)
    }
}

/// Decodes each `nbits` group as an unsigned integer `v` and maps it to
/// `v / (2^nbits − 1)`.
pub fn decode<T: Real>(c: &Chromosome, users: usize, nbits: usize) -> Result<Vec<T>> {
    if nbits == 0 || nbits > 32 {
        return Err(Error::InvalidConfig(format!(
            "nbits must be in 1..=32, got {nbits}"
        )));
    }
    if c.len() != users * nbits {
        return Err(Error::LengthMismatch {
            expected: users * nbits,
            found: c.len(),
        });
    }
    let full = T::from_u64((1u64 << nbits) - 1).expect("code range representable");
    Ok(c.bits
        .chunks_exact(nbits)
        .map(|group| {
            let v = group.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
            T::from_u64(v).expect("code representable") / full
        })
        .collect())
}

/// Nearest-code encoding of raw weights in `[0, 1]` (values outside are clamped).
pub fn encode<T: Real>(weights: &[T], nbits: usize) -> Chromosome {
    let full = (1u64 << nbits) - 1;
    let mut bits = Vec::with_capacity(weights.len() * nbits);
    for &w in weights {
        let x = w.as_f64().clamp(0.0, 1.0);
        let v = (x * full as f64).round() as u64;
        bits.extend((0..nbits).rev().map(|k| (v >> k) & 1 == 1));
    }
    Chromosome::new(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Chromosome {
        s.parse().unwrap()
    }

    #[test]
    fn extreme_codes() {
        assert_eq!(decode::<f64>(&c("1111111111"), 1, 10).unwrap(), vec![1.0]);
        assert_eq!(decode::<f64>(&c("0000000000"), 1, 10).unwrap(), vec![0.0]);
    }

    #[test]
    fn four_bit_group() {
        let w = decode::<f64>(&c("0101"), 1, 4).unwrap();
        assert!((w[0] - 5.0 / 15.0).abs() < 1e-15);
        assert!((w[0] - 0.3333).abs() < 1e-4);
    }

    #[test]
    fn groups_are_independent() {
        let w = decode::<f64>(&c(&["0101", "1111", "0000"].concat()), 3, 4).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(&w[1..], &[1.0, 0.0]);
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(matches!(
            decode::<f64>(&c("010"), 1, 4),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn encode_decode_round_trip_on_grid() {
        let raw = [0.0, 1.0 / 3.0, 1.0, 341.0 / 1023.0];
        let ch = encode(&raw, 10);
        let back = decode::<f64>(&ch, 4, 10).unwrap();
        for (a, b) in raw.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn display_parse() {
        assert_eq!(c("10110").to_string(), "10110");
        assert!("10a".parse::<Chromosome>().is_err());
    }
}
