//! MSB-first bitstrings.
//!
//! A measured bitstring `b = b_{m-1} … b_1 b_0` is written most significant
//! bit first and its integer value is `Σ b_j 2^j`. Slicing (`head`, `tail`,
//! `bit`) and concatenation all work on the written, MSB-first form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest bitstring representable (the value is stored in a `u128`).
pub const MAX_BITS: u32 = 127;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Bitstring {
    value: u128,
    len: u32,
}

impl Bitstring {
    /// Builds a bitstring of `len` bits holding `value`.
    ///
    /// Panics if `value` does not fit in `len` bits or `len > MAX_BITS`.
    pub fn new(value: u128, len: u32) -> Self {
        assert!(len <= MAX_BITS, "bitstring length {len} exceeds {MAX_BITS}");
        assert!(value >> len == 0, "value {value} does not fit in {len} bits");
        Bitstring { value, len }
    }

    pub fn empty() -> Self {
        Bitstring { value: 0, len: 0 }
    }

    pub fn zeros(len: u32) -> Self {
        Bitstring::new(0, len)
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at left-origin, 0-indexed position `pos` (position 0 is the MSB).
    pub fn bit(&self, pos: u32) -> u8 {
        assert!(pos < self.len, "bit position {pos} out of range for length {}", self.len);
        ((self.value >> (self.len - 1 - pos)) & 1) as u8
    }

    /// The first `t` bits.
    pub fn head(&self, t: u32) -> Bitstring {
        assert!(t <= self.len);
        Bitstring {
            value: self.value >> (self.len - t),
            len: t,
        }
    }

    /// The last `t` bits.
    pub fn tail(&self, t: u32) -> Bitstring {
        assert!(t <= self.len);
        Bitstring {
            value: self.value & mask(t),
            len: t,
        }
    }

    /// `self ∥ rhs`: `self` supplies the high-order bits.
    pub fn concat(&self, rhs: &Bitstring) -> Bitstring {
        let len = self.len + rhs.len;
        assert!(len <= MAX_BITS, "concatenation exceeds {MAX_BITS} bits");
        Bitstring {
            value: (self.value << rhs.len) | rhs.value,
            len,
        }
    }
}

fn mask(t: u32) -> u128 {
    if t == 0 {
        0
    } else {
        u128::MAX >> (128 - t)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.len {
            f.write_str(if self.bit(pos) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS as usize {
            return Err(Error::config("bitstring", format!("longer than {MAX_BITS} bits")));
        }
        let mut value = 0u128;
        for ch in s.chars() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(Error::config(
                        "bitstring",
                        format!("unexpected character {other:?} in {s:?}"),
                    ))
                }
            };
            value = (value << 1) | bit;
        }
        Ok(Bitstring {
            value,
            len: s.len() as u32,
        })
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
