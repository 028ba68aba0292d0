use std::fmt;

use crate::error::{Error, Result};

/// Longest state vector a machine word can hold.
pub const MAX_COORDS: usize = 64;

/// One 0/1 assignment to the arcs of a network.
///
/// Coordinate `i` (0-based, i.e. arc `a_{i+1}`) lives in bit `len - 1 - i`, so
/// the last coordinate is the least significant bit and the word read as an
/// integer is the binary number written left to right. Adding one to the word
/// is therefore the same as binary addition on the vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateVector {
    bits: u64,
    len: u8,
    ones: u8,
}

impl StateVector {
    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_value(len, 0)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::from_value(len, low_mask(len))
    }

    /// Builds the vector whose binary-number value is `value`.
    pub fn from_value(len: usize, value: u64) -> Result<Self> {
        if len > MAX_COORDS {
            return Err(Error::TooLarge {
                what: "state vector length",
                value: len,
                limit: MAX_COORDS,
            });
        }
        if value & !low_mask(len) != 0 {
            return Err(Error::InvalidOptions(format!(
                "value {value} does not fit in {len} coordinates"
            )));
        }
        Ok(Self {
            bits: value,
            len: len as u8,
            ones: value.count_ones() as u8,
        })
    }

    pub fn from_coords<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = bool>,
    {
        let mut value = 0u64;
        let mut len = 0usize;
        for c in coords {
            if len == MAX_COORDS {
                return Err(Error::TooLarge {
                    what: "state vector length",
                    value: len + 1,
                    limit: MAX_COORDS,
                });
            }
            value = (value << 1) | c as u64;
            len += 1;
        }
        Self::from_value(len, value)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The vector read as a binary number.
    #[inline]
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Number of coordinates equal to one.
    #[inline]
    pub fn popcount(&self) -> usize {
        self.ones as usize
    }

    #[inline]
    pub fn is_all_ones(&self) -> bool {
        self.ones == self.len
    }

    #[inline]
    fn bit_of(&self, coord: usize) -> u64 {
        assert!(coord < self.len(), "coordinate {coord} out of range");
        1u64 << (self.len() - 1 - coord)
    }

    pub fn get(&self, coord: usize) -> bool {
        self.bits & self.bit_of(coord) != 0
    }

    pub fn set(&mut self, coord: usize, on: bool) {
        let bit = self.bit_of(coord);
        match (self.bits & bit != 0, on) {
            (false, true) => {
                self.bits |= bit;
                self.ones += 1;
            }
            (true, false) => {
                self.bits &= !bit;
                self.ones -= 1;
            }
            _ => {}
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Coordinate-wise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    /// Digits from the first coordinate to the last, e.g. `00011`.
    pub fn to_bit_string(&self) -> String {
        self.coords().map(|c| if c { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(if c { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector({})", self.to_bit_string())
    }
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coordinate_is_most_significant() {
        let x = StateVector::from_coords([false, false, false, true, true]).unwrap();
        assert_eq!(x.value(), 3);
        assert_eq!(x.popcount(), 2);
        assert_eq!(x.to_bit_string(), "00011");
        assert_eq!(x.to_string(), "(0, 0, 0, 1, 1)");
        assert!(x.get(3) && x.get(4) && !x.get(0));
    }

    #[test]
    fn set_keeps_popcount() {
        let mut x = StateVector::zeros(7).unwrap();
        x.set(2, true);
        x.set(2, true);
        x.set(6, true);
        assert_eq!(x.popcount(), 2);
        x.set(2, false);
        x.set(0, false);
        assert_eq!(x.popcount(), 1);
        assert_eq!(x.value(), 1);
    }

    #[test]
    fn full_word() {
        let x = StateVector::ones(64).unwrap();
        assert_eq!(x.popcount(), 64);
        assert!(x.is_all_ones());
        assert!(StateVector::zeros(65).is_err());
        assert!(StateVector::from_value(3, 8).is_err());
    }

    #[test]
    fn dominance() {
        let a = StateVector::from_value(5, 0b10010).unwrap();
        let b = StateVector::from_value(5, 0b11010).unwrap();
        assert!(a.le(&b));
        assert!(!b.le(&a));
    }
}
