//! Canonical basis blades identified by bitmasks.
//!
//! Bit `k` of the mask set means the basis vector `e_{k+1}` is a factor of
//! the blade, and factors are always kept in ascending index order. The
//! empty mask is the scalar blade.

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Index of one canonical basis blade of an n-dimensional algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BladeIndex {
    bits: u16,
    dim: usize,
}

impl BladeIndex {
    pub fn new(bits: u16, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if (bits as usize) >= (1 << dim) {
            return Err(Error::GradeOutOfRange {
                grade: bits.count_ones() as usize,
                dim,
            });
        }
        Ok(BladeIndex { bits, dim })
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// 1-based factor indices in ascending order, e.g. `e13 -> [1, 3]`.
    pub fn factors(&self) -> Vec<usize> {
        (0..self.dim).filter(|k| self.bits >> k & 1 == 1).map(|k| k + 1).collect()
    }

    /// Parses an ascending digit string such as `"12"`; `""` is the scalar blade.
    pub fn from_digits(digits: &str, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut bits: u16 = 0;
        let mut last = 0usize;
        for ch in digits.chars() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::parse(0, format!("invalid blade digit `{ch}`")))?
                as usize;
            if d == 0 || d > dim {
                return Err(Error::parse(0, format!("digit {d} out of range for dimension {dim}")));
            }
            if d <= last {
                return Err(Error::parse(0, "blade digits must be strictly ascending".to_string()));
            }
            last = d;
            bits |= 1 << (d - 1);
        }
        Ok(BladeIndex { bits, dim })
    }

    /// Ascending digit string, e.g. `e13 -> "13"`; scalar blade gives `""`.
    pub fn digits(&self) -> String {
        self.factors().iter().map(|d| d.to_string()).collect()
    }

    /// Display label: `"e13"` for blades, `"1"` for the scalar blade.
    pub fn label(&self) -> String {
        if self.bits == 0 {
            "1".to_string()
        } else {
            format!("e{}", self.digits())
        }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::DimOutOfRange { dim })
    }
}

/// Sign picked up when merging the factor lists of two canonical blades into
/// one ascending list: (-1)^(number of transpositions). Squares of common
/// factors contract to +1 under the euclidean metric, so the product of the
/// basis blades `a` and `b` is `sign * blade(a ^ b)`.
pub(crate) fn reorder_sign(a: u16, b: u16) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the reversion anti-automorphism on a grade-`g` blade.
pub(crate) fn reverse_sign(grade: usize) -> f64 {
    if (grade * grade.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// All blades of the given grade in ascending bitmask order.
pub fn ordered_blades(dim: usize, grade: usize) -> Vec<BladeIndex> {
    (0..1u16 << dim)
        .filter(|bits| bits.count_ones() as usize == grade)
        .map(|bits| BladeIndex { bits, dim })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut c = 1usize;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blade_index_basics() {
        let b = BladeIndex::from_digits("13", 3).unwrap();
        assert_eq!(b.bits(), 0b101);
        assert_eq!(b.grade(), 2);
        assert_eq!(b.factors(), vec![1, 3]);
        assert_eq!(b.digits(), "13");
        assert_eq!(b.label(), "e13");
        assert_eq!(BladeIndex::from_digits("", 3).unwrap().bits(), 0);
    }

    #[test]
    fn blade_index_rejects_bad_digits() {
        assert!(BladeIndex::from_digits("4", 3).is_err());
        assert!(BladeIndex::from_digits("21", 3).is_err());
        assert!(BladeIndex::from_digits("11", 3).is_err());
        assert!(BladeIndex::from_digits("0", 3).is_err());
        assert!(BladeIndex::new(8, 3).is_ok());
        assert!(BladeIndex::new(9, 3).is_err());
    }

    #[test]
    fn ordered_blades_counts() {
        for n in 1..=5 {
            for p in 0..=n {
                assert_eq!(ordered_blades(n, p).len(), binomial(n, p));
            }
        }
        let masks: Vec<u16> = ordered_blades(3, 2).iter().map(|b| b.bits()).collect();
        assert_eq!(masks, vec![0b011, 0b101, 0b110]);
    }

    /// Independent sign oracle: list both factor sequences, bubble-sort the
    /// concatenation counting transpositions, then contract equal adjacent
    /// factors (e_k e_k = 1).
    fn oracle_product(a: u16, b: u16) -> (f64, u16) {
        let mut factors: Vec<usize> = (0..16)
            .filter(|k| a >> k & 1 == 1)
            .chain((0..16).filter(|k| b >> k & 1 == 1))
            .collect();
        let mut sign = 1.0;
        loop {
            let mut swapped = false;
            for i in 0..factors.len().saturating_sub(1) {
                if factors[i] > factors[i + 1] {
                    factors.swap(i, i + 1);
                    sign = -sign;
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        let mut bits = 0u16;
        let mut i = 0;
        while i < factors.len() {
            if i + 1 < factors.len() && factors[i] == factors[i + 1] {
                i += 2;
            } else {
                bits |= 1 << factors[i];
                i += 1;
            }
        }
        (sign, bits)
    }

    #[test]
    fn reorder_sign_matches_permutation_oracle_exhaustively() {
        for n in 1..=5usize {
            for a in 0..1u16 << n {
                for b in 0..1u16 << n {
                    let (sign, bits) = oracle_product(a, b);
                    assert_eq!(bits, a ^ b);
                    assert_eq!(reorder_sign(a, b), sign, "a={a:#b} b={b:#b}");
                }
            }
        }
    }

    #[test]
    fn reverse_sign_pattern() {
        let expect = [1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0];
        for (g, &s) in expect.iter().enumerate() {
            assert_eq!(reverse_sign(g), s);
        }
    }
}
