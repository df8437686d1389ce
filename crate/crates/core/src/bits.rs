//! Dense rows over the two-element field and an incremental echelon basis.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in indices {
            row.flip(i);
        }
        row
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }
}

/// A linearly independent set of rows, each keyed by its lowest set bit.
///
/// Pivots are pairwise distinct, so repeatedly clearing the lowest set bit
/// of a vector decides membership in the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitRow>,
    pivot_row: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitRow> {
        self.rows
    }

    /// Reduces `v` in place; the result is zero iff `v` was in the span.
    pub fn reduce(&self, v: &mut BitRow) {
        while let Some(p) = v.lowest_one() {
            match self.pivot_row.get(&p) {
                Some(&r) => v.xor_assign(&self.rows[r]),
                None => return,
            }
        }
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn insert(&mut self, mut v: BitRow) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        match v.lowest_one() {
            None => false,
            Some(p) => {
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_iterates_set_bits_in_order() {
        let row = BitRow::from_indices(130, [3, 64, 129, 0]);
        assert_eq!(row.ones().collect::<Vec<_>>(), vec![0, 3, 64, 129]);
        assert_eq!(row.count_ones(), 4);
        assert_eq!(row.lowest_one(), Some(0));
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut basis = EchelonBasis::new(4);
        assert!(basis.insert(BitRow::from_indices(4, [0, 1])));
        assert!(basis.insert(BitRow::from_indices(4, [1, 2])));
        assert!(!basis.insert(BitRow::from_indices(4, [0, 2])));
        assert!(basis.contains(&BitRow::from_indices(4, [0, 2])));
        assert!(!basis.contains(&BitRow::from_indices(4, [3])));
        assert_eq!(basis.rank(), 2);
    }
}
