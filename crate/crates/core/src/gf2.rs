//! Bit-packed GF(2) rows and an incremental echelon basis.
//!
//! Every basis row is stored with its lowest set bit as pivot, and all other
//! bits of that row lie above the pivot. A vector is reduced by repeatedly
//! clearing its lowest set bit, so each XOR only touches words at or after the
//! current position.

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        self.xor_from(other, 0);
    }

    #[inline]
    fn xor_from(&mut self, other: &BitRow, start_word: usize) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words[start_word..]
            .iter_mut()
            .zip(&other.words[start_word..])
        {
            *a ^= b;
        }
    }

    pub fn lowest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

/// Row space of a set of GF(2) vectors, kept in echelon form.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<BitRow>,
    pivot_row: Vec<u32>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            rows: Vec::new(),
            pivot_row: vec![NONE; width],
        }
    }

    pub fn from_rows<'a>(width: usize, rows: impl IntoIterator<Item = &'a BitRow>) -> Self {
        let mut basis = EchelonBasis::new(width);
        for r in rows {
            basis.insert(r.clone());
        }
        basis
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.lowest_set_bit().unwrap())
    }

    /// Reduces `v` in place until it is zero or its lowest bit is not a pivot.
    /// Returns that lowest bit in the latter case.
    fn reduce(&self, v: &mut BitRow) -> Option<usize> {
        assert_eq!(v.len, self.width, "row width mismatch");
        let mut w = 0;
        while w < v.words.len() {
            let word = v.words[w];
            if word == 0 {
                w += 1;
                continue;
            }
            let bit = w * 64 + word.trailing_zeros() as usize;
            match self.pivot_row[bit] {
                NONE => return Some(bit),
                r => v.xor_from(&self.rows[r as usize], w),
            }
        }
        None
    }

    /// Adds `v` to the basis. Returns false when `v` was already in the span.
    pub fn insert(&mut self, mut v: BitRow) -> bool {
        match self.reduce(&mut v) {
            None => false,
            Some(pivot) => {
                self.pivot_row[pivot] = self.rows.len() as u32;
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v).is_none()
    }

    /// Same as [`contains`](Self::contains) but consumes `scratch`.
    pub fn contains_in_place(&self, scratch: &mut BitRow) -> bool {
        self.reduce(scratch).is_none()
    }
}

/// Rank of a set of rows; convenience wrapper around [`EchelonBasis`].
pub fn rank<'a>(width: usize, rows: impl IntoIterator<Item = &'a BitRow>) -> usize {
    EchelonBasis::from_rows(width, rows).rank()
}
