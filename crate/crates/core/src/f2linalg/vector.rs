use std::fmt;

const BITS: usize = 64;

#[inline]
fn blocks_for(len: usize) -> usize {
    len.div_ceil(BITS)
}

/// A vector over F₂ stored as packed 64-bit blocks.
///
/// Bits beyond `len` are always zero, so block-wise equality and hashing are
/// exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vec {
    len: usize,
    blocks: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            blocks: vec![0; blocks_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector with ones exactly at the given indices (repeated
    /// indices cancel).
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.blocks[i / BITS] >> (i % BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % BITS);
        if value {
            self.blocks[i / BITS] |= mask;
        } else {
            self.blocks[i / BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.blocks[i / BITS] ^= 1u64 << (i % BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// In-place addition (XOR). Panics on length mismatch.
    #[inline]
    pub fn add_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= *b;
        }
    }

    pub fn add(&self, other: &F2Vec) -> F2Vec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn dot(&self, other: &F2Vec) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Index of the lowest set bit at or after `from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut block = from / BITS;
        let mut word = self.blocks[block] & (!0u64 << (from % BITS));
        loop {
            if word != 0 {
                return Some(block * BITS + word.trailing_zeros() as usize);
            }
            block += 1;
            if block >= self.blocks.len() {
                return None;
            }
            word = self.blocks[block];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.next_one(0)
    }

    /// Iterator over the indices of set bits, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones { v: self, next: 0 }
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector of positions `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> F2Vec {
        assert!(start + len <= self.len);
        F2Vec::from_indices(
            len,
            self.ones().filter(|&i| i >= start && i < start + len).map(|i| i - start),
        )
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

pub struct Ones<'a> {
    v: &'a F2Vec,
    next: usize,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let i = self.v.next_one(self.next)?;
        self.next = i + 1;
        Some(i)
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}
