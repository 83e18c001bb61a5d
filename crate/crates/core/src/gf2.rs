//! Dense, word-packed linear algebra over GF(2).
//!
//! Everything homological in this crate reduces to three questions about a
//! finite boundary matrix: what is its kernel, what is its image, and does a
//! given chain lie in the image. [`Echelon`] answers all three incrementally.

use std::fmt;
use std::ops::BitXorAssign;

const WORD: usize = 64;

/// A fixed-length vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit at or after `from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / WORD;
        let mut word = self.words[w] & (!0u64 << (from % WORD));
        loop {
            if word != 0 {
                let i = w * WORD + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.next_one(0)
    }

    /// Iterator over the indices of set bits, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones { vec: self, next: 0 }
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "GF(2) vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= *b;
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}]{{", self.len)?;
        for (n, i) in self.ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Ones<'a> {
    vec: &'a BitVec,
    next: usize,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let i = self.vec.next_one(self.next)?;
        self.next = i + 1;
        Some(i)
    }
}

/// An incrementally built basis in reduced echelon form, keyed by the lowest
/// set bit of each row. Optionally every row carries the combination of
/// inserted vectors it came from, which is what kernel computations need.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<BitVec>,
    origins: Vec<BitVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            origins: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Self::new(dim);
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduces `v` against the basis in place. When `origin` is given, it is
    /// updated with the origins of every row used.
    fn reduce_tracked(&self, v: &mut BitVec, mut origin: Option<&mut BitVec>) {
        let mut pos = 0;
        while let Some(p) = v.next_one(pos) {
            if let Some(r) = self.pivot_row[p] {
                *v ^= &self.rows[r];
                if let Some(o) = origin.as_deref_mut() {
                    *o ^= &self.origins[r];
                }
            }
            pos = p + 1;
        }
    }

    pub fn reduce(&self, v: &mut BitVec) {
        self.reduce_tracked(v, None);
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns `false` if it was already there.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let origin = BitVec::zeros(0);
        self.insert_with_origin(v, origin).is_none()
    }

    /// Adds `v` (tagged with `origin`) to the span. If `v` is dependent, the
    /// combination of origins summing to zero is returned instead.
    pub fn insert_with_origin(&mut self, mut v: BitVec, mut origin: BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.dim);
        let track = !origin.is_empty();
        self.reduce_tracked(&mut v, track.then_some(&mut origin));
        match v.first_one() {
            None => Some(origin),
            Some(p) => {
                // keep rows fully reduced so `contains` is a single pass
                for r in 0..self.rows.len() {
                    if self.rows[r].get(p) {
                        self.rows[r] ^= &v;
                        if track {
                            self.origins[r] ^= &origin;
                        }
                    }
                }
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(v);
                self.origins.push(origin);
                None
            }
        }
    }

    /// Expresses `v` as a combination of inserted origins, if `v` is in the span.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let width = self.origins.first().map_or(0, BitVec::len);
        let mut w = v.clone();
        let mut origin = BitVec::zeros(width);
        self.reduce_tracked(&mut w, Some(&mut origin));
        w.is_zero().then_some(origin)
    }
}

/// Kernel basis and image echelon of a linear map given by the images of the
/// standard basis vectors of its domain.
pub fn kernel_and_image(codim: usize, images: &[BitVec]) -> (Vec<BitVec>, Echelon) {
    let n = images.len();
    let mut image = Echelon::new(codim);
    let mut kernel = Vec::new();
    for (j, col) in images.iter().enumerate() {
        if let Some(k) = image.insert_with_origin(col.clone(), BitVec::unit(n, j)) {
            kernel.push(k);
        }
    }
    (kernel, image)
}
