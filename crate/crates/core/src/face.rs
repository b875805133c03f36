//! Faces as vertex bitmasks and fixed-width sets of faces.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set the bit-level types can hold.
pub const MAX_VERTICES: u8 = 8;

/// A subset of the ground set `{0, .., n-1}`; vertex `i` is bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face(u8);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u8) -> Face {
        Face(bits)
    }

    pub fn from_vertices<I: IntoIterator<Item = u8>>(vertices: I) -> Result<Face> {
        let mut bits = 0u8;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} exceeds the supported ground set of {MAX_VERTICES}"
                )));
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains_vertex(self, v: u8) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub const fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether every vertex lies below `n`.
    pub const fn fits(self, n: u8) -> bool {
        n >= MAX_VERTICES || self.0 >> n == 0
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = u8> {
        let bits = self.0;
        (0..MAX_VERTICES).filter(move |&v| bits & (1 << v) != 0)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Digit-string notation (`013` for `{0,1,3}`); the empty face prints as `{}`.
impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        for v in self.vertices() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A set of faces on at most eight vertices, stored as a 256-bit
/// characteristic vector indexed by face mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FaceBits(pub(crate) [u64; 4]);

impl FaceBits {
    pub const EMPTY: FaceBits = FaceBits([0; 4]);

    pub const fn from_words(words: [u64; 4]) -> FaceBits {
        FaceBits(words)
    }

    pub const fn words(&self) -> [u64; 4] {
        self.0
    }

    /// All masks below `limit` (`limit <= 256`).
    pub fn prefix(limit: usize) -> FaceBits {
        let mut w = [0u64; 4];
        for (i, word) in w.iter_mut().enumerate() {
            let lo = i * 64;
            if limit >= lo + 64 {
                *word = u64::MAX;
            } else if limit > lo {
                *word = (1u64 << (limit - lo)) - 1;
            }
        }
        FaceBits(w)
    }

    #[inline]
    pub fn contains(&self, mask: u8) -> bool {
        (self.0[(mask >> 6) as usize] >> (mask & 63)) & 1 != 0
    }

    #[inline]
    pub fn insert(&mut self, mask: u8) {
        self.0[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    #[inline]
    pub fn remove(&mut self, mask: u8) {
        self.0[(mask >> 6) as usize] &= !(1 << (mask & 63));
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    #[inline]
    pub fn and(&self, o: &FaceBits) -> FaceBits {
        FaceBits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    #[inline]
    pub fn or(&self, o: &FaceBits) -> FaceBits {
        FaceBits(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }

    #[inline]
    pub fn and_not(&self, o: &FaceBits) -> FaceBits {
        FaceBits(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }

    #[inline]
    pub fn is_subset_of(&self, o: &FaceBits) -> bool {
        (0..4).all(|i| self.0[i] & !o.0[i] == 0)
    }

    /// Shift every member mask up by `s` (`s < 256`); overflow is dropped.
    pub fn shl(&self, s: u32) -> FaceBits {
        let (ws, bs) = ((s / 64) as usize, s % 64);
        let mut out = [0u64; 4];
        for i in (ws..4).rev() {
            let src = i - ws;
            out[i] = self.0[src] << bs;
            if bs != 0 && src > 0 {
                out[i] |= self.0[src - 1] >> (64 - bs);
            }
        }
        FaceBits(out)
    }

    /// Shift every member mask down by `s`; masks below `s` are dropped.
    pub fn shr(&self, s: u32) -> FaceBits {
        let (ws, bs) = ((s / 64) as usize, s % 64);
        let mut out = [0u64; 4];
        for (i, o) in out.iter_mut().enumerate().take(4usize.saturating_sub(ws)) {
            let src = i + ws;
            *o = self.0[src] >> bs;
            if bs != 0 && src + 1 < 4 {
                *o |= self.0[src + 1] << (64 - bs);
            }
        }
        FaceBits(out)
    }

    /// Member masks in ascending order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }

    /// Compares the ascending sorted mask lists of two equal-sized sets
    /// lexicographically. For equal cardinality this reduces to: the set
    /// owning the lowest mask of the symmetric difference is smaller.
    pub fn encoding_cmp(&self, o: &FaceBits) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        for i in 0..4 {
            let d = self.0[i] ^ o.0[i];
            if d != 0 {
                let low = d & d.wrapping_neg();
                return if self.0[i] & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for FaceBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(Face::from_bits))
            .finish()
    }
}

impl FromIterator<u8> for FaceBits {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut b = FaceBits::EMPTY;
        for m in iter {
            b.insert(m);
        }
        b
    }
}

pub struct Iter {
    words: [u64; 4],
    word: usize,
}

impl Iterator for Iter {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        while self.word < 4 {
            let w = self.words[self.word];
            if w != 0 {
                let tz = w.trailing_zeros();
                self.words[self.word] = w & (w - 1);
                return Some((self.word as u32 * 64 + tz) as u8);
            }
            self.word += 1;
        }
        None
    }
}

/// Precomputed masks over the 256 possible faces.
pub(crate) struct Tables {
    /// `up[x]`: every face containing `x`.
    pub up: [FaceBits; 256],
    /// `down[x]`: every subset of `x`.
    pub down: [FaceBits; 256],
    /// `with_vertex[v]`: every face containing vertex `v`.
    pub with_vertex: [FaceBits; 8],
    /// `of_size[j]`: every face with exactly `j` vertices.
    pub of_size: [FaceBits; 9],
}

pub(crate) fn tables() -> &'static Tables {
    use std::sync::OnceLock;
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut t = Tables {
            up: [FaceBits::EMPTY; 256],
            down: [FaceBits::EMPTY; 256],
            with_vertex: [FaceBits::EMPTY; 8],
            of_size: [FaceBits::EMPTY; 9],
        };
        for x in 0..=255u8 {
            for m in 0..=255u8 {
                if m & x == x {
                    t.up[x as usize].insert(m);
                }
                if m & !x == 0 {
                    t.down[x as usize].insert(m);
                }
            }
            for v in 0..8 {
                if x & (1 << v) != 0 {
                    t.with_vertex[v].insert(x);
                }
            }
            t.of_size[x.count_ones() as usize].insert(x);
        }
        t
    })
}
