//! Canonical forms of complexes under relabeling of the ground set.
//!
//! Vertices are first sorted by their face-count invariant, largest first,
//! which splits the ground set into blocks of equal invariants. The canonical representative
//! is the image with the smallest encoding over all permutations that map
//! each block onto its own range of labels. The encoding of a complex is its
//! ascending list of face masks, compared lexicographically.
//!
//! The minimum is found by assigning labels `0, 1, ..` in turn. Once labels
//! `0..p` are placed, every face mask below `2^p` of the image is fixed, and
//! the next label `p` fixes the masks in `[2^p, 2^(p+1))`. Those masks form a
//! "segment", and the encoding order is lexicographic over segments, so at
//! each level only the candidates producing the least segment survive.
//! Candidates that are twins (their transposition is an automorphism) lead to
//! identical subtrees and only one of them is expanded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{tables, Face, FaceBits, MAX_VERTICES};

/// Per-vertex face counts: entry `j - 1` is the number of `j`-sets of the
/// complex containing the vertex, for `j = 1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexInvariant {
    counts: Vec<u32>,
}

impl VertexInvariant {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// A bijection on `{0, .., n-1}`; `images[i]` is where vertex `i` goes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    images: Vec<u8>,
}

impl VertexPermutation {
    pub fn new(images: Vec<u8>) -> Result<VertexPermutation> {
        if images.len() > MAX_VERTICES as usize {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} exceeds {MAX_VERTICES}",
                images.len()
            )));
        }
        let mut seen = 0u16;
        for &x in &images {
            if x as usize >= images.len() || seen & (1 << x) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen |= 1 << x;
        }
        Ok(VertexPermutation { images })
    }

    pub fn identity(n: u8) -> VertexPermutation {
        VertexPermutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[6, 7]]` for `(6 7)`.
    pub fn from_cycles(n: u8, cycles: &[Vec<u8>]) -> Result<VertexPermutation> {
        let mut images: Vec<u8> = (0..n).collect();
        let mut touched = 0u16;
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidParameter(format!(
                        "cycle vertex {v} outside the ground set of size {n}"
                    )));
                }
                if touched & (1 << v) != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} appears in more than one cycle position"
                    )));
                }
                touched |= 1 << v;
                images[v as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        VertexPermutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn image(&self, v: u8) -> u8 {
        self.images[v as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        VertexPermutation { images: inv }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &VertexPermutation) -> VertexPermutation {
        VertexPermutation {
            images: first
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn apply_face(&self, f: Face) -> Face {
        let mut out = 0u8;
        for v in f.vertices() {
            out |= 1 << self.images[v as usize];
        }
        Face::from_bits(out)
    }
}

impl fmt::Debug for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = 0u16;
        let mut any = false;
        for start in 0..self.images.len() as u8 {
            if done & (1 << start) != 0 || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut v = start;
            loop {
                done |= 1 << v;
                write!(f, "{v}")?;
                v = self.image(v);
                if v == start {
                    break;
                }
                write!(f, " ")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Memo key: the characteristic vector of the canonical representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    n: u8,
    bits: FaceBits,
}

impl CanonicalKey {
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn bits(&self) -> &FaceBits {
        &self.bits
    }

    pub fn representative(&self) -> Complex {
        Complex::from_bits_unchecked(self.n, self.bits)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

fn hex_digits(n: u8) -> usize {
    ((1usize << n) / 4).max(1)
}

/// `<n>:<hex>`, the characteristic vector as a big-endian hex number with
/// one digit per four possible faces.
impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        let w = self.bits.words();
        let digits = hex_digits(self.n);
        for d in (0..digits).rev() {
            let nibble = (w[d / 16] >> ((d % 16) * 4)) & 0xf;
            write!(f, "{nibble:x}")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<CanonicalKey> {
        let bad = || Error::InvalidParameter(format!("malformed canonical key `{s}`"));
        let (n, hex) = s.split_once(':').ok_or_else(bad)?;
        let n: u8 = n.parse().map_err(|_| bad())?;
        if n > MAX_VERTICES || hex.len() != hex_digits(n) {
            return Err(bad());
        }
        let mut w = [0u64; 4];
        for (i, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(bad)? as u64;
            w[i / 16] |= nibble << ((i % 16) * 4);
        }
        let c = Complex::from_bits(n, FaceBits::from_words(w))?;
        let key = canonical_key(&c);
        if key.bits != *c.bits() {
            return Err(Error::InvalidParameter(format!(
                "`{s}` is not in canonical form"
            )));
        }
        Ok(key)
    }
}

/// Invariants packed one byte per entry, `j = 1` in the top byte, so that
/// integer order is lexicographic order of the count vectors. Counts never
/// exceed `C(7, 3) = 35`, so bytes do not carry into each other.
#[inline]
fn packed_invariants(c: &Complex) -> [u64; N8] {
    let mut out = [0u64; N8];
    for m in c.bits().iter() {
        let size = m.count_ones();
        if size == 0 {
            continue;
        }
        let inc = 1u64 << (8 * (8 - size));
        let mut rest = m;
        while rest != 0 {
            out[rest.trailing_zeros() as usize] += inc;
            rest &= rest - 1;
        }
    }
    out
}

pub fn vertex_invariants(c: &Complex) -> Vec<VertexInvariant> {
    let n = c.n() as usize;
    let t = tables();
    (0..n)
        .map(|v| {
            let with_v = c.bits().and(&t.with_vertex[v]);
            VertexInvariant {
                counts: (1..=n).map(|j| with_v.and(&t.of_size[j]).count()).collect(),
            }
        })
        .collect()
}

pub fn apply_permutation(c: &Complex, sigma: &VertexPermutation) -> Result<Complex> {
    if sigma.len() != c.n() as usize {
        return Err(Error::InvalidParameter(format!(
            "permutation of length {} applied to a complex on {} vertices",
            sigma.len(),
            c.n()
        )));
    }
    let faces: FaceBits = c.faces().map(|f| sigma.apply_face(f).bits()).collect();
    Ok(Complex::from_bits_unchecked(c.n(), faces))
}

#[inline]
fn segment_cmp(a: u128, b: u128) -> Ordering {
    let d = a ^ b;
    if d == 0 {
        Ordering::Equal
    } else if a & d & d.wrapping_neg() != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

const N8: usize = MAX_VERTICES as usize;
const MAX_AUTOS: usize = 16;

struct Search<'a> {
    n: usize,
    faces: &'a FaceBits,
    /// Vertices sorted by invariant.
    sorted: [u8; N8],
    /// For label position `p`, the range of `sorted` forming its block.
    block: [(u8, u8); N8],
    /// Twin class representative of each vertex.
    twin: [u8; N8],
    used: u8,
    order: [u8; N8],
    segs: [u128; N8],
    best: Option<([u128; N8], [u8; N8])>,
    /// `table[s]` is the old-label mask of the image face `s`.
    table: [u8; 256],
    /// Image faces placed so far, ascending; a prefix per level.
    image: [u8; 256],
    /// Automorphisms found from leaves that tie with the best.
    autos: Vec<[u8; N8]>,
}

impl Search<'_> {
    /// Segment of label `p` if it goes to `w`, or `None` as soon as it is
    /// known to be worse than `bound`. Only image faces can carry segment
    /// bits, since the complex is downward closed.
    #[inline]
    fn segment(&self, len: usize, w: u8, mut bound: Option<u128>) -> Option<u128> {
        let bit = 1u8 << w;
        let mut seg = 0u128;
        for &s in &self.image[..len] {
            let present = self.faces.contains(self.table[s as usize] | bit);
            if present {
                seg |= 1 << s;
            }
            if let Some(b) = bound {
                if present != ((b >> s) & 1 == 1) {
                    if present {
                        bound = None;
                    } else {
                        return None;
                    }
                }
            }
        }
        Some(seg)
    }

    /// Whether `w` lies in the orbit of an explored vertex under the found
    /// automorphisms that fix the labels placed so far.
    fn orbit_hits(&self, p: usize, w: u8, explored: u8) -> bool {
        let mut orbit = 1u8 << w;
        loop {
            let mut grown = orbit;
            for g in &self.autos {
                if self.order[..p].iter().any(|&v| g[v as usize] != v) {
                    continue;
                }
                for (v, &gv) in g.iter().enumerate().take(self.n) {
                    if orbit & (1 << v) != 0 {
                        grown |= 1 << gv;
                    }
                }
            }
            if grown & explored != 0 {
                return true;
            }
            if grown == orbit {
                return false;
            }
            orbit = grown;
        }
    }

    fn run(&mut self, p: usize, len: usize, mut better: bool) {
        if p == self.n {
            match &self.best {
                Some((_, best_order)) if !better => {
                    // equal encodings: old vertex order[l] and best_order[l]
                    // play the same role, which is an automorphism
                    let mut gamma = [0u8; N8];
                    for l in 0..self.n {
                        gamma[self.order[l] as usize] = best_order[l];
                    }
                    if self.autos.len() < MAX_AUTOS
                        && gamma[..self.n]
                            .iter()
                            .enumerate()
                            .any(|(i, &x)| i != x as usize)
                    {
                        self.autos.push(gamma);
                    }
                }
                _ => self.best = Some((self.segs, self.order)),
            }
            return;
        }
        let best_seg = if better {
            None
        } else {
            self.best.as_ref().map(|b| b.0[p])
        };
        let (lo, hi) = self.block[p];
        let mut cands = [(0u8, 0u128); N8];
        let mut count = 0;
        let mut classes = 0u8;
        let mut min: Option<u128> = None;
        for &w in &self.sorted[lo as usize..hi as usize] {
            if self.used & (1 << w) != 0 || classes & (1 << self.twin[w as usize]) != 0 {
                continue;
            }
            classes |= 1 << self.twin[w as usize];
            if let Some(seg) = self.segment(len, w, min.or(best_seg)) {
                if min.is_none_or(|m| segment_cmp(seg, m) == Ordering::Less) {
                    min = Some(seg);
                }
                cands[count] = (w, seg);
                count += 1;
            }
        }
        let Some(min) = min else { return };
        if let Some(b) = best_seg {
            if segment_cmp(min, b) == Ordering::Less {
                better = true;
            }
        }
        let half = 1u8 << p;
        let mut explored = 0u8;
        for &(w, seg) in &cands[..count] {
            if seg != min {
                continue;
            }
            if explored != 0 && self.orbit_hits(p, w, explored) {
                continue;
            }
            explored |= 1 << w;
            self.order[p] = w;
            self.segs[p] = seg;
            self.used |= 1 << w;
            let mut end = len;
            for k in 0..len {
                let s = self.image[k];
                if (seg >> s) & 1 == 1 {
                    let t = s | half;
                    self.image[end] = t;
                    self.table[t as usize] = self.table[s as usize] | (1 << w);
                    end += 1;
                }
            }
            self.run(p + 1, end, better);
            self.used &= !(1 << w);
            better = false;
        }
    }
}

fn twins(faces: &FaceBits, u: u8, v: u8) -> bool {
    let t = tables();
    let (wu, wv) = (&t.with_vertex[u as usize], &t.with_vertex[v as usize]);
    let only_u = faces.and(wu).and_not(wv);
    let only_v = faces.and(wv).and_not(wu);
    let (lo, hi) = if u < v {
        (only_u, only_v)
    } else {
        (only_v, only_u)
    };
    let shift = (1u32 << u.max(v)) - (1u32 << u.min(v));
    lo.shl(shift) == hi
}

fn assemble(n: usize, has_empty: bool, segs: &[u128; N8]) -> FaceBits {
    let mut w = [0u64; 4];
    if has_empty {
        w[0] |= 1;
    }
    for (p, &seg) in segs.iter().enumerate().take(n) {
        match p {
            0..=5 => w[0] |= (seg as u64) << (1u32 << p),
            6 => w[1] = seg as u64,
            _ => {
                w[2] = seg as u64;
                w[3] = (seg >> 64) as u64;
            }
        }
    }
    FaceBits::from_words(w)
}

/// Canonical key and a witness permutation taking `c` onto the canonical
/// representative.
pub fn canonicalize(c: &Complex) -> (CanonicalKey, VertexPermutation) {
    let n = c.n() as usize;
    let inv = packed_invariants(c);
    let mut sorted = [0u8; N8];
    for (i, s) in sorted.iter_mut().enumerate().take(n) {
        *s = i as u8;
    }
    sorted[..n].sort_by_key(|&v| (std::cmp::Reverse(inv[v as usize]), v));

    let mut block = [(0u8, 0u8); N8];
    let mut twin = [0u8; N8];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && inv[sorted[end] as usize] == inv[sorted[start] as usize] {
            end += 1;
        }
        for b in block.iter_mut().take(end).skip(start) {
            *b = (start as u8, end as u8);
        }
        for i in start..end {
            let v = sorted[i];
            twin[v as usize] = v;
            for &u in &sorted[start..i] {
                if twin[u as usize] == u && twins(c.bits(), u, v) {
                    twin[v as usize] = u;
                    break;
                }
            }
        }
        start = end;
    }

    let mut search = Search {
        n,
        faces: c.bits(),
        sorted,
        block,
        twin,
        used: 0,
        order: [0; N8],
        segs: [0; N8],
        best: None,
        table: [0; 256],
        image: [0; 256],
        autos: Vec::new(),
    };
    let len = usize::from(c.has_empty_face());
    search.run(0, len, false);
    let (segs, order) = search.best.expect("search always reaches a leaf");

    let mut images = vec![0u8; n];
    for (label, &v) in order.iter().enumerate().take(n) {
        images[v as usize] = label as u8;
    }
    let key = CanonicalKey {
        n: c.n(),
        bits: assemble(n, c.has_empty_face(), &segs),
    };
    (key, VertexPermutation { images })
}

pub fn canonical_key(c: &Complex) -> CanonicalKey {
    canonicalize(c).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::for_each_labeled;
    use proptest::prelude::*;

    fn face(vs: &[u8]) -> Face {
        Face::from_vertices(vs.iter().copied()).unwrap()
    }

    fn all_perms(n: u8) -> Vec<VertexPermutation> {
        fn go(prefix: &mut Vec<u8>, n: u8, out: &mut Vec<VertexPermutation>) {
            if prefix.len() == n as usize {
                out.push(VertexPermutation::new(prefix.clone()).unwrap());
                return;
            }
            for v in 0..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    go(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), n, &mut out);
        out
    }

    /// Minimum encoding over every permutation, optionally restricted to
    /// those that keep invariants descending along the labels.
    fn brute_min(c: &Complex, perms: &[VertexPermutation], consistent_only: bool) -> FaceBits {
        let inv = vertex_invariants(c);
        let mut best: Option<FaceBits> = None;
        for p in perms {
            if consistent_only {
                let pinv = p.inverse();
                let ok = (1..c.n())
                    .all(|l| inv[pinv.image(l - 1) as usize] >= inv[pinv.image(l) as usize]);
                if !ok {
                    continue;
                }
            }
            let img = *apply_permutation(c, p).unwrap().bits();
            if best.is_none_or(|b| img.encoding_cmp(&b) == Ordering::Less) {
                best = Some(img);
            }
        }
        best.unwrap()
    }

    #[test]
    fn invariants_direct_counts() {
        let b2 = Complex::pnk(2, 2).unwrap();
        for inv in vertex_invariants(&b2) {
            assert_eq!(inv.counts(), &[1, 1]);
        }
        let c = Complex::closure_of(&[face(&[0, 1]), face(&[2])], 3).unwrap();
        let inv = vertex_invariants(&c);
        assert_eq!(inv[0].counts(), &[1, 1, 0]);
        assert_eq!(inv[1].counts(), &[1, 1, 0]);
        assert_eq!(inv[2].counts(), &[1, 0, 0]);
    }

    #[test]
    fn permutation_basics() {
        let c = Complex::closure_of(&[face(&[1])], 2).unwrap();
        let swap = VertexPermutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let img = apply_permutation(&c, &swap).unwrap();
        assert_eq!(img, Complex::closure_of(&[face(&[0])], 2).unwrap());
        assert_eq!(
            apply_permutation(&c, &VertexPermutation::identity(2)).unwrap(),
            c
        );
        assert!(VertexPermutation::new(vec![0, 0]).is_err());
        assert!(VertexPermutation::new(vec![0, 2]).is_err());
        assert!(apply_permutation(&c, &VertexPermutation::identity(3)).is_err());
        let cyc = VertexPermutation::from_cycles(5, &[vec![0, 2, 4], vec![1, 3]]).unwrap();
        assert_eq!(cyc.to_string(), "(0 2 4)(1 3)");
        assert_eq!(cyc.compose(&cyc.inverse()), VertexPermutation::identity(5));
    }

    #[test]
    fn low_labels_preferred() {
        let c = Complex::closure_of(&[face(&[1])], 2).unwrap();
        let (key, _) = canonicalize(&c);
        assert_eq!(
            key.representative(),
            Complex::closure_of(&[face(&[0])], 2).unwrap()
        );
    }

    #[test]
    fn isomorphic_pair_shares_key() {
        let a = Complex::closure_of(&[face(&[1, 2]), face(&[0])], 3).unwrap();
        let b = Complex::closure_of(&[face(&[0, 1]), face(&[2])], 3).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn exhaustive_against_brute_force_small_n() {
        for n in 0..=4u8 {
            let perms = all_perms(n);
            let mut classes: std::collections::HashMap<FaceBits, FaceBits> = Default::default();
            for_each_labeled(n, |c| {
                let (key, witness) = canonicalize(c);
                // exact minimum over invariant-consistent relabelings
                assert_eq!(*key.bits(), brute_min(c, &perms, true), "{c:?}");
                assert_eq!(
                    apply_permutation(c, &witness).unwrap(),
                    key.representative()
                );
                // on four points the invariant order never excludes the
                // minimum over all n! relabelings
                let global = brute_min(c, &perms, false);
                assert_eq!(global, *key.bits(), "{c:?}");
                let prev = classes.insert(global, *key.bits());
                assert!(prev.is_none_or(|p| p == *key.bits()));
                let (again, w2) = canonicalize(&key.representative());
                assert_eq!(again, key);
                assert_eq!(
                    apply_permutation(&key.representative(), &w2).unwrap(),
                    key.representative()
                );
            })
            .unwrap();
            let distinct: std::collections::HashSet<_> = classes.values().collect();
            assert_eq!(distinct.len(), classes.len());
        }
    }

    #[test]
    fn key_text_round_trip() {
        let c = Complex::closure_of(&[face(&[0, 1]), face(&[2])], 3).unwrap();
        let key = canonical_key(&c);
        let text = key.to_string();
        assert!(text.starts_with("3:"));
        assert_eq!(text.len(), 4);
        assert_eq!(text.parse::<CanonicalKey>().unwrap(), key);
        assert_eq!(
            canonical_key(&Complex::pnk(0, 0).unwrap()).to_string(),
            "0:1"
        );
        assert_eq!(
            canonical_key(&Complex::empty(0).unwrap()).to_string(),
            "0:0"
        );
        let b8 = canonical_key(&Complex::pnk(8, 8).unwrap()).to_string();
        assert_eq!(b8, format!("8:{}", "f".repeat(64)));
        assert!("3:13".parse::<CanonicalKey>().is_err());
        assert_eq!(
            "3:07"
                .parse::<CanonicalKey>()
                .unwrap()
                .representative()
                .face_count(),
            3
        );
        assert!("3:zz".parse::<CanonicalKey>().is_err());
    }

    fn arb_case() -> impl Strategy<Value = (Complex, VertexPermutation)> {
        (1u8..=5).prop_flat_map(|n| {
            let mask = ((1u16 << n) - 1) as u8;
            (
                prop::collection::vec(any::<u8>(), 0..8),
                Just((0..n).collect::<Vec<u8>>()).prop_shuffle(),
            )
                .prop_map(move |(fs, perm)| {
                    let faces: Vec<Face> =
                        fs.into_iter().map(|m| Face::from_bits(m & mask)).collect();
                    (
                        Complex::closure_of(&faces, n).unwrap(),
                        VertexPermutation::new(perm).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn key_is_relabeling_invariant((c, sigma) in arb_case()) {
            let img = apply_permutation(&c, &sigma).unwrap();
            prop_assert_eq!(canonical_key(&img), canonical_key(&c));
            prop_assert_eq!(apply_permutation(&img, &sigma.inverse()).unwrap(), c);
            let inv = vertex_invariants(&c);
            let inv_img = vertex_invariants(&img);
            for v in 0..c.n() {
                prop_assert_eq!(&inv_img[sigma.image(v) as usize], &inv[v as usize]);
            }
        }

        #[test]
        fn representative_orders_invariants((c, _s) in arb_case()) {
            let (key, witness) = canonicalize(&c);
            let rep = key.representative();
            prop_assert!(rep.is_downward_closed());
            prop_assert_eq!(apply_permutation(&c, &witness).unwrap(), rep);
            let inv = vertex_invariants(&rep);
            for w in inv.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
        }
    }
}
