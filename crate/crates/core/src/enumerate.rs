//! Census of downward-closed families on `n` points, labeled and up to
//! isomorphism.

use num_bigint::BigUint;
use rustc_hash::FxHashSet;

use crate::canonical::{canonical_key, CanonicalKey};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{tables, FaceBits, MAX_VERTICES};

/// Largest `n` enumerated family by family.
pub const EXHAUSTIVE_MAX_N: u8 = 6;

/// Published Dedekind numbers `M(0..=8)`, for display next to refusals.
pub const KNOWN_DEDEKIND: [&str; 9] = [
    "2",
    "3",
    "6",
    "20",
    "168",
    "7581",
    "7828354",
    "2414682040998",
    "56130437228687557907788",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCensus {
    pub n: u8,
    pub labeled_count: BigUint,
    pub unlabeled_count: u64,
}

fn check_exhaustive(n: u8) -> Result<()> {
    if n > EXHAUSTIVE_MAX_N {
        let known = KNOWN_DEDEKIND
            .get(n as usize)
            .map(|m| format!(" (the known count is {m})"))
            .unwrap_or_default();
        return Err(Error::Refused(format!(
            "exhaustive enumeration on {n} points is infeasible; the bound is {EXHAUSTIVE_MAX_N}{known}"
        )));
    }
    Ok(())
}

/// Visits every downward-closed family on `n` labeled points, including
/// the empty family and `{∅}`.
///
/// Masks are decided from the top down. A mask already covered by a chosen
/// maximal face is forced in; otherwise it is either left out or chosen as
/// a new maximal face, which pulls in all of its subsets.
pub fn for_each_labeled<F: FnMut(&Complex)>(n: u8, mut f: F) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "ground set size {n} is too large"
        )));
    }
    check_exhaustive(n)?;
    fn walk<F: FnMut(&Complex)>(n: u8, next: i32, covered: FaceBits, f: &mut F) {
        let mut m = next;
        while m >= 0 && covered.contains(m as u8) {
            m -= 1;
        }
        if m < 0 {
            f(&Complex::from_bits_unchecked(n, covered));
            return;
        }
        walk(n, m - 1, covered, f);
        walk(n, m - 1, covered.or(&tables().down[m as usize]), f);
    }
    walk(n, (1i32 << n) - 1, FaceBits::EMPTY, &mut f);
    Ok(())
}

/// The Dedekind number `M(n)` by direct enumeration.
pub fn count_labeled_complexes(n: u8) -> Result<BigUint> {
    let mut count = 0u64;
    for_each_labeled(n, |_| count += 1)?;
    Ok(BigUint::from(count))
}

pub fn count_unlabeled_complexes(n: u8) -> Result<u64> {
    Ok(census(n, None)?.unlabeled_count)
}

/// Labeled and unlabeled counts in one pass. `stream` receives each
/// isomorphism class once, as its canonical key, in discovery order.
pub fn census(n: u8, mut stream: Option<&mut dyn FnMut(&CanonicalKey)>) -> Result<ComplexCensus> {
    let mut labeled = 0u64;
    let mut seen: FxHashSet<CanonicalKey> = FxHashSet::default();
    for_each_labeled(n, |c| {
        labeled += 1;
        let key = canonical_key(c);
        if seen.insert(key) {
            if let Some(s) = stream.as_mut() {
                s(&key);
            }
        }
    })?;
    Ok(ComplexCensus {
        n,
        labeled_count: BigUint::from(labeled),
        unlabeled_count: seen.len() as u64,
    })
}

/// Counts isomorphism classes without labeled enumeration: every complex
/// containing `∅` is reached from `B_n` by Chomp moves, so a search over
/// canonical forms from `B_n` finds them all; the empty family adds one.
///
/// Memory grows with the class count; `n = 7` needs tens of gigabytes.
pub fn count_unlabeled_by_descent(n: u8) -> Result<u64> {
    if n > 7 {
        return Err(Error::Refused(format!(
            "descent census on {n} points is infeasible; the bound is 7"
        )));
    }
    let root = canonical_key(&Complex::boolean_lattice(n)?);
    let mut seen: FxHashSet<CanonicalKey> = FxHashSet::default();
    seen.insert(root);
    let mut stack = vec![root];
    while let Some(key) = stack.pop() {
        let c = key.representative();
        for m in c.bits().iter().filter(|&m| m != 0) {
            let child = canonical_key(&c.chomp_unchecked(m));
            if seen.insert(child) {
                stack.push(child);
            }
        }
    }
    Ok(seen.len() as u64 + 1)
}
