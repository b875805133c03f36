//! Counting linear extensions of downward-closed families.
//!
//! The last element of any linear extension is a maximal face, so
//! `e(A) = sum over maximal m of e(A \ {m})`, with `e = 1` for a family of
//! at most one face. The empty face is an ordinary element here.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::complex::Complex;
use crate::engine::{evaluate, MemoTable, RunStats, Valuation};
use crate::error::{Error, Result};
use crate::face::Face;

pub type ExtensionCount = BigUint;

/// Largest family [`brute_force_extensions`] will enumerate.
pub const BRUTE_FORCE_MAX_FACES: u32 = 10;

#[derive(Debug, Clone, Copy, Default)]
pub struct LinearExtensions;

impl Valuation for LinearExtensions {
    type Value = BigUint;

    fn tag(&self) -> &'static str {
        "linext"
    }

    fn base(&self, c: &Complex) -> Option<BigUint> {
        (c.face_count() <= 1).then(BigUint::one)
    }

    fn children(&self, c: &Complex) -> Vec<Complex> {
        c.maximal_faces()
            .into_iter()
            .map(|m| c.delete_element(m).expect("maximal faces are deletable"))
            .collect()
    }

    fn combine(&self, values: &[BigUint]) -> BigUint {
        values.iter().sum()
    }
}

pub fn count_linear_extensions(c: &Complex) -> Result<(ExtensionCount, RunStats)> {
    count_linear_extensions_with(c, &mut MemoTable::new())
}

pub fn count_linear_extensions_with(
    c: &Complex,
    memo: &mut MemoTable<BigUint>,
) -> Result<(ExtensionCount, RunStats)> {
    evaluate(c, &LinearExtensions, memo)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Closed form for `e(P_{n,2})`:
/// `n! (C(n,2) + n)! / prod_{i=1..n} (i n - C(i,2))`.
pub fn e_pn2_closed_form(n: u32) -> ExtensionCount {
    let n = n as u64;
    let choose2 = |m: u64| m * m.saturating_sub(1) / 2;
    let numerator = factorial(n) * factorial(choose2(n) + n);
    let denominator = (1..=n).fold(BigUint::one(), |acc, i| acc * (i * n - choose2(i)));
    let (q, r) = (&numerator / &denominator, &numerator % &denominator);
    assert!(
        r.is_zero(),
        "closed form for e(P_{{{n},2}}) is not integral"
    );
    q
}

/// Counts linear extensions by enumerating every topological order of the
/// faces, without memoization or canonical forms.
pub fn brute_force_extensions(c: &Complex) -> Result<ExtensionCount> {
    let faces: Vec<Face> = c.faces().collect();
    if faces.len() as u32 > BRUTE_FORCE_MAX_FACES {
        return Err(Error::Refused(format!(
            "{} faces exceed the brute-force bound of {BRUTE_FORCE_MAX_FACES}",
            faces.len()
        )));
    }
    // below[i]: indices of faces strictly contained in face i
    let below: Vec<u16> = faces
        .iter()
        .map(|f| {
            faces
                .iter()
                .enumerate()
                .filter(|(_, g)| **g != *f && g.is_subset_of(*f))
                .fold(0u16, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    fn count(placed: u16, below: &[u16]) -> u64 {
        let all = ((1u32 << below.len()) - 1) as u16;
        if placed == all {
            return 1;
        }
        (0..below.len())
            .filter(|&i| placed & (1 << i) == 0 && below[i] & !placed == 0)
            .map(|i| count(placed | (1 << i), below))
            .sum()
    }
    Ok(BigUint::from(count(0, &below)))
}
