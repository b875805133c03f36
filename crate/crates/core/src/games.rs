//! Chomp (Subset Takeaway) on complexes: outcomes, Grundy values, winning
//! moves and the involution reduction.

use std::fmt;
use std::str::FromStr;

use crate::canonical::{apply_permutation, VertexPermutation};
use crate::complex::Complex;
use crate::engine::{evaluate, evaluate_shortcircuit, MemoTable, RunStats, Valuation};
use crate::error::{Error, Result};
use crate::face::{Face, FaceBits};

pub type GrundyValue = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    FirstPlayerWin,
    FirstPlayerLoss,
}

impl Outcome {
    pub fn is_loss(self) -> bool {
        self == Outcome::FirstPlayerLoss
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::FirstPlayerWin => "first-player-win",
            Outcome::FirstPlayerLoss => "first-player-loss",
        })
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Outcome> {
        match s {
            "first-player-win" => Ok(Outcome::FirstPlayerWin),
            "first-player-loss" => Ok(Outcome::FirstPlayerLoss),
            _ => Err(Error::InvalidParameter(format!("unknown outcome `{s}`"))),
        }
    }
}

/// Least nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = GrundyValue>>(values: I) -> GrundyValue {
    let values: Vec<GrundyValue> = values.into_iter().collect();
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if let Some(s) = seen.get_mut(v as usize) {
            *s = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(0) as GrundyValue
}

fn chomp_children(c: &Complex, largest_first: bool) -> Vec<Complex> {
    let mut moves: Vec<u8> = c.bits().iter().filter(|&m| m != 0).collect();
    if largest_first {
        moves.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    }
    moves.into_iter().map(|m| c.chomp_unchecked(m)).collect()
}

fn is_terminal(c: &Complex) -> bool {
    c.face_count() == 1
}

fn check_position(c: &Complex) -> Result<()> {
    if !c.has_empty_face() {
        return Err(Error::InvalidPosition(
            "a game position must contain the empty face".into(),
        ));
    }
    Ok(())
}

/// Grundy values via mex over every Chomp move.
#[derive(Debug, Clone, Copy, Default)]
pub struct Grundy;

impl Valuation for Grundy {
    type Value = GrundyValue;

    fn tag(&self) -> &'static str {
        "grundy"
    }

    fn base(&self, c: &Complex) -> Option<GrundyValue> {
        is_terminal(c).then_some(0)
    }

    fn children(&self, c: &Complex) -> Vec<Complex> {
        chomp_children(c, false)
    }

    fn combine(&self, values: &[GrundyValue]) -> GrundyValue {
        mex(values.iter().copied())
    }
}

/// Win/loss outcome. A single losing successor decides a win.
///
/// `largest_first` expands moves on bigger faces before smaller ones; the
/// outcome does not depend on it, only the amount of work.
#[derive(Debug, Clone, Copy, Default)]
pub struct WinLoss {
    pub largest_first: bool,
}

impl Valuation for WinLoss {
    type Value = Outcome;

    fn tag(&self) -> &'static str {
        "winloss"
    }

    fn base(&self, c: &Complex) -> Option<Outcome> {
        is_terminal(c).then_some(Outcome::FirstPlayerLoss)
    }

    fn children(&self, c: &Complex) -> Vec<Complex> {
        chomp_children(c, self.largest_first)
    }

    fn combine(&self, values: &[Outcome]) -> Outcome {
        if values.iter().any(|o| o.is_loss()) {
            Outcome::FirstPlayerWin
        } else {
            Outcome::FirstPlayerLoss
        }
    }

    fn decisive(&self, child: &Outcome) -> Option<Outcome> {
        child.is_loss().then_some(Outcome::FirstPlayerWin)
    }
}

pub fn grundy(c: &Complex) -> Result<(GrundyValue, RunStats)> {
    grundy_with(c, &mut MemoTable::new())
}

pub fn grundy_with(
    c: &Complex,
    memo: &mut MemoTable<GrundyValue>,
) -> Result<(GrundyValue, RunStats)> {
    check_position(c)?;
    evaluate(c, &Grundy, memo)
}

pub fn winloss(c: &Complex) -> Result<(Outcome, RunStats)> {
    winloss_with(c, &WinLoss::default(), &mut MemoTable::new())
}

pub fn winloss_with(
    c: &Complex,
    v: &WinLoss,
    memo: &mut MemoTable<Outcome>,
) -> Result<(Outcome, RunStats)> {
    check_position(c)?;
    evaluate_shortcircuit(c, v, memo)
}

/// Every move leading to a first-player loss, ascending by mask. With
/// `find_first` the search stops at the first one found.
pub fn winning_moves(c: &Complex, find_first: bool) -> Result<(Vec<Face>, RunStats)> {
    winning_moves_with(c, find_first, &WinLoss::default(), &mut MemoTable::new())
}

pub fn winning_moves_with(
    c: &Complex,
    find_first: bool,
    v: &WinLoss,
    memo: &mut MemoTable<Outcome>,
) -> Result<(Vec<Face>, RunStats)> {
    check_position(c)?;
    let mut stats = RunStats::default();
    let mut moves = Vec::new();
    for x in c.faces().filter(|f| !f.is_empty()) {
        let child = c.chomp_unchecked(x.bits());
        let (o, s) = evaluate_shortcircuit(&child, v, memo)?;
        stats.merge(&s);
        if o.is_loss() {
            moves.push(x);
            if find_first {
                break;
            }
        }
    }
    Ok((moves, stats))
}

/// Faces fixed setwise by an involutive automorphism `phi` of `c`.
///
/// Both hypotheses of the reduction are checked: `phi` must be an
/// automorphism with `phi∘phi = id`, and the fixed faces must be downward
/// closed. When they hold, the result has the same outcome and Grundy
/// value as `c`.
pub fn fixed_subcomplex(c: &Complex, phi: &VertexPermutation) -> Result<Complex> {
    if phi.len() != c.n() as usize {
        return Err(Error::InvalidParameter(format!(
            "permutation on {} points for a complex on {} vertices",
            phi.len(),
            c.n()
        )));
    }
    if !phi.compose(phi).is_identity() {
        return Err(Error::NotApplicable(format!("{phi} is not an involution")));
    }
    if apply_permutation(c, phi)? != *c {
        return Err(Error::NotApplicable(format!(
            "{phi} is not an automorphism of the complex"
        )));
    }
    let fixed: FaceBits = c
        .faces()
        .filter(|&f| phi.apply_face(f) == f)
        .map(Face::bits)
        .collect();
    Complex::from_bits(c.n(), fixed).map_err(|_| {
        Error::NotApplicable(format!("the faces fixed by {phi} are not downward closed"))
    })
}
