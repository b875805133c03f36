//! Memoized evaluation of recursively defined functions on complexes.
//!
//! A [`Valuation`] describes the recursion: terminal values, the successor
//! positions, and how child values combine. [`evaluate`] walks the
//! recursion with an explicit stack, canonicalizing every non-terminal
//! position and storing its value once per isomorphism class.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::canonical::{canonicalize, CanonicalKey};
use crate::complex::Complex;
use crate::error::{Error, Result};

pub trait Valuation {
    type Value: Clone;

    /// Identifies the valuation; a memo table only serves one tag.
    fn tag(&self) -> &'static str;

    /// Value of a terminal position, `None` if the recursion applies.
    /// Terminal positions never enter the memo table.
    fn base(&self, c: &Complex) -> Option<Self::Value>;

    /// Successors, each with strictly fewer faces than `c`.
    fn children(&self, c: &Complex) -> Vec<Complex>;

    /// Must not depend on the order of `values`.
    fn combine(&self, values: &[Self::Value]) -> Self::Value;

    /// For two-valued recursions: a child value that settles the parent
    /// on its own, together with the parent's value.
    fn decisive(&self, _child: &Self::Value) -> Option<Self::Value> {
        None
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Memo entries created by the run.
    pub positions_stored: u64,
    /// Positions examined, counting terminal positions and memo hits.
    pub positions_visited: u64,
    pub elapsed: Duration,
}

impl RunStats {
    pub fn elapsed_ms(&self) -> u128 {
        self.elapsed.as_millis()
    }

    /// Sums counts and durations of consecutive runs.
    pub fn merge(&mut self, other: &RunStats) {
        self.positions_stored += other.positions_stored;
        self.positions_visited += other.positions_visited;
        self.elapsed += other.elapsed;
    }
}

/// Values keyed by canonical form. Entries are write-once.
pub struct MemoTable<T> {
    map: FxHashMap<CanonicalKey, T>,
    tag: Option<&'static str>,
    limit: Option<usize>,
}

impl<T> Default for MemoTable<T> {
    fn default() -> Self {
        MemoTable::new()
    }
}

impl<T> MemoTable<T> {
    pub fn new() -> MemoTable<T> {
        MemoTable {
            map: FxHashMap::default(),
            tag: None,
            limit: None,
        }
    }

    /// A table that refuses to grow past `limit` entries.
    pub fn with_limit(limit: usize) -> MemoTable<T> {
        MemoTable {
            limit: Some(limit),
            ..MemoTable::new()
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }

    /// Tag of the valuation that populated the table, if any.
    pub fn tag(&self) -> Option<&'static str> {
        self.tag
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&T> {
        self.map.get(key)
    }

    fn bind(&mut self, tag: &'static str) -> Result<()> {
        match self.tag {
            Some(t) if t != tag => Err(Error::ValuationMismatch {
                table: t,
                requested: tag,
            }),
            _ => {
                self.tag = Some(tag);
                Ok(())
            }
        }
    }
}

pub fn evaluate<V: Valuation>(
    c: &Complex,
    v: &V,
    memo: &mut MemoTable<V::Value>,
) -> Result<(V::Value, RunStats)> {
    run(c, v, memo, false)
}

/// Like [`evaluate`], but a node stops expanding children as soon as one
/// child value is decisive. Stored values remain exact for their keys.
pub fn evaluate_shortcircuit<V: Valuation>(
    c: &Complex,
    v: &V,
    memo: &mut MemoTable<V::Value>,
) -> Result<(V::Value, RunStats)> {
    run(c, v, memo, true)
}

struct Frame<T> {
    key: CanonicalKey,
    children: Vec<Complex>,
    next: usize,
    values: Vec<T>,
}

enum Visit<T> {
    Done(T),
    Expand(CanonicalKey, Complex),
}

fn visit<V: Valuation>(
    c: &Complex,
    v: &V,
    memo: &MemoTable<V::Value>,
    stats: &mut RunStats,
) -> Visit<V::Value> {
    stats.positions_visited += 1;
    if let Some(b) = v.base(c) {
        return Visit::Done(b);
    }
    let (key, _) = canonicalize(c);
    match memo.get(&key) {
        Some(x) => Visit::Done(x.clone()),
        None => Visit::Expand(key, key.representative()),
    }
}

fn frame<V: Valuation>(v: &V, key: CanonicalKey, rep: &Complex) -> Frame<V::Value> {
    let children = v.children(rep);
    debug_assert!(children.iter().all(|ch| ch.face_count() < rep.face_count()));
    Frame {
        key,
        values: Vec::with_capacity(children.len()),
        children,
        next: 0,
    }
}

fn run<V: Valuation>(
    root: &Complex,
    v: &V,
    memo: &mut MemoTable<V::Value>,
    short: bool,
) -> Result<(V::Value, RunStats)> {
    let start = Instant::now();
    memo.bind(v.tag())?;
    let mut stats = RunStats::default();

    let mut stack = match visit(root, v, memo, &mut stats) {
        Visit::Done(x) => {
            stats.elapsed = start.elapsed();
            return Ok((x, stats));
        }
        Visit::Expand(key, rep) => vec![frame(v, key, &rep)],
    };
    let mut incoming: Option<V::Value> = None;

    loop {
        let top = stack
            .last_mut()
            .expect("stack is non-empty inside the loop");
        let mut result = None;
        if let Some(x) = incoming.take() {
            match short.then(|| v.decisive(&x)).flatten() {
                Some(r) => result = Some(r),
                None => top.values.push(x),
            }
        }
        if result.is_none() {
            if top.next < top.children.len() {
                let child = top.children[top.next];
                top.next += 1;
                match visit(&child, v, memo, &mut stats) {
                    Visit::Done(x) => incoming = Some(x),
                    Visit::Expand(key, rep) => stack.push(frame(v, key, &rep)),
                }
                continue;
            }
            result = Some(v.combine(&top.values));
        }

        let done = stack.pop().expect("top frame exists");
        let value = result.expect("completed frame has a value");
        if let Some(limit) = memo.limit {
            if memo.map.len() >= limit {
                stats.elapsed = start.elapsed();
                return Err(Error::MemoLimit { limit, stats });
            }
        }
        let prev = memo.map.insert(done.key, value.clone());
        debug_assert!(prev.is_none());
        stats.positions_stored += 1;
        if stack.is_empty() {
            stats.elapsed = start.elapsed();
            return Ok((value, stats));
        }
        incoming = Some(value);
    }
}
