//! Memoized recursion over downward-closed set families.
//!
//! Positions are complexes: downward-closed families of subsets of a ground
//! set of at most eight points. Recursively defined functions on them
//! (Chomp outcomes, Grundy values, linear extension counts) are evaluated
//! by [`engine::evaluate`], which stores one value per isomorphism class
//! using the canonical forms of [`canonical`].
//!
//! ```
//! use downset_core::{games, linext, Complex};
//!
//! let b3 = Complex::boolean_lattice(3).unwrap();
//! assert_eq!(games::grundy(&b3).unwrap().0, 3);
//! assert_eq!(linext::count_linear_extensions(&b3).unwrap().0, 48u32.into());
//! ```

pub mod canonical;
pub mod complex;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod face;
pub mod games;
pub mod linext;

pub use canonical::{apply_permutation, canonical_key, canonicalize, vertex_invariants};
pub use canonical::{CanonicalKey, VertexInvariant, VertexPermutation};
pub use complex::Complex;
pub use engine::{evaluate, evaluate_shortcircuit, MemoTable, RunStats, Valuation};
pub use error::{Error, Result};
pub use face::{Face, FaceBits, MAX_VERTICES};
pub use games::{GrundyValue, Outcome};
pub use num_bigint::BigUint;
