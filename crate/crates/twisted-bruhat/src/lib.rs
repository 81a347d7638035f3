//! Twisted strong and weak Bruhat orders on affine Weyl groups.
//!
//! Conventions used throughout:
//!
//! * `N(w)` is the inversion set of `w⁻¹`, i.e. the positive affine roots
//!   `α_{s₁}, s₁(α_{s₂}), …` read off a reduced word `s₁s₂⋯` of `w`. Both
//!   twisted lengths are defined in terms of this set:
//!   `l_B(w) = l(w) − 2|N(w⁻¹) ∩ B|` and `l′_B(w) = l(w) − 2|N(w) ∩ B|`.
//! * Simple reflections are numbered from 1; the affine generator
//!   `s_{δ−θ}` is number `rank + 1`.
//! * All arithmetic is exact.

pub mod affine_root;
pub mod affine_weyl;
pub mod alcove;
pub mod biclosed;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod finite;
pub mod lp;
pub mod poset;
pub mod topes;
pub mod twisted;
pub mod verify;

pub use affine_root::{AffineRoot, ChainEnd, DeltaChain};
pub use affine_weyl::{AffineElement, AffineWeyl, InfiniteReducedWord};
pub use biclosed::{BiclosedClass, BiclosedSet};
pub use error::{Error, Result};
pub use finite::{build_system, CartanDatum, TypeLabel};
pub use poset::GradedPoset;
pub use twisted::{Side, TwistedOrder};


