//! Exact computations for links of simple elliptic and cusp surface
//! singularities: SL(2,Z) monodromies, plumbing graphs, horizontal open books,
//! Legendrian/Stein handle diagrams, and the invariants of the induced contact
//! structures (first homology, c1 evaluations, Euler class, d3).
//!
//! Cusp monodromies use the generator convention `M(n) = [[n, -1], [1, 0]]`;
//! with it `|coker(A - I)| = trace(A) - 2` matches the plumbing determinant.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`). With the default
//! `parallel` feature, batch work (filling enumeration, suite verification)
//! runs on rayon; results are order-identical to the sequential path.

pub mod error;
pub mod family;
pub mod invariants;
pub mod legendrian;
pub mod matrix;
pub mod openbook;
pub mod par;
pub mod plumbing;
pub mod serde_int;
pub mod sl2z;
pub mod verify;

pub use error::{Error, Result};
pub use family::{cycle_words, Family, SuiteBounds};
pub use matrix::IntMatrix;
pub use par::Execution;
pub use sl2z::{classify, cycle_monodromy, cyclic_equal, factor_cycle, CycleWord, MonodromyClass, Sl2Matrix};
