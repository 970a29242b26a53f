//! Shuffles, squares, and the 3-Partition to Square reduction.
//!
//! A string `w` is a *shuffle* of `u` and `v` when it interleaves them while
//! keeping each in order, and a *square* when it is a shuffle of some `u`
//! with itself. Shuffle membership is a quadratic dynamic program; squareness
//! is NP-complete. This crate provides:
//!
//! - [`shuffle`]: the two-string and fixed-`k` shuffle deciders with witnesses,
//! - [`matching`]: non-nesting perfect matchings, the certificates of squareness,
//! - [`queue`]: the nondeterministic queue automaton accepting squares, with a
//!   budgeted memoised search,
//! - [`square`]: a front door over brute force, automaton search, and the
//!   2-SAT special case for symbols occurring at most four times,
//! - [`partition`] and [`reduction`]: 3-Partition instances, the string `w_S`,
//!   and explicit accepting computations for yes-instances,
//! - [`encoding`] and [`arcs`]: text formats and arc diagrams.
//!
//! Positions are 0-indexed throughout.

pub mod alphabet;
pub mod arcs;
pub mod encoding;
pub mod error;
pub mod matching;
pub mod partition;
pub mod queue;
pub mod reduction;
pub mod shuffle;
pub mod square;
pub mod twosat;

pub use alphabet::{count_alternations, is_subsequence, Alphabet, Sym, Word};
pub use error::{Error, Result};
pub use matching::{Matching, Side, Violation};
pub use partition::{PartitionInstance, PartitionSolution};
pub use queue::{Config, SearchOutcome, Step, Trace};
pub use reduction::{build_reduction, synthesize_witness, ReductionOutput};
pub use shuffle::{is_k_shuffle, is_shuffle, shuffle_witness, ShuffleWitness};
pub use square::{is_square, Decision, Method, SquareOptions, SquareVerdict};
