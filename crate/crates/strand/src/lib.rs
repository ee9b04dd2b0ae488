//! String assembly toolkit: an exact shortest-common-superstring solver and a
//! dictionary text-assembly solver, both instrumented with a query ledger that
//! charges each quantum subroutine its published query cost while computing
//! exact answers classically.
//!
//! The crate is organized bottom-up:
//!
//! * [`core_strings`] - instances, rolling hashes, prime pools, virtual
//!   concatenation access, and the naive overlap oracle.
//! * [`qsim`] - exact emulations of the quantum subroutines (first-one search,
//!   all-ones search, maximum finding, string comparison, substring search)
//!   plus the [`qsim::QueryLedger`] they charge and an optional noise mode.
//! * [`segment_tree`] - range assign-max segment tree with deferred push.
//! * [`suffix_array`] - SA-IS suffix array construction and a naive oracle.
//! * [`scs`] - the superstring pipeline: reduction, overlap graph (two
//!   backends), subset dynamic programming, the nested maximum cascade, and a
//!   brute-force oracle.
//! * [`tao`] - the text-assembly pipeline: longest-match array via suffix
//!   array plus segment tree, greedy decomposition, and a feasibility oracle.
//! * [`harness`] - generators, benchmark fits, verification suites, and the
//!   pieces behind the `strand` command-line binary.
//!
//! Every runnable capability has a matching example under `examples/`.

pub mod core_strings;
pub mod harness;
pub mod qsim;
pub mod scs;
pub mod segment_tree;
pub mod suffix_array;
pub mod tao;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
