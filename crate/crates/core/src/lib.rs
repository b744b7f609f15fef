//! Exact enumeration of simultaneous `(s,t)`-core partitions.
//!
//! The `(n+1,n+2)`-cores are modelled as order ideals of the triangular
//! lattice `A_n` (see [`lattice`]). On top of that model sit
//!
//! - [`oracle`]: brute-force ground truth (hook lengths, semigroup gaps,
//!   exhaustive ideal enumeration with filters),
//! - [`profiledp`]: the profile-refined canonical-decomposition dynamic
//!   program that counts cores into odd parts and the companion sequence,
//! - [`series`]: exact polynomial, rational-function and power-series algebra,
//! - [`families`]: rational generating functions for restricted families,
//! - [`guess`]: algebraic-equation guessing from finitely many terms.
//!
//! The crate is `no_std` and only needs `alloc`; IO, CLI and file formats
//! live in the companion `cores` crate.
#![no_std]

extern crate alloc;

pub mod error;
pub mod families;
pub mod guess;
pub mod lattice;
pub mod oracle;
pub mod profiledp;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{CountSequence, OrderIdeal, TriangleLattice, TrianglePoint};
pub use oracle::{CoreFilter, Partition};
pub use profiledp::{Profile, ProfileDp};
pub use guess::GuessSpec;
pub use series::{AlgebraicEquation, IntPoly, LinearSystem, PowerSeries, RatFunc};
