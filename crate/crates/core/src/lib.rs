//! Decompositions of `4/n` into three distinct unit fractions.
//!
//! The closed-form constructors ([`theorem2`], [`theorem34`]) are checked
//! against an independent exhaustive enumerator ([`oracle`]); [`sweep`] chains
//! them into a solver and runs it over ranges of `n`.
//!
//! All arithmetic is generic over the unsigned scalar ([`arith::Int`]). The
//! aliases below fix it to `u128`, the width used by the sweep and the CLI.
//!
//! ```
//! use egyptian::{theorem2::theorem2_dispatch, Method};
//!
//! let t = theorem2_dispatch(7u128).unwrap().unwrap();
//! assert_eq!(t.xs(), [3, 6, 14]);
//! assert_eq!(t.method(), Method::Mod4Is3);
//! ```

pub mod arith;
pub mod cli;
pub mod oracle;
pub mod sweep;
pub mod theorem2;
pub mod theorem34;
pub mod triple;
pub mod two_term;

pub use arith::{ArithError, Int};
pub use sweep::{Status, SweepConfig, SweepRecord};
pub use triple::{ConstructError, Method};

/// Working integer width.
pub type Natural = u128;

pub type Fraction = arith::Fraction<Natural>;
pub type Factorization = arith::Factorization<Natural>;
pub type UnitTriple = triple::UnitTriple<Natural>;
pub type TwoTermSolution = two_term::TwoTermSolution<Natural>;
pub type Th3Params = theorem34::Th3Params<Natural>;
pub type OracleQuery = oracle::OracleQuery<Natural>;

/// 64-bit variants, for callers that know their values stay small.
pub type Fraction64 = arith::Fraction<u64>;
pub type UnitTriple64 = triple::UnitTriple<u64>;
