//! Generalized Zeckendorf number systems.
//!
//! A legality rule `f` says that choosing the term `a_n` forbids the `f(n)`
//! terms just below it. Every rule induces a unique increasing sequence in
//! which each nonnegative integer has exactly one legal decomposition. This
//! crate builds those sequences exactly, decomposes integers, synthesizes
//! the linear recurrences satisfied when `f` is periodic, and computes exact
//! summand-count distributions together with Gaussian-limit diagnostics.
//!
//! ```
//! use fdecomp::{decompose, FRule, FSequence};
//! use num_bigint::BigUint;
//!
//! let fib = FSequence::new(FRule::constant(1));
//! let d = decompose(&fib, &BigUint::from(100u32));
//! assert_eq!(d.indices, [9, 4, 2]); // 89 + 8 + 3
//! ```

pub mod error;
pub mod exactnum;
pub mod fdecomp;
pub mod ffunc;
pub mod fseq;
pub mod recsynth;
pub mod sumstats;

pub use error::{DecompError, RecurrenceError, RuleError, StatsError};
pub use exactnum::{IntPoly, RatVector};
pub use fdecomp::{all_legal_decompositions, decompose, is_legal, recompose, Decomposition};
pub use ffunc::{bbin_rule, parse_rule, Extension, FRule, RuleKind};
pub use fseq::FSequence;
pub use recsynth::{
    minimal_recurrence, nonnegative_multiple_search, synthesize_recurrence, verify_recurrence,
    LinearRecurrence, NonnegSearch,
};
pub use sumstats::{CountTable, DistributionReport, MomentSummary, System};
