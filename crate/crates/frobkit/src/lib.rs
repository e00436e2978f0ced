//! Frobenius-number toolkit: exact solvers, representability queries, the
//! knapsack/Frobenius family of decision problems, and executable Karp
//! reductions between them, verified against brute-force oracles.

pub mod caps;
pub mod error;
pub mod frobenius;
pub mod gen;
pub mod numrep;
pub mod problems;
pub mod reductions;
pub mod report;
pub mod serde_util;

pub use caps::Caps;
pub use error::{Error, Result};
