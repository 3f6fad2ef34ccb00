//! Exact symbolic computation for algebras presented by creation and
//! destruction operators: free-algebra arithmetic over arbitrary-precision
//! rationals, deglex rewriting with confluence checks and completion,
//! number-operator solving, and truncated Fock-space verification.

pub mod completion;
pub mod freealg;
pub mod linalg;
pub mod noa;
pub mod ordering;
pub mod rewrite;
