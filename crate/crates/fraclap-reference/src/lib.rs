//! Independent reference evaluations for the fraclap test suites.
//!
//! Everything here deliberately avoids the algebra used by the production
//! crate: the Gamma oracle integrates the Euler integral on a
//! double-exponential mesh, the hypergeometric oracle runs the defining
//! series in double-double arithmetic, the patch oracles integrate in polar
//! coordinates or by brute-force panel refinement.

pub mod dd;
pub mod gamma;
pub mod hyp;
pub mod quad;

pub use gamma::gamma_de;
pub use hyp::hyp2f1_dd;
