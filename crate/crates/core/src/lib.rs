//! Regular quantum LDPC stabilizer codes built from finite matrix groups.
//!
//! Codes are sparse matrices over `F₄ = {0, ω, ω̄, 1}` whose rows are
//! pairwise orthogonal for the trace-Hermitian form, with Pauli `I, X, Z, Y`
//! mapped to `0, ω, ω̄, 1`. Two constructions are provided: cosets of a
//! subgroup pair ([`coset`]) and 8-cycles of a four-generator Cayley graph
//! ([`cayley`]). [`decoder`] runs syndrome belief propagation and [`sim`]
//! estimates block error rates on the depolarizing channel.

pub mod cayley;
pub mod config;
pub mod coset;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod gf4;
pub mod matgroup;
pub mod qpc;
pub mod sim;
pub mod stabilizer;
pub mod tanner;

pub use error::{Error, Result};
