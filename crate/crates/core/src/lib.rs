//! Stabilizer simulation, graph-state rewriting and a cluster-state pattern
//! compiler for CSS topological codes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod bits;
pub mod clifford;
pub mod codes;
pub mod compiler;
pub mod dense;
pub mod error;
pub mod graph;
pub mod graph_state;
pub mod local;
pub mod pauli;
pub mod sparse;
pub mod tableau;
pub mod twist;

pub use clifford::CliffordGate;
pub use error::{Error, Result};
pub use pauli::{Pauli1, PauliString, Phase};
pub use tableau::StabilizerTableau;

/// Deterministic generator used for every random outcome.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    use rand_chacha::rand_core::SeedableRng;
    Rng::seed_from_u64(seed)
}
