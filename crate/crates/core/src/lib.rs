//! Restricted sumsets over `Z/pZ` and the exact harmonic analysis behind
//! their lower bounds.
//!
//! Everything in this crate is pure computation on `alloc` types: bitmask
//! residue sets, exact arithmetic in the cyclotomic field `Q(ζ_p)`, the
//! discrete Fourier transform on `Z_p`, support-prescribed witness
//! functions, a checked trace of the Fourier-analytic lower bound for
//! `|{a+b : a∈A, b∈B, a−b∉S}|`, and the single-threaded kernels of the
//! configuration search. Threads, clocks, and file formats live in the
//! `sumset` companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cyclotomic;
pub mod error;
pub mod explore;
pub mod fourier;
pub mod proof;
pub mod residue;
pub mod witness;

mod linalg;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use fourier::ZpFunction;
pub use residue::{BoundReport, PrimeModulus, Residue, ResidueSet};

/// Seed used whenever a caller does not pick one.
pub const DEFAULT_SEED: u64 = 2009;
