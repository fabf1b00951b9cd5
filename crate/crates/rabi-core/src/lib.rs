//! Numerical core for the quantum Rabi model family.
//!
//! Everything here works in a truncated Fock space: a dense complex matrix
//! layer with a deterministic Hermitian eigensolver ([`linalg`]), quantum
//! primitives for the qubit ⊗ cavity system ([`quantum`]), the model
//! Hamiltonians ([`models`]), and the sweep/snapshot procedures built on top
//! of them ([`analysis`]).
//!
//! The crate is `no_std`-compatible (with `alloc`); the `std` feature, on by
//! default, only switches float math from `libm` to the platform intrinsics.
//! All computations are deterministic: identical inputs produce identical
//! bits, with no randomness or thread-count dependence anywhere.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod linalg;
mod math;
pub mod models;
pub mod quantum;

pub use num_complex::Complex64;
