//! Integer compositions counted by `(m, r)`-congruence successions.
//!
//! A succession of a composition `π₁π₂⋯π_d` is an index `i` with
//! `π_{i+1} ≡ π_i + r (mod m)`. This crate provides
//!
//! - exhaustive enumeration and the succession statistic ([`composition`]),
//! - exact truncated series in `x` with polynomial coefficients in `y`
//!   (parts) and `q` (successions) ([`series`], [`cyclic`]), and the
//!   generating functions built on them ([`gf`]),
//! - closed forms and recurrences for the parity case ([`closed_forms`]),
//! - executable bijections with exhaustive audits ([`bijections`]),
//! - dominant-singularity asymptotics with a circle-scan certificate
//!   ([`asymptotics`]),
//! - the verification suites driven by the command line ([`verify`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod bijections;
pub mod closed_forms;
pub mod composition;
pub mod cyclic;
mod error;
pub mod gf;
pub mod series;
pub mod verify;

pub use composition::{Composition, CountTable, SuccessionParams};
pub use error::{Error, Result};
pub use series::{Poly2, SeriesXYQ};
