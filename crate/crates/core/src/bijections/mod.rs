//! Executable bijections for parity successions, each paired with an
//! exhaustive audit over small sizes.
//!
//! - [`theorem2`]: compositions ending in a part 1 or 2, matching the two
//!   sides of the eight-term recurrence for `c(n, d, a)`.
//! - [`colored`]: colored compositions of types A and B, the map `phi` onto
//!   parity-alternating compositions, and the bijection behind the
//!   recurrence `a(n) = 2a(n-2) + a(n-3) - a(n-4)`.

use alloc::string::String;
use core::fmt;

pub mod colored;
pub mod theorem2;

/// A concrete element on which an audit failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// The audited cell, e.g. `theorem2 n=7 d=4 a=1`.
    pub context: String,
    pub element: String,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.context, self.element, self.reason)
    }
}

/// One line of a bijection trace: an element, the rule applied to it, and
/// its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub domain: String,
    pub case: String,
    pub image: String,
}
