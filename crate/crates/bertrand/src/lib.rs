//! Machine-certified verification of Bertrand's postulate: for every
//! integer `n >= 2` there is a prime `p` with `n < p < 2n`.
//!
//! The proof is classical; what this crate adds is certification. Every
//! real-valued quantity is computed with a proven error bound
//! ([`numerics::CertifiedReal`]), every membership decision (which numbers
//! are prime, which prime powers contribute) is made in exact integer
//! arithmetic ([`sieve`]), and every comparison returns a directed verdict
//! only when the certified intervals are disjoint, with exact big-integer
//! fallbacks where equality can actually occur. The layers:
//!
//! - [`sieve`]: segmented prime enumeration, point primality, and forward
//!   scanners.
//! - [`numerics`]: the certified interval arithmetic and compensated
//!   summation the rest of the crate computes with.
//! - [`chebyshev`]: the step functions `theta` and `psi`, factorial and
//!   central-binomial logs, and the summation identities among them.
//! - [`proofcheck`]: the proof itself as data, identity checks, an
//!   inequality chain scanned over ranges of `n`, a certified sign-change
//!   threshold (505/506), induction packaging, and witness scans below the
//!   threshold, composed by [`proofcheck::verify_all`].
//! - [`report`]: the row/report types and the CSV writer shared by the
//!   library and the `bertrand` binary.
//!
//! ```
//! use bertrand::proofcheck::{bertrand_witness, threshold_n};
//!
//! let t = threshold_n().unwrap();
//! assert_eq!(t.n, 505);
//!
//! let w = bertrand_witness(316).unwrap();
//! assert!(316 < w.p && w.p < 632);
//! ```
//!
//! The accompanying book (`book/` in the repository) develops the
//! mathematics chapter by chapter; its code blocks compile and run as part
//! of this crate's doctest suite.

pub mod chebyshev;
pub mod numerics;
pub mod proofcheck;
pub mod report;
pub mod sieve;

/// Keeps the book's code blocks honest: every fenced Rust snippet in the
/// chapters below is compiled and run by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/primes.md")]
    mod primes {}
    #[doc = include_str!("../../../book/src/certified.md")]
    mod certified {}
    #[doc = include_str!("../../../book/src/chebyshev.md")]
    mod chebyshev {}
    #[doc = include_str!("../../../book/src/proof.md")]
    mod proof {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
