//! Exact computer algebra for multiple (nilpotent) scheme structures on
//! projective space.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: rationals, sparse multivariate polynomials, resultants;
//! - [`chow`]: truncated Chow rings of projective space, Chern characters,
//!   Todd classes, Riemann-Roch Euler characteristics and Koszul sums;
//! - [`structures`]: Hilbert polynomials of filtered multiple structures and
//!   Chern-class solving against a Koszul template;
//! - [`integrality`]: binomial-basis expansions and integrality verdicts;
//! - [`cohomology`]: line bundle cohomology on P^1 and P^2 and an
//!   exact-sequence dimension solver;
//! - [`graded`]: degree-slice linear algebra for the alpha/beta complex on P^1;
//! - [`replicate`]: the replication driver behind the CLI.

pub mod arith;
pub mod chow;
pub mod cohomology;
pub mod graded;
pub mod integrality;
pub mod replicate;
pub mod structures;
