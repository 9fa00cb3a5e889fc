//! Logic of sparse random graphs `G(n, c/n)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs, `G(n,p)` sampling, components, balls and small
//!   combinatorial oracles (cycles, automorphisms, path counts).
//! * [`logic`]: first-order / monadic second-order sentences, a text grammar and
//!   a brute-force model checker, plus builders for the standard constructions.
//! * [`closed_form`]: the expression family `0, 1, c, +, -, q*, *, exp` with exact
//!   rational scalars, evaluation and symbolic differentiation.
//! * [`local_limit`]: Poisson means of cycle neighbourhoods and census drivers.
//! * [`equivalence`]: R-equivalence signatures and the transfer harness.
//! * [`subcritical`]: the interval decision procedure for `c < 1`.
//! * [`supercritical`]: the arithmetized graph `H`, tower/wow arithmetic,
//!   clean topological cliques and theta configurations.
//! * [`moments`]: path-expectation recurrences and their closed bounds.
//! * [`montecarlo`]: seeded, thread-count independent probability estimation.

pub mod closed_form;
pub mod constants;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod local_limit;
pub mod logic;
pub mod moments;
pub mod montecarlo;
pub mod rng;
pub mod subcritical;
pub mod supercritical;

pub use error::{Error, Result};
pub use graph::Graph;
