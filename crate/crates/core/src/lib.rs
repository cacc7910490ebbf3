//! Exact constructions for unambiguous quantum measurements.
//!
//! The crate builds the optimal (or best known) unambiguous strategies for a
//! family of single-shot decision problems as explicit finite-dimensional
//! operators and coherent-amplitude networks:
//!
//! * [`usd`] — unambiguous discrimination of two states: the two-pure-state
//!   solution with its three regimes, the reduction theorems for mixed
//!   states, optimality certificates and subspace discrimination.
//! * [`comparison`] — unambiguous comparison of pure-state ensembles and of
//!   finite state sets (permanents, determinants, symmetric projectors).
//! * [`ui`] — unambiguous identification with finite-dimensional systems
//!   (programmable discriminators, swap-based and group-projector
//!   measurements).
//! * [`coherent`] — beamsplitter networks realising comparison,
//!   identification, reference recovery and their noise analysis for
//!   coherent states.
//! * [`channels`] — single-shot channel testing via process POVMs:
//!   discrimination and comparison of unitary channels.
//! * [`meas`] — comparison of sharp non-degenerate observables, labeled and
//!   unlabeled.
//!
//! Every closed-form probability exposed here is cross-checked in the test
//! suite against an independent numeric route (dense operator evaluation,
//! brute-force optimization, quadrature or seeded Monte Carlo); the
//! [`acceptance`] module bundles those checks so they can also be run from
//! the command line.

pub mod acceptance;
pub mod channels;
pub mod coherent;
pub mod comparison;
pub mod figures;
pub mod linalg;
pub mod meas;
pub mod operator;
pub mod oracle;
pub mod rng;
pub mod ui;
pub mod usd;

mod error;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use operator::{HermitianOperator, Povm, DEFAULT_TOL};
pub use rng::RandomStream;
