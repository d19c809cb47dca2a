//! Simulation and verification engine for the candy-passing game, a
//! parallel chip-firing process on undirected graphs.
//!
//! Each round every vertex holding at least as many candies as it has
//! neighbors passes one candy to each neighbor, all at once. With
//! `c >= 4|E| - |V|` candies on a connected graph the game reaches a fixed
//! point within `|V| d c` rounds, `d` being the diameter. The crate plays the
//! game ([`parallel`]), classifies every orbit exactly, checks the supporting
//! pass-count and abundance properties on traces ([`analysis`]), verifies them
//! exhaustively on small instances ([`oracle`]), and plays classical
//! sequential chip-firing to test order independence ([`sequential`]).

pub mod analysis;
pub mod config;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod parallel;
pub mod rng;
pub mod sequential;

pub use config::Configuration;
pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use parallel::{classify, run, step, GameTrace, Outcome, StopReason};
