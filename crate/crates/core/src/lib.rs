//! Persistent homology on weighted networks.
//!
//! `toponet-core` is `no_std` (it needs `alloc`). File formats and the
//! command line tool live in the `toponet` crate.

#![no_std]

extern crate alloc;

pub mod classical;
pub mod diagram;
pub mod distances;
pub mod error;
pub mod filtration;
pub mod inference;
pub mod loss;
pub mod matching;
pub mod matrix;
pub mod network;
pub mod simplicial;
pub mod summaries;
pub mod unionfind;

pub use diagram::{PersistenceDiagram, PersistencePair};
pub use error::{Error, Result};
pub use network::{Convention, ThresholdMode, WeightedNetwork};
