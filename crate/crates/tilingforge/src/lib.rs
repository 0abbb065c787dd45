//! Wang-tile toolkit for sparse-grid constructions: tileset construction,
//! exhaustive finite-window solving, Turing-machine-to-tileset compilers,
//! effectively closed sets of binary sequences, and Cantor-Bendixson rank
//! machinery over family catalogues.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `tilingforge` binary.

pub mod cb;
pub mod cli;
pub mod pi01;
pub mod render;
pub mod solver;
pub mod sparse;
pub mod tile;
pub mod tm;
pub mod tmtiles;
