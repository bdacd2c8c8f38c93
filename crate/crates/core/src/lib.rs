//! Combinatorics and metrics of blowup cube complexes for right-angled Artin
//! groups.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs: defining graphs, Whitehead partitions and
//! the cube complexes built from compatible collections of them. IO, file
//! formats and the command-line front end live in the `gammacx` crate.
//!
//! Module map:
//!
//! - [`graph`]: the defining graph, links, stars, fold/twist orders, cliques.
//! - [`algebra`]: words, normal forms and the named automorphisms.
//! - [`partition`]: Whitehead partitions, adjacency, compatibility.
//! - [`blowup`]: regions, the blowup complex, collapses, characteristic cycles.
//! - [`homology`]: integer cellular homology via Smith normal form.
//! - [`tori`]: maximal tori, their intersections and chains.
//! - [`metric`]: allowable parallelotope structures and straightening.
//! - [`isometry`]: cubical isometries, their action on `H_1`, the kernel audit.
//! - [`census`]: the exhaustive invariant sweep over small graphs.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod blowup;
pub mod census;
pub mod error;
pub mod graph;
pub mod homology;
pub mod isometry;
pub mod metric;
pub mod partition;
pub mod set;
pub mod tori;

pub use error::Error;
pub use graph::DefiningGraph;

pub type Result<T, E = Error> = core::result::Result<T, E>;
