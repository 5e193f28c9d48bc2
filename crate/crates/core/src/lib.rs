//! Fréchet edit distances between polygonal curves.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * the four Fréchet decision procedures (strong/weak, discrete/continuous)
//!   and the free-space diagram ([`frechet`]);
//! * reachability in products of DAG complexes ([`dag`]);
//! * the discrete edit distance dynamic programs ([`discrete_edit`]);
//! * minimum-vertex curves within Fréchet distance δ of a polyline ([`minvertex`]);
//! * continuous edit distances built on DAG complexes ([`continuous_edit`]);
//! * 3SAT hardness instance generators with brute-force checkers ([`hardness`]).
//!
//! Every comparison against δ is closed and uses the absolute tolerance
//! [`geom::EPS`].
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod continuous_edit;
pub mod cost;
pub mod dag;
pub mod discrete_edit;
pub mod error;
pub mod frechet;
pub mod geom;
pub mod hardness;
pub mod minvertex;
pub mod script;

pub use cost::Cost;
pub use error::{Error, Result};
pub use geom::{Ball, Curve, Point, Segment, EPS};
