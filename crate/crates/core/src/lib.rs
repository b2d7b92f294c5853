//! Dimer model on graphs embedded in compact oriented surfaces with
//! boundary.

pub mod bipartite;
pub mod dimer;
pub mod error;
pub mod gf2;
pub mod json;
pub mod kasteleyn;
pub mod grassmann;
pub mod pfaffian;
pub mod qft;
pub mod rational;
pub mod snf;
pub mod suite;
pub mod surgery;
pub mod surface_graph;
pub mod verify;

pub use error::{DimerError, Result};
pub use rational::Rational;
pub use surface_graph::{
    Builder, Component, Face, HomologyClass, IntRelBasis, OrientedCurve, RawGraph, SurfaceGraph,
    Variant,
};
