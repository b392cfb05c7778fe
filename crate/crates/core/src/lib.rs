//! Exact verification of a reflection-symmetry theorem for toric surfaces.

pub mod exactlin;
pub mod geometry;
pub mod symmetry;
pub mod cohomology;
pub mod theorem;
pub mod rootsystems;
pub mod builtins;
pub mod cli;
