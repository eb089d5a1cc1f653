//! Finite-dimensional worked models: a spin-1/2 measured along two
//! directions, and the three-box particle.

pub mod spin;
pub mod three_box;
