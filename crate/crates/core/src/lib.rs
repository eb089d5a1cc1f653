//! Candidate probabilities and decoherence conditions for histories of
//! closed quantum systems.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs:
//!
//! - [`hilbert`]: dense complex linear algebra, states, projectors,
//!   Heisenberg evolution, class operators, history sets, the decoherence
//!   functional and the MD / RLP / LP / EP classification.
//! - [`histories`]: coarse graining, sum rules, conditionals, conservation,
//!   records, entropy, ensembles and virtual-probability chaining.
//! - [`discrete`]: the spin-1/2 two-time model and the three-box model.
//! - [`continuum`]: quadrature, the complex error function, the two-slit
//!   densities, free-particle localization and the spacetime coarse graining
//!   evaluated with the method of images.
//!
//! A short tour:
//!
//! ```
//! use histoq_core::discrete::three_box::ThreeBox;
//! use histoq_core::hilbert::{classify_set, Tolerances, Verdict};
//!
//! let model = ThreeBox::new();
//! let fine = model.box_ab_set().unwrap();
//! let verdict = classify_set(&model.psi, &fine, &Tolerances::default()).unwrap();
//! assert_eq!(verdict.verdict, Verdict::ExtendedOnly);
//! assert!((verdict.lp_violation + 1.0 / 9.0).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;

pub mod continuum;
pub mod discrete;
mod error;
pub mod hilbert;
pub mod histories;

pub use error::{Error, Result};
pub use hilbert::linalg::C64;
