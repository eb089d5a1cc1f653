//! Continuum models evaluated by quadrature: two-slit interference, a free
//! Gaussian packet, and the spacetime "remained to the right" coarse
//! graining.

pub mod erf;
pub mod free_particle;
pub mod quad;
pub mod spacetime;
pub mod two_slit;

pub use erf::{complex_erf, faddeeva_w};
pub use free_particle::{
    free_particle_joint_probability, free_propagator, localization_decoherence, localization_probability,
    propagated_segment, GaussianPacket, JointForm, JointProbability,
};
pub use quad::{integrate, integrate_panels, integrate_with_breakpoints, QuadResult, QuadValue, QuadratureSpec};
pub use spacetime::{
    packet_reaching, restricted_wavefunction, spacetime_decoherence, spacetime_regime, spacetime_remain_probability,
    spacetime_remain_probability_images, SpacetimeRegime,
};
pub use two_slit::{
    default_screen_range, min_lp_binwidth, two_slit_bin_probability, two_slit_densities, two_slit_total_probability,
    uniform_bins, BinWidthScan, BinWidthTrial, Slit, SlitDensities, TwoSlitGeometry,
};
