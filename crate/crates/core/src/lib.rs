//! Hodge numbers of hypergeometric data defined over Q.
//!
//! Three independent routes to the same Hodge vector:
//!
//! * [`zigzag`]: walk the merged list of alpha and beta,
//! * [`cone`]: count lattice points of the cone over the associated
//!   polytope by weight,
//! * [`genfun`]: sum the weight generating functions of a simplicial
//!   decomposition of that cone.
//!
//! [`padic`] relates the zig-zag walk to p-adic orders of Pochhammer ratios.

pub mod cone;
pub mod datum;
pub mod error;
pub mod exactmath;
pub mod genfun;
pub mod padic;
pub mod zigzag;

pub use cone::{
    apex_sequence, hodge_from_census, hodge_vector_cone, normalized_volume, primitive_element,
    verify_partition, weight_census, ApexSequence, ConeBasis, LatticeVector, PartitionReport,
};
pub use datum::{
    canonical_gammas, GammaVector, HypergeometricDatum, MergedList, ReducedDatum, Side,
};
pub use error::{Error, Result};
pub use exactmath::{IntPolynomial, Rational};
pub use genfun::{
    d_t, f_t, hodge_polynomial_ie, hodge_polynomial_simplified, hodge_vector_genfun, weight_w,
    weight_w_alt, Decomposition, IndexSet,
};
pub use padic::{
    first_digit, pochhammer_order, valuation_profile, verify_lemma_fractional, verify_phi_bridge,
    PadicContext, ValuationProfile,
};
pub use zigzag::{
    hodge_vector_zigzag, reduced_hodge_vector, render_zigzag, HodgePolygon, HodgeVector,
    RenderFormat, ZigzagProfile,
};
