//! K and L hypergeometric functions on the hyperplane
//! `e + f + g - a - b - c - d = 1`, the group `M ≅ W(D6)` acting on their
//! parameters, and the three-term relations among the 44 functions indexed
//! by cosets of their invariance groups.
//!
//! - [`numerics`]: complex gamma, reciprocal gamma, `sin πz`.
//! - [`series`]: the regularized balanced `₄F₃(1)` and very-well-poised
//!   `₇F₆(1)` series with analytic tails.
//! - [`point`], [`forms`]: points of V and integer affine forms on them.
//! - [`functions`]: `K`, `L`, their symmetric reparameterizations and `J_σ`.
//! - [`group`]: enumeration of `M`, cosets, labels and the signed permutation
//!   representation.
//! - [`classification`]: distance, types and orbits of three-element sets.
//! - [`coefficients`]: the coefficient atoms and their length/width.
//! - [`relations`]: the relation catalog, transport and verification.

pub mod classification;
pub mod coefficients;
pub mod forms;
pub mod functions;
pub mod group;
pub mod numerics;
pub mod point;
pub mod relations;
pub mod series;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/group.md")]
    mod group {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
