//! Computational geometry of the hyperquadric Q^{2,2} ⊂ CP³.
//!
//! The crate implements, in explicit linear-algebra terms:
//!
//! - the twistor projection CP³ → S⁴ in two charts (ℝ⁵ coordinates and the
//!   affine quaternion chart) together with fibre parametrizations
//!   ([`projective`]);
//! - affine charts of Q^{2,2}, CR frames, the contact form and the Levi
//!   matrix with its determinant law and split signature ([`chart`]);
//! - the U(2) calculus of projective lines in Q^{2,2} and its dictionary with
//!   round 2-spheres in S³: incidence, oriented tangency, fibre basepoints,
//!   and line recovery from point samples ([`lines`]);
//! - the projective stabilizer of Q^{2,2}, the j-commutant, the hyperplane
//!   invariant Δ, and the constructive three-orbit classification with
//!   certified witnesses ([`symmetry`]);
//! - hyperplane sections: smooth spherical vs. tangent Levi-flat, graph
//!   sections over Σ, and Levi-flat leaves ([`hyperplane`]);
//! - j-invariant quadrics: the explicit family Q_{a,r}, fibre restriction and
//!   discriminants, discriminant circles, inversive distance, branch loci
//!   ([`quadric`]), and the two-sheeted section geometry over Σ with global
//!   continuation and Levi-type analysis ([`branches`]);
//! - CSV/SVG figure emission and a small CLI ([`figure`], [`cli`]).
//!
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod branches;
pub mod chart;
pub mod cli;
pub mod figure;
pub mod hyperplane;
pub mod lines;
pub mod matrix;
pub mod projective;
pub mod quadric;
pub mod quat;
pub mod sample;
pub mod symmetry;
pub mod tolerance;
pub mod unitary;
pub mod wire;

pub use tolerance::Tolerance;
