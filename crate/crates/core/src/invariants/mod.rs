//! Exact linear algebra and the contact-geometric invariants built on it.

pub mod contact;
pub mod cross_check;
pub mod rational;
pub mod snf;

pub use contact::{
    adjunction_defect, c1_evaluations, d3_from_solution, d3_invariant, euler_class, euler_presentation,
    euler_rot_vector, is_canonical, CohomologyClassRep, EulerClass, EulerClassJson, RationalJson,
};
pub use cross_check::{homology_cross_check, torus_bundle_homology, HomologyReport};
pub use rational::{inertia, kernel_basis, solve, Inertia};
pub use snf::{smith_normal_form, AbelianGroup, SnfResult};
