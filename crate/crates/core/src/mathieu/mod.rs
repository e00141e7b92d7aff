//! Deciders for ϑ-ideals and ϑ-Mathieu subspaces, the element sets
//! `σ_ϑ(N)` and `τ_ϑ(N)`, and (quasi-)stability of algebras and modules.

mod decide;
mod sets;
mod stability;
mod witness;

pub use crate::algebra::{ideal_violation, is_theta_ideal};
pub use crate::exactfield::enumerate_subspaces;
pub use decide::{
    bruteforce_with_table, is_module_mathieu, is_theta_mathieu_bruteforce, is_theta_mathieu_idempotent, MathieuDecider,
    MathieuVerdict, MathieuWitness,
};
pub use sets::{element_set, sigma, tau, ElementSet, SetKind, StableSets};
pub use stability::{
    algebra_stability, is_quasi_stable_algebra, is_quasi_stable_algebra_classified, is_quasi_stable_module,
    is_stable_algebra, is_stable_algebra_classified, is_stable_module, module_stability,
    quasi_stable_by_classification, regular_module_stability, stable_by_classification, ClassifiedCheck, Failure,
    StabilityVerdict, StabilityWitness,
};
pub use witness::{check_ideal_witness, check_mathieu_witness, check_stability_witness};
