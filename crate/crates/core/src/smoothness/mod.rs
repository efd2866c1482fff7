//! Moduli of continuity, the K-functional and Besov norms.

pub mod besov;
pub mod kfunctional;
pub mod lemmas;
pub mod modulus;

pub use besov::{approximation_sup, besov_norm, besov_seminorm, BesovParams, Flavor};
pub use kfunctional::{k_besov_seminorm, k_functional, k_functional_with, DomainNorm};
pub use lemmas::{besov_seminorm_sup, lemma1_check, lemma2_check, LemmaReport};
pub use modulus::{
    difference, modulus, modulus_inequality_checks, modulus_with, ModulusInequalityReport,
    ModulusParams, GRID_TOLERANCE,
};
