//! Right derived functors over an injective class, resolution independence,
//! and the discrete 𝒢-completion with its triple structure and
//! complete/good/bad classification.

pub mod completion;
#[allow(clippy::module_inception)]
pub mod derived;
pub mod functor;

pub use completion::{
    completeness_classify, completion, completion_map, completion_mult,
    is_g_equivalence_of_modules, Completeness, CompletenessReport, Completion, DEFAULT_BAD_CAP,
};
pub use derived::{
    derived_from_tower, derived_functor, derived_invariance_check, derived_of_resolution,
    map_complex, map_tower, DerivedResult, InvarianceReport,
};
pub use functor::FunctorSpec;
