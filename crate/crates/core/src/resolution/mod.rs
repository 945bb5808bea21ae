//! Injective classes over the discrete abelian base, decidable 𝒢-predicates,
//! step- and triple-built resolutions, weak-resolution validation and the
//! model-structure classification of cochain maps.

pub mod class;
pub mod classify;
pub mod step;
pub mod triple;

pub use class::{ClassMode, InjectiveClass};
pub use classify::{classify_map, classify_map_windowed, hom_chain_complex, MapClassification};
pub use step::{
    pad_resolution, step_resolution, twist_resolution, validate_weak_resolution, Provenance,
    Resolution, ValidationReport,
};
pub use triple::{triple_hom_contraction, triple_resolution, Triple, TripleCtx, DEFAULT_MAX_COORDS};
