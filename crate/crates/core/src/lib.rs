//! Exact-arithmetic relative homological algebra over ℤ, ℤ/m, 𝔽_p and ℚ.
//!
//! The building blocks are finitely generated modules in invariant-factor
//! canonical form ([`FgModule`]) and matrices of maps between them
//! ([`ModuleMap`]). On top of those sit cosimplicial/simplicial modules with
//! the Dold–Kan correspondence, injective classes with decidable
//! 𝒢-predicates, step- and triple-built resolutions, right derived functors,
//! discrete 𝒢-completions, homotopy spectral sequences of bicomplexes, and
//! the algebraic cobar construction with Cotor.

pub mod error;
pub mod exact;
pub mod cosimplicial;
pub mod resolution;
pub mod derived;
pub mod spectral;

pub use error::Error;
pub use exact::matrix::Mat;
pub use exact::module::FgModule;
pub use exact::map::ModuleMap;
pub use exact::ring::BaseRing;

pub type Result<T> = std::result::Result<T, Error>;
