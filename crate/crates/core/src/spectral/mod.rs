//! Bicomplexes and bicosimplicial modules, the Eilenberg–Zilber comparison,
//! homotopy spectral sequences of the s-filtration, and the algebraic cobar
//! construction with Cotor.

pub mod bicomplex;
pub mod bicosimplicial;

pub use bicomplex::{total_chain, total_cochain, Bicomplex, TotalChain, TotalCochain, VerticalDir};
pub use bicosimplicial::{denormalize_bicomplex, ez_compare, Bitower, DoubleNormalization, EzReport};
pub mod pages;
pub use pages::{column_homology, homology_of_homology, levelwise_homotopy_tower, ss_pages_bicomplex, AbutmentDegree, SpectralSequencePage, SsReport};
