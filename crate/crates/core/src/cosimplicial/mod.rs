//! Cosimplicial and simplicial modules, cochain complexes, the Dold–Kan
//! correspondence, cohomotopy, latching/matching objects, the chain-homotopy
//! decision procedure, and left contractions.

pub mod complex;
pub mod contraction;
pub mod delta;
pub mod doldkan;
pub mod tower;

pub use complex::{chain_homotopic, CochainComplex, CochainMap, Homology, Homotopy};
pub use contraction::{contraction_acyclic, ContractionMap, LeftContraction};
pub use doldkan::{denormalize, denormalize_simplicial, roundtrip_identity, Denormalization};
pub use tower::{check_tower_map, AugmentedTower, Normalization, Orientation, Tower};
