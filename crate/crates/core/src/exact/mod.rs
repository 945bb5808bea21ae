//! Exact linear algebra over the supported base rings: Smith normal form,
//! canonical modules, maps, Hom-modules, splitting tests and tensor products.

pub mod ring;
pub mod matrix;
pub mod module;
pub mod map;
pub mod hom;
pub mod tensor;

pub use hom::HomModule;
pub use map::{ModuleMap, SplitReport};
pub use matrix::{Mat, Snf};
pub use module::{DirectSum, FgModule, Quotient, Submodule};
pub use ring::BaseRing;
pub use tensor::TensorModule;
