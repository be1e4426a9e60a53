pub mod cli;
pub mod cohomology;
pub mod error;
pub mod formal;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use formal::{Decoration, FormalAbelianGroup, Leaf};
pub use invariants::{BundleDescriptor, GammaDescriptor, StructureKind};
pub use lattice::{SubgroupReport, TypeSignature, ZpLattice};
