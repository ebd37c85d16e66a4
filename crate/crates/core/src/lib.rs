//! Finite topological spaces and three homological signatures attached to
//! them: weak homotopy type (order complex), shape (Čech nerves of open
//! covers) and quasi-shape (hypercoverings by open sets), together with the
//! pro-set of open partitions.

pub mod generate;
pub mod homology;
pub mod hypercover;
pub mod pointset;
pub mod proset;
pub mod signature;
pub mod simplicial;
pub mod space;

pub use homology::{homology, homology_map, DegreeHomology, HomologyGroups, IntegerMatrix};
pub use hypercover::{cech_hypercover, gamma, hypercover_morphism, mccord_hypercover, verify_hyper, Hypercovering};
pub use pointset::PointSet;
pub use signature::{signatures, Signatures};
pub use simplicial::{SimplicialMap, TruncSimplicialSet};
pub use space::{ContinuousMap, FiniteSpace, OpenCover, OpenPartition, Preorder, SpaceError};
