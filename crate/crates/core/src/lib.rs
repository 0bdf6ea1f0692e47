//! Finite computation with augmented bilinear maps over small prime fields:
//! graph and presentation constructions, the common slot property, quadratic
//! hulls and power-series extensions.

pub mod bilform;
pub mod fpla;
pub mod graphs;
pub mod hull;
pub mod presentations;
pub mod random;
pub mod slot;
pub mod tower;

pub use bilform::{AugBilinearMap, BilformError, Morphism, Violation, ViolationKind};
pub use fpla::{FpMat, FpVec, FplaError, PrimeField};
pub use graphs::{ConstructionTree, Decomposition, ForbiddenKind, ForbiddenWitness, GraphError, SimplicialGraph};
pub use hull::{HullBilinear, HullError, HullTruncation};
pub use presentations::{NormalFormS3, Presentation, PresentationError, Word};
pub use slot::{QuaternionicReport, SlotError, SlotVerdict, SlotWitness};
pub use tower::{BaseKind, FieldData, TowerError};
