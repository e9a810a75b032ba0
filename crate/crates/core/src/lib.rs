//! Coincidence-class calculus over finite groups.
//!
//! The input is a pair of homomorphisms `phi, psi: G -> N` between finite
//! groups together with orientation characters on both sides, the
//! fundamental-group shadow of a pair of maps `f, g: M -> N` between closed
//! manifolds of the same dimension. From that data this crate computes:
//!
//! - Reidemeister coincidence classes as orbits of the twisted action
//!   `g . a = psi(g) * a * phi(g)^{-1}`, with stabilizers and defectiveness;
//! - the semi-index of a path-labeled coincidence configuration, essential
//!   classes, and the Nielsen count;
//! - orientation behavior of a single map (types I, II, III) and the
//!   defectiveness pattern of root classes;
//! - regular covering data: deck groups, fiber coincidence counts, the
//!   partition of lifted coincidences into classes, a closed-form product
//!   formula for lifted semi-indices, and an independent exhaustive oracle
//!   that recomputes them point by point;
//! - the two-fold orientable covering of a nonorientable source, where
//!   non-defective classes split and defective classes merge and cancel.
//!
//! All types are immutable after validated construction and cheap to clone;
//! groups are plain multiplication tables with the identity at index 0.

pub mod catalog;
pub mod character;
pub mod classes;
pub mod covering;
pub mod group;
pub mod hom;
pub mod semi_index;

pub use character::{all_characters, CharacterError, OrientationCharacter, Sign};
pub use classes::{
    orientation_type, verify_root_theorems, CenterPropagation, CoincidencePair, MapType,
    PairError, ReidemeisterClass, RootReport,
};
pub use covering::{
    double_orientable_cover, fiber_equalizer, induced_pair, lift_formula, lift_oracle,
    lift_oracle_classes, lift_report, lifted_class_partition, upstairs_defective, ClassLift,
    CoveringError, DoubleCoverClass, DoubleCoverReport, LiftReport, LiftedPartition, OracleClass,
    RegularCovering,
};
pub use group::{all_subgroups, FiniteGroup, GroupError, Subgroup};
pub use hom::{
    enumerate_homs, enumerate_homs_with_budget, equalizer, twisted_equalizer, HomError,
    Homomorphism, DEFAULT_HOM_BUDGET,
};
pub use semi_index::{nielsen_number, ClassConfiguration, ConfigError, Decomposition};
