//! Cohomology of finite matrix groups acting on finitely generated abelian
//! groups.
//!
//! Groups are given by 2x2 generator matrices over Z/n and enumerated into
//! multiplication tables; modules carry one integer action matrix per
//! generator acting on invariant-factor coordinates. H^0 comes from
//! invariants, H^1 from crossed homomorphisms propagated over the Cayley
//! graph, cyclic subgroups use the periodic resolution, and the normalized
//! bar resolution serves as the all-degrees oracle. Lyndon-Hochschild-Serre
//! assembly glues a cyclic normal subgroup against its quotient.

pub mod bar;
pub mod cohomology;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod lhs;
pub mod paper;
pub mod stable;

pub use bar::{bar_h, modp_bar_dims, BarBudget};
pub use cohomology::{cyclic_h, h1_crossed, invariants};
pub use error::GroupCohError;
pub use gmodule::GModule;
pub use group::{FiniteMatrixGroup, Mat2};
pub use lhs::{lhs_assemble, LhsGrid};
