//! Truncated cosimplicial abelian groups: the cycle models of the universal
//! example, Moore-complex cohomology, and (twisted) symmetric squares.

pub mod cosimplicial;
pub mod cycles;
pub mod error;
pub mod moore;
pub mod priddy;
pub mod sym2;

pub use cosimplicial::{CosimplicialAbGroup, Level};
pub use cycles::cycles_cosimplicial;
pub use error::CosimpError;
pub use moore::{cup_square_class, moore_cohomology, moore_mod2_dims};
pub use priddy::priddy_dims;
pub use sym2::sym2;
