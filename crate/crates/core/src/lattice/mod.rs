//! Classification and invariants of lattices in the nilpotent groups of the crate.

pub mod classify6;
pub mod filiform;
pub mod ideal;
pub mod trid;

pub use classify6::{classify_six_dim, classify_six_dim_with, commensurable, Family, SixDimClassification};
pub use filiform::{
    central_quotients, filiform_isomorphic, filiform_normalize, theta_invariant, FiliformLatticeSpec,
};
pub use ideal::unique_abelian_codim1;
pub use trid::{trid_invariants, AbelianInvariants};
