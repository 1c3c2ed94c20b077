//! Symplectic structures: Heisenberg algebras over commutative algebras,
//! moment maps, flat symplectic connections and the Yang-Baxter layer.

pub mod commalg;
pub mod generic;
pub mod heisenberg;
pub mod moment;
pub mod mpoly;
pub mod orthogonal;
pub mod theorem6;
pub mod yang_baxter;

pub use commalg::{radical_and_socle, CommAlgebra, SocleReport};
pub use generic::{generic_nondegeneracy, verify_certificate, DegeneracyCertificate, GenericOutcome};
pub use heisenberg::{
    h1_cocycle_construct, h1_degeneracy_certificate, h1_symplectic_decision, hk_degeneracy_check, DecisionReason,
    H1Decision, HeisenbergOverA, HkReport,
};
pub use moment::{moment_identity_check, moment_map, tstar_h1_derivation_cocycle, MomentCheck, MomentMapPoly};
pub use mpoly::MPoly;
pub use orthogonal::{example5_gamma_prime, orthogonal_subalgebra, GammaPrimeReport};
pub use theorem6::{connection_report, theorem6_bare_product, theorem6_structure, ConnectionReport, Theorem6Structure};
pub use yang_baxter::{
    cotangent_algebra, cybe_check, double_algebra, double_theta_check, rational_structure_for_double, theta_matrix,
    DoubleThetaReport,
};
