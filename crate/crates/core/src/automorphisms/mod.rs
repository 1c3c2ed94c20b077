//! Unit groups of quadratic rings, automorphisms of the nilpotent lattices and
//! the exact Anosov decision.

pub mod filiform_aut;
pub mod gamma111;
pub mod phi;
pub mod poly;
pub mod quadratic;

pub use filiform_aut::{filiform_aut_constraints, gamma0_action, FiliformAutFailure, FiliformAutReport};
pub use gamma111::{gamma111_automorphism, Gamma111Automorphism};
pub use phi::{phi_automorphism, EigenPair, PhiAutomorphism};
pub use poly::{char_poly_pair, charpoly, exterior_square, has_unit_circle_root, is_anosov, IntPolynomial};
pub use quadratic::{fundamental_unit, ring_of_integers, unit_torsion, QuadElem, QuadraticRing, Torsion, UnitGroupDesc};
