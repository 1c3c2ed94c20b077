//! The diagonal automorphisms `(x, y, z) ↦ (αx, βy, αβz)` of the Heisenberg group over `O_m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::quadratic::{QuadElem, QuadraticRing};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::matrix::{QMatrix, ZMatrix};

/// A unit together with its Galois conjugate; for `m > 0` these are its two real embeddings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    pub value: String,
    pub conjugate: String,
    /// `|value| = |conjugate| = 1`.
    pub on_unit_circle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAutomorphism {
    /// Action on the coordinates `(x0, x1, y0, y1, z0, z1)` of the `HeisQuad` model.
    pub matrix: QMatrix,
    pub alpha: QuadElem,
    pub beta: QuadElem,
    pub gamma: QuadElem,
    pub eigen: [EigenPair; 3],
    pub anosov: bool,
}

fn eigen_pair(ring: &QuadraticRing, u: &QuadElem) -> EigenPair {
    // a unit has modulus one in every embedding exactly when m < 0 or u = ±1
    let on = ring.m < 0 || (u.b.is_zero() && (u.a.is_one() || u.a == -BigInt::one()));
    EigenPair { value: ring.format(u), conjugate: ring.format(&ring.conj(u)), on_unit_circle: on }
}

pub fn phi_automorphism(ring: &QuadraticRing, alpha: &QuadElem, beta: &QuadElem) -> Result<PhiAutomorphism> {
    for (name, u) in [("alpha", alpha), ("beta", beta)] {
        if !ring.is_unit(u) {
            return Err(Error::precondition(format!("{name} = {} is not a unit", ring.format(u))));
        }
    }
    let gamma = ring.mul(alpha, beta);
    let blocks: Vec<ZMatrix> = [alpha, beta, &gamma].iter().map(|u| ring.mul_matrix(u)).collect();
    let int = ZMatrix::block_diagonal(&blocks);
    if !int.is_unimodular() {
        return Err(Error::structural("phi does not preserve the integral lattice"));
    }
    let matrix = int.to_rational();
    let model = GroupModel::heis_quad(ring.m)?;
    // the product is linear plus bilinear, so checking unit vectors suffices
    for i in 0..6 {
        for j in 0..6 {
            let (u, v) = (model.unit_element(i), model.unit_element(j));
            let lhs = matrix.mul_vec(&model.multiply(&u, &v)?);
            let rhs = model.multiply(&matrix.mul_vec(&u), &matrix.mul_vec(&v))?;
            if lhs != rhs {
                return Err(Error::structural("phi fails to respect the group product"));
            }
        }
    }
    let eigen = [eigen_pair(ring, alpha), eigen_pair(ring, beta), eigen_pair(ring, &gamma)];
    let anosov = eigen.iter().all(|e| !e.on_unit_circle);
    Ok(PhiAutomorphism { matrix, alpha: alpha.clone(), beta: beta.clone(), gamma, eigen, anosov })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::quadratic::fundamental_unit;

    #[test]
    fn identity() {
        let r = QuadraticRing::new(2).unwrap();
        let phi = phi_automorphism(&r, &r.one(), &r.one()).unwrap();
        assert!(phi.matrix.is_identity());
        assert!(!phi.anosov);
    }

    #[test]
    fn golden_square_root_two() {
        let r = QuadraticRing::new(2).unwrap();
        let e = fundamental_unit(2).unwrap();
        let phi = phi_automorphism(&r, &e, &e).unwrap();
        assert!(phi.anosov);
        assert_eq!(phi.eigen[0].value, "1+sqrt2");
        assert_eq!(phi.eigen[0].conjugate, "1-sqrt2");
        assert_eq!(phi.eigen[2].value, "3+2sqrt2");
        assert_eq!(phi.eigen[2].conjugate, "3-2sqrt2");
    }

    #[test]
    fn gaussian_units_are_not_anosov() {
        let r = QuadraticRing::new(-1).unwrap();
        let phi = phi_automorphism(&r, &r.omega(), &r.one()).unwrap();
        assert!(!phi.anosov);
        assert!(phi.eigen.iter().all(|e| e.on_unit_circle));
    }

    #[test]
    fn non_unit_rejected() {
        let r = QuadraticRing::new(3).unwrap();
        let err = phi_automorphism(&r, &QuadElem::new(2, 0), &r.one()).unwrap_err();
        assert_eq!(err.kind(), "precondition");
    }

    #[test]
    fn opposite_powers_are_not_anosov() {
        let r = QuadraticRing::new(3).unwrap();
        let e = fundamental_unit(3).unwrap();
        let inv = r.inverse(&e).unwrap();
        assert!(!phi_automorphism(&r, &e, &inv).unwrap().anosov);
        assert!(!phi_automorphism(&r, &e, &r.one()).unwrap().anosov);
    }
}
