//! Automorphisms of the lattice with invariants `(1, 1, 1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::group::{check_relations, trid_generators, trid_presentation, GroupModel, RelationCheck};
use crate::matrix::ZMatrix;
use crate::rational::{qi, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma111Automorphism {
    /// Action on `y1, y2, y3` modulo the center; column `i` is the image of `y_i`.
    pub b: ZMatrix,
    /// `det(B) B⁻¹`.
    pub a: ZMatrix,
    /// Action on `z1, z2, z3` read off the images; equals `det(B) B⁻ᵀ`, which is similar to `a`.
    pub center_action: ZMatrix,
    /// Images of the six generators in model coordinates `(z1, z2, z3, y1, y2, y3)`.
    pub images: BTreeMap<String, Vec<Rational>>,
    pub relations: RelationCheck,
}

/// `y_i ↦ y1^{M_1i} y2^{M_2i} y3^{M_3i} z'_i` and `z_i` to the matching commutator of images.
/// `z_prime[i]` gives exponents of `z1, z2, z3`.
pub fn gamma111_automorphism(m: &ZMatrix, z_prime: &[[i64; 3]; 3]) -> Result<Gamma111Automorphism> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::input("expected a 3x3 integer matrix"));
    }
    let det = m.det();
    if !det.abs().is_one() {
        return Err(Error::precondition(format!("determinant must be ±1, got {det}")));
    }
    let model = GroupModel::tri_d(1, 1, 1)?;
    let gens = trid_generators(&model);
    let mut images = BTreeMap::new();
    let mut ys = Vec::new();
    for i in 0..3 {
        let mut word: Vec<(String, i64)> = Vec::new();
        for j in 0..3 {
            let e = m[(j, i)].to_i64().ok_or_else(|| Error::input("matrix entry too large"))?;
            word.push((format!("y{}", j + 1), e));
        }
        for (k, &e) in z_prime[i].iter().enumerate() {
            word.push((format!("z{}", k + 1), e));
        }
        let y = model.evaluate(&gens, &word)?;
        images.insert(format!("y{}", i + 1), y.clone());
        ys.push(y);
    }
    // z1 = [y2, y3], z2 = [y3, y1], z3 = [y1, y2]
    let mut center = Vec::new();
    for i in 0..3 {
        let z = model.commutator(&ys[(i + 1) % 3], &ys[(i + 2) % 3])?;
        images.insert(format!("z{}", i + 1), z.clone());
        center.push(z[..3].iter().map(|c| c.to_integer()).collect::<Vec<BigInt>>());
    }
    let relations = check_relations(&model, &images, &trid_presentation([1, 1, 1]))?;
    let center_action = ZMatrix::from_fn(3, 3, |r, c| center[c][r].clone());
    let a = m
        .to_rational()
        .inverse()
        .expect("unimodular")
        .scale(&qi(&det))
        .to_integer()
        .expect("unimodular inverse is integral");
    Ok(Gamma111Automorphism { b: m.clone(), a, center_action, images, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let aut = gamma111_automorphism(&ZMatrix::identity(3), &[[0; 3]; 3]).unwrap();
        assert!(aut.relations.ok);
        assert!(aut.a.is_identity());
        assert!(aut.center_action.is_identity());
        let model = GroupModel::tri_d(1, 1, 1).unwrap();
        assert_eq!(aut.images, trid_generators(&model));
    }

    #[test]
    fn example_matrix() {
        let m = ZMatrix::from_i64(&[&[1, 5, 2], &[2, -1, -1], &[3, 2, 0]]);
        let aut = gamma111_automorphism(&m, &[[0; 3]; 3]).unwrap();
        assert!(aut.relations.ok);
        assert!(aut.a.mul(&m).is_identity());
        assert_eq!(aut.center_action, aut.a.transpose());
    }

    #[test]
    fn orientation_reversing_with_central_shift() {
        let m = ZMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let aut = gamma111_automorphism(&m, &[[1, 0, 0], [0, -2, 0], [0, 0, 3]]).unwrap();
        assert!(aut.relations.ok);
        assert_eq!(aut.center_action, ZMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn singular_rejected() {
        let m = ZMatrix::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(gamma111_automorphism(&m, &[[0; 3]; 3]).unwrap_err().kind(), "precondition");
    }
}
