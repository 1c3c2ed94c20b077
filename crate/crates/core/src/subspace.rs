//! Rational subspaces in canonical reduced row-echelon form.

use num_traits::Zero;
use serde::Serialize;

use crate::matrix::{is_zero_vec, lin_comb, unit_vec, QMatrix};
use crate::rational::Rational;

/// A subspace of `Q^ambient`, stored as the nonzero rows of its RREF basis.
/// Equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient: usize,
    #[serde(skip)]
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let vs: Vec<Vec<Rational>> = vectors.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        if vs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = QMatrix::from_rows(vs).expect("equal-length vectors");
        assert_eq!(m.cols(), ambient, "vector length must match the ambient dimension");
        let (r, pivots) = m.rref();
        Subspace { ambient, basis: (0..pivots.len()).map(|i| r.row(i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        (lin_comb(&coords, &self.basis, self.ambient) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// The annihilator `{x : <x, v> = 0 for all v}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = QMatrix::from_rows(self.basis.clone()).expect("rectangular");
        Subspace::span(self.ambient, &m.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_basis(&self) -> Vec<Vec<Rational>> {
        let piv = self.pivots();
        (0..self.ambient).filter(|i| !piv.contains(i)).map(|i| unit_vec(self.ambient, i)).collect()
    }

    pub fn image(&self, m: &QMatrix) -> Subspace {
        let vs: Vec<Vec<Rational>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rational_vec;

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, &[rational_vec(&[1, 1, 0]), rational_vec(&[0, 1, 1])]);
        let b = Subspace::span(3, &[rational_vec(&[1, 2, 1]), rational_vec(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&rational_vec(&[2, 3, 1])));
        assert!(!a.contains(&rational_vec(&[1, 0, 0])));
    }

    #[test]
    fn intersections_and_sums() {
        let a = Subspace::span(3, &[rational_vec(&[1, 0, 0]), rational_vec(&[0, 1, 0])]);
        let b = Subspace::span(3, &[rational_vec(&[0, 1, 0]), rational_vec(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, &[rational_vec(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.annihilator(), Subspace::span(3, &[rational_vec(&[0, 0, 1])]));
        assert_eq!(Subspace::zero(3).intersection(&a).dim(), 0);
    }
}
