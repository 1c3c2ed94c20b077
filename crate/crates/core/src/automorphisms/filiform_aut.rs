//! Necessary conditions and the full relation check for endomorphisms of the
//! filiform lattice `Γ₀` whose action matrix has ones on the subdiagonal.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{check_relations, filiform_generators, filiform_presentation, GroupModel};
use crate::matrix::ZMatrix;

/// The check that failed first, in the order they are run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiliformAutFailure {
    /// Some `f(y_i)` leaves the abelian subgroup `M = ⟨y1..yn⟩`.
    NotInvariant,
    /// The restriction to `M` is not lower triangular with diagonal `±1`.
    NotTriangular,
    /// `f(z)` is not in `z^{±1} M`.
    ZImage,
    /// The diagonal signs violate `ε_{i+1} = δ ε_i`, where `f(z) ∈ z^δ M`.
    EpsilonPropagation,
    /// A defining relation is not preserved.
    Relation { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiliformAutReport {
    pub automorphism: bool,
    pub failure: Option<FiliformAutFailure>,
    /// Restriction to `M`, columns are images of the `y_i`.
    pub restriction: Option<Vec<Vec<BigInt>>>,
    pub epsilon: Vec<i64>,
    pub delta: Option<i64>,
}

/// The lower unitriangular matrix with ones on the subdiagonal and zeros below.
pub fn gamma0_action(n: usize) -> ZMatrix {
    ZMatrix::from_fn(n, n, |i, j| if i == j || i == j + 1 { BigInt::one() } else { BigInt::zero() })
}

fn unit_sign(x: &BigInt) -> Option<i64> {
    if x.is_one() {
        Some(1)
    } else if *x == -BigInt::one() {
        Some(-1)
    } else {
        None
    }
}

/// `images` maps each of `y1..yn, z` to a word in those generators.
pub fn filiform_aut_constraints(n: usize, images: &BTreeMap<String, Vec<(String, i64)>>) -> Result<FiliformAutReport> {
    let g0 = gamma0_action(n);
    let model = GroupModel::filiform(g0.clone())?;
    let gens = filiform_generators(&model);
    let pres = filiform_presentation(&g0)?;
    for key in images.keys() {
        if !gens.contains_key(key) {
            return Err(Error::input(format!("{key:?} is not a generator of the lattice")));
        }
    }
    let mut values = BTreeMap::new();
    for g in &pres.gens {
        let word = images.get(g).ok_or_else(|| Error::input(format!("missing image for {g}")))?;
        for (w, _) in word {
            if !gens.contains_key(w) {
                return Err(Error::input(format!("{w:?} is not a generator of the lattice")));
            }
        }
        values.insert(g.clone(), model.evaluate(&gens, word)?);
    }
    let coords = |g: &str| -> Vec<BigInt> { values[g].iter().map(|c| c.to_integer()).collect() };
    let mut report = FiliformAutReport { automorphism: false, failure: None, restriction: None, epsilon: vec![], delta: None };
    let ys: Vec<Vec<BigInt>> = (1..=n).map(|i| coords(&format!("y{i}"))).collect();
    if ys.iter().any(|y| !y[n].is_zero()) {
        report.failure = Some(FiliformAutFailure::NotInvariant);
        return Ok(report);
    }
    let r = ZMatrix::from_fn(n, n, |i, j| ys[j][i].clone());
    report.restriction = Some(r.to_rows());
    let lower = (0..n).all(|i| (i + 1..n).all(|j| r[(i, j)].is_zero()));
    let eps: Option<Vec<i64>> = (0..n).map(|i| unit_sign(&r[(i, i)])).collect();
    let Some(eps) = eps.filter(|_| lower) else {
        report.failure = Some(FiliformAutFailure::NotTriangular);
        return Ok(report);
    };
    report.epsilon = eps.clone();
    let z = coords("z");
    let Some(delta) = unit_sign(&z[n]) else {
        report.failure = Some(FiliformAutFailure::ZImage);
        return Ok(report);
    };
    report.delta = Some(delta);
    if eps.windows(2).any(|w| w[1] != delta * w[0]) {
        report.failure = Some(FiliformAutFailure::EpsilonPropagation);
        return Ok(report);
    }
    let check = check_relations(&model, &values, &pres)?;
    if let Some(index) = check.first_failure {
        report.failure = Some(FiliformAutFailure::Relation { index });
        return Ok(report);
    }
    debug_assert!(r.det().abs().is_one());
    report.automorphism = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_images(n: usize) -> BTreeMap<String, Vec<(String, i64)>> {
        let mut m: BTreeMap<_, _> = (1..=n).map(|i| (format!("y{i}"), vec![(format!("y{i}"), 1)])).collect();
        m.insert("z".into(), vec![("z".into(), 1)]);
        m
    }

    #[test]
    fn identity_is_automorphism() {
        for n in 2..6 {
            let r = filiform_aut_constraints(n, &identity_images(n)).unwrap();
            assert!(r.automorphism, "n = {n}");
        }
    }

    #[test]
    fn shifted_z_is_automorphism() {
        let mut im = identity_images(4);
        im.insert("z".into(), vec![("z".into(), 1), ("y2".into(), 1)]);
        let r = filiform_aut_constraints(4, &im).unwrap();
        assert!(r.automorphism);
    }

    #[test]
    fn sign_flip_fails_propagation() {
        let mut im = identity_images(3);
        im.insert("y2".into(), vec![("y2".into(), -1)]);
        let r = filiform_aut_constraints(3, &im).unwrap();
        assert!(!r.automorphism);
        assert_eq!(r.failure, Some(FiliformAutFailure::EpsilonPropagation));
    }

    #[test]
    fn inversion_on_m_is_automorphism() {
        let mut im = identity_images(3);
        for i in 1..=3 {
            im.insert(format!("y{i}"), vec![(format!("y{i}"), -1)]);
        }
        assert!(filiform_aut_constraints(3, &im).unwrap().automorphism);
    }

    #[test]
    fn triangular_map_not_commuting_with_action_fails_relations() {
        let mut im = identity_images(3);
        im.insert("y1".into(), vec![("y1".into(), 1), ("y2".into(), 1)]);
        let r = filiform_aut_constraints(3, &im).unwrap();
        assert!(matches!(r.failure, Some(FiliformAutFailure::Relation { .. })));
    }

    #[test]
    fn leaving_m_is_reported() {
        let mut im = identity_images(3);
        im.insert("y1".into(), vec![("z".into(), 1)]);
        let r = filiform_aut_constraints(3, &im).unwrap();
        assert_eq!(r.failure, Some(FiliformAutFailure::NotInvariant));
    }

    #[test]
    fn inverting_z_needs_alternating_signs() {
        let mut im = identity_images(3);
        im.insert("z".into(), vec![("z".into(), -1)]);
        im.insert("y2".into(), vec![("y2".into(), -1)]);
        let r = filiform_aut_constraints(3, &im).unwrap();
        assert_eq!(r.delta, Some(-1));
        assert_ne!(r.failure, Some(FiliformAutFailure::EpsilonPropagation));
    }

    #[test]
    fn unknown_generator() {
        let mut im = identity_images(3);
        im.insert("y1".into(), vec![("w".into(), 1)]);
        assert_eq!(filiform_aut_constraints(3, &im).unwrap_err().kind(), "input");
    }
}
