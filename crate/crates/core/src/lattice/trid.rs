//! Abelian invariants of center over derived subgroup for the `TriD` lattices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::matrix::{QMatrix, ZMatrix};
use crate::rational::Rational;
use crate::snf::{hermite_normal_form, saturate, smith_normal_form};

/// Invariants `d1 | d2 | ...` of a finitely generated abelian group; `0` is an infinite factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub divisors: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.divisors.iter().any(Zero::is_zero) {
            return None;
        }
        Some(self.divisors.iter().product())
    }

    pub fn is_cyclic(&self) -> bool {
        self.divisors.iter().filter(|d| !d.is_one()).count() <= 1
    }

    /// Divisors with the trivial factors removed.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Invariants of `C / D` for lattices given by generator rows, `D ⊆ C`, both of full rank in `C`.
pub fn quotient_invariants(center: &ZMatrix, derived: &ZMatrix) -> Result<AbelianInvariants> {
    let c = hermite_normal_form(center);
    let k = c.rows();
    let dq = derived.to_rational();
    if dq.rank() != k {
        return Err(Error::input(format!("sublattice rank {} differs from lattice rank {k}", dq.rank())));
    }
    // solve x C = d for each generator d
    let ct = c.to_rational().transpose();
    let mut coords = Vec::new();
    for i in 0..derived.rows() {
        let x = ct
            .solve(&dq.row(i))
            .ok_or_else(|| Error::input("sublattice is not contained in the lattice"))?;
        let xi: Option<Vec<BigInt>> = x.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect();
        coords.push(xi.ok_or_else(|| Error::input("sublattice is not contained in the lattice"))?);
    }
    let m = ZMatrix::from_rows(coords)?;
    let snf = smith_normal_form(&m);
    Ok(AbelianInvariants { divisors: snf.divisors })
}

/// `Z(Γ) / D(Γ)` for a two-step model, computed from commutators of the unit generators.
pub fn trid_invariants(model: &GroupModel) -> Result<AbelianInvariants> {
    let n = model.dim();
    let gens: Vec<Vec<Rational>> = (0..n).map(|i| model.unit_element(i)).collect();
    let to_int = |v: &[Rational]| -> Result<Vec<BigInt>> {
        v.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()).ok_or_else(|| Error::input("non-integral commutator")))
            .collect()
    };
    let mut derived = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = model.commutator(&gens[i], &gens[j])?;
            if c.iter().any(|x| !x.is_zero()) {
                derived.push(to_int(&c)?);
            }
        }
    }
    // in a two-step group x ↦ [x, g] is a homomorphism: the center is the kernel of
    // the stacked linear map x ↦ ([x, g_j])_j
    let mut cols = Vec::new();
    for g in &gens {
        let mut col = Vec::new();
        for h in &gens {
            col.extend(model.commutator(g, h)?);
        }
        cols.push(col);
    }
    let m = QMatrix::from_cols(n * n, &cols);
    let ker = m.kernel();
    let ker_int: Vec<Vec<BigInt>> = ker
        .iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    if ker_int.is_empty() || derived.is_empty() {
        return Err(Error::input("center or derived subgroup is trivial"));
    }
    let center = saturate(&ZMatrix::from_rows(ker_int)?);
    quotient_invariants(&center, &ZMatrix::from_rows(derived)?)
}
