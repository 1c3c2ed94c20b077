//! Heisenberg algebras over commutative algebras and their symplectic forms.
//!
//! `H_k(A)` has basis `e_i⊗a_p`, `f_i⊗a_p`, `g⊗a_p` (in that block order) and
//! brackets `[e_i⊗a, f_i⊗b] = g⊗ab`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::commalg::{radical_and_socle, CommAlgebra, SocleReport};
use super::generic::{generic_nondegeneracy, DegeneracyCertificate, GenericOutcome};
use crate::error::{Error, Result};
use crate::forms::{cocycle_space, is_cocycle, AlternatingForm};
use crate::lie::LieAlgebra;
use crate::matrix::{unit_vec, QMatrix};
use crate::rational::Rational;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct HeisenbergOverA {
    pub base: CommAlgebra,
    pub k: usize,
    pub algebra: LieAlgebra,
}

impl HeisenbergOverA {
    pub fn new(base: &CommAlgebra, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("k must be positive"));
        }
        let l = base.dim();
        let n = (2 * k + 1) * l;
        let mut list = Vec::new();
        for i in 0..k {
            for p in 0..l {
                for r in 0..l {
                    let prod = base.basis_product(p, r);
                    let mut v = vec![Rational::zero(); n];
                    for (t, c) in prod.iter().enumerate() {
                        v[2 * k * l + t] = c.clone();
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        list.push((i * l + p, (k + i) * l + r, v));
                    }
                }
            }
        }
        let algebra = LieAlgebra::from_brackets(n, &list)?;
        Ok(HeisenbergOverA { base: base.clone(), k, algebra })
    }

    fn l(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn e(&self, i: usize, p: usize) -> usize {
        i * self.l() + p
    }

    pub fn f(&self, i: usize, p: usize) -> usize {
        (self.k + i) * self.l() + p
    }

    pub fn g(&self, p: usize) -> usize {
        2 * self.k * self.l() + p
    }

    /// The subspace `A·g`.
    pub fn center_copy(&self) -> Subspace {
        let n = self.dim();
        Subspace::span(n, &(0..self.l()).map(|p| unit_vec(n, self.g(p))).collect::<Vec<_>>())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionReason {
    /// Local, even dimensional, socle of dimension at most two.
    Criterion,
    Parity,
    SocleDim,
    /// Non-local input decided by the cocycle-space search.
    GenericSearch,
}

#[derive(Clone, Debug)]
pub struct H1Decision {
    pub symplectic: bool,
    pub reason: DecisionReason,
    /// `"theorem"` for local inputs, `"generic-search"` otherwise.
    pub method: &'static str,
    pub socle: SocleReport,
    pub generic: Option<GenericOutcome>,
}

pub const GENERIC_BUDGET: usize = 16;
pub const GENERIC_SEED: u64 = 0x5eed;

/// Whether `H_1(A)` carries a nondegenerate scalar 2-cocycle.
pub fn h1_symplectic_decision(a: &CommAlgebra) -> Result<H1Decision> {
    let socle = radical_and_socle(a)?;
    if !socle.is_local {
        let h = HeisenbergOverA::new(a, 1)?;
        let cs = cocycle_space(&h.algebra);
        let out = generic_nondegeneracy(&cs.cocycles, h.dim(), GENERIC_BUDGET, GENERIC_SEED);
        let symplectic = match out {
            GenericOutcome::Nondegenerate(_) => true,
            GenericOutcome::Degenerate(_) => false,
            GenericOutcome::Inconclusive => {
                return Err(Error::structural("generic search budget exhausted without a decision"))
            }
        };
        return Ok(H1Decision { symplectic, reason: DecisionReason::GenericSearch, method: "generic-search", socle, generic: Some(out) });
    }
    let (symplectic, reason) = if a.dim() % 2 == 1 {
        (false, DecisionReason::Parity)
    } else if socle.socle.dim() > 2 {
        (false, DecisionReason::SocleDim)
    } else {
        (true, DecisionReason::Criterion)
    };
    Ok(H1Decision { symplectic, reason, method: "theorem", socle, generic: None })
}

/// Functionals dual to the socle basis, vanishing on the standard complement.
fn socle_functionals(socle: &Subspace) -> Vec<Vec<Rational>> {
    let n = socle.ambient();
    let mut cols: Vec<Vec<Rational>> = socle.basis().to_vec();
    cols.extend(socle.complement_basis());
    let inv = QMatrix::from_cols(n, &cols).inverse().expect("basis");
    (0..socle.dim()).map(|i| inv.row(i)).collect()
}

/// Standard symplectic pairing `v_0∧v_1 + v_2∧v_3 + ...` on a list of vectors, as a
/// form on the ambient space via the dual basis of the completed family.
fn pairing_on(vectors: &[Vec<Rational>], dual: &QMatrix) -> QMatrix {
    let n = dual.cols();
    let mut m = QMatrix::zeros(n, n);
    for p in (0..vectors.len()).step_by(2) {
        let (a, b) = (dual.row(p), dual.row(p + 1));
        for i in 0..n {
            for j in 0..n {
                let v = &a[i] * &b[j] - &b[i] * &a[j];
                m[(i, j)] += v;
            }
        }
    }
    m
}

/// A nondegenerate 2-cocycle on `H_1(A)` following the constructive criterion.
pub fn h1_cocycle_construct(a: &CommAlgebra) -> Result<AlternatingForm> {
    let dec = h1_symplectic_decision(a)?;
    if !dec.symplectic {
        return Err(Error::precondition("H_1(A) admits no nondegenerate 2-cocycle"));
    }
    let h = HeisenbergOverA::new(a, 1)?;
    if let Some(GenericOutcome::Nondegenerate(w)) = dec.generic {
        return Ok(w);
    }
    let l = a.dim();
    let n = h.dim();
    let funcs = socle_functionals(&dec.socle.socle);
    let value = |f: &[Rational], p: usize, r: usize| -> Rational {
        a.basis_product(p, r).iter().zip(f).map(|(x, y)| x * y).sum()
    };
    let mut m = QMatrix::zeros(n, n);
    let put = |m: &mut QMatrix, i: usize, j: usize, v: Rational| {
        m[(i, j)] += v.clone();
        m[(j, i)] -= v;
    };
    if funcs.len() == 1 {
        // μ(a c') - μ(a' c) on the e and g copies, standard pairing on the f copy
        let mu = &funcs[0];
        for p in 0..l {
            for r in 0..l {
                put(&mut m, h.e(0, p), h.g(r), value(mu, p, r));
            }
        }
        for p in (0..l).step_by(2) {
            put(&mut m, h.f(0, p), h.f(0, p + 1), Rational::one());
        }
    } else {
        let (f1, f2) = (&funcs[0], &funcs[1]);
        for p in 0..l {
            for r in 0..l {
                put(&mut m, h.e(0, p), h.g(r), value(f1, p, r));
                put(&mut m, h.f(0, p), h.g(r), value(f2, p, r));
            }
        }
        // F: vectors of Ae ⊕ Af orthogonal to Ag; E: standard complement of F there
        let ef: Vec<usize> = (0..2 * l).collect();
        let rows: Vec<Vec<Rational>> = (0..l)
            .map(|r| ef.iter().map(|&i| m[(i, h.g(r))].clone()).collect())
            .collect();
        let kernel = QMatrix::from_rows(rows).expect("rectangular").kernel();
        let f_space = Subspace::span(2 * l, &kernel);
        let mut family: Vec<Vec<Rational>> = f_space.basis().to_vec();
        family.extend(f_space.complement_basis());
        let dual = QMatrix::from_cols(2 * l, &family).inverse().expect("basis");
        let block = pairing_on(f_space.basis(), &dual);
        for i in 0..2 * l {
            for j in 0..2 * l {
                m[(i, j)] += block[(i, j)].clone();
            }
        }
    }
    let w = AlternatingForm::new(m)?;
    if !is_cocycle(&h.algebra, &w) || !w.is_nondegenerate() {
        return Err(Error::structural("constructed form failed verification"));
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct HkReport {
    /// Every cocycle of `H_k(A)` is degenerate.
    pub degenerate: bool,
    /// `A·g` lies in the radical of every cocycle.
    pub contains_ag: bool,
    /// Common radical of all cocycles.
    pub kernel: Subspace,
    pub cocycle_dim: usize,
}

/// Verifies that `A·g` lies in the radical of every 2-cocycle of `H_k(A)`, `k >= 2`.
pub fn hk_degeneracy_check(a: &CommAlgebra, k: usize) -> Result<HkReport> {
    if k < 2 {
        return Err(Error::precondition("degeneracy check needs k >= 2"));
    }
    let h = HeisenbergOverA::new(a, k)?;
    let n = h.dim();
    let cs = cocycle_space(&h.algebra);
    let mut rows = Vec::new();
    for w in &cs.cocycles {
        rows.extend(w.matrix().to_rows());
    }
    let kernel = if rows.is_empty() {
        Subspace::full(n)
    } else {
        Subspace::span(n, &QMatrix::from_rows(rows).expect("rectangular").kernel())
    };
    let contains_ag = h.center_copy().is_subspace_of(&kernel);
    Ok(HkReport { degenerate: kernel.dim() > 0, contains_ag, kernel, cocycle_dim: cs.cocycles.len() })
}

/// Exact degeneracy certificate for every cocycle of `H_1(A)`, if one exists.
pub fn h1_degeneracy_certificate(a: &CommAlgebra) -> Result<Option<DegeneracyCertificate>> {
    let h = HeisenbergOverA::new(a, 1)?;
    let cs = cocycle_space(&h.algebra);
    Ok(match generic_nondegeneracy(&cs.cocycles, h.dim(), GENERIC_BUDGET, GENERIC_SEED) {
        GenericOutcome::Degenerate(c) => Some(c),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::coboundary_at;

    fn example6() -> CommAlgebra {
        CommAlgebra::monomial(2, &[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap()
    }

    /// Dense re-evaluation of δω on vectors, independent of the basis checker.
    fn dense_cocycle(l: &LieAlgebra, w: &AlternatingForm) -> bool {
        let n = l.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| coboundary_at(l, w, i, j, k).is_zero())))
    }

    #[test]
    fn heisenberg_over_rationals_is_h1() {
        let h = HeisenbergOverA::new(&CommAlgebra::rationals(), 1).unwrap();
        assert_eq!(h.algebra, crate::lie::families::heisenberg(1));
    }

    #[test]
    fn decisions() {
        let d = h1_symplectic_decision(&example6()).unwrap();
        assert!(d.symplectic);
        let d = h1_symplectic_decision(&CommAlgebra::truncated_polynomial(3).unwrap()).unwrap();
        assert_eq!((d.symplectic, d.reason), (false, DecisionReason::Parity));
        let d = h1_symplectic_decision(&CommAlgebra::square_zero(3)).unwrap();
        assert_eq!((d.symplectic, d.reason), (false, DecisionReason::SocleDim));
    }

    #[test]
    fn constructions_verify() {
        for a in [CommAlgebra::dual_numbers(), CommAlgebra::truncated_polynomial(4).unwrap(), example6()] {
            let h = HeisenbergOverA::new(&a, 1).unwrap();
            let w = h1_cocycle_construct(&a).unwrap();
            assert!(dense_cocycle(&h.algebra, &w));
            assert!(!w.matrix().det().is_zero());
        }
    }

    #[test]
    fn false_decision_is_precondition_error() {
        let e = h1_cocycle_construct(&CommAlgebra::square_zero(3)).unwrap_err();
        assert_eq!(e.kind(), "precondition");
    }

    #[test]
    fn non_local_frobenius_found_by_search() {
        let a = CommAlgebra::product(&CommAlgebra::rationals(), &CommAlgebra::rationals());
        let d = h1_symplectic_decision(&a).unwrap();
        assert_eq!((d.symplectic, d.method), (true, "generic-search"));
        let w = h1_cocycle_construct(&a).unwrap();
        assert!(w.is_nondegenerate());
    }

    #[test]
    fn h2_over_rationals_degenerate() {
        let r = hk_degeneracy_check(&CommAlgebra::rationals(), 2).unwrap();
        assert!(r.degenerate && r.contains_ag);
    }
}
