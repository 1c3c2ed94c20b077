//! Flat torsion-free symplectic connections on algebras with an abelian
//! ideal of codimension one.
//!
//! With `G = I ⊕ Qe`, take `L_x = 0` for `x ∈ I`, `L_e = ad_e` on `I` and
//! `L_e e = w`, where `w` solves `ω(w, c) = -ω(e, [e, c])` for `c ∈ I` and
//! `ω(w, e) = 0`. Setting `L_e e = 0` (as in the bare `L_e = ad_e`) keeps the
//! product torsion-free and flat but breaks `ω(L_a b, c) + ω(b, L_a c) = 0`
//! whenever `ω(e, [e, ·])` does not vanish on `I`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{is_cocycle, is_flat, is_left_symmetric, is_parallel, is_torsion_free, AlternatingForm};
use crate::lie::{LieAlgebra, ProductTable};
use crate::matrix::{unit_vec, QMatrix};
use crate::rational::Rational;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct Theorem6Structure {
    pub product: ProductTable,
    /// `L_e e`.
    pub w: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionReport {
    pub torsion_free: bool,
    pub flat: bool,
    pub left_symmetric: bool,
    pub parallel: bool,
}

impl ConnectionReport {
    pub fn all(&self) -> bool {
        self.torsion_free && self.flat && self.left_symmetric && self.parallel
    }
}

pub fn connection_report(l: &LieAlgebra, w: &AlternatingForm, p: &ProductTable) -> ConnectionReport {
    ConnectionReport {
        torsion_free: is_torsion_free(l, p),
        flat: is_flat(l, p),
        left_symmetric: is_left_symmetric(p),
        parallel: is_parallel(w, p),
    }
}

/// Coordinates `(x, t)` of `v = x + t e` with `x ∈ I`.
fn split(ideal: &Subspace, e: &[Rational], v: &[Rational]) -> Rational {
    let n = e.len();
    let mut cols: Vec<Vec<Rational>> = ideal.basis().to_vec();
    cols.push(e.to_vec());
    let m = QMatrix::from_cols(n, &cols);
    let c = m.solve(v).expect("I ⊕ Qe spans");
    c[n - 1].clone()
}

fn product_with(l: &LieAlgebra, ideal: &Subspace, e: &[Rational], w: &[Rational]) -> ProductTable {
    let n = l.dim();
    let t: Vec<Rational> = (0..n).map(|i| split(ideal, e, &unit_vec(n, i))).collect();
    let ad_e = l.ad(e);
    let mut table = ProductTable::zero(n);
    for a in 0..n {
        if t[a].is_zero() {
            continue;
        }
        for b in 0..n {
            // L_e b = [e, b] + t_b w
            let v: Vec<Rational> = (0..n).map(|k| &t[a] * (&ad_e[(k, b)] + &t[b] * &w[k])).collect();
            table.set(a, b, v);
        }
    }
    table
}

fn check(l: &LieAlgebra, ideal: &Subspace, e: &[Rational], w: &AlternatingForm) -> Result<()> {
    let n = l.dim();
    if ideal.ambient() != n || e.len() != n || w.dim() != n {
        return Err(Error::input("dimension mismatch"));
    }
    if ideal.dim() + 1 != n || ideal.contains(e) {
        return Err(Error::precondition("I must have codimension one with e outside it"));
    }
    if !l.is_ideal(ideal) {
        return Err(Error::precondition("I is not an ideal"));
    }
    if !l.is_abelian_subspace(ideal) {
        return Err(Error::precondition("I is not abelian"));
    }
    if !is_cocycle(l, w) || !w.is_nondegenerate() {
        return Err(Error::precondition("form is not a symplectic 2-cocycle"));
    }
    Ok(())
}

pub fn theorem6_structure(l: &LieAlgebra, ideal: &Subspace, e: &[Rational], w: &AlternatingForm) -> Result<Theorem6Structure> {
    check(l, ideal, e, w)?;
    let n = l.dim();
    let mut tests: Vec<Vec<Rational>> = ideal.basis().to_vec();
    tests.push(e.to_vec());
    let ad_e = l.ad(e);
    // rows: Σ_i w_i ω(e_i, c) = rhs(c)
    let rows: Vec<Vec<Rational>> = tests.iter().map(|c| w.matrix().mul_vec(c)).collect();
    let rhs: Vec<Rational> = tests
        .iter()
        .enumerate()
        .map(|(k, c)| if k < n - 1 { -w.eval(e, &ad_e.mul_vec(c)) } else { Rational::zero() })
        .collect();
    let sol = QMatrix::from_rows(rows).expect("square").solve(&rhs).expect("ω nondegenerate");
    Ok(Theorem6Structure { product: product_with(l, ideal, e, &sol), w: sol })
}

/// The product with `L_e e = 0`, kept for comparison.
pub fn theorem6_bare_product(l: &LieAlgebra, ideal: &Subspace, e: &[Rational], w: &AlternatingForm) -> Result<ProductTable> {
    check(l, ideal, e, w)?;
    Ok(product_with(l, ideal, e, &vec![Rational::zero(); l.dim()]))
}
