//! Symplectic orthogonals and the intersection of the integer lattice of the
//! six-dimensional two-step model with an orthogonal subgroup.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::lie::LieAlgebra;
use crate::matrix::{QMatrix, ZMatrix};
use crate::rational::Rational;
use crate::snf::{hermite_normal_form, solve_integer};
use crate::subspace::Subspace;

/// `H^⊥ = {x : ω(x, h) = 0 for all h ∈ H}`.
pub fn orthogonal_subalgebra(l: &LieAlgebra, w: &AlternatingForm, h: &Subspace) -> Result<Subspace> {
    let n = l.dim();
    if w.dim() != n || h.ambient() != n {
        return Err(Error::input("dimension mismatch"));
    }
    if !w.is_nondegenerate() {
        return Err(Error::precondition("form is degenerate"));
    }
    if h.dim() == 0 {
        return Ok(Subspace::full(n));
    }
    let rows: Vec<Vec<Rational>> = h.basis().iter().map(|v| w.matrix().mul_vec(v)).collect();
    Ok(Subspace::span(n, &QMatrix::from_rows(rows).expect("rectangular").kernel()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaPrimeReport {
    /// Dimension over Q of the span of the three coefficients.
    pub w_dim: usize,
    /// Rank of `Γ ∩ exp(I^⊥)`.
    pub gamma_prime_rank: usize,
    pub is_lattice: bool,
    /// Integer basis (Hermite form) of the admissible `(x_1, x_2, x_3)`.
    pub x_basis: Vec<Vec<BigInt>>,
    /// When `w_dim = 1`, the primitive integer form `f` with `Γ' = {f(x) = 0}`.
    pub linear_form: Option<Vec<BigInt>>,
}

fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

/// Case analysis for `Γ' = Γ ∩ exp(I^⊥)`: `coeffs[i]` holds the coordinates of `b_{3,i+1}`
/// over a declared Q-basis of real numbers.
pub fn example5_gamma_prime(coeffs: &[Vec<Rational>; 3]) -> Result<GammaPrimeReport> {
    let m = coeffs[0].len();
    if m == 0 || coeffs.iter().any(|c| c.len() != m) {
        return Err(Error::input("coefficient vectors must share a nonempty basis"));
    }
    if coeffs.iter().all(|c| c.iter().all(Zero::is_zero)) {
        return Err(Error::input("the coefficients b_31, b_32, b_33 are all zero"));
    }
    let c = QMatrix::from_rows(coeffs.to_vec()).expect("rectangular");
    let w_dim = c.rank();
    // x admissible iff Σ_i x_i c[i][k] = 0 for every basis number k
    let cols: Vec<Vec<BigInt>> = (0..m).map(|k| primitive(&c.col(k))).collect();
    let system = ZMatrix::from_fn(m, 3, |k, i| cols[k][i].clone());
    let (_, kernel) = solve_integer(&system, &vec![BigInt::zero(); m]).expect("homogeneous");
    let x_basis = if kernel.is_empty() {
        Vec::new()
    } else {
        hermite_normal_form(&ZMatrix::from_rows(kernel).expect("rectangular")).to_rows()
    };
    let linear_form = (w_dim == 1).then(|| cols.iter().find(|v| v.iter().any(|x| !x.is_zero())).expect("nonzero").clone());
    Ok(GammaPrimeReport {
        w_dim,
        gamma_prime_rank: 3 + x_basis.len(),
        is_lattice: w_dim == 1,
        x_basis,
        linear_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{cocycle_space, filiform_cocycle};
    use crate::lie::families;
    use crate::matrix::{rational_vec, unit_vec};
    use crate::rational::q;

    #[test]
    fn center_orthogonal_in_l3() {
        let l = families::filiform(3);
        let w = filiform_cocycle(2).unwrap();
        let z = l.center();
        let v = Subspace::span(4, &[unit_vec(4, 1), unit_vec(4, 2), unit_vec(4, 3)]);
        assert_eq!(orthogonal_subalgebra(&l, &w, &z).unwrap(), v);
        // a perturbed cocycle: add a coboundary-free multiple of another cocycle
        let cs = cocycle_space(&l);
        let w2 = w.add(&cs.cocycles[0].scale(&q(3)));
        if w2.is_nondegenerate() {
            assert_eq!(orthogonal_subalgebra(&l, &w2, &z).unwrap(), v);
        }
        assert_eq!(orthogonal_subalgebra(&l, &w, &Subspace::full(4)).unwrap().dim(), 0);
    }

    #[test]
    fn gamma_prime_cases() {
        let r = example5_gamma_prime(&[rational_vec(&[1]), rational_vec(&[1]), rational_vec(&[1])]).unwrap();
        assert_eq!((r.w_dim, r.gamma_prime_rank, r.is_lattice), (1, 5, true));
        assert_eq!(r.linear_form, Some(vec![BigInt::from(1); 3]));
        let r = example5_gamma_prime(&[rational_vec(&[1, 0]), rational_vec(&[0, 1]), rational_vec(&[0, 0])]).unwrap();
        assert_eq!((r.w_dim, r.gamma_prime_rank, r.is_lattice), (2, 4, false));
        assert_eq!(r.x_basis, vec![vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)]]);
        let id: [Vec<Rational>; 3] = [unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)];
        let r = example5_gamma_prime(&id).unwrap();
        assert_eq!((r.w_dim, r.gamma_prime_rank, r.is_lattice), (3, 3, false));
        let zero: [Vec<Rational>; 3] = [rational_vec(&[0]), rational_vec(&[0]), rational_vec(&[0])];
        assert_eq!(example5_gamma_prime(&zero).unwrap_err().kind(), "input");
    }
}
