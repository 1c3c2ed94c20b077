//! The abelian ideal of codimension one in a filiform algebra of type `L_n`.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{lin_comb, QMatrix};
use crate::subspace::Subspace;

/// Returns the unique abelian ideal of codimension one.
///
/// Every codimension-one ideal contains `[L, L]`, so the candidates are
/// `[L, L] + span(αx + βy)` for a basis `x, y` of a complement of `[L, L]`;
/// abelian ones are cut out by a linear condition on `(α, β)`, whose solution
/// space must be a single line.
pub fn unique_abelian_codim1(l: &LieAlgebra) -> Result<Subspace> {
    let dim = l.dim();
    if dim < 3 {
        return Err(Error::structural("filiform type needs dimension at least 3"));
    }
    let lower = l.lower_central_series();
    let dims: Vec<usize> = lower.iter().map(Subspace::dim).collect();
    let expected: Vec<usize> = (0..=dim - 2).rev().collect();
    if dims != expected {
        return Err(Error::structural(format!(
            "lower central series dimensions {dims:?} are not those of a filiform algebra"
        )));
    }
    let derived = &lower[0];
    if !l.is_abelian_subspace(derived) {
        return Err(Error::structural("derived ideal is not abelian"));
    }
    let comp = derived.complement_basis();
    // [α x + β y, d] = 0 for all d in the derived ideal
    let mut rows = Vec::new();
    for d in derived.basis() {
        let bx = l.bracket(&comp[0], d);
        let by = l.bracket(&comp[1], d);
        for k in 0..dim {
            rows.push(vec![bx[k].clone(), by[k].clone()]);
        }
    }
    let ker = QMatrix::from_rows(rows)?.kernel();
    match ker.len() {
        1 => {
            let v = lin_comb(&ker[0], &comp, dim);
            Ok(derived.sum(&Subspace::span(dim, &[v])))
        }
        0 => Err(Error::structural("no abelian ideal of codimension one")),
        _ => Err(Error::structural("abelian ideal of codimension one is not unique")),
    }
}

/// Verifies directly that `i` is an abelian ideal of codimension one.
pub fn is_abelian_codim1_ideal(l: &LieAlgebra, i: &Subspace) -> bool {
    i.dim() + 1 == l.dim() && l.is_ideal(i) && l.is_abelian_subspace(i)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::families::*;
    use crate::matrix::unit_vec;

    #[test]
    fn standard_filiform() {
        let l = filiform(3);
        let i = unique_abelian_codim1(&l).unwrap();
        let expected = Subspace::span(4, &[unit_vec(4, 1), unit_vec(4, 2), unit_vec(4, 3)]);
        assert_eq!(i, expected);
        assert!(is_abelian_codim1_ideal(&l, &i));
    }

    #[test]
    fn shuffled_basis() {
        let l = filiform(3);
        let p = QMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 1, 1, 0], &[1, 0, 2, 1]]);
        let l2 = l.change_basis(&p).unwrap();
        let i2 = unique_abelian_codim1(&l2).unwrap();
        let mapped = i2.image(&p);
        assert_eq!(mapped, unique_abelian_codim1(&l).unwrap());
    }

    #[test]
    fn heisenberg_fails() {
        assert!(matches!(unique_abelian_codim1(&heisenberg(1)), Err(Error::Structural(_))));
    }
}
