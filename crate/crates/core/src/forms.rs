//! Alternating forms, scalar 2-cocycles and left-symmetric products.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, ProductTable};
use crate::matrix::{is_zero_vec, unit_vec, QMatrix};
use crate::rational::Rational;

/// An alternating bilinear form `ω(x, y) = x^T M y` with `M` skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    matrix: QMatrix,
}

impl AlternatingForm {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_skew_symmetric() {
            return Err(Error::input("form matrix is not skew-symmetric"));
        }
        Ok(AlternatingForm { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        AlternatingForm { matrix: QMatrix::zeros(dim, dim) }
    }

    /// Sum of `c * e_i* ∧ e_j*` over the given 0-based terms.
    pub fn from_wedges(dim: usize, terms: &[(usize, usize, Rational)]) -> Self {
        let mut m = QMatrix::zeros(dim, dim);
        for (i, j, c) in terms {
            m[(*i, *j)] += c;
            m[(*j, *i)] -= c;
        }
        AlternatingForm { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.matrix.bilinear(x, y)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)]
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.det().is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        AlternatingForm { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlternatingForm { matrix: self.matrix.scale(c) }
    }

    /// Pullback along the linear map whose columns are the images of basis vectors.
    pub fn pullback(&self, p: &QMatrix) -> Self {
        AlternatingForm { matrix: p.transpose().mul(&self.matrix).mul(p) }
    }

    /// Radical `{x : ω(x, ·) = 0}`.
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        self.matrix.kernel()
    }

    /// The linear combination `Σ c_i ω_i`.
    pub fn combination(forms: &[AlternatingForm], coeffs: &[Rational]) -> Self {
        let n = forms.first().map_or(0, |f| f.dim());
        let mut m = QMatrix::zeros(n, n);
        for (f, c) in forms.iter().zip(coeffs) {
            if !c.is_zero() {
                m = m.add(&f.matrix.scale(c));
            }
        }
        AlternatingForm { matrix: m }
    }
}

/// `δω(e_i, e_j, e_k) = ω([e_i,e_j],e_k) + ω([e_j,e_k],e_i) + ω([e_k,e_i],e_j)`.
pub fn coboundary_at(l: &LieAlgebra, w: &AlternatingForm, i: usize, j: usize, k: usize) -> Rational {
    let n = l.dim();
    w.eval(l.bracket_basis(i, j), &unit_vec(n, k))
        + w.eval(l.bracket_basis(j, k), &unit_vec(n, i))
        + w.eval(l.bracket_basis(k, i), &unit_vec(n, j))
}

pub fn is_cocycle(l: &LieAlgebra, w: &AlternatingForm) -> bool {
    let n = l.dim();
    (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| coboundary_at(l, w, i, j, k).is_zero())))
}

/// Index of the unknown `ω(e_a, e_b)`, `a < b`, in the packed upper triangle.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn unpack(n: usize, v: &[Rational]) -> AlternatingForm {
    let mut m = QMatrix::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let c = &v[pair_index(n, a, b)];
            m[(a, b)] = c.clone();
            m[(b, a)] = -c.clone();
        }
    }
    AlternatingForm { matrix: m }
}

fn pack(w: &AlternatingForm) -> Vec<Rational> {
    let n = w.dim();
    let mut out = vec![Rational::zero(); n * (n - 1) / 2];
    for a in 0..n {
        for b in a + 1..n {
            out[pair_index(n, a, b)] = w.matrix[(a, b)].clone();
        }
    }
    out
}

/// The linear system `δω = 0` on packed upper-triangular unknowns; one row per triple.
pub fn cocycle_system(l: &LieAlgebra) -> QMatrix {
    let n = l.dim();
    let m = n * n.saturating_sub(1) / 2;
    let mut rows = Vec::new();
    // ω([x,y],z) with [x,y] = Σ c^p e_p contributes c^p ω(e_p, e_z)
    let add = |row: &mut Vec<Rational>, v: &[Rational], z: usize| {
        for (p, c) in v.iter().enumerate() {
            if c.is_zero() || p == z {
                continue;
            }
            if p < z {
                row[pair_index(n, p, z)] += c;
            } else {
                row[pair_index(n, z, p)] -= c;
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut row = vec![Rational::zero(); m];
                add(&mut row, l.bracket_basis(i, j), k);
                add(&mut row, l.bracket_basis(j, k), i);
                add(&mut row, l.bracket_basis(k, i), j);
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        QMatrix::zeros(0, m)
    } else {
        QMatrix::from_rows(rows).expect("rectangular")
    }
}

#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub cocycles: Vec<AlternatingForm>,
    pub coboundaries: Vec<AlternatingForm>,
}

impl CocycleSpace {
    /// Whether a form lies in the span of the returned cocycles.
    pub fn contains(&self, w: &AlternatingForm) -> bool {
        span_contains(&self.cocycles, w)
    }
}

fn span_contains(basis: &[AlternatingForm], w: &AlternatingForm) -> bool {
    let target = pack(w);
    if basis.is_empty() {
        return is_zero_vec(&target);
    }
    let cols: Vec<Vec<Rational>> = basis.iter().map(pack).collect();
    QMatrix::from_cols(target.len(), &cols).solve(&target).is_some()
}

pub fn cocycle_space(l: &LieAlgebra) -> CocycleSpace {
    let n = l.dim();
    let m = n * n.saturating_sub(1) / 2;
    let sys = cocycle_system(l);
    let kernel = if sys.rows() == 0 {
        (0..m).map(|i| unit_vec(m, i)).collect()
    } else {
        sys.kernel()
    };
    let cocycles = kernel.iter().map(|v| unpack(n, v)).collect();
    // coboundaries λ([x, y]) for λ = e_k*
    let mut cob = Vec::new();
    for k in 0..n {
        let mut v = vec![Rational::zero(); m];
        for a in 0..n {
            for b in a + 1..n {
                v[pair_index(n, a, b)] = l.bracket_basis(a, b)[k].clone();
            }
        }
        cob.push(v);
    }
    let cob_space = crate::subspace::Subspace::span(m, &cob);
    let coboundaries = cob_space.basis().iter().map(|v| unpack(n, v)).collect();
    CocycleSpace { cocycles, coboundaries }
}

/// Product `a·b` determined by `ω(a·b, c) = -ω(b, [a, c])`.
pub fn left_symmetric_product(l: &LieAlgebra, w: &AlternatingForm) -> Result<ProductTable> {
    let n = l.dim();
    if w.dim() != n {
        return Err(Error::input("form and algebra dimensions differ"));
    }
    let mt = w.matrix.transpose();
    let winv = mt
        .inverse()
        .ok_or_else(|| Error::precondition("form is degenerate"))?;
    if !is_cocycle(l, w) {
        return Err(Error::precondition("form is not a 2-cocycle"));
    }
    let mut table = ProductTable::zero(n);
    for a in 0..n {
        for b in 0..n {
            // Σ_i v_i ω(e_i, e_c) = -ω(e_b, [e_a, e_c]) for every c
            let rhs: Vec<Rational> = (0..n)
                .map(|c| -w.eval(&unit_vec(n, b), l.bracket_basis(a, c)))
                .collect();
            table.set(a, b, winv.mul_vec(&rhs));
        }
    }
    Ok(table)
}

/// `ab - ba = [a, b]` on all basis pairs.
pub fn is_torsion_free(l: &LieAlgebra, p: &ProductTable) -> bool {
    let n = l.dim();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let d: Vec<Rational> = p.get(a, b).iter().zip(p.get(b, a)).map(|(x, y)| x - y).collect();
            d == l.bracket_basis(a, b)
        })
    })
}

/// `(ab)c - a(bc) = (ba)c - b(ac)` on all basis triples.
pub fn is_left_symmetric(p: &ProductTable) -> bool {
    let n = p.dim();
    let assoc = |a: usize, b: usize, c: usize| -> Vec<Rational> {
        let ab_c = p.apply(p.get(a, b), &unit_vec(n, c));
        let a_bc = p.apply(&unit_vec(n, a), p.get(b, c));
        ab_c.iter().zip(&a_bc).map(|(x, y)| x - y).collect()
    };
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c) == assoc(b, a, c))))
}

/// `ω(a·b, c) + ω(b, a·c) = 0` on all basis triples.
pub fn is_parallel(w: &AlternatingForm, p: &ProductTable) -> bool {
    let n = p.dim();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                (w.eval(p.get(a, b), &unit_vec(n, c)) + w.eval(&unit_vec(n, b), p.get(a, c))).is_zero()
            })
        })
    })
}

/// `L_{[a,b]} = [L_a, L_b]` where `L_a` is left multiplication.
pub fn is_flat(l: &LieAlgebra, p: &ProductTable) -> bool {
    let n = l.dim();
    let lm: Vec<QMatrix> = (0..n).map(|a| p.left_mul(&unit_vec(n, a))).collect();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let lhs = p.left_mul(l.bracket_basis(a, b));
            let rhs = lm[a].mul(&lm[b]).sub(&lm[b].mul(&lm[a]));
            lhs == rhs
        })
    })
}

/// The form `Σ_{i=0}^{n-1} (-1)^i e_i* ∧ e_{2n-1-i}*` on the filiform algebra of dimension `2n`.
pub fn filiform_cocycle(n: usize) -> Result<AlternatingForm> {
    if n < 2 {
        return Err(Error::precondition("filiform cocycle needs n >= 2"));
    }
    let dim = 2 * n;
    let terms: Vec<_> = (0..n)
        .map(|i| {
            let s = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            (i, dim - 1 - i, s)
        })
        .collect();
    Ok(AlternatingForm::from_wedges(dim, &terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::families::*;
    use crate::rational::q;

    #[test]
    fn abelian_cocycles_are_all_forms() {
        let cs = cocycle_space(&LieAlgebra::abelian(4));
        assert_eq!(cs.cocycles.len(), 6);
        assert!(cs.coboundaries.is_empty());
    }

    #[test]
    fn heisenberg_cocycles() {
        let cs = cocycle_space(&heisenberg(1));
        assert_eq!(cs.cocycles.len(), 3);
        assert_eq!(cs.coboundaries.len(), 1);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let l = filiform(3);
        let cs = cocycle_space(&l);
        for b in &cs.coboundaries {
            assert!(is_cocycle(&l, b));
            assert!(cs.contains(b));
        }
        for c in &cs.cocycles {
            assert!(is_cocycle(&l, c));
        }
    }

    #[test]
    fn filiform_cocycles_are_symplectic() {
        for n in 2..=4 {
            let w = filiform_cocycle(n).unwrap();
            let l = filiform(2 * n - 1);
            assert!(is_cocycle(&l, &w));
            assert!(w.is_nondegenerate());
        }
        let w = filiform_cocycle(2).unwrap();
        assert_eq!(coboundary_at(&filiform(3), &w, 0, 1, 2), q(0));
    }

    #[test]
    fn odd_forms_degenerate() {
        let w = AlternatingForm::from_wedges(3, &[(0, 1, q(1)), (1, 2, q(3))]);
        assert!(!w.is_nondegenerate());
        assert!(!AlternatingForm::zero(2).is_nondegenerate());
    }

    #[test]
    fn left_symmetric_on_affine_line() {
        let l = affine_line();
        let w = AlternatingForm::from_wedges(2, &[(0, 1, q(1))]);
        let p = left_symmetric_product(&l, &w).unwrap();
        assert!(is_torsion_free(&l, &p));
        assert!(is_left_symmetric(&p));
        // ω(e·x, c) = -ω(x, [e, c]) vanishes identically, so e·x = 0 and x·e = -x
        assert_eq!(p.get(0, 1), &[q(0), q(0)]);
        assert_eq!(p.get(1, 0), &[q(0), q(-1)]);
    }

    #[test]
    fn left_symmetric_on_l3() {
        let l = filiform(3);
        let w = filiform_cocycle(2).unwrap();
        let p = left_symmetric_product(&l, &w).unwrap();
        assert!(is_torsion_free(&l, &p));
        assert!(is_left_symmetric(&p));
    }

    #[test]
    fn degenerate_form_rejected() {
        let l = filiform(3);
        let w = AlternatingForm::zero(4);
        assert!(matches!(left_symmetric_product(&l, &w), Err(Error::Precondition(_))));
    }
}
