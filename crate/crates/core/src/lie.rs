//! Finite-dimensional Lie algebras over Q given by structure constants.

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, lin_comb, unit_vec, QMatrix};
use crate::rational::{format_rational, parse_rational, q, Rational};
use crate::subspace::Subspace;

/// Bilinear product on `Q^dim` stored densely: `table[i * dim + j]` is `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    dim: usize,
    table: Vec<Vec<Rational>>,
}

impl ProductTable {
    pub fn zero(dim: usize) -> Self {
        ProductTable { dim, table: vec![vec![Rational::zero(); dim]; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        assert_eq!(v.len(), self.dim);
        self.table[i * self.dim + j] = v;
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(self.get(i, j)) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` (columns are images of basis vectors).
    pub fn left_mul(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.apply(x, &unit_vec(n, j))).collect();
        QMatrix::from_cols(n, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    consts: ProductTable,
}

/// A triple of basis indices (0-based) whose Jacobi sum does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "ser_vec")]
    pub defect: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

/// `(i, j, [(k, c)])`: `[e_i, e_j] = Σ c e_k`, 0-based.
pub type SparseBracket<'a> = (usize, usize, &'a [(usize, i64)]);

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { consts: ProductTable::zero(dim) }
    }

    /// Builds an algebra from brackets `[e_i, e_j] = v` with 0-based `i < j`.
    /// Antisymmetry is filled in; repeated or out-of-range pairs are rejected.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Rational>)]) -> Result<Self> {
        let mut consts = ProductTable::zero(dim);
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::input(format!("bracket index out of range: ({}, {})", i + 1, j + 1)));
            }
            if i >= j {
                return Err(Error::input(format!("brackets must be listed with i < j, got ({}, {})", i + 1, j + 1)));
            }
            if !seen.insert((i, j)) {
                return Err(Error::input(format!("bracket ({}, {}) given twice", i + 1, j + 1)));
            }
            consts.set(i, j, v.clone());
            consts.set(j, i, v.iter().map(|x| -x).collect());
        }
        Ok(LieAlgebra { consts })
    }

    /// Convenience constructor from sparse integer data `(i, j, [(k, c)])`, 0-based.
    pub fn from_sparse(dim: usize, brackets: &[SparseBracket]) -> Self {
        let list: Vec<_> = brackets
            .iter()
            .map(|(i, j, terms)| {
                let mut v = vec![Rational::zero(); dim];
                for &(k, c) in terms.iter() {
                    v[k] += q(c);
                }
                (*i, *j, v)
            })
            .collect();
        LieAlgebra::from_brackets(dim, &list).expect("well-formed literal")
    }

    pub fn dim(&self) -> usize {
        self.consts.dim
    }

    pub fn structure(&self) -> &ProductTable {
        &self.consts
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.consts.get(i, j)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.consts.apply(x, y)
    }

    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        self.consts.left_mul(x)
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.is_zero()
    }

    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let n = self.dim();
        let (ei, ej, ek) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
        let a = self.bracket(&ei, self.bracket_basis(j, k));
        let b = self.bracket(&ej, self.bracket_basis(k, i));
        let c = self.bracket(&ek, self.bracket_basis(i, j));
        a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect()
    }

    pub fn validate(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.jacobi_defect(i, j, k);
                    if !is_zero_vec(&d) {
                        violations.push(JacobiViolation { triple: (i, j, k), defect: d });
                    }
                }
            }
        }
        JacobiReport { ok: violations.is_empty(), violations }
    }

    /// `[U, V]` as a subspace.
    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                out.push(self.bracket(a, b));
            }
        }
        Subspace::span(self.dim(), &out)
    }

    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_spaces(&full, &full)
    }

    /// `{x : [x, U] ⊆ W}`.
    pub fn centralizer_mod(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let n = self.dim();
        let ann = w.annihilator();
        // linear conditions: <a, [x, b]> = 0 for a in ann(W), b in U
        let mut rows = Vec::new();
        for b in u.basis() {
            let adb = self.ad(b); // [b, x] = ad_b x
            for a in ann.basis() {
                rows.push((0..n).map(|c| {
                    (0..n).fold(Rational::zero(), |acc, r| acc + &a[r] * &adb[(r, c)])
                }).collect::<Vec<_>>());
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::span(n, &QMatrix::from_rows(rows).expect("rectangular").kernel())
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        self.centralizer_mod(&Subspace::full(n), &Subspace::zero(n))
    }

    /// Descending series `C^1 = [L, L]`, `C^{r+1} = [L, C^r]`, up to stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut out = vec![self.derived()];
        loop {
            let next = self.bracket_spaces(&full, out.last().expect("nonempty"));
            if &next == out.last().expect("nonempty") {
                break;
            }
            let stop = next.dim() == 0;
            out.push(next);
            if stop {
                break;
            }
        }
        out
    }

    /// Ascending series `C_1 = Z(L)`, `C_{r+1}/C_r = Z(L/C_r)`, up to stabilization.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut out = vec![self.center()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.centralizer_mod(&full, last);
            if &next == last {
                break;
            }
            let stop = next.dim() == n;
            out.push(next);
            if stop {
                break;
            }
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(|s| s.dim() == 0)
    }

    /// Length of the lower central series until zero (0 for the zero-dim algebra, 1 for abelian).
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last()?.dim().eq(&0).then_some(s.len())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).is_subspace_of(s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.bracket_spaces(&Subspace::full(self.dim()), s).is_subspace_of(s)
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).dim() == 0
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &QMatrix) -> Result<LieAlgebra> {
        let n = self.dim();
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::input("change of basis matrix is singular"))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| p.col(j)).collect();
        let mut list = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = pinv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                if !is_zero_vec(&v) {
                    list.push((i, j, v));
                }
            }
        }
        LieAlgebra::from_brackets(n, &list)
    }

    /// Checks that `p` (columns = images of basis vectors) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &LieAlgebra, p: &QMatrix) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = p.mul_vec(self.bracket_basis(i, j));
                let rhs = target.bracket(&p.col(i), &p.col(j));
                lhs == rhs
            })
        })
    }

    /// Expresses a vector given in terms of a subspace basis as an ambient vector.
    pub fn combine(&self, coeffs: &[Rational], vectors: &[Vec<Rational>]) -> Vec<Rational> {
        lin_comb(coeffs, vectors, self.dim())
    }
}

fn ser_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
}

/// `[i, j, [[k, "c"], ...]]`, 1-based.
type JsonBracket = (usize, usize, Vec<(usize, String)>);

#[derive(Serialize, Deserialize)]
struct LieJson {
    dim: usize,
    brackets: Vec<JsonBracket>,
}

impl LieAlgebra {
    /// Parses the sparse 1-based JSON representation.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: LieJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("bad Lie algebra JSON: {e}")))?;
        if raw.dim == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        let mut list = Vec::new();
        for (i, j, terms) in raw.brackets {
            if i == 0 || j == 0 {
                return Err(Error::input("bracket indices are 1-based"));
            }
            let mut v = vec![Rational::zero(); raw.dim];
            for (k, c) in terms {
                if k == 0 || k > raw.dim {
                    return Err(Error::input(format!("bracket target index {k} out of range")));
                }
                v[k - 1] += parse_rational(&c)?;
            }
            list.push((i - 1, j - 1, v));
        }
        LieAlgebra::from_brackets(raw.dim, &list)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, String)> = self
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, format_rational(c)))
                    .collect();
                if !terms.is_empty() {
                    brackets.push((i + 1, j + 1, terms));
                }
            }
        }
        serde_json::to_value(LieJson { dim: n, brackets }).expect("serializable")
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LieAlgebra::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

/// Standard algebras used throughout the crate.
pub mod families {
    use super::*;

    /// Heisenberg algebra of dimension `2k + 1`: `[x_i, y_i] = z`.
    pub fn heisenberg(k: usize) -> LieAlgebra {
        let n = 2 * k + 1;
        let list: Vec<_> = (0..k).map(|i| (i, k + i, unit_vec(n, 2 * k))).collect();
        LieAlgebra::from_brackets(n, &list).expect("valid")
    }

    /// Filiform `L_n` of dimension `n + 1`: basis `e_0..e_n`, `[e_0, e_i] = e_{i+1}`.
    pub fn filiform(n: usize) -> LieAlgebra {
        let dim = n + 1;
        let list: Vec<_> = (1..n).map(|i| (0, i, unit_vec(dim, i + 1))).collect();
        LieAlgebra::from_brackets(dim, &list).expect("valid")
    }

    /// Six-dimensional algebra with `[e1,e4] = [e2,e3] = e5`, `[e1,e3] = e6`, `[e2,e4] = -d e6`.
    pub fn six_dim_rank_two(d: i64) -> LieAlgebra {
        LieAlgebra::from_sparse(6, &[(0, 3, &[(4, 1)]), (1, 2, &[(4, 1)]), (0, 2, &[(5, 1)]), (1, 3, &[(5, -d)])])
    }

    /// Alternative table `[e1,e2] = [e3,e4] = e5`, `[e1,e3] = e6`, `[e2,e4] = -d e6`.
    pub fn six_dim_rank_two_alt(d: i64) -> LieAlgebra {
        LieAlgebra::from_sparse(6, &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)]), (0, 2, &[(5, 1)]), (1, 3, &[(5, -d)])])
    }

    /// `[e1,e3] = [e2,e4] = e5`, `[e1,e2] = e6`.
    pub fn six_dim_dual() -> LieAlgebra {
        LieAlgebra::from_sparse(6, &[(0, 2, &[(4, 1)]), (1, 3, &[(4, 1)]), (0, 1, &[(5, 1)])])
    }

    /// Cotangent algebra of the Heisenberg algebra: basis `e1,e2,e3,f1,f2,f3` with
    /// `[e1,e2] = f3`, `[e2,e3] = f1`, `[e3,e1] = f2`.
    pub fn tstar_h1() -> LieAlgebra {
        LieAlgebra::from_sparse(6, &[(0, 1, &[(5, 1)]), (1, 2, &[(3, 1)]), (0, 2, &[(4, -1)])])
    }

    /// Two-dimensional non-abelian algebra `[e, x] = x`.
    pub fn affine_line() -> LieAlgebra {
        LieAlgebra::from_sparse(2, &[(0, 1, &[(1, 1)])])
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn heisenberg_is_valid() {
        assert!(heisenberg(1).validate().ok);
    }

    #[test]
    fn six_dim_tables_are_valid() {
        for d in [-1, 2, 3, 5, -2] {
            assert!(six_dim_rank_two(d).validate().ok);
            assert!(six_dim_rank_two_alt(d).validate().ok);
        }
        assert!(six_dim_dual().validate().ok);
    }

    #[test]
    fn jacobi_violation_reported() {
        let l = LieAlgebra::from_sparse(3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(0, -1)])]);
        let r = l.validate();
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].triple, (0, 1, 2));
        assert_eq!(r.violations[0].defect, vec![q(0), q(0), q(-1)]);
    }

    #[test]
    fn out_of_range_is_input_error() {
        let bad = LieAlgebra::from_brackets(2, &[(0, 2, vec![q(0), q(0)])]);
        assert!(matches!(bad, Err(Error::Input(_))));
    }

    #[test]
    fn central_series_of_filiform() {
        let l = filiform(4);
        let lower = l.lower_central_series();
        let upper = l.upper_central_series();
        assert_eq!(lower.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 2, 1, 0]);
        assert_eq!(upper.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 2, 3, 5]);
        for r in 1..=3 {
            assert_eq!(lower[r - 1], upper[4 - r - 1]);
        }
    }

    #[test]
    fn abelian_series() {
        let l = LieAlgebra::abelian(3);
        assert_eq!(l.center().dim(), 3);
        assert_eq!(l.derived().dim(), 0);
    }

    #[test]
    fn tstar_center_equals_derived() {
        let l = tstar_h1();
        assert!(l.validate().ok);
        assert_eq!(l.center(), l.derived());
        assert_eq!(l.center().dim(), 3);
    }

    #[test]
    fn json_round_trip() {
        let l = six_dim_rank_two(-2);
        let v = l.to_json_value();
        assert_eq!(LieAlgebra::from_json_value(&v).unwrap(), l);
    }

    #[test]
    fn change_basis_preserves_validity() {
        let l = filiform(3);
        let p = QMatrix::from_i64(&[&[1, 0, 0, 0], &[2, 1, 0, 0], &[0, 3, 1, 0], &[1, 0, 0, 1]]);
        let l2 = l.change_basis(&p).unwrap();
        assert!(l2.validate().ok);
        assert!(l2.is_homomorphism(&l, &p));
    }
}
