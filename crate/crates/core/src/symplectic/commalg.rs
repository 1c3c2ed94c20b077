//! Finite-dimensional commutative associative unital algebras over Q.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::ProductTable;
use crate::matrix::{is_zero_vec, unit_vec, QMatrix};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    table: ProductTable,
    unit: Vec<Rational>,
}

impl CommAlgebra {
    /// Validates commutativity, associativity and the unit exactly.
    pub fn new(table: ProductTable, unit: Vec<Rational>) -> Result<Self> {
        let n = table.dim();
        if n == 0 {
            return Err(Error::input("algebra dimension must be positive"));
        }
        if unit.len() != n {
            return Err(Error::input("unit has the wrong length"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if table.get(i, j) != table.get(j, i) {
                    return Err(Error::structural(format!("product is not commutative at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = table.apply(table.get(i, j), &unit_vec(n, k));
                    let r = table.apply(&unit_vec(n, i), table.get(j, k));
                    if l != r {
                        return Err(Error::structural(format!(
                            "product is not associative at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            if table.apply(&unit, &unit_vec(n, i)) != unit_vec(n, i) {
                return Err(Error::structural("given unit is not a multiplicative identity"));
            }
        }
        Ok(CommAlgebra { table, unit })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.table.apply(x, y)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.table.get(i, j)
    }

    /// Multiplication-by-`x` matrix.
    pub fn mul_matrix(&self, x: &[Rational]) -> QMatrix {
        self.table.left_mul(x)
    }

    /// `Q[x]/(x^k)` on the basis `1, x, ..., x^{k-1}`.
    pub fn truncated_polynomial(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("truncation degree must be positive"));
        }
        let exps: Vec<Vec<u32>> = (0..k as u32).map(|e| vec![e]).collect();
        CommAlgebra::monomial(1, &exps)
    }

    pub fn rationals() -> Self {
        CommAlgebra::truncated_polynomial(1).expect("valid")
    }

    pub fn dual_numbers() -> Self {
        CommAlgebra::truncated_polynomial(2).expect("valid")
    }

    /// Quotient of `Q[x_1..x_m]` by a monomial ideal, given by its standard monomials.
    /// The list must be closed under division and contain `1`; it is the basis order.
    pub fn monomial(nvars: usize, basis: &[Vec<u32>]) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|m| m.len() != nvars) {
            return Err(Error::input("monomial exponent vectors have the wrong length"));
        }
        let index = |m: &[u32]| basis.iter().position(|b| b.as_slice() == m);
        let one = vec![0u32; nvars];
        let unit_idx = index(&one).ok_or_else(|| Error::input("standard monomials must include 1"))?;
        for m in basis {
            for v in 0..nvars {
                if m[v] > 0 {
                    let mut d = m.clone();
                    d[v] -= 1;
                    if index(&d).is_none() {
                        return Err(Error::input("standard monomials are not closed under division"));
                    }
                }
            }
        }
        let mut table = ProductTable::zero(n);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(k) = index(&s) {
                    table.set(i, j, unit_vec(n, k));
                }
            }
        }
        CommAlgebra::new(table, unit_vec(n, unit_idx))
    }

    /// `Q[x_1..x_m]/(x_1..x_m)^2`, of dimension `m + 1`.
    pub fn square_zero(m: usize) -> Self {
        let mut basis = vec![vec![0u32; m]];
        for v in 0..m {
            let mut e = vec![0u32; m];
            e[v] = 1;
            basis.push(e);
        }
        CommAlgebra::monomial(m, &basis).expect("valid")
    }

    /// `Q[x, y]/(x^2 - y^2, xy)` on the basis `1, x, y, x^2`.
    pub fn x2_minus_y2() -> Self {
        let mut table = ProductTable::zero(4);
        for i in 0..4 {
            table.set(0, i, unit_vec(4, i));
            table.set(i, 0, unit_vec(4, i));
        }
        table.set(1, 1, unit_vec(4, 3));
        table.set(2, 2, unit_vec(4, 3));
        CommAlgebra::new(table, unit_vec(4, 0)).expect("valid")
    }

    /// `Q ⊕ V ⊕ Q` with `(λ,v,μ)(λ',v',μ') = (λλ', λv' + λ'v, Φ(v,v') + λμ' + λ'μ)`
    /// for a symmetric matrix `Φ`.
    pub fn quadratic_extension(phi: &QMatrix) -> Result<Self> {
        if !phi.is_square() || phi.transpose() != *phi {
            return Err(Error::input("quadratic form matrix must be square and symmetric"));
        }
        let m = phi.rows();
        let n = m + 2;
        let top = n - 1;
        let mut table = ProductTable::zero(n);
        for i in 0..n {
            table.set(0, i, unit_vec(n, i));
            table.set(i, 0, unit_vec(n, i));
        }
        for a in 0..m {
            for b in 0..m {
                let mut v = vec![Rational::zero(); n];
                v[top] = phi[(a, b)].clone();
                table.set(a + 1, b + 1, v);
            }
        }
        CommAlgebra::new(table, unit_vec(n, 0))
    }

    /// Direct product `A × B`.
    pub fn product(a: &CommAlgebra, b: &CommAlgebra) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let n = na + nb;
        let mut table = ProductTable::zero(n);
        for i in 0..na {
            for j in 0..na {
                let mut v = a.basis_product(i, j).to_vec();
                v.resize(n, Rational::zero());
                table.set(i, j, v);
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                let mut v = vec![Rational::zero(); na];
                v.extend(b.basis_product(i, j).iter().cloned());
                table.set(na + i, na + j, v);
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        CommAlgebra::new(table, unit).expect("product of valid algebras")
    }

    /// `{"dim", "unit", "products": [[i, j, [[k, "p/q"], ...]], ...]}`, 1-based, `i <= j`.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let n = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::input("missing integer field 'dim'"))? as usize;
        let unit = v
            .get("unit")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing array field 'unit'"))?
            .iter()
            .map(json_rational)
            .collect::<Result<Vec<_>>>()?;
        let mut table = ProductTable::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        let prods = v
            .get("products")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing array field 'products'"))?;
        for p in prods {
            let arr = p.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::input("product entry must be [i, j, terms]"))?;
            let i = index_of(&arr[0], n)?;
            let j = index_of(&arr[1], n)?;
            if i > j {
                return Err(Error::input("products must be listed with i <= j"));
            }
            if !seen.insert((i, j)) {
                return Err(Error::input(format!("product ({}, {}) given twice", i + 1, j + 1)));
            }
            let mut out = vec![Rational::zero(); n];
            for t in arr[2].as_array().ok_or_else(|| Error::input("terms must be an array"))? {
                let t = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::input("term must be [k, c]"))?;
                let k = index_of(&t[0], n)?;
                out[k] += json_rational(&t[1])?;
            }
            table.set(i, j, out.clone());
            table.set(j, i, out);
        }
        CommAlgebra::new(table, unit)
    }

    pub fn to_json_value(&self) -> Value {
        let n = self.dim();
        let mut prods = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = self.basis_product(i, j);
                if !is_zero_vec(v) {
                    let terms: Vec<Value> = v
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| json!([k + 1, format_rational(c)]))
                        .collect();
                    prods.push(json!([i + 1, j + 1, terms]));
                }
            }
        }
        json!({
            "dim": n,
            "unit": self.unit.iter().map(format_rational).collect::<Vec<_>>(),
            "products": prods,
        })
    }
}

fn index_of(v: &Value, n: usize) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| Error::input("index must be a positive integer"))? as usize;
    if i == 0 || i > n {
        return Err(Error::input(format!("index {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

pub(crate) fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) => x
            .as_i64()
            .map(crate::rational::q)
            .ok_or_else(|| Error::input("numbers must be integers or \"p/q\" strings")),
        _ => Err(Error::input("expected a rational")),
    }
}

/// Nilradical, socle and locality of a commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleReport {
    pub radical: Subspace,
    pub socle: Subspace,
    pub is_local: bool,
}

/// Radical as the kernel of the trace form, socle as its annihilator ideal.
pub fn radical_and_socle(a: &CommAlgebra) -> Result<SocleReport> {
    let n = a.dim();
    let mult: Vec<QMatrix> = (0..n).map(|i| a.mul_matrix(&unit_vec(n, i))).collect();
    let gram = QMatrix::from_fn(n, n, |i, j| mult[i].mul(&mult[j]).trace());
    let radical = Subspace::span(n, &gram.kernel());
    for r in radical.basis() {
        let mut p = r.clone();
        for _ in 0..n {
            p = a.mul(&p, r);
        }
        if !is_zero_vec(&p) {
            return Err(Error::structural("trace-form radical contains a non-nilpotent element"));
        }
    }
    let socle = if radical.dim() == 0 {
        Subspace::full(n)
    } else {
        let blocks: Vec<QMatrix> = radical.basis().iter().map(|r| a.mul_matrix(r)).collect();
        let mut rows = Vec::new();
        for b in &blocks {
            rows.extend(b.to_rows());
        }
        Subspace::span(n, &QMatrix::from_rows(rows).expect("rectangular").kernel())
    };
    let is_local = n - radical.dim() == 1;
    Ok(SocleReport { radical, socle, is_local })
}

/// `x^k` by repeated multiplication.
pub fn power(a: &CommAlgebra, x: &[Rational], k: u32) -> Vec<Rational> {
    let mut p = a.unit().to_vec();
    for _ in 0..k {
        p = a.mul(&p, x);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rational_vec;

    fn example6() -> CommAlgebra {
        CommAlgebra::monomial(2, &[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn rationals_are_local_with_full_socle() {
        let r = radical_and_socle(&CommAlgebra::rationals()).unwrap();
        assert_eq!(r.radical.dim(), 0);
        assert_eq!(r.socle.dim(), 1);
        assert!(r.is_local);
    }

    #[test]
    fn dual_numbers_socle() {
        let r = radical_and_socle(&CommAlgebra::dual_numbers()).unwrap();
        let eps = Subspace::span(2, &[rational_vec(&[0, 1])]);
        assert_eq!(r.radical, eps);
        assert_eq!(r.socle, eps);
        assert!(r.is_local);
    }

    #[test]
    fn example6_socle_is_x2_and_y() {
        let r = radical_and_socle(&example6()).unwrap();
        let s = Subspace::span(4, &[rational_vec(&[0, 0, 1, 0]), rational_vec(&[0, 0, 0, 1])]);
        assert_eq!(r.socle, s);
        assert!(r.is_local);
    }

    #[test]
    fn non_closed_monomials_rejected() {
        assert!(CommAlgebra::monomial(1, &[vec![0], vec![2]]).is_err());
    }

    #[test]
    fn non_commutative_table_rejected() {
        let mut t = ProductTable::zero(2);
        t.set(0, 0, rational_vec(&[1, 0]));
        t.set(0, 1, rational_vec(&[0, 1]));
        t.set(1, 0, rational_vec(&[1, 1]));
        assert_eq!(CommAlgebra::new(t, rational_vec(&[1, 0])).unwrap_err().kind(), "structural");
    }

    #[test]
    fn non_associative_table_rejected() {
        let mut t = ProductTable::zero(3);
        for i in 0..3 {
            t.set(0, i, unit_vec(3, i));
            t.set(i, 0, unit_vec(3, i));
        }
        t.set(1, 1, unit_vec(3, 2));
        t.set(2, 2, unit_vec(3, 2));
        // (e1 e1) e2 = e2 but e1 (e1 e2) = 0
        assert_eq!(CommAlgebra::new(t, unit_vec(3, 0)).unwrap_err().kind(), "structural");
    }

    #[test]
    fn non_local_product() {
        let a = CommAlgebra::product(&CommAlgebra::rationals(), &CommAlgebra::rationals());
        let r = radical_and_socle(&a).unwrap();
        assert!(!r.is_local);
        assert_eq!(r.radical.dim(), 0);
    }

    #[test]
    fn json_round_trip() {
        let a = example6();
        assert_eq!(CommAlgebra::from_json_value(&a.to_json_value()).unwrap(), a);
    }

    #[test]
    fn quadratic_extension_socle_is_top() {
        let phi = QMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let a = CommAlgebra::quadratic_extension(&phi).unwrap();
        let r = radical_and_socle(&a).unwrap();
        assert_eq!(r.socle, Subspace::span(4, &[rational_vec(&[0, 0, 0, 1])]));
        assert!(r.is_local);
    }
}
