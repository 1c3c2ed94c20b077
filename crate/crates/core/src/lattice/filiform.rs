//! Lattices `Z^n ⋊ Z` in filiform groups, encoded by the unipotent action `g = g(1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::parse_int_matrix;
use crate::lattice::trid::{quotient_invariants, AbelianInvariants};
use crate::matrix::ZMatrix;
use crate::par::{self, Execution};
use crate::snf::{hermite_normal_form, saturate, solve_integer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiliformLatticeSpec {
    g: ZMatrix,
}

impl FiliformLatticeSpec {
    pub fn new(g: ZMatrix) -> Result<Self> {
        let n = g.rows();
        if n < 2 || !g.is_lower_unitriangular() {
            return Err(Error::input("g must be a lower unitriangular integer matrix of size >= 2"));
        }
        let u = g.sub(&ZMatrix::identity(n));
        if u.pow(n as u32 - 1).is_zero() {
            return Err(Error::precondition("(g - I)^(n-1) = 0: the action does not have maximal nilpotency index"));
        }
        Ok(FiliformLatticeSpec { g })
    }

    /// The `n = 3` spec with subdiagonal `(a, b)` and corner `c`.
    pub fn three(a: i64, b: i64, c: i64) -> Result<Self> {
        FiliformLatticeSpec::new(ZMatrix::from_i64(&[&[1, 0, 0], &[a, 1, 0], &[c, b, 1]]))
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn g(&self) -> &ZMatrix {
        &self.g
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let g = parse_int_matrix(v.get("g").ok_or_else(|| Error::input("filiform spec needs \"g\""))?)?;
        if let Some(n) = v.get("n") {
            if n.as_u64() != Some(g.rows() as u64) {
                return Err(Error::input("\"n\" does not match the size of \"g\""));
            }
        }
        FiliformLatticeSpec::new(g)
    }

    pub fn to_json_value(&self) -> Value {
        json!({"n": self.n(), "g": crate::io::zmatrix_json(&self.g)})
    }
}


/// `(|a_{2,1}|, ..., |a_{n,n-1}|)`.
pub fn theta_invariant(spec: &FiliformLatticeSpec) -> Vec<BigInt> {
    (0..spec.n() - 1).map(|j| spec.g[(j + 1, j)].abs()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub spec: FiliformLatticeSpec,
    /// `witness^{-1} g witness` is the normalized matrix.
    pub witness: ZMatrix,
}

fn conjugate(g: &ZMatrix, p: &ZMatrix, pinv: &ZMatrix) -> ZMatrix {
    pinv.mul(g).mul(p)
}

/// Sign-normalizes the subdiagonal, then reduces each deeper entry `a_{j+k,j}`
/// into `[0, a_{j+1,j})` by conjugating with `I + q E_{j+k,j+1}`, offsets `k`
/// in increasing order and columns left to right.
pub fn filiform_normalize(spec: &FiliformLatticeSpec) -> Normalized {
    let n = spec.n();
    let mut eps = vec![BigInt::one(); n];
    for j in 0..n - 1 {
        eps[j + 1] = if spec.g[(j + 1, j)].is_negative() { -eps[j].clone() } else { eps[j].clone() };
    }
    let d = ZMatrix::diagonal(&eps);
    let mut g = conjugate(&spec.g, &d, &d);
    let mut w = d;
    for k in 2..n {
        for j in 0..n - k {
            let i = j + k;
            let quo = g[(i, j)].div_floor(&g[(j + 1, j)]);
            if quo.is_zero() {
                continue;
            }
            let mut p = ZMatrix::identity(n);
            p[(i, j + 1)] = quo.clone();
            let mut pinv = ZMatrix::identity(n);
            pinv[(i, j + 1)] = -quo;
            g = conjugate(&g, &p, &pinv);
            w = w.mul(&p);
        }
    }
    Normalized { spec: FiliformLatticeSpec { g }, witness: w }
}

/// Whether a spec already satisfies the normal-form bounds.
pub fn is_normalized(spec: &FiliformLatticeSpec) -> bool {
    let n = spec.n();
    (0..n - 1).all(|j| spec.g[(j + 1, j)].is_positive())
        && (2..n).all(|k| {
            (0..n - k).all(|j| {
                let x = &spec.g[(j + k, j)];
                !x.is_negative() && x < &spec.g[(j + 1, j)]
            })
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismResult {
    pub isomorphic: bool,
    /// `witness^{-1} g_2 witness = g_1`.
    pub witness: Option<ZMatrix>,
    pub method: &'static str,
}

/// Conjugating matrix `φ` (lower triangular, ±1 diagonal) with `φ^{-1} g2 φ = g1`.
///
/// Every integer conjugator preserves the flag of kernels of `(g - I)^i`, so it
/// is lower triangular with unit diagonal up to sign; for each sign pattern the
/// strictly lower part solves an integer linear system `g2 N - N g1 = D g1 - g2 D`.
pub fn find_conjugator(g1: &ZMatrix, g2: &ZMatrix) -> Option<ZMatrix> {
    let n = g1.rows();
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..r).map(move |s| (r, s))).collect();
    let m = unknowns.len();
    for mask in 0..(1u32 << (n - 1)) {
        let eps: Vec<BigInt> = (0..n)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -BigInt::one() } else { BigInt::one() })
            .collect();
        let d = ZMatrix::diagonal(&eps);
        let rhs = d.mul(g1).sub(&g2.mul(&d));
        let mut a = ZMatrix::zeros(n * n, m);
        for (u, &(r, s)) in unknowns.iter().enumerate() {
            // contribution of N = E_{rs}: (g2 E_rs)_{ij} = g2_{ir} [j = s]; (E_rs g1)_{ij} = [i = r] g1_{sj}
            for i in 0..n {
                a[(i * n + s, u)] += &g2[(i, r)];
            }
            for j in 0..n {
                a[(r * n + j, u)] -= &g1[(s, j)];
            }
        }
        let b: Vec<BigInt> = rhs.entries().to_vec();
        if let Some((x, _)) = solve_integer(&a, &b) {
            let mut phi = d.clone();
            for (u, &(r, s)) in unknowns.iter().enumerate() {
                phi[(r, s)] = x[u].clone();
            }
            let inv = phi.inverse_unimodular().expect("triangular with unit diagonal");
            debug_assert_eq!(conjugate(g2, &phi, &inv), *g1);
            return Some(phi);
        }
    }
    None
}

/// Isomorphism of lattices as pairs (lattice, action), i.e. integral conjugacy of the actions.
pub fn filiform_isomorphic(s1: &FiliformLatticeSpec, s2: &FiliformLatticeSpec) -> Result<IsomorphismResult> {
    if s1.n() != s2.n() {
        return Err(Error::input(format!("dimension mismatch: {} vs {}", s1.n(), s2.n())));
    }
    if s1 == s2 {
        return Ok(IsomorphismResult {
            isomorphic: true,
            witness: Some(ZMatrix::identity(s1.n())),
            method: "identical",
        });
    }
    if s1.n() == 3 {
        let iso = three_dim_closed_form(s1, s2);
        let witness = if iso { find_conjugator(s1.g(), s2.g()) } else { None };
        debug_assert_eq!(iso, witness.is_some());
        return Ok(IsomorphismResult { isomorphic: iso, witness, method: "closed-form" });
    }
    let witness = find_conjugator(s1.g(), s2.g());
    Ok(IsomorphismResult { isomorphic: witness.is_some(), witness, method: "integer-linear-system" })
}

/// For `n = 3`: equal subdiagonals up to sign and normalized corners congruent mod `gcd(a, b)`.
pub fn three_dim_closed_form(s1: &FiliformLatticeSpec, s2: &FiliformLatticeSpec) -> bool {
    if theta_invariant(s1) != theta_invariant(s2) {
        return false;
    }
    let (n1, n2) = (filiform_normalize(s1).spec, filiform_normalize(s2).spec);
    let m = n1.g[(1, 0)].gcd(&n1.g[(2, 1)]);
    (&n1.g[(2, 0)] - &n2.g[(2, 0)]).is_multiple_of(&m)
}

/// Isomorphism of the abstract groups: the generator of the `Z` factor may be
/// inverted, so `g1` must be conjugate to `g2` or to `g2^{-1}`.
pub fn filiform_abstractly_isomorphic(s1: &FiliformLatticeSpec, s2: &FiliformLatticeSpec) -> Result<bool> {
    if filiform_isomorphic(s1, s2)?.isomorphic {
        return Ok(true);
    }
    let inv = FiliformLatticeSpec::new(s2.g.inverse_unimodular().expect("unimodular"))?;
    Ok(filiform_isomorphic(s1, &inv)?.isomorphic)
}

/// Brute-force search for `φ = D (I + N)`-type conjugators with strictly lower entries in
/// `[-bound, bound]`, skipping the bottom-left corner (conjugation by `I + w E_{n,1}` is trivial).
/// Intended as an independent oracle; uses machine integers.
pub fn conjugator_search(g1: &ZMatrix, g2: &ZMatrix, bound: i64, exec: Execution) -> Option<Vec<i64>> {
    let n = g1.rows();
    let to = |m: &ZMatrix| -> Vec<i64> { m.entries().iter().map(|x| x.to_i64().expect("small entries")).collect() };
    let (a, b) = (to(g1), to(g2));
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..r).map(move |s| (r, s)))
        .filter(|&(r, s)| !(r == n - 1 && s == 0))
        .collect();
    let width = (2 * bound + 1) as usize;
    let sign_matrix = |mask: usize| -> Vec<i64> {
        let mut phi = vec![0i64; n * n];
        for i in 0..n {
            phi[i * n + i] = if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 };
        }
        phi
    };
    if slots.is_empty() {
        let mut t1 = vec![0i64; n * n];
        let mut t2 = vec![0i64; n * n];
        return (0..1usize << (n - 1)).map(sign_matrix).find(|phi| {
            mul_into(&b, phi, n, &mut t1);
            mul_into(phi, &a, n, &mut t2);
            t1 == t2
        });
    }
    let per_sign = width.pow(slots.len() as u32);
    let signs = 1usize << (n - 1);
    par::find_first(exec, signs * width, |outer| {
        let mask = outer / width;
        let first = outer % width;
        let mut phi = sign_matrix(mask);
        let rest = per_sign / width;
        let mut tmp1 = vec![0i64; n * n];
        let mut tmp2 = vec![0i64; n * n];
        for idx in 0..rest {
            let mut code = idx;
            for (k, &(r, s)) in slots.iter().enumerate() {
                let digit = if k == 0 {
                    first
                } else {
                    let d = code % width;
                    code /= width;
                    d
                };
                phi[r * n + s] = digit as i64 - bound;
            }
            // g2 φ == φ g1
            mul_into(&b, &phi, n, &mut tmp1);
            mul_into(&phi, &a, n, &mut tmp2);
            if tmp1 == tmp2 {
                return Some(phi.clone());
            }
        }
        None
    })
}

fn mul_into(x: &[i64], y: &[i64], n: usize, out: &mut [i64]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc += x[i * n + k] * y[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
}

/// Pure sublattice `ker((g - I)^i) ∩ Z^n`, rows in Hermite form.
pub fn ascending_term(spec: &FiliformLatticeSpec, i: usize) -> ZMatrix {
    let n = spec.n();
    let u = spec.g.sub(&ZMatrix::identity(n)).pow(i as u32);
    let ker = u.to_rational().kernel();
    let rows: Vec<Vec<BigInt>> = ker
        .iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| (x * crate::rational::qi(&den)).to_integer()).collect()
        })
        .collect();
    saturate(&ZMatrix::from_rows(rows).expect("rectangular"))
}

/// Lattice `(g - I)^j Z^n`, rows in Hermite form.
pub fn descending_term(spec: &FiliformLatticeSpec, j: usize) -> ZMatrix {
    let n = spec.n();
    let u = spec.g.sub(&ZMatrix::identity(n)).pow(j as u32);
    hermite_normal_form(&u.transpose())
}

/// Invariants of `C_i Γ / C^{n-i} Γ` for `i = 1..n-1`.
pub fn central_quotients(spec: &FiliformLatticeSpec) -> Vec<AbelianInvariants> {
    let n = spec.n();
    (1..n)
        .map(|i| {
            quotient_invariants(&ascending_term(spec, i), &descending_term(spec, n - i))
                .expect("descending term lies in the ascending term of equal rank")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalize_example() {
        let s = FiliformLatticeSpec::three(6, 9, 14).unwrap();
        let r = filiform_normalize(&s);
        assert_eq!(r.spec, FiliformLatticeSpec::three(6, 9, 2).unwrap());
        let inv = r.witness.inverse_unimodular().unwrap();
        assert_eq!(inv.mul(s.g()).mul(&r.witness), *r.spec.g());
    }

    #[test]
    fn normalize_signs_and_idempotence() {
        let g = ZMatrix::from_i64(&[&[1, 0, 0, 0], &[-4, 1, 0, 0], &[7, 6, 1, 0], &[-11, 5, -3, 1]]);
        let s = FiliformLatticeSpec::new(g).unwrap();
        let r = filiform_normalize(&s);
        assert!(is_normalized(&r.spec));
        assert_eq!(theta_invariant(&r.spec), theta_invariant(&s));
        let again = filiform_normalize(&r.spec);
        assert_eq!(again.spec, r.spec);
        assert!(again.witness.is_identity());
    }

    #[test]
    fn unit_subdiagonal_normalizes_to_standard() {
        let g = ZMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[5, 1, 1, 0], &[-2, 8, 1, 1]]);
        let r = filiform_normalize(&FiliformLatticeSpec::new(g).unwrap());
        let g0 = ZMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        assert_eq!(*r.spec.g(), g0);
    }

    #[test]
    fn example_three_pair_not_isomorphic() {
        let a = FiliformLatticeSpec::three(6, 9, 1).unwrap();
        let b = FiliformLatticeSpec::three(6, 9, 2).unwrap();
        assert!(!filiform_isomorphic(&a, &b).unwrap().isomorphic);
        // the abstract groups agree once the Z generator may be inverted
        assert!(filiform_abstractly_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn witness_for_isomorphic_pair() {
        let a = FiliformLatticeSpec::three(6, 9, 14).unwrap();
        let b = FiliformLatticeSpec::three(6, 9, 2).unwrap();
        let r = filiform_isomorphic(&a, &b).unwrap();
        assert!(r.isomorphic);
        let w = r.witness.unwrap();
        let inv = w.inverse_unimodular().unwrap();
        assert_eq!(inv.mul(b.g()).mul(&w), *a.g());
        let s = filiform_isomorphic(&a, &a).unwrap();
        assert!(s.witness.unwrap().is_identity());
    }

    #[test]
    fn theta_values() {
        let s = FiliformLatticeSpec::three(6, 9, 1).unwrap();
        assert_eq!(theta_invariant(&s), ints(&[6, 9]));
        let d = ZMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        let t = FiliformLatticeSpec::new(d.mul(s.g()).mul(&d)).unwrap();
        assert_eq!(theta_invariant(&t), ints(&[6, 9]));
    }

    #[test]
    fn example_three_quotients() {
        for c in [1, 2] {
            let q = central_quotients(&FiliformLatticeSpec::three(6, 9, c).unwrap());
            assert_eq!(q[0].order(), Some(BigInt::from(54)));
            assert!(q[0].is_cyclic());
            assert_eq!(q[1].divisors, ints(&[1, 54]));
        }
    }

    #[test]
    fn standard_lattice_quotients_trivial() {
        let g0 = ZMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        for q in central_quotients(&FiliformLatticeSpec::new(g0).unwrap()) {
            assert_eq!(q.order(), Some(BigInt::one()));
        }
    }

    #[test]
    fn brute_force_agrees_on_small_case() {
        let a = FiliformLatticeSpec::three(4, 8, 1).unwrap();
        let b = FiliformLatticeSpec::three(4, 8, 5).unwrap();
        let c = FiliformLatticeSpec::three(4, 8, 2).unwrap();
        assert!(conjugator_search(a.g(), b.g(), 5, Execution::Sequential).is_some());
        assert!(conjugator_search(a.g(), c.g(), 5, Execution::Parallel).is_none());
    }

    #[test]
    fn degenerate_spec() {
        assert!(matches!(FiliformLatticeSpec::three(0, 9, 1), Err(Error::Precondition(_))));
        assert!(matches!(
            filiform_isomorphic(&FiliformLatticeSpec::three(1, 1, 0).unwrap(), &FiliformLatticeSpec::new(ZMatrix::from_i64(&[&[1, 0], &[1, 1]])).unwrap()),
            Err(Error::Input(_))
        ));
    }
}
