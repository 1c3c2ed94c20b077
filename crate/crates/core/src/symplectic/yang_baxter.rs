//! Classical Yang-Baxter equation, the cotangent algebra and the double.
//!
//! A bivector is an alternating matrix `r`, read as the map `r: G* -> G`,
//! `(r α)_j = Σ_i α_i r[i][j]`. The CYBE is
//! `[[r,r]](α,β,γ) = <α,[rβ,rγ]> + <β,[rγ,rα]> + <γ,[rα,rβ]> = 0`.
//!
//! On `G* ⊕ G` the coordinates are `(α_1..α_n, x_1..x_n)`. The cotangent
//! algebra `t*G` has `[x, y]` from `G`, `[x, α] = ad*_x α` and `[α, β] = 0`,
//! with `(ad*_x α)(y) = -α([x, y])`. The double `D(G, r)` has `[x, y]` from `G`,
//! `[α, β] = ad*_{rα} β - ad*_{rβ} α` and `[x, α] = ad*_x α - ad*_α x` where
//! `<β, ad*_α x> = -<[α, β], x>`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{unit_vec, QMatrix};
use crate::rational::Rational;

fn r_apply(r: &QMatrix, alpha: &[Rational]) -> Vec<Rational> {
    r.transpose().mul_vec(alpha)
}

/// `[[r,r]]` on all basis triples.
pub fn cybe_check(l: &LieAlgebra, r: &QMatrix) -> Result<bool> {
    let n = l.dim();
    if r.rows() != n || r.cols() != n {
        return Err(Error::input("bivector has the wrong size"));
    }
    if !r.is_skew_symmetric() {
        return Err(Error::input("bivector is not alternating"));
    }
    let images: Vec<Vec<Rational>> = (0..n).map(|i| r.row(i)).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = l.bracket(&images[b], &images[c])[a].clone()
                    + &l.bracket(&images[c], &images[a])[b]
                    + &l.bracket(&images[a], &images[b])[c];
                if !t.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `ad*_x α` as a covector.
fn coad(l: &LieAlgebra, x: &[Rational], alpha: &[Rational]) -> Vec<Rational> {
    let ad = l.ad(x);
    // (ad*_x α)_j = -Σ_i α_i (ad_x)_{ij}
    ad.transpose().mul_vec(alpha).into_iter().map(|v| -v).collect()
}

fn split_vec(v: &[Rational], n: usize) -> (Vec<Rational>, Vec<Rational>) {
    (v[..n].to_vec(), v[n..].to_vec())
}

fn join(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let mut out = a;
    out.extend(b);
    out
}

/// Builds a Lie algebra on `Q^{2n}` from a bracket defined on all vectors.
fn from_bracket(dim: usize, f: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Result<LieAlgebra> {
    let mut list = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let v = f(&unit_vec(dim, i), &unit_vec(dim, j));
            if v.iter().any(|c| !c.is_zero()) {
                list.push((i, j, v));
            }
        }
    }
    LieAlgebra::from_brackets(dim, &list)
}

/// The semidirect product `G* ⋊ G` through the coadjoint action.
pub fn cotangent_algebra(l: &LieAlgebra) -> LieAlgebra {
    let n = l.dim();
    from_bracket(2 * n, |u, v| {
        let (a, x) = split_vec(u, n);
        let (b, y) = split_vec(v, n);
        let dual: Vec<Rational> = coad(l, &x, &b).iter().zip(coad(l, &y, &a)).map(|(p, q)| p - q).collect();
        join(dual, l.bracket(&x, &y))
    })
    .expect("well-formed")
}

fn dual_bracket(l: &LieAlgebra, r: &QMatrix, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    coad(l, &r_apply(r, a), b).iter().zip(coad(l, &r_apply(r, b), a)).map(|(p, q)| p - q).collect()
}

/// The double `D(G, r)` on `G* ⊕ G`.
pub fn double_algebra(l: &LieAlgebra, r: &QMatrix) -> LieAlgebra {
    let n = l.dim();
    // ad*_α x ∈ G with <β, ad*_α x> = -<[α, β]_r, x>
    let coad_dual = |alpha: &[Rational], x: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|j| {
                let br = dual_bracket(l, r, alpha, &unit_vec(n, j));
                -br.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>()
            })
            .collect()
    };
    from_bracket(2 * n, |u, v| {
        let (a, x) = split_vec(u, n);
        let (b, y) = split_vec(v, n);
        // [a + x, b + y] = [a, b] + [x, y] + [x, b] - [y, a]
        let mut dual = dual_bracket(l, r, &a, &b);
        let mut prim = l.bracket(&x, &y);
        for (d, c) in dual.iter_mut().zip(coad(l, &x, &b).iter().zip(coad(l, &y, &a))) {
            *d += c.0 - c.1;
        }
        for (p, c) in prim.iter_mut().zip(coad_dual(&b, &x).iter().zip(coad_dual(&a, &y))) {
            *p += -c.0 + c.1;
        }
        join(dual, prim)
    })
    .expect("well-formed")
}

/// `θ(α, x) = (α, rα + x)` as a matrix on `Q^{2n}`.
pub fn theta_matrix(r: &QMatrix) -> QMatrix {
    let n = r.rows();
    let rt = r.transpose();
    QMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i == j {
            Rational::from_integer(1.into())
        } else if i >= n && j < n {
            rt[(i - n, j)].clone()
        } else {
            Rational::zero()
        }
    })
}

#[derive(Clone, Debug)]
pub struct DoubleThetaReport {
    pub isomorphism: bool,
    pub double: LieAlgebra,
    pub cotangent: LieAlgebra,
}

/// Checks that `θ: D(G, r) -> t*G` is a Lie algebra isomorphism.
pub fn double_theta_check(l: &LieAlgebra, r: &QMatrix) -> Result<DoubleThetaReport> {
    if !cybe_check(l, r)? {
        return Err(Error::precondition("r does not solve the classical Yang-Baxter equation"));
    }
    let double = double_algebra(l, r);
    let cotangent = cotangent_algebra(l);
    let theta = theta_matrix(r);
    let isomorphism = theta.det() != Rational::zero() && double.is_homomorphism(&cotangent, &theta);
    Ok(DoubleThetaReport { isomorphism, double, cotangent })
}

/// The basis `(B* × 0) ∪ (0 × B)` of `t*G` for a Q-basis `B` (columns) of `G`,
/// with the structure constants of `t*G` in that basis.
pub fn rational_structure_for_double(l: &LieAlgebra, lattice_log: &QMatrix) -> Result<(QMatrix, LieAlgebra)> {
    let n = l.dim();
    if lattice_log.rows() != n || lattice_log.cols() != n {
        return Err(Error::input("lattice basis must be an n x n matrix"));
    }
    let inv = lattice_log.inverse().ok_or_else(|| Error::input("lattice basis does not span the algebra"))?;
    let dual = inv.transpose();
    let p = QMatrix::block_diagonal(&[dual, lattice_log.clone()]);
    let algebra = cotangent_algebra(l).change_basis(&p)?;
    Ok((p, algebra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::filiform_cocycle;
    use crate::lie::families;
    use crate::rational::q;

    fn omega_inverse() -> QMatrix {
        filiform_cocycle(2).unwrap().matrix().inverse().unwrap()
    }

    #[test]
    fn inverse_cocycle_solves_cybe() {
        let l = families::filiform(3);
        assert!(cybe_check(&l, &omega_inverse()).unwrap());
    }

    #[test]
    fn abelian_any_bivector() {
        let l = LieAlgebra::abelian(3);
        let r = QMatrix::from_i64(&[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]]);
        assert!(cybe_check(&l, &r).unwrap());
        let rep = double_theta_check(&l, &r).unwrap();
        assert!(rep.isomorphism);
    }

    #[test]
    fn theta_is_isomorphism_for_filiform() {
        let l = families::filiform(3);
        let rep = double_theta_check(&l, &omega_inverse()).unwrap();
        assert!(rep.double.validate().ok);
        assert!(rep.isomorphism);
    }

    #[test]
    fn cotangent_heisenberg_matches_model() {
        let t = cotangent_algebra(&families::heisenberg(1));
        // (e^1, e^2, e^3, e_1, e_2, e_3) -> model (e1, e2, e3, f1, f2, f3)
        let mut p = QMatrix::zeros(6, 6);
        for (from, to) in [(3, 0), (4, 1), (0, 3), (1, 4), (2, 2), (5, 5)] {
            p[(to, from)] = q(1);
        }
        assert!(t.is_homomorphism(&families::tstar_h1(), &p));
    }

    #[test]
    fn singular_lattice_rejected() {
        let l = families::heisenberg(1);
        let e = rational_structure_for_double(&l, &QMatrix::zeros(3, 3)).unwrap_err();
        assert_eq!(e.kind(), "input");
    }
}
