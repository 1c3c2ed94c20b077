//! Moment maps of symplectic nilpotent Lie groups in exponential coordinates.
//!
//! `Q(exp x) = Σ_{k>=1} (1/k!) (ad*_x)^{k-1} ω(x, ·)` with `(ad*_x ξ)(y) = -ξ([x, y])`.
//! The group product is `exp x · exp y = exp BCH(x, y)`, exact through class 4.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::mpoly::{is_vzero, vadd, vscale, vzero, MPoly};
use crate::error::{Error, Result};
use crate::forms::{is_cocycle, AlternatingForm};
use crate::lie::LieAlgebra;
use crate::rational::{q, qf, Rational};

/// One polynomial per dual-basis direction, in the exponential coordinates `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMapPoly {
    pub components: Vec<MPoly>,
}

impl MomentMapPoly {
    pub fn degree(&self) -> u32 {
        self.components.iter().map(MPoly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    pub fn to_json_value(&self) -> Value {
        json!({ "components": self.components.iter().map(MPoly::to_json_value).collect::<Vec<_>>() })
    }
}

fn bracket(l: &LieAlgebra, u: &[MPoly], v: &[MPoly]) -> Vec<MPoly> {
    let n = l.dim();
    let nv = u.first().map_or(0, MPoly::nvars);
    let mut out = vzero(n, nv);
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            let c = l.bracket_basis(i, j);
            if c.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            let uv = u[i].mul(&v[j]);
            for (k, ck) in c.iter().enumerate() {
                out[k] = out[k].add(&uv.scale(ck));
            }
        }
    }
    out
}

/// `(ad*_x ξ)_j = -Σ_i ξ_i [x, e_j]_i`.
fn coad(l: &LieAlgebra, x: &[MPoly], xi: &[MPoly]) -> Vec<MPoly> {
    let n = l.dim();
    let nv = x.first().map_or(0, MPoly::nvars);
    let mut out = vzero(n, nv);
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = MPoly::zero(nv);
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            let c = l.bracket_basis(a, j);
            for (i, ci) in c.iter().enumerate() {
                if !num_traits::Zero::is_zero(ci) && !xi[i].is_zero() {
                    acc = acc.add(&x[a].mul(&xi[i]).scale(ci));
                }
            }
        }
        *o = acc.scale(&q(-1));
    }
    out
}

/// `ω(x, ·)` as a covector.
fn contract(w: &AlternatingForm, x: &[MPoly]) -> Vec<MPoly> {
    let n = w.dim();
    let nv = x.first().map_or(0, MPoly::nvars);
    (0..n)
        .map(|j| (0..n).fold(MPoly::zero(nv), |acc, i| acc.add(&x[i].scale(w.entry(i, j)))))
        .collect()
}

fn q_of(l: &LieAlgebra, w: &AlternatingForm, x: &[MPoly]) -> Vec<MPoly> {
    let mut term = contract(w, x);
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = vscale(&coad(l, x, &term), &qf(1, k + 1));
        if is_vzero(&term) {
            return sum;
        }
        sum = vadd(&sum, &term);
        k += 1;
    }
}

/// `Ad*_{exp x} ξ = Σ_k (1/k!) (ad*_x)^k ξ`.
fn coadjoint_exp(l: &LieAlgebra, x: &[MPoly], xi: &[MPoly]) -> Vec<MPoly> {
    let mut term = xi.to_vec();
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = vscale(&coad(l, x, &term), &qf(1, k));
        if is_vzero(&term) {
            return sum;
        }
        sum = vadd(&sum, &term);
        k += 1;
    }
}

/// `x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12 - [y,[x,[x,y]]]/24`.
fn bch(l: &LieAlgebra, x: &[MPoly], y: &[MPoly]) -> Vec<MPoly> {
    let xy = bracket(l, x, y);
    let xxy = bracket(l, x, &xy);
    let yxy = bracket(l, y, &xy);
    let yxxy = bracket(l, y, &xxy);
    let mut z = vadd(x, y);
    z = vadd(&z, &vscale(&xy, &qf(1, 2)));
    z = vadd(&z, &vscale(&xxy, &qf(1, 12)));
    z = vadd(&z, &vscale(&yxy, &qf(-1, 12)));
    vadd(&z, &vscale(&yxxy, &qf(-1, 24)))
}

fn check_inputs(l: &LieAlgebra, w: &AlternatingForm) -> Result<usize> {
    if w.dim() != l.dim() {
        return Err(Error::input("form and algebra dimensions differ"));
    }
    let class = l.nilpotency_class().ok_or_else(|| Error::precondition("algebra is not nilpotent"))?;
    if !is_cocycle(l, w) {
        return Err(Error::precondition("form is not a 2-cocycle"));
    }
    if !w.is_nondegenerate() {
        return Err(Error::precondition("form is degenerate"));
    }
    Ok(class)
}

pub fn moment_map(l: &LieAlgebra, w: &AlternatingForm) -> Result<MomentMapPoly> {
    check_inputs(l, w)?;
    let n = l.dim();
    let x: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    Ok(MomentMapPoly { components: q_of(l, w, &x) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentCheck {
    pub holds: bool,
    /// `"polynomial"` (identity in the coordinates of both factors) or `"sampled"`.
    pub method: &'static str,
    pub samples: usize,
}

pub const MOMENT_SAMPLES: usize = 100;

/// Verifies `Q(στ) = Q(σ) + Ad*_σ Q(τ)`.
pub fn moment_identity_check(l: &LieAlgebra, w: &AlternatingForm, seed: u64) -> Result<MomentCheck> {
    let class = check_inputs(l, w)?;
    if class > 4 {
        return Err(Error::precondition("group product is only exact through nilpotency class 4"));
    }
    let n = l.dim();
    let identity = |x: &[MPoly], y: &[MPoly]| -> bool {
        let lhs = q_of(l, w, &bch(l, x, y));
        let rhs = vadd(&q_of(l, w, x), &coadjoint_exp(l, x, &q_of(l, w, y)));
        lhs == rhs
    };
    if class <= 3 {
        let x: Vec<MPoly> = (0..n).map(|i| MPoly::var(2 * n, i)).collect();
        let y: Vec<MPoly> = (0..n).map(|i| MPoly::var(2 * n, n + i)).collect();
        return Ok(MomentCheck { holds: identity(&x, &y), method: "polynomial", samples: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = || -> Vec<MPoly> {
        (0..n).map(|_| MPoly::constant(0, qf(rng.gen_range(-20..=20), rng.gen_range(1..=6)))).collect()
    };
    let holds = (0..MOMENT_SAMPLES).all(|_| {
        let (x, y) = (point(), point());
        identity(&x, &y)
    });
    Ok(MomentCheck { holds, method: "sampled", samples: MOMENT_SAMPLES })
}

/// `ω = e1*∧f1* + 2 e2*∧f2* - 3 e3*∧f3*` on the cotangent Heisenberg algebra:
/// `k(Dx, y)` for the derivation `D = diag(1, 2, -3)` on `e1, e2, e3` and the
/// natural pairing `k(e_i, f_j) = δ_ij`.
pub fn tstar_h1_derivation_cocycle() -> AlternatingForm {
    AlternatingForm::from_wedges(6, &[(0, 3, q(1)), (1, 4, q(2)), (2, 5, q(-3))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::filiform_cocycle;
    use crate::lie::families;

    #[test]
    fn abelian_moment_map_is_contraction() {
        let l = LieAlgebra::abelian(2);
        let w = AlternatingForm::from_wedges(2, &[(0, 1, q(1))]);
        let m = moment_map(&l, &w).unwrap();
        assert_eq!(m.eval(&[q(3), q(5)]), vec![q(-5), q(3)]);
        assert!(moment_identity_check(&l, &w, 0).unwrap().holds);
    }

    #[test]
    fn filiform_identity() {
        let l = families::filiform(3);
        let w = filiform_cocycle(2).unwrap();
        let m = moment_map(&l, &w).unwrap();
        assert!(m.degree() <= 3);
        assert!(m.eval(&vec![q(0); 4]).iter().all(num_traits::Zero::is_zero));
        let c = moment_identity_check(&l, &w, 0).unwrap();
        assert_eq!((c.holds, c.method), (true, "polynomial"));
    }

    #[test]
    fn tstar_identity() {
        let l = families::tstar_h1();
        let w = tstar_h1_derivation_cocycle();
        assert!(is_cocycle(&l, &w) && w.is_nondegenerate());
        assert!(moment_identity_check(&l, &w, 0).unwrap().holds);
    }

    #[test]
    fn class_four_sampled() {
        let l = families::filiform(5);
        let w = filiform_cocycle(3).unwrap();
        let c = moment_identity_check(&l, &w, 0);
        // L_5 has class 5: outside the exact range
        assert_eq!(c.unwrap_err().kind(), "precondition");
    }

    #[test]
    fn degenerate_form_rejected() {
        let l = families::filiform(3);
        let w = AlternatingForm::zero(4);
        assert_eq!(moment_map(&l, &w).unwrap_err().kind(), "precondition");
    }
}
