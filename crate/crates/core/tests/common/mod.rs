//! Oracles and fixtures shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;

use nillat_core::automorphisms::{fundamental_unit, IntPolynomial, QuadElem, QuadraticRing};
use nillat_core::group::QuadCase;
use nillat_core::matrix::QMatrix;
use nillat_core::rational::{is_squarefree, q};
use nillat_core::symplectic::CommAlgebra;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn sub(x: &QuadElem, y: &QuadElem) -> QuadElem {
    QuadElem { a: &x.a - &y.a, b: &x.b - &y.b }
}

/// Every unit `u > 1` has positive `b` no larger than that of the fundamental unit,
/// so scanning `b` and solving the norm equation for `a` finds all candidates.
/// Checks that the fundamental unit of every squarefree `m` in `2..=max` is a unit above 1 with no unit strictly between.
pub fn check_fundamental_minimal(max: i64) -> Result<(), String> {
    for m in 2i64..=max {
        if !is_squarefree(&BigInt::from(m)) {
            continue;
        }
        let r = QuadraticRing::new(m).unwrap();
        let eps = fundamental_unit(m).unwrap();
        if !r.is_unit(&eps) || r.compare_int(&eps, 1) != Ordering::Greater {
            return Err(format!("m = {m}: {} is not a unit above 1", r.format(&eps)));
        }
        let bmax = eps.b.to_i64().unwrap();
        for b in 1..=bmax {
            let b = BigInt::from(b);
            for target in [-1i64, 1] {
                // Sqrt: a² = m b² + t.  Half: (2a + b)² = m b² + 4t.
                let rhs = match r.kind {
                    QuadCase::Sqrt => BigInt::from(m) * &b * &b + target,
                    QuadCase::Half => BigInt::from(m) * &b * &b + 4 * target,
                };
                if rhs.is_negative() {
                    continue;
                }
                let s = rhs.sqrt();
                if &s * &s != rhs {
                    continue;
                }
                for s in [s.clone(), -s] {
                    let a = match r.kind {
                        QuadCase::Sqrt => s,
                        QuadCase::Half => {
                            if !((&s - &b) % 2i32).is_zero() {
                                continue;
                            }
                            (&s - &b) / 2i32
                        }
                    };
                    let u = QuadElem { a, b: b.clone() };
                    if !r.is_unit(&u) {
                        return Err(format!("m = {m}: norm equation solution {} is not a unit", r.format(&u)));
                    }
                    let above_one = r.compare_int(&u, 1) == Ordering::Greater;
                    let below_eps = r.compare_int(&sub(&eps, &u), 0) == Ordering::Greater;
                    if above_one && below_eps {
                        return Err(format!("m = {m}: {} is a smaller unit", r.format(&u)));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
pub struct C(pub f64, pub f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    pub fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// Durand–Kerner on a polynomial with simple roots.
pub fn float_roots(coeffs: &[f64]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: C| monic.iter().rev().fold(C(0.0, 0.0), |acc, &c| acc.mul(z).add(C(c, 0.0)));
    let seed = C(0.4, 0.9);
    let mut roots: Vec<C> = (0..n).map(|k| (0..k).fold(C(1.0, 0.0), |acc, _| acc.mul(seed))).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = C(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = den.mul(roots[i].sub(roots[j]));
                }
            }
            roots[i] = roots[i].sub(eval(roots[i]).div(den));
        }
    }
    roots
}

/// Whether the squarefree part of `p` has a root with `||z| - 1| < tol`, by Durand-Kerner.
pub fn float_unit_circle_tol(p: &IntPolynomial, tol: f64) -> bool {
    let sq = p.squarefree();
    let fc: Vec<f64> = sq.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    sq.degree() > 0 && float_roots(&fc).iter().any(|z| (z.abs() - 1.0).abs() < tol)
}

pub fn float_unit_circle(p: &IntPolynomial) -> bool {
    float_unit_circle_tol(p, 1e-9)
}

/// Local algebras of dimension at most 6 with their expected decision.
pub fn corpus() -> Vec<(&'static str, CommAlgebra)> {
    let m = |nv: usize, b: &[&[u32]]| CommAlgebra::monomial(nv, &b.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap();
    vec![
        ("Q", CommAlgebra::rationals()),
        ("dual numbers", CommAlgebra::dual_numbers()),
        ("Q[x]/(x^3)", CommAlgebra::truncated_polynomial(3).unwrap()),
        ("Q[x]/(x^4)", CommAlgebra::truncated_polynomial(4).unwrap()),
        ("Q[x]/(x^5)", CommAlgebra::truncated_polynomial(5).unwrap()),
        ("Q[x]/(x^6)", CommAlgebra::truncated_polynomial(6).unwrap()),
        ("Q[x,y]/(x^3,y^2,xy)", m(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1]])),
        ("Q[x,y]/(x^2,y^2)", m(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])),
        ("Q[x,y]/(x^2-y^2,xy)", CommAlgebra::x2_minus_y2()),
        ("Q[x,y,z]/m^2", CommAlgebra::square_zero(3)),
        ("Q[x1..x5]/m^2", CommAlgebra::square_zero(5)),
        ("Q[x,y]/(x^4,xy,y^3)", m(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0], &[0, 1], &[0, 2]])),
        ("Q[x,y]/(x^3,y^2)", m(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[2, 1]])),
        ("Q[x,y]/(x^2,xy,y^2)", CommAlgebra::square_zero(2)),
        ("Q+V+Q, V=Q^2", CommAlgebra::quadratic_extension(&QMatrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap()),
        ("Q+V+Q, V=Q^4", CommAlgebra::quadratic_extension(&QMatrix::diagonal(&[q(1), q(1), q(2), q(-3)])).unwrap()),
    ]
}
