//! Rings of integers of quadratic fields `Q(√m)` and their unit groups.
//!
//! Elements are pairs `(a, b)` meaning `a + b ω` with `ω = √m` when
//! `m ≡ 2, 3 (mod 4)` and `ω = (1 + √m)/2` when `m ≡ 1 (mod 4)`. The
//! parameter is the standard `m`; a field written `Q(√-d)` has `m = -d`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::QuadCase;
use crate::matrix::ZMatrix;
use crate::rational::is_squarefree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticRing {
    pub m: i64,
    pub kind: QuadCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadElem { a: a.into(), b: b.into() }
    }
}

impl QuadraticRing {
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 || m == 1 || !is_squarefree(&BigInt::from(m)) {
            return Err(Error::input(format!("m must be squarefree and not 0 or 1, got {m}")));
        }
        let kind = if m.rem_euclid(4) == 1 { QuadCase::Half } else { QuadCase::Sqrt };
        Ok(QuadraticRing { m, kind })
    }

    /// `(p, t)` with `ω² = p + t ω`.
    pub fn relation(&self) -> (i64, i64) {
        match self.kind {
            QuadCase::Sqrt => (self.m, 0),
            QuadCase::Half => ((self.m - 1) / 4, 1),
        }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem::new(1, 0)
    }

    pub fn omega(&self) -> QuadElem {
        QuadElem::new(0, 1)
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let (p, t) = self.relation();
        let bb = &x.b * &y.b;
        QuadElem { a: &x.a * &y.a + &bb * p, b: &x.a * &y.b + &x.b * &y.a + bb * t }
    }

    pub fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem { a: -x.a.clone(), b: -x.b.clone() }
    }

    /// Galois conjugate: `ω ↦ t - ω`.
    pub fn conj(&self, x: &QuadElem) -> QuadElem {
        let (_, t) = self.relation();
        QuadElem { a: &x.a + &x.b * t, b: -x.b.clone() }
    }

    pub fn norm(&self, x: &QuadElem) -> BigInt {
        self.mul(x, &self.conj(x)).a
    }

    pub fn trace(&self, x: &QuadElem) -> BigInt {
        let (_, t) = self.relation();
        BigInt::from(2) * &x.a + &x.b * t
    }

    pub fn is_unit(&self, x: &QuadElem) -> bool {
        self.norm(x).abs().is_one()
    }

    pub fn pow(&self, x: &QuadElem, e: i64) -> Result<QuadElem> {
        let base = if e < 0 { self.inverse(x)? } else { x.clone() };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    pub fn inverse(&self, x: &QuadElem) -> Result<QuadElem> {
        let n = self.norm(x);
        if !n.abs().is_one() {
            return Err(Error::precondition("element is not a unit"));
        }
        let c = self.conj(x);
        Ok(QuadElem { a: &c.a * &n, b: &c.b * &n })
    }

    /// Matrix of multiplication by `x` on the basis `(1, ω)` (columns are images).
    pub fn mul_matrix(&self, x: &QuadElem) -> ZMatrix {
        let c0 = self.mul(x, &self.one());
        let c1 = self.mul(x, &self.omega());
        ZMatrix::from_fn(2, 2, |i, j| {
            let c = if j == 0 { &c0 } else { &c1 };
            if i == 0 { c.a.clone() } else { c.b.clone() }
        })
    }

    /// `2x = u + v √m` as the integer pair `(u, v)`.
    fn doubled(&self, x: &QuadElem) -> (BigInt, BigInt) {
        match self.kind {
            QuadCase::Sqrt => (BigInt::from(2) * &x.a, BigInt::from(2) * &x.b),
            QuadCase::Half => (BigInt::from(2) * &x.a + &x.b, x.b.clone()),
        }
    }

    /// Sign of `u + v √m` for `m > 0`, exactly.
    fn sign_of(&self, u: &BigInt, v: &BigInt) -> Ordering {
        let m = BigInt::from(self.m);
        match (u.sign(), v.sign()) {
            (_, num_bigint::Sign::NoSign) => u.cmp(&BigInt::zero()),
            (num_bigint::Sign::NoSign, _) => v.cmp(&BigInt::zero()),
            (su, sv) if su == sv => u.cmp(&BigInt::zero()),
            _ => {
                // opposite signs: compare u² with m v²
                let c = (u * u).cmp(&(&m * v * v));
                if u.is_positive() { c } else { c.reverse() }
            }
        }
    }

    /// Compares the real value of `x` (under `√m > 0`) with the integer `k`; needs `m > 0`.
    pub fn compare_int(&self, x: &QuadElem, k: i64) -> Ordering {
        assert!(self.m > 0, "real embedding needs m > 0");
        let (u, v) = self.doubled(x);
        self.sign_of(&(u - BigInt::from(2 * k)), &v)
    }

    /// Human-readable value such as `1+sqrt2` or `(1+sqrt5)/2`.
    pub fn format(&self, x: &QuadElem) -> String {
        let (u, v) = self.doubled(x);
        let (u, v, den) = if (&u % 2i32).is_zero() && (&v % 2i32).is_zero() {
            (u / 2i32, v / 2i32, false)
        } else {
            (u, v, true)
        };
        let root = format!("sqrt{}", self.m);
        let vs = if v.is_zero() {
            String::new()
        } else if v.is_one() {
            root.clone()
        } else if v == -BigInt::one() {
            format!("-{root}")
        } else {
            format!("{v}{root}")
        };
        let body = match (u.is_zero(), v.is_zero()) {
            (_, true) => u.to_string(),
            (true, false) => vs,
            (false, false) => {
                if vs.starts_with('-') {
                    format!("{u}{vs}")
                } else {
                    format!("{u}+{vs}")
                }
            }
        };
        if den {
            format!("({body})/2")
        } else {
            body
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

pub fn ring_of_integers(m: i64) -> Result<QuadraticRing> {
    QuadraticRing::new(m)
}

/// The fundamental unit `ε > 1` of `O_m` for `m > 1`, from the continued fraction of `ω`.
pub fn fundamental_unit(m: i64) -> Result<QuadElem> {
    if m <= 1 {
        return Err(Error::input("fundamental unit needs m > 1"));
    }
    let ring = QuadraticRing::new(m)?;
    let (_, t) = ring.relation();
    let s = (m as u64).sqrt() as i64;
    // ω = (P + √m)/Q
    let (mut pp, mut qq) = match ring.kind {
        QuadCase::Sqrt => (0i64, 1i64),
        QuadCase::Half => (1i64, 2i64),
    };
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + s).div_euclid(qq);
        let p_next = BigInt::from(a) * &p_cur + &p_prev;
        let q_next = BigInt::from(a) * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        // candidate p - q ω̄ = (p - q t) + q ω
        let cand = QuadElem { a: &p_cur - &q_cur * t, b: q_cur.clone() };
        if ring.is_unit(&cand) && ring.compare_int(&cand, 1) == Ordering::Greater {
            return Ok(cand);
        }
        pp = a * qq - pp;
        qq = (m - pp * pp) / qq;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Torsion {
    C2,
    C4,
    C6,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupDesc {
    pub torsion: Torsion,
    pub fundamental_unit: Option<QuadElem>,
}

/// Units of finite order, by enumeration. For `m < 0` these are all units.
pub fn unit_torsion(m: i64) -> Result<UnitGroupDesc> {
    let ring = QuadraticRing::new(m)?;
    if m > 0 {
        return Ok(UnitGroupDesc { torsion: Torsion::C2, fundamental_unit: Some(fundamental_unit(m)?) });
    }
    // the norm form is positive definite; |b| <= 2 and |a| <= 3 cover norm 1
    let mut count = 0;
    for a in -3i64..=3 {
        for b in -2i64..=2 {
            if ring.norm(&QuadElem::new(a, b)).is_one() {
                count += 1;
            }
        }
    }
    let torsion = match count {
        4 => Torsion::C4,
        6 => Torsion::C6,
        _ => Torsion::C2,
    };
    Ok(UnitGroupDesc { torsion, fundamental_unit: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(QuadraticRing::new(5).unwrap().kind, QuadCase::Half);
        assert_eq!(QuadraticRing::new(2).unwrap().kind, QuadCase::Sqrt);
        assert_eq!(QuadraticRing::new(-1).unwrap().kind, QuadCase::Sqrt);
        assert_eq!(QuadraticRing::new(-3).unwrap().kind, QuadCase::Half);
        assert_eq!(QuadraticRing::new(8).unwrap_err().kind(), "input");
    }

    #[test]
    fn small_fundamental_units() {
        let f = |m| {
            let r = QuadraticRing::new(m).unwrap();
            r.format(&fundamental_unit(m).unwrap())
        };
        assert_eq!(f(2), "1+sqrt2");
        assert_eq!(f(3), "2+sqrt3");
        assert_eq!(f(5), "(1+sqrt5)/2");
        assert_eq!(fundamental_unit(5).unwrap(), QuadElem::new(0, 1));
    }

    #[test]
    fn torsion() {
        assert_eq!(unit_torsion(-1).unwrap().torsion, Torsion::C4);
        assert_eq!(unit_torsion(-3).unwrap().torsion, Torsion::C6);
        assert_eq!(unit_torsion(-2).unwrap().torsion, Torsion::C2);
        assert_eq!(unit_torsion(-7).unwrap().torsion, Torsion::C2);
    }

    #[test]
    fn conjugate_and_norm() {
        let r = QuadraticRing::new(5).unwrap();
        let w = r.omega();
        assert_eq!(r.norm(&w), BigInt::from(-1));
        assert_eq!(r.mul(&w, &r.conj(&w)), QuadElem::new(-1, 0));
        let inv = r.inverse(&w).unwrap();
        assert_eq!(r.mul(&w, &inv), r.one());
    }
}
