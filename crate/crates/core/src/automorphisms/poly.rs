//! Integer polynomials, characteristic polynomials and the exact unit-circle test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, ZMatrix};
use crate::rational::{qi, Rational};

/// Dense integer coefficients, low degree first, with a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::input("the zero polynomial is not allowed"));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Primitive integer polynomial with the same roots, each simple.
    pub fn squarefree(&self) -> IntPolynomial {
        let p = to_q(&self.coeffs);
        let sq = div_exact(&p, &gcd(&p, &derivative(&p)));
        let den = sq.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = sq.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        IntPolynomial { coeffs: ints.into_iter().map(|c| c / &content).collect() }
    }

    /// `X^deg p(1/X)`.
    pub fn reversal(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            write!(f, "{sign}{mag}{var}")?;
            first = false;
        }
        Ok(())
    }
}

type QPoly = Vec<Rational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn to_q(p: &[BigInt]) -> QPoly {
    let mut v: QPoly = p.iter().map(qi).collect();
    trim(&mut v);
    v
}

/// Remainder of `a` by a nonzero `b`.
fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    let mut out = vec![Rational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        out[shift] = f;
        r.pop();
        trim(&mut r);
    }
    debug_assert!(r.is_empty());
    out
}

fn monic(mut p: QPoly) -> QPoly {
    if let Some(l) = p.last().cloned() {
        for c in &mut p {
            *c /= &l;
        }
    }
    p
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(a)
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
    trim(&mut d);
    d
}

fn eval_q(p: &QPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[QPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| eval_q(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(a, b]`.
fn sturm_count(p: &QPoly, a: &Rational, b: &Rational) -> usize {
    let sq = div_exact(p, &gcd(p, &derivative(p)));
    let mut seq = vec![sq.clone(), derivative(&sq)];
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r: QPoly = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        seq.push(r);
    }
    seq.pop();
    sign_changes(&seq, a) - sign_changes(&seq, b)
}

/// Exact decision whether `p` has a complex root of modulus one.
pub fn has_unit_circle_root(p: &IntPolynomial) -> bool {
    let start = p.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let core = &p.coeffs[start..];
    if core.len() == 1 {
        return false;
    }
    let stripped = IntPolynomial { coeffs: core.to_vec() };
    if stripped.eval(&BigInt::one()).is_zero() || stripped.eval(&-BigInt::one()).is_zero() {
        return true;
    }
    // unit-circle roots come with their inverses, so they divide p and its reversal
    let g = gcd(&to_q(core), &to_q(&stripped.reversal()));
    if g.len() <= 1 {
        return false;
    }
    // g is self-reciprocal without roots ±1, so it has even degree 2k and
    // z^-k g(z) = h(z + 1/z) where D_j(z + 1/z) = z^j + z^-j
    let k = (g.len() - 1) / 2;
    let x: QPoly = vec![Rational::zero(), Rational::one()];
    let mut d_prev: QPoly = vec![Rational::from_integer(2.into())];
    let mut d_cur = x.clone();
    let mut h: QPoly = vec![g[k].clone()];
    for j in 1..=k {
        let c = &g[k + j];
        if h.len() < d_cur.len() {
            h.resize(d_cur.len(), Rational::zero());
        }
        for (i, v) in d_cur.iter().enumerate() {
            h[i] += c * v;
        }
        let mut next = vec![Rational::zero(); d_cur.len() + 1];
        for (i, v) in d_cur.iter().enumerate() {
            next[i + 1] += v;
        }
        for (i, v) in d_prev.iter().enumerate() {
            next[i] -= v;
        }
        d_prev = std::mem::replace(&mut d_cur, next);
    }
    trim(&mut h);
    let two = Rational::from_integer(2.into());
    sturm_count(&h, &-two.clone(), &two) > 0
}

/// Characteristic polynomial `det(X I - M)` by Faddeev–LeVerrier.
pub fn charpoly_q(m: &QMatrix) -> Result<Vec<Rational>> {
    if !m.is_square() {
        return Err(Error::input("characteristic polynomial needs a square matrix"));
    }
    let n = m.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = QMatrix::zeros(n, n);
    for k in 1..=n {
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] += &c[n + 1 - k];
        }
        mk = m.mul(&shifted);
        c[n - k] = -mk.trace() / Rational::from_integer(BigInt::from(k));
    }
    Ok(c)
}

pub fn charpoly(m: &ZMatrix) -> Result<IntPolynomial> {
    let c = charpoly_q(&m.to_rational())?;
    IntPolynomial::new(c.iter().map(|x| x.to_integer()).collect())
}

/// The second exterior power of a 3×3 matrix on the basis `e1∧e2, e1∧e3, e2∧e3`.
pub fn exterior_square(b: &ZMatrix) -> ZMatrix {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    ZMatrix::from_fn(3, 3, |r, c| {
        let (i, j) = pairs[r];
        let (k, l) = pairs[c];
        &b[(i, k)] * &b[(j, l)] - &b[(i, l)] * &b[(j, k)]
    })
}

fn check_3x3_unimodular(b: &ZMatrix) -> Result<BigInt> {
    if b.rows() != 3 || b.cols() != 3 {
        return Err(Error::input("expected a 3x3 integer matrix"));
    }
    let det = b.det();
    if !det.abs().is_one() {
        return Err(Error::precondition(format!("determinant must be ±1, got {det}")));
    }
    Ok(det)
}

/// `p_B = X³ - tr B X² + tr Λ²B X - det B` and `q_A = X³ - tr Λ²B X² + det⁻¹ tr B X - 1`,
/// both cross-checked against Faddeev–LeVerrier on `B` and `Λ²B`.
pub fn char_poly_pair(b: &ZMatrix) -> Result<(IntPolynomial, IntPolynomial)> {
    let det = check_3x3_unimodular(b)?;
    let tr = b.trace();
    let tr2 = exterior_square(b).trace();
    let p_b = IntPolynomial::new(vec![-det.clone(), tr2.clone(), -tr.clone(), BigInt::one()])?;
    // det = ±1 so det⁻¹ = det
    let q_a = IntPolynomial::new(vec![-BigInt::one(), &det * &tr, -tr2, BigInt::one()])?;
    if charpoly(b)? != p_b {
        return Err(Error::structural("closed form for p_B disagrees with the direct computation"));
    }
    let a = b.to_rational().inverse().expect("unimodular").scale(&qi(&det));
    let direct_a = IntPolynomial::new(charpoly_q(&a)?.iter().map(|x| x.to_integer()).collect())?;
    if direct_a != q_a || charpoly(&exterior_square(b))? != q_a {
        return Err(Error::structural("closed form for q_A disagrees with the direct computation"));
    }
    Ok((p_b, q_a))
}

/// Whether `B` is unimodular with no eigenvalue of modulus one.
pub fn is_anosov(b: &ZMatrix) -> Result<bool> {
    if !b.is_square() {
        return Err(Error::input("is_anosov needs a square matrix"));
    }
    if !b.det().abs().is_one() {
        return Ok(false);
    }
    Ok(!has_unit_circle_root(&charpoly(b)?))
}
