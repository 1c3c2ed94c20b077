//! Classification of six-dimensional 2-step nilpotent algebras with two-dimensional
//! center equal to the derived ideal, via the Pfaffian of the pencil of 2-forms.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{families, LieAlgebra};
use crate::matrix::{is_zero_vec, lin_comb, unit_vec, QMatrix};
use crate::rational::{q, rational_sqrt, squarefree_part_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum Family {
    H1_DUAL,
    H1_COMPLEX,
    H1_RxR,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::H1_DUAL => "H1_DUAL",
            Family::H1_COMPLEX => "H1_COMPLEX",
            Family::H1_RxR => "H1_RxR",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "H1_DUAL" => Ok(Family::H1_DUAL),
            "H1_COMPLEX" => Ok(Family::H1_COMPLEX),
            "H1_RxR" => Ok(Family::H1_RxR),
            _ => Err(Error::input(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixDimClassification {
    pub family: Family,
    pub d: Option<BigInt>,
    /// Columns are the normal-form basis vectors in the input coordinates.
    pub witness: QMatrix,
    /// The binary quadratic form `A x² + B xy + C y²` of the Pfaffian pencil.
    pub pfaffian_form: [Rational; 3],
}

impl SixDimClassification {
    /// Normal-form algebra the witness basis realizes.
    pub fn normal_form(&self) -> LieAlgebra {
        match (&self.family, &self.d) {
            (Family::H1_DUAL, _) => families::six_dim_dual(),
            (_, Some(d)) => families::six_dim_rank_two(d.to_i64().expect("small d")),
            _ => unreachable!("rank-two families carry d"),
        }
    }
}

pub fn commensurable(a: &SixDimClassification, b: &SixDimClassification) -> bool {
    a.family == b.family && a.d == b.d
}

/// Pfaffian of a 4x4 alternating matrix.
pub fn pfaffian4(m: &QMatrix) -> Rational {
    &m[(0, 1)] * &m[(2, 3)] - &m[(0, 2)] * &m[(1, 3)] + &m[(0, 3)] * &m[(1, 2)]
}

/// Checks the standing hypotheses and returns a basis of the center.
fn check_input(l: &LieAlgebra) -> Result<Vec<Vec<Rational>>> {
    if l.dim() != 6 {
        return Err(Error::input(format!("expected a 6-dimensional algebra, got dimension {}", l.dim())));
    }
    if !l.validate().ok {
        return Err(Error::input("structure constants violate the Jacobi identity"));
    }
    let z = l.center();
    let d = l.derived();
    if z != d || z.dim() != 2 {
        return Err(Error::precondition(format!(
            "need center = derived ideal of dimension 2 (center dim {}, derived dim {})",
            z.dim(),
            d.dim()
        )));
    }
    Ok(z.basis().to_vec())
}

/// Classifies using the standard complement of the center.
pub fn classify_six_dim(l: &LieAlgebra) -> Result<SixDimClassification> {
    let center = check_input(l)?;
    let complement = crate::subspace::Subspace::span(6, &center).complement_basis();
    classify_six_dim_with(l, &complement, &center)
}

/// Classifies with an explicit complement `V` (4 vectors) and center basis (2 vectors).
pub fn classify_six_dim_with(
    l: &LieAlgebra,
    complement: &[Vec<Rational>],
    center: &[Vec<Rational>],
) -> Result<SixDimClassification> {
    let z = check_input(l)?;
    let zs = crate::subspace::Subspace::span(6, &z);
    if complement.len() != 4 || center.len() != 2 || !center.iter().all(|c| zs.contains(c)) {
        return Err(Error::input("need 4 complement vectors and 2 center vectors"));
    }
    let mut cols = complement.to_vec();
    cols.extend(center.iter().cloned());
    let p = QMatrix::from_cols(6, &cols);
    let pinv = p.inverse().ok_or_else(|| Error::input("complement and center do not span"))?;
    // eta[k](a, b) = k-th center coordinate of [v_a, v_b]
    let mut eta = [QMatrix::zeros(4, 4), QMatrix::zeros(4, 4)];
    for a in 0..4 {
        for b in 0..4 {
            let c = pinv.mul_vec(&l.bracket(&complement[a], &complement[b]));
            for (k, e) in eta.iter_mut().enumerate() {
                e[(a, b)] = c[4 + k].clone();
            }
        }
    }
    let a = pfaffian4(&eta[0]);
    let c = pfaffian4(&eta[1]);
    let b = pfaffian4(&eta[0].add(&eta[1])) - &a - &c;
    let det = &a * &c - &b * &b / q(4);
    let form = [a.clone(), b.clone(), c.clone()];
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::structural("Pfaffian form vanishes: the 2-forms do not have maximal support"));
    }
    if det.is_zero() {
        let witness = dual_witness(l, complement, &eta, &form)?;
        return Ok(SixDimClassification { family: Family::H1_DUAL, d: None, witness, pfaffian_form: form });
    }
    let d = squarefree_part_rational(&det)?;
    let family = if d.is_positive() { Family::H1_COMPLEX } else { Family::H1_RxR };
    let witness = rank_two_witness(l, complement, &d)?;
    Ok(SixDimClassification { family, d: Some(d), witness, pfaffian_form: form })
}

fn restrict(l: &LieAlgebra, x: &[Rational], basis: &[Vec<Rational>], pinv: &QMatrix) -> QMatrix {
    // matrix of v -> center coordinates of [x, v] on the given basis (2 x len)
    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|v| pinv.mul_vec(&l.bracket(x, v))[4..6].to_vec())
        .collect();
    QMatrix::from_cols(2, &cols)
}

fn small_combinations(k: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..k).map(|i| unit_vec(k, i)).collect();
    for i in 0..k {
        for j in i + 1..k {
            for s in [1, -1, 2] {
                let mut v = unit_vec(k, i);
                v[j] = q(s);
                out.push(v);
            }
        }
    }
    out
}

/// Basis realizing `[e1,e4] = [e2,e3] = e5`, `[e1,e3] = e6`, `[e2,e4] = -d e6`.
fn rank_two_witness(l: &LieAlgebra, v: &[Vec<Rational>], d: &BigInt) -> Result<QMatrix> {
    let target = families::six_dim_rank_two(d.to_i64().ok_or_else(|| Error::input("d too large"))?);
    let center = l.center().basis().to_vec();
    let mut cols = v.to_vec();
    cols.extend(center.iter().cloned());
    let pinv = QMatrix::from_cols(6, &cols).inverse().expect("basis");
    let d_q = Rational::from_integer(d.clone());
    for coeffs in small_combinations(4) {
        let e1 = lin_comb(&coeffs, v, 6);
        let ad1 = restrict(l, &e1, v, &pinv);
        if ad1.rank() != 2 {
            continue;
        }
        // kernel of ad_{e1} on V is two-dimensional and contains e1
        let ker: Vec<Vec<Rational>> = ad1.kernel().iter().map(|c| lin_comb(c, v, 6)).collect();
        let Some(mut e2) = ker
            .iter()
            .find(|k| QMatrix::from_cols(6, &[e1.clone(), (*k).clone()]).rank() == 2)
            .cloned()
        else {
            continue;
        };
        // quotient Q = V / span(e1, e2): pick two vectors of V completing e1, e2
        let span12 = crate::subspace::Subspace::span(6, &[e1.clone(), e2.clone()]);
        let qbasis: Vec<Vec<Rational>> = v
            .iter()
            .filter(|x| !span12.contains(x))
            .scan(span12.clone(), |acc, x| {
                if acc.contains(x) {
                    Some(None)
                } else {
                    *acc = acc.sum(&crate::subspace::Subspace::span(6, std::slice::from_ref(x)));
                    Some(Some(x.clone()))
                }
            })
            .flatten()
            .take(2)
            .collect();
        if qbasis.len() != 2 {
            continue;
        }
        let a1 = restrict(l, &e1, &qbasis, &pinv);
        let a2 = restrict(l, &e2, &qbasis, &pinv);
        let Some(a1inv) = a1.inverse() else { continue };
        let mut t = a1inv.mul(&a2);
        let half_tr = t.trace() / q(2);
        e2 = e2.iter().zip(&e1).map(|(x, y)| x - &half_tr * y).collect();
        t = t.sub(&QMatrix::identity(2).scale(&half_tr));
        let t2 = t.mul(&t);
        let c = t2[(0, 0)].clone();
        if t2 != QMatrix::identity(2).scale(&c) || c.is_zero() {
            continue;
        }
        // rescale so that T² = -d
        let Some(mu) = rational_sqrt(&(-&d_q / &c)) else { continue };
        e2 = e2.iter().map(|x| x * &mu).collect();
        t = t.scale(&mu);
        for e3c in [vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)], vec![q(1), q(2)]] {
            let te3 = t.mul_vec(&e3c);
            if QMatrix::from_cols(2, &[e3c.clone(), te3.clone()]).rank() != 2 {
                continue;
            }
            let e3 = lin_comb(&e3c, &qbasis, 6);
            let mut e4 = lin_comb(&te3, &qbasis, 6);
            let e5 = l.bracket(&e1, &e4);
            let e6 = l.bracket(&e1, &e3);
            let r = l.bracket(&e3, &e4);
            let m = QMatrix::from_cols(6, &[e5.clone(), e6.clone()]);
            let Some(ab) = m.solve(&r) else { continue };
            // [e3, e4 + γ e1 + δ e2] = r - γ e6 - δ e5
            let (gamma, delta) = (ab[1].clone(), ab[0].clone());
            e4 = e4
                .iter()
                .zip(&e1)
                .zip(&e2)
                .map(|((x, y), z)| x + &gamma * y + &delta * z)
                .collect();
            let w = QMatrix::from_cols(6, &[e1.clone(), e2.clone(), e3, e4, e5, e6]);
            if w.det().is_zero() {
                continue;
            }
            if l.change_basis(&w).ok().as_ref() == Some(&target) {
                return Ok(w);
            }
        }
    }
    Err(Error::structural("could not construct a normal-form basis"))
}

/// Basis realizing `[e1,e3] = [e2,e4] = e5`, `[e1,e2] = e6`.
fn dual_witness(
    l: &LieAlgebra,
    v: &[Vec<Rational>],
    eta: &[QMatrix; 2],
    form: &[Rational; 3],
) -> Result<QMatrix> {
    let target = families::six_dim_dual();
    let [a, b, c] = form;
    let gram = QMatrix::from_rows(vec![vec![a.clone(), b / q(2)], vec![b / q(2), c.clone()]])?;
    let rad = gram.kernel();
    let (x, y) = (rad[0][0].clone(), rad[0][1].clone());
    let eta2 = eta[0].scale(&x).add(&eta[1].scale(&y));
    let eta1 = if y.is_zero() { eta[1].clone() } else { eta[0].clone() };
    let ker = eta2.kernel();
    if ker.len() != 2 || pfaffian4(&eta1).is_zero() {
        return Err(Error::structural("degenerate pencil in the rank-one case"));
    }
    let (k3, k4) = (ker[0].clone(), ker[1].clone());
    let pair = |u: &[Rational], w: &[Rational]| eta1.bilinear(u, w);
    // rows: functionals u -> eta1(u, k3), u -> eta1(u, k4)
    let m = QMatrix::from_rows(vec![eta1.mul_vec(&k3), eta1.mul_vec(&k4)])?;
    let (Some(mut u1), Some(u2)) = (m.solve(&[q(1), q(0)]), m.solve(&[q(0), q(1)])) else {
        return Err(Error::structural("2-form restricted to the kernel pairing is singular"));
    };
    let s = pair(&u1, &u2);
    u1 = u1.iter().zip(&k4).map(|(p, r)| p + &s * r).collect();
    let e = |coeffs: &[Rational]| lin_comb(coeffs, v, 6);
    let (e1, e2, e3, e4) = (e(&u1), e(&u2), e(&k3), e(&k4));
    let e5 = l.bracket(&e1, &e3);
    let e6 = l.bracket(&e1, &e2);
    if is_zero_vec(&e6) {
        return Err(Error::structural("rank-one normal form failed"));
    }
    let w = QMatrix::from_cols(6, &[e1, e2, e3, e4, e5, e6]);
    if w.det().is_zero() || l.change_basis(&w)? != target {
        return Err(Error::structural("rank-one normal form failed"));
    }
    Ok(w)
}
