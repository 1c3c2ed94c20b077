//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::ZMatrix;

/// `left * input * right = diag(divisors)` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
    #[serde(skip)]
    pub left: ZMatrix,
    #[serde(skip)]
    pub right: ZMatrix,
}

impl SnfResult {
    /// Number of nonzero divisors.
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

fn add_row_multiple(m: &mut ZMatrix, target: usize, src: usize, f: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * f;
        m[(target, j)] -= v;
    }
}

fn add_col_multiple(m: &mut ZMatrix, target: usize, src: usize, f: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * f;
        m[(i, target)] -= v;
    }
}

pub fn smith_normal_form(input: &ZMatrix) -> SnfResult {
    let (r, c) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut left = ZMatrix::identity(r);
    let mut right = ZMatrix::identity(c);
    let steps = r.min(c);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let f = a[(i, t)].div_floor(&a[(t, t)]);
                    add_row_multiple(&mut a, i, t, &f);
                    add_row_multiple(&mut left, i, t, &f);
                    dirty |= !a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let f = a[(t, j)].div_floor(&a[(t, t)]);
                    add_col_multiple(&mut a, j, t, &f);
                    add_col_multiple(&mut right, j, t, &f);
                    dirty |= !a[(t, j)].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
            });
            match bad {
                Some(i) => {
                    let f = -BigInt::one();
                    add_row_multiple(&mut a, t, i, &f);
                    add_row_multiple(&mut left, t, i, &f);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..c {
                a[(t, j)] = -a[(t, j)].clone();
            }
            for j in 0..r {
                left[(t, j)] = -left[(t, j)].clone();
            }
        }
    }
    let divisors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfResult { divisors, left, right }
}

/// Row-style Hermite normal form: the nonzero rows of the echelon basis of the
/// lattice spanned by the rows, pivots positive and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(input: &ZMatrix) -> ZMatrix {
    let (r, c) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let best = (row..r)
                .filter(|&i| !a[(i, col)].is_zero())
                .min_by(|&x, &y| a[(x, col)].abs().cmp(&a[(y, col)].abs()));
            let Some(p) = best else {
                break;
            };
            a.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                if !a[(i, col)].is_zero() {
                    let f = a[(i, col)].div_floor(&a[(row, col)]);
                    add_row_multiple(&mut a, i, row, &f);
                    done &= a[(i, col)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if row < r && !a[(row, col)].is_zero() {
            if a[(row, col)].is_negative() {
                for j in 0..c {
                    a[(row, j)] = -a[(row, j)].clone();
                }
            }
            for i in 0..row {
                let f = a[(i, col)].div_floor(&a[(row, col)]);
                add_row_multiple(&mut a, i, row, &f);
            }
            pivots.push(col);
            row += 1;
        }
    }
    ZMatrix::from_fn(row, c, |i, j| a[(i, j)].clone())
}

/// Basis (as rows) of the pure sublattice `span_Q(rows) ∩ Z^n`, in Hermite form.
pub fn saturate(rows: &ZMatrix) -> ZMatrix {
    let snf = smith_normal_form(rows);
    let k = snf.rank();
    let vinv = snf.right.inverse_unimodular().expect("unimodular transform");
    let basis = ZMatrix::from_fn(k, rows.cols(), |i, j| vinv[(i, j)].clone());
    hermite_normal_form(&basis)
}

/// Integer solutions of `a x = b`: a particular solution and a basis of the
/// integer kernel, or `None` when no integer solution exists.
pub fn solve_integer(a: &ZMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b);
    let n = a.cols();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        let d = snf.divisors.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (quo, rem) = ci.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quo;
        }
    }
    let rank = snf.rank();
    let x = snf.right.mul_vec(&y);
    let kernel = (rank..n).map(|j| snf.right.col(j)).collect();
    Some((x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &ZMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    assert_eq!(d[(i, j)], s.divisors[i]);
                } else {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        for w in s.divisors.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_divisors() {
        assert_eq!(check(&ZMatrix::identity(3)).divisors, ints(&[1, 1, 1]));
    }

    #[test]
    fn order_54() {
        let m = ZMatrix::from_i64(&[&[6, 1], &[0, 9]]);
        assert_eq!(check(&m).divisors, ints(&[1, 54]));
    }

    #[test]
    fn already_diagonal() {
        let m = ZMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(check(&m).divisors, ints(&[2, 4]));
    }

    #[test]
    fn non_chain_diagonal_is_fixed() {
        let m = ZMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        assert_eq!(check(&m).divisors, ints(&[2, 12]));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let m = ZMatrix::from_i64(&[&[2, 4, 6], &[1, 2, 3]]);
        assert_eq!(check(&m).divisors, ints(&[1, 0]));
        let z = ZMatrix::zeros(2, 3);
        assert_eq!(check(&z).divisors, ints(&[0, 0]));
    }

    #[test]
    fn hermite_form() {
        let m = ZMatrix::from_i64(&[&[2, 3], &[4, 1]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h, ZMatrix::from_i64(&[&[2, 3], &[0, 5]]));
        assert_eq!(h.det().abs(), m.det().abs());
    }

    #[test]
    fn saturation_of_multiple() {
        let m = ZMatrix::from_i64(&[&[2, 4, 6]]);
        assert_eq!(saturate(&m), ZMatrix::from_i64(&[&[1, 2, 3]]));
        let m = ZMatrix::from_i64(&[&[1, 1, 0], &[1, -1, 0]]);
        assert_eq!(saturate(&m), ZMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn integer_solving() {
        let a = ZMatrix::from_i64(&[&[2, 4]]);
        assert!(solve_integer(&a, &ints(&[3])).is_none());
        let (x, k) = solve_integer(&a, &ints(&[6])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[6]));
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), ints(&[0]));
    }
}
