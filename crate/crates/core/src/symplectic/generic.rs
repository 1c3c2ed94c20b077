//! Maximal-rank search in a linear space of alternating forms.
//!
//! A random combination is tested first. If it is singular, the second Wong
//! sequence of the sampled matrix either escapes its image (the sample was
//! not of maximal rank, so another is drawn) or converges to a pair `(U, W)`
//! with `M U ⊆ W` for every matrix of the space and `dim W < dim U`, which
//! certifies that every member of the space is degenerate. Alternating forms
//! in odd dimension are degenerate for parity reasons alone; the Wong sequence
//! cannot certify that case, since the space of all alternating forms in odd
//! dimension has noncommutative rank above its rank. The same parity gap can
//! make the Wong sequence escape in even dimension; a greedy search over
//! coordinate subspaces is tried before giving up.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::AlternatingForm;
use crate::matrix::{unit_vec, QMatrix};
use crate::rational::{q, Rational};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegeneracyCertificate {
    /// The ambient dimension is odd.
    Parity,
    /// Every form of the space maps `u` into `w`, and `dim w < dim u`.
    Subspaces { u: Subspace, w: Subspace },
}

#[derive(Clone, Debug)]
pub enum GenericOutcome {
    Nondegenerate(AlternatingForm),
    Degenerate(DegeneracyCertificate),
    /// The budget of samples ran out without a decision.
    Inconclusive,
}

impl GenericOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            GenericOutcome::Nondegenerate(_) => "nondegenerate",
            GenericOutcome::Degenerate(_) => "degenerate",
            GenericOutcome::Inconclusive => "inconclusive",
        }
    }
}

/// Checks a certificate against a spanning set of the space.
pub fn verify_certificate(forms: &[AlternatingForm], n: usize, cert: &DegeneracyCertificate) -> bool {
    match cert {
        DegeneracyCertificate::Parity => n % 2 == 1,
        DegeneracyCertificate::Subspaces { u, w } => {
            u.ambient() == n
                && w.ambient() == n
                && w.dim() < u.dim()
                && forms.iter().all(|f| u.image(f.matrix()).is_subspace_of(w))
        }
    }
}

/// Decides whether the span of `forms` (all on `Q^n`) contains a nondegenerate form.
/// Deterministic for a given seed; `budget` bounds the number of random samples.
pub fn generic_nondegeneracy(forms: &[AlternatingForm], n: usize, budget: usize, seed: u64) -> GenericOutcome {
    if n == 0 {
        return GenericOutcome::Nondegenerate(AlternatingForm::zero(0));
    }
    if n % 2 == 1 {
        return GenericOutcome::Degenerate(DegeneracyCertificate::Parity);
    }
    if forms.is_empty() {
        return GenericOutcome::Degenerate(DegeneracyCertificate::Subspaces { u: Subspace::full(n), w: Subspace::zero(n) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.max(1) {
        let coeffs: Vec<Rational> = forms.iter().map(|_| q(rng.gen_range(-64..=64))).collect();
        let a = AlternatingForm::combination(forms, &coeffs);
        if a.is_nondegenerate() {
            return GenericOutcome::Nondegenerate(a);
        }
        if let Some(cert) = wong_limit(forms, a.matrix(), n) {
            return GenericOutcome::Degenerate(cert);
        }
    }
    match coordinate_search(forms, n) {
        Some(cert) => GenericOutcome::Degenerate(cert),
        None => GenericOutcome::Inconclusive,
    }
}

/// `Σ_j M_j U`.
pub fn joint_image(forms: &[AlternatingForm], u: &Subspace) -> Subspace {
    forms.iter().fold(Subspace::zero(u.ambient()), |acc, f| acc.sum(&u.image(f.matrix())))
}

/// The certificate `(U, Σ_j M_j U)` if it shrinks `U`.
pub fn subspace_certificate(forms: &[AlternatingForm], u: &Subspace) -> Option<DegeneracyCertificate> {
    let w = joint_image(forms, u);
    (w.dim() < u.dim()).then(|| DegeneracyCertificate::Subspaces { u: u.clone(), w })
}

/// Grows `U` from standard basis vectors, those with the smallest joint image first.
fn coordinate_search(forms: &[AlternatingForm], n: usize) -> Option<DegeneracyCertificate> {
    let mut order: Vec<(usize, usize)> = (0..n)
        .map(|i| (joint_image(forms, &Subspace::span(n, &[unit_vec(n, i)])).dim(), i))
        .collect();
    order.sort();
    let mut vectors = Vec::new();
    for (_, i) in order {
        vectors.push(unit_vec(n, i));
        if let Some(c) = subspace_certificate(forms, &Subspace::span(n, &vectors)) {
            return Some(c);
        }
    }
    None
}

/// Second Wong sequence `W_{i+1} = Σ_j M_j A^{-1}(W_i)`, stopped when it leaves `im A`.
fn wong_limit(forms: &[AlternatingForm], a: &QMatrix, n: usize) -> Option<DegeneracyCertificate> {
    let image = Subspace::full(n).image(a);
    let mut w = Subspace::zero(n);
    for _ in 0..=n {
        let u = preimage(a, &w, n);
        let next = joint_image(forms, &u);
        if !next.is_subspace_of(&image) {
            return None;
        }
        if next == w {
            return (w.dim() < u.dim()).then_some(DegeneracyCertificate::Subspaces { u, w });
        }
        w = next;
    }
    None
}

/// `{x : A x ∈ W}`.
fn preimage(a: &QMatrix, w: &Subspace, n: usize) -> Subspace {
    let ann = w.annihilator();
    if ann.dim() == 0 {
        return Subspace::full(n);
    }
    let phi = QMatrix::from_rows(ann.basis().to_vec()).expect("rectangular");
    Subspace::span(n, &phi.mul(a).kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::cocycle_space;
    use crate::lie::families;

    #[test]
    fn heisenberg_cocycles_are_degenerate() {
        let l = families::heisenberg(1);
        let cs = cocycle_space(&l);
        match generic_nondegeneracy(&cs.cocycles, 3, 8, 1) {
            GenericOutcome::Degenerate(c) => {
                assert_eq!(c, DegeneracyCertificate::Parity);
                assert!(verify_certificate(&cs.cocycles, 3, &c));
            }
            other => panic!("unexpected {}", other.label()),
        }
    }

    #[test]
    fn filiform_has_nondegenerate_cocycle() {
        let l = families::filiform(3);
        let cs = cocycle_space(&l);
        assert!(matches!(generic_nondegeneracy(&cs.cocycles, 4, 8, 1), GenericOutcome::Nondegenerate(_)));
    }

    #[test]
    fn pencil_of_rank_two_forms() {
        // e0∧e1 and e0∧e2 on Q^4: every combination has rank 2
        let f1 = AlternatingForm::from_wedges(4, &[(0, 1, q(1))]);
        let f2 = AlternatingForm::from_wedges(4, &[(0, 2, q(1))]);
        let forms = [f1, f2];
        match generic_nondegeneracy(&forms, 4, 8, 7) {
            GenericOutcome::Degenerate(c) => {
                assert!(matches!(c, DegeneracyCertificate::Subspaces { .. }));
                assert!(verify_certificate(&forms, 4, &c));
            }
            other => panic!("unexpected {}", other.label()),
        }
    }
}
