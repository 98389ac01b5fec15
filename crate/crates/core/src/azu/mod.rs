//! Once-extended evaluation into algebras, bimodules and bimodule maps.
//!
//! Conventions: a 1-morphism `X → Y` is an `X`–`Y` bimodule and composites
//! are `M ⊗_Y N`. The positive point goes to `A`, the negative point to `A^op`
//! and `pt+ ⊔ pt-` to `A^e = A ⊗ A^op`. The left elbow is `A` as a `k`–`A^e`
//! bimodule with `x·(a⊗b) = b x a`; the right elbow is `A` as an `A^e`–`k`
//! bimodule with `(a⊗b)·x = a x b`.

mod bimodule;
mod extended;
mod harness;

use std::sync::Arc;

pub use bimodule::{tensor_over, Bimodule, BimoduleMap, TensorProduct};
pub use extended::{evaluate_extended, Evaluation, ExtendedTheory};
pub use harness::{torus_criterion_extended, CriterionReport, Eligibility};

use crate::algebra::{kron_vec, Algebra};
use crate::exactlin::{Field, Matrix};

/// Basis of the center, from the kernel of `z ↦ [z, g]` over generators `g`.
pub fn center<F: Field>(a: &Algebra<F>) -> Vec<Vec<F>> {
    let n = a.dim();
    let mut rows = Vec::new();
    for g in a.generators() {
        rows.extend(a.right_mult(g).sub(&a.left_mult(g)).row_vectors());
    }
    if rows.is_empty() {
        return (0..n).map(|i| a.basis(i)).collect();
    }
    Matrix::from_rows(&rows, n).kernel_basis()
}

/// An `e ∈ A ⊗ A` with `μ(e) = 1` and `(x⊗1)e = e(1⊗x)`, if one exists.
/// Coordinates are indexed `i * dim + j` for `b_i ⊗ b_j`.
pub fn separability_idempotent<F: Field>(a: &Algebra<F>) -> Option<Vec<F>> {
    let n = a.dim();
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    let mu = Matrix::from_columns(&(0..n * n).map(|p| a.mul(&a.basis(p / n), &a.basis(p % n))).collect::<Vec<_>>(), n);
    rows.extend(mu.row_vectors());
    rhs.extend(a.unit().iter().cloned());
    let id = Matrix::identity(n);
    for x in a.generators() {
        let m = a.left_mult(x).kron(&id).sub(&id.kron(&a.right_mult(x)));
        rows.extend(m.row_vectors());
        rhs.extend(std::iter::repeat_n(F::zero(), n * n));
    }
    Matrix::from_rows(&rows, n * n).solve(&rhs)
}

/// Gram matrix `λ(b_i b_j)`.
pub fn gram<F: Field>(a: &Algebra<F>, form: &[F]) -> Matrix<F> {
    Matrix::from_fn(a.dim(), a.dim(), |i, j| a.basis_product(i, j).iter().fold(F::zero(), |acc, (k, c)| acc + c.clone() * form[*k].clone()))
}

pub fn is_symmetric_frobenius_form<F: Field>(a: &Algebra<F>, form: &[F]) -> bool {
    let g = gram(a, form);
    g == g.transpose() && g.is_invertible()
}

/// A symmetric nondegenerate trace, if one exists.
///
/// A form attached to the algebra is preferred. Otherwise the space of
/// symmetric forms is searched: each basis vector of it, then the
/// combinations `Σ_i t^i k_i` for `t = 1..=dim`.
pub fn symmetric_frobenius_form<F: Field>(a: &Algebra<F>) -> Option<Vec<F>> {
    if let Some(f) = a.form() {
        if is_symmetric_frobenius_form(a, f) {
            return Some(f.to_vec());
        }
    }
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![F::zero(); n];
            for (k, c) in a.basis_product(i, j) {
                r[*k] = r[*k].clone() + c.clone();
            }
            for (k, c) in a.basis_product(j, i) {
                r[*k] = r[*k].clone() - c.clone();
            }
            if r.iter().any(|x| !x.is_zero()) {
                rows.push(r);
            }
        }
    }
    let kernel = if rows.is_empty() { (0..n).map(|i| a.basis(i)).collect() } else { Matrix::from_rows(&rows, n).kernel_basis() };
    for k in &kernel {
        if gram(a, k).is_invertible() {
            return Some(k.clone());
        }
    }
    for t in 1..=n as i64 {
        let t = F::from_i64(t);
        let mut coeff = F::one();
        let mut v = vec![F::zero(); n];
        for k in &kernel {
            coeff = coeff * t.clone();
            for (x, y) in v.iter_mut().zip(k) {
                *x = x.clone() + coeff.clone() * y.clone();
            }
        }
        if gram(a, &v).is_invertible() {
            return Some(v);
        }
    }
    None
}

/// Matrix of `A ⊗ A^op → End(A)`, `b_i ⊗ b_j ↦ (x ↦ b_i x b_j)`.
///
/// Column `i * dim + j`; row `r * dim + c` holds the `b_r` coefficient of `b_i b_c b_j`.
pub fn azumaya_map<F: Field>(a: &Algebra<F>) -> Matrix<F> {
    let n = a.dim();
    let cols: Vec<Vec<F>> = (0..n * n)
        .map(|p| {
            let (bi, bj) = (a.basis(p / n), a.basis(p % n));
            let mut col = vec![F::zero(); n * n];
            for c in 0..n {
                let v = a.mul(&a.mul(&bi, &a.basis(c)), &bj);
                for (r, x) in v.into_iter().enumerate() {
                    col[r * n + c] = x;
                }
            }
            col
        })
        .collect();
    Matrix::from_columns(&cols, n * n)
}

/// The algebras and elbow bimodules attached to `A`.
#[derive(Clone, Debug)]
pub struct Elbows<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub opposite: Arc<Algebra<F>>,
    pub enveloping: Arc<Algebra<F>>,
    pub ground: Arc<Algebra<F>>,
    pub left: Bimodule<F>,
    pub right: Bimodule<F>,
}

impl<F: Field> Elbows<F> {
    pub fn new(a: &Algebra<F>) -> Self {
        let algebra = Arc::new(a.clone());
        let opposite = Arc::new(a.opposite());
        let enveloping = Arc::new(a.enveloping());
        let ground = Arc::new(Algebra::ground());
        let n = a.dim();
        let ones = vec![Matrix::identity(n)];
        // A^e generators are g⊗1 for g in gens(A), then 1⊗h
        let gens = a.generators();
        let mut left_right_action: Vec<Matrix<F>> = gens.iter().map(|g| a.right_mult(g)).collect();
        left_right_action.extend(gens.iter().map(|h| a.left_mult(h)));
        let mut right_left_action: Vec<Matrix<F>> = gens.iter().map(|g| a.left_mult(g)).collect();
        right_left_action.extend(gens.iter().map(|h| a.right_mult(h)));
        let left = Bimodule { left: ground.clone(), right: enveloping.clone(), dim: n, left_action: ones.clone(), right_action: left_right_action };
        let right = Bimodule { left: enveloping.clone(), right: ground.clone(), dim: n, left_action: right_left_action, right_action: ones };
        Elbows { algebra, opposite, enveloping, ground, left, right }
    }

    pub fn circle(&self) -> TensorProduct<F> {
        tensor_over(&self.left, &self.right).expect("elbows share A^e")
    }
}

/// Dimension and basis (in `A ⊗ A`) of `A ⊗_{A^e} A`.
#[derive(Clone, Debug)]
pub struct CircleValue<F: Field> {
    pub dim: usize,
    pub basis: Vec<Vec<F>>,
}

pub fn circle_value<F: Field>(a: &Algebra<F>) -> CircleValue<F> {
    let t = Elbows::new(a).circle();
    let basis = (0..t.quotient.dim).map(|j| t.quotient.section.column(j)).collect();
    CircleValue { dim: t.quotient.dim, basis }
}

/// `x ⊗ y` as a coordinate vector in `A ⊗ A`.
pub fn tensor_vec<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    kron_vec(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{F2, F3, Q};

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn center_dimensions() {
        assert_eq!(center(&Algebra::<Q>::matrix(2)).len(), 1);
        assert_eq!(center(&Algebra::<Q>::cyclic_group(2)).len(), 2);
        assert_eq!(center(&Algebra::<Q>::symmetric_group_3()).len(), 3);
        assert_eq!(center(&Algebra::<Q>::quaternion_group()).len(), 5);
    }

    #[test]
    fn separability_examples() {
        let m2 = Algebra::<Q>::matrix(2);
        let e = separability_idempotent(&m2).unwrap();
        // the standard idempotent Σ_j E_j1 ⊗ E_1j satisfies the same equations
        let std: Vec<Q> = {
            let mut v = vec![q(0); 16];
            for j in 0..2 {
                v[(j * 2) * 4 + j] = q(1);
            }
            v
        };
        assert_eq!(m2.mul(&m2.basis(0), &m2.basis(0)), m2.basis(0));
        assert!(check_separability(&m2, &e));
        assert!(check_separability(&m2, &std));
        let z2 = Algebra::<Q>::cyclic_group(2);
        let e = separability_idempotent(&z2).unwrap();
        let half = Q::new(1.into(), 2.into());
        assert_eq!(e, vec![half.clone(), q(0), q(0), half]);
        assert!(separability_idempotent(&Algebra::<F2>::cyclic_group(2)).is_none());
        assert!(separability_idempotent(&Algebra::<F3>::cyclic_group(3)).is_none());
        assert!(separability_idempotent(&Algebra::<F3>::matrix(3)).is_some());
    }

    fn check_separability(a: &Algebra<Q>, e: &[Q]) -> bool {
        let n = a.dim();
        let mu: Vec<Q> = (0..n * n).fold(vec![q(0); n], |acc, p| {
            let prod = a.mul(&a.basis(p / n), &a.basis(p % n));
            acc.iter().zip(prod).map(|(x, y)| x.clone() + e[p].clone() * y).collect()
        });
        let id = Matrix::identity(n);
        mu == a.unit()
            && (0..n).all(|i| {
                let x = a.basis(i);
                a.left_mult(&x).kron(&id).apply(e) == id.kron(&a.right_mult(&x)).apply(e)
            })
    }

    #[test]
    fn symmetric_forms() {
        let m2 = Algebra::<Q>::matrix(2);
        let f = symmetric_frobenius_form(&m2).unwrap();
        assert_eq!(f, vec![q(1), q(0), q(0), q(1)]);
        let z2 = symmetric_frobenius_form(&Algebra::<Q>::cyclic_group(2)).unwrap();
        assert_eq!(z2, vec![q(1), q(0)]);
        assert!(symmetric_frobenius_form(&Algebra::<Q>::upper_triangular_2()).is_none());
    }

    #[test]
    fn azumaya_ranks() {
        assert!(azumaya_map(&Algebra::<Q>::ground()).is_identity());
        let m = azumaya_map(&Algebra::<Q>::matrix(2));
        assert_eq!((m.rows(), m.rank()), (16, 16));
        assert!(azumaya_map(&Algebra::<Q>::cyclic_group(2)).rank() < 4);
    }

    #[test]
    fn circle_values() {
        assert_eq!(circle_value(&Algebra::<Q>::matrix(2)).dim, 1);
        assert_eq!(circle_value(&Algebra::<Q>::cyclic_group(2)).dim, 2);
        assert_eq!(circle_value(&Algebra::<Q>::cyclic_group(3)).dim, 3);
        assert_eq!(circle_value(&Algebra::<Q>::symmetric_group_3()).dim, 3);
    }

    #[test]
    fn elbows_are_bimodules() {
        let e = Elbows::new(&Algebra::<Q>::symmetric_group_3());
        assert!(e.left.is_valid());
        assert!(e.right.is_valid());
        let id = Bimodule::regular(e.enveloping.clone());
        assert_eq!(tensor_over(&e.left, &id).unwrap().bimodule.dim, 6);
    }
}
