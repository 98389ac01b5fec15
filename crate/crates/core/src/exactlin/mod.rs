//! Exact linear algebra over Q and F_p, plus tolerance-based complex rank.

mod field;
mod matrix;

pub use field::{parse_rational, rational_into, Field, Fp, DEFAULT_TOLERANCE, Q};
pub use matrix::{EchelonBasis, Matrix, Rref};

use num_complex::Complex64;

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel_basis()
}

/// A quotient `F^n / span(relations)` with a chosen complement basis.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub dim: usize,
    /// `dim x ambient`; kills every relation.
    pub projection: Matrix<F>,
    /// `ambient x dim`; a right inverse of `projection`.
    pub section: Matrix<F>,
}

/// Quotient of `F^ambient_dim` by the span of `relations`.
///
/// The complement is spanned by the standard basis vectors at non-pivot
/// columns of the reduced relation matrix.
pub fn quotient_space<F: Field>(ambient_dim: usize, relations: &[Vec<F>]) -> Quotient<F> {
    let mut basis = EchelonBasis::new(ambient_dim);
    for r in relations {
        basis.insert(r.clone());
    }
    quotient_from_basis(basis)
}

pub fn quotient_from_basis<F: Field>(basis: EchelonBasis<F>) -> Quotient<F> {
    let rref = basis.into_rref();
    let ambient = rref.matrix.cols();
    let free: Vec<usize> = (0..ambient).filter(|c| rref.pivots.binary_search(c).is_err()).collect();
    let dim = free.len();
    let mut projection = Matrix::zeros(dim, ambient);
    let mut section = Matrix::zeros(ambient, dim);
    for (q, &c) in free.iter().enumerate() {
        projection[(q, c)] = F::one();
        section[(c, q)] = F::one();
    }
    // e_p = row_k - sum_{free c} row_k[c] e_c, and row_k maps to zero
    for (k, &p) in rref.pivots.iter().enumerate() {
        for (q, &c) in free.iter().enumerate() {
            let v = &rref.matrix[(k, c)];
            if !v.is_zero() {
                projection[(q, p)] = -v.clone();
            }
        }
    }
    Quotient { dim, projection, section }
}

/// Rank of a complex matrix, treating pivots of modulus `<= tol` as zero.
pub fn complex_rank(m: &Matrix<Complex64>, tol: f64) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let (best, norm) = (rank..rows)
            .map(|r| (r, a[(r, c)].norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if norm <= tol {
            continue;
        }
        for j in 0..cols {
            let t = a[(rank, j)];
            a[(rank, j)] = a[(best, j)];
            a[(best, j)] = t;
        }
        let piv = a[(rank, c)];
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let f = a[(r, c)] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in c..cols {
                let v = a[(rank, j)];
                a[(r, j)] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Whether a scalar counts as invertible under an explicit tolerance.
pub fn complex_is_invertible(z: Complex64, tol: f64) -> bool {
    z.norm() > tol
}

/// For square `f: X -> Y`, `g: Y -> X` with `g∘f` invertible, reports
/// whether both factors are invertible.
pub fn composite_factors_invertible<F: Field>(f: &Matrix<F>, g: &Matrix<F>) -> Option<bool> {
    let gf = g.mul(f);
    if !gf.is_invertible() {
        return None;
    }
    Some(f.is_invertible() && g.is_invertible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Q>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Q>::zeros(2, 3)), 0);
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::<Q>::identity(2)).is_empty());
        let k = kernel_basis(&q(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + k[0][1].clone(), Q::from_i64(0));
        // row reduction by hand: x + 2y = 0 gives (2, -1) up to scale
        let m = q(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0].clone() * Q::from_i64(-1), v[1].clone() * Q::from_i64(2));
        assert!(m.apply(v).iter().all(Field::is_zero));
    }

    #[test]
    fn quotient_examples() {
        let qs = quotient_space::<Q>(3, &[]);
        assert_eq!(qs.dim, 3);
        assert!(qs.projection.is_identity());

        let rel = vec![vec![Q::from_i64(1), Q::from_i64(-1)]];
        let qs = quotient_space(2, &rel);
        assert_eq!(qs.dim, 1);
        assert!(qs.projection.apply(&rel[0]).iter().all(Field::is_zero));

        let m = q(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[1, 1, 1, 3]]);
        assert_eq!(rank(&m), 3);
        let qs = quotient_space(4, &m.row_vectors());
        assert_eq!(qs.dim, 1);
        for r in m.row_vectors() {
            assert!(qs.projection.apply(&r).iter().all(Field::is_zero));
        }
        assert!(qs.projection.mul(&qs.section).is_identity());
    }

    #[test]
    fn complex_rank_respects_tolerance() {
        let m = Matrix::from_fn(2, 2, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        assert_eq!(complex_rank(&m, 1e-9), 2);
        let mut n = m.clone();
        n[(1, 1)] = Complex64::new(1e-12, 0.0);
        assert_eq!(complex_rank(&n, 1e-9), 1);
        assert_eq!(complex_rank(&n, 1e-15), 2);
        assert!(!complex_is_invertible(Complex64::new(1e-10, 0.0), 1e-9));
    }

    #[test]
    fn rank_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let base = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4], &[5, 0, 0, 1]]);
        let r = rank(&base);
        for _ in 0..20 {
            let mut rp: Vec<usize> = (0..base.rows()).collect();
            let mut cp: Vec<usize> = (0..base.cols()).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let p = Matrix::from_fn(base.rows(), base.cols(), |i, j| base[(rp[i], cp[j])].clone());
            assert_eq!(rank(&p), r);
        }
    }

    #[test]
    fn invertible_composite_has_invertible_factors() {
        let f = q(&[&[1, 0], &[0, 2]]);
        let g = q(&[&[1, 0], &[0, 1]]);
        assert_eq!(composite_factors_invertible(&f, &g), Some(true));
        let z = q(&[&[1, 0], &[0, 0]]);
        assert_eq!(composite_factors_invertible(&z, &g), None);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, v) in small_matrix()) {
            let m = Matrix::<Q>::from_fn(r, c, |i, j| Q::from_i64(v[i * c + j]));
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), c);
            for v in &k {
                prop_assert!(m.apply(v).iter().all(Field::is_zero));
            }
            let mp = Matrix::<F3>::from_fn(r, c, |i, j| F3::from_i64(v[i * c + j]));
            prop_assert_eq!(rank(&mp) + kernel_basis(&mp).len(), c);
        }

        #[test]
        fn projection_annihilates_relations((r, c, v) in small_matrix()) {
            let m = Matrix::<Q>::from_fn(r, c, |i, j| Q::from_i64(v[i * c + j]));
            let qs = quotient_space(c, &m.row_vectors());
            prop_assert_eq!(qs.dim, c - rank(&m));
            for row in m.row_vectors() {
                prop_assert!(qs.projection.apply(&row).iter().all(Field::is_zero));
            }
        }
    }
}
