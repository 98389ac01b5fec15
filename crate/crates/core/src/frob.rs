//! Non-extended 2D field theories from commutative Frobenius algebras.

use crate::algebra::{combine, Algebra};
use crate::bord2::{pants_decompose_with, Bordism2Canonical, Elementary, Layer, Strategy};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    pub counit: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<F: Field> FrobeniusAlgebra<F> {
    pub fn new(algebra: Algebra<F>, counit: Vec<F>) -> Self {
        assert_eq!(counit.len(), algebra.dim());
        FrobeniusAlgebra { algebra, counit }
    }

    /// Uses the algebra's attached form as counit.
    pub fn from_algebra(algebra: Algebra<F>) -> Option<Self> {
        let counit = algebra.form()?.to_vec();
        Some(FrobeniusAlgebra { algebra, counit })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `g_ij = ε(b_i b_j)`.
    pub fn pairing(&self) -> Matrix<F> {
        let a = &self.algebra;
        Matrix::from_fn(a.dim(), a.dim(), |i, j| a.basis_product(i, j).iter().fold(F::zero(), |acc, (k, c)| acc + c.clone() * self.counit[*k].clone()))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = self.algebra.violations();
        if !self.algebra.is_commutative() {
            violations.push("commutativity".into());
        }
        let r = self.pairing().rank();
        if r < self.dim() {
            violations.push(format!("pairing rank {r} < {}", self.dim()));
        }
        ValidationReport { violations }
    }

    /// Dual basis `b^i` as columns: `ε(b_i b^j) = δ_ij`.
    pub fn dual_basis(&self) -> Result<Vec<Vec<F>>> {
        let inv = self.pairing().inverse().ok_or_else(|| Error::Precondition("degenerate pairing".into()))?;
        Ok((0..self.dim()).map(|j| inv.column(j)).collect())
    }

    /// `x ↦ Σ_i x b_i b^i`.
    pub fn handle_operator(&self) -> Result<Matrix<F>> {
        let a = &self.algebra;
        let dual = self.dual_basis()?;
        let casimir = combine(a.dim(), (0..a.dim()).map(|i| (F::one(), a.mul(&a.basis(i), &dual[i]))));
        Ok(a.right_mult(&casimir))
    }

    /// `Δ(x) = Σ_i x b_i ⊗ b^i` as a `dim² × dim` matrix.
    pub fn comultiplication(&self) -> Result<Matrix<F>> {
        let a = &self.algebra;
        let n = a.dim();
        let dual = self.dual_basis()?;
        let cols: Vec<Vec<F>> = (0..n)
            .map(|x| {
                let mut v = vec![F::zero(); n * n];
                for (i, bi_dual) in dual.iter().enumerate() {
                    let xb = a.mul(&a.basis(x), &a.basis(i));
                    for (p, c) in xb.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (q, d) in bi_dual.iter().enumerate() {
                            v[p * n + q] = v[p * n + q].clone() + c.clone() * d.clone();
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Matrix::from_columns(&cols, n * n))
    }

    /// Scalar value of the closed genus-`g` surface, `ε(h^g(1))`.
    pub fn closed_surface(&self, g: u32) -> Result<F> {
        let h = self.handle_operator()?;
        let mut v = self.algebra.unit().to_vec();
        for _ in 0..g {
            v = h.apply(&v);
        }
        Ok(Algebra::eval_form(&self.counit, &v))
    }

    fn elementary(&self, e: Elementary, delta: &Matrix<F>) -> Matrix<F> {
        let a = &self.algebra;
        let n = a.dim();
        match e {
            Elementary::Cylinder => Matrix::identity(n),
            Elementary::Cup => Matrix::from_columns(&[a.unit().to_vec()], n),
            Elementary::Cap => Matrix::from_rows(std::slice::from_ref(&self.counit), n),
            Elementary::Pants => {
                let cols: Vec<Vec<F>> = (0..n * n).map(|p| a.mul(&a.basis(p / n), &a.basis(p % n))).collect();
                Matrix::from_columns(&cols, n)
            }
            Elementary::Copants => delta.clone(),
            Elementary::Swap => Matrix::from_fn(n * n, n * n, |r, c| if r == (c % n) * n + c / n { F::one() } else { F::zero() }),
        }
    }

    fn layer_matrix(&self, layer: &Layer, delta: &Matrix<F>) -> Matrix<F> {
        layer.0.iter().fold(Matrix::scalar(F::one()), |acc, &e| acc.kron(&self.elementary(e, delta)))
    }

    /// Composite of the layers' matrices, first layer applied first.
    pub fn evaluate_layers(&self, source: usize, layers: &[Layer]) -> Result<Matrix<F>> {
        let delta = self.comultiplication()?;
        let width = self.dim().pow(source as u32);
        Ok(layers.iter().fold(Matrix::identity(width), |acc, l| self.layer_matrix(l, &delta).mul(&acc)))
    }

    /// Linear map `A^{⊗m} → A^{⊗n}`; closed components enter as scalar factors.
    pub fn evaluate(&self, b: &Bordism2Canonical) -> Result<Matrix<F>> {
        self.evaluate_with(b, Strategy::Stacked)
    }

    pub fn evaluate_with(&self, b: &Bordism2Canonical, strategy: Strategy) -> Result<Matrix<F>> {
        let open = b.open_part();
        let layers = pants_decompose_with(&open, strategy);
        let m = self.evaluate_layers(open.source().circles, &layers)?;
        let mut scalar = F::one();
        for &g in b.closed_components() {
            scalar = scalar * self.closed_surface(g)?;
        }
        Ok(m.scale(&scalar))
    }

    /// True iff the theory is invertible; otherwise names a non-invertible value.
    pub fn is_invertible_theory(&self) -> Verdict {
        if self.dim() != 1 {
            return Verdict { invertible: false, witness: Some(format!("Z(S^1) = A has dimension {}", self.dim())) };
        }
        if self.counit[0].is_zero() {
            return Verdict { invertible: false, witness: Some("ε(1) = 0".into()) };
        }
        Verdict { invertible: true, witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub invertible: bool,
    pub witness: Option<String>,
}

/// One row of [`torus_counterexample_exhibit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusExhibit {
    pub name: String,
    pub torus: String,
    pub torus_invertible: bool,
    pub theory_invertible: bool,
}

impl TorusExhibit {
    /// Invertible torus scalar but non-invertible theory.
    pub fn is_counterexample(&self) -> bool {
        self.torus_invertible && !self.theory_invertible
    }
}

/// Evaluates the torus on each algebra and flags those whose torus value is an
/// invertible scalar although the theory is not invertible.
pub fn torus_counterexample_exhibit<F: Field>(corpus: &[FrobeniusAlgebra<F>]) -> Result<Vec<TorusExhibit>> {
    corpus
        .iter()
        .map(|a| {
            let t = a.closed_surface(1)?;
            Ok(TorusExhibit {
                name: a.algebra.name().to_string(),
                torus: t.to_string(),
                torus_invertible: !t.is_zero(),
                theory_invertible: a.is_invertible_theory().invertible,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bord2::compose;
    use crate::exactlin::{F2, Q};

    fn z2() -> FrobeniusAlgebra<Q> {
        FrobeniusAlgebra::new(Algebra::cyclic_group(2), vec![Q::from_i64(1), Q::from_i64(0)])
    }

    #[test]
    fn handle_operator_examples() {
        let lam = Q::from_i64(3);
        let k = FrobeniusAlgebra::new(Algebra::<Q>::ground(), vec![lam.clone()]);
        assert_eq!(k.handle_operator().unwrap(), Matrix::scalar(Field::inv(&lam).unwrap()));
        assert_eq!(z2().handle_operator().unwrap(), Matrix::identity(2).scale(&Q::from_i64(2)));
        let qq = FrobeniusAlgebra::new(Algebra::<Q>::ground().product(&Algebra::ground()), vec![Q::from_i64(1), Q::from_i64(1)]);
        assert!(qq.handle_operator().unwrap().is_identity());
    }

    #[test]
    fn validation_flags() {
        assert!(z2().validate().is_valid());
        let degenerate = FrobeniusAlgebra::new(Algebra::cyclic_group(2), vec![Q::from_i64(0), Q::from_i64(0)]);
        assert!(degenerate.validate().violations.iter().any(|v| v.contains("pairing")));
        // x² = y, xy = yx = x, y² = 1: (xx)y = 1 but x(xy) = y
        let text = "field Q\ndim 3\nmult 0 0 -> (0:1)\nmult 0 1 -> (1:1)\nmult 1 0 -> (1:1)\nmult 0 2 -> (2:1)\nmult 2 0 -> (2:1)\n\
                    mult 1 1 -> (2:1)\nmult 1 2 -> (1:1)\nmult 2 1 -> (1:1)\nmult 2 2 -> (0:1)\nunit (1,0,0)\n";
        let bad: Algebra<Q> = crate::algebra::parse_algebra(text, "t").unwrap().to_algebra().unwrap();
        let f = FrobeniusAlgebra::new(bad, vec![Q::from_i64(1), Q::from_i64(0), Q::from_i64(0)]);
        assert!(f.validate().violations.contains(&"associativity".to_string()));
        let text = "field Q\ndim 2\nmult 0 0 -> (0:1)\nmult 0 1 -> (1:1)\nmult 1 0 -> (1:1)\nmult 1 1 -> (1:1)\nunit (0,0)\n";
        let broken: Algebra<Q> = crate::algebra::parse_algebra(text, "t").unwrap().to_algebra().unwrap();
        let f = FrobeniusAlgebra::new(broken, vec![Q::from_i64(1), Q::from_i64(0)]);
        assert!(f.validate().violations.contains(&"unit".to_string()));
    }

    #[test]
    fn closed_surfaces_of_z2() {
        let a = z2();
        for g in 0..4u32 {
            let m = a.evaluate(&Bordism2Canonical::closed(g)).unwrap();
            assert_eq!(m, Matrix::scalar(Q::from_i64(1 << g)));
        }
    }

    #[test]
    fn cylinder_and_functoriality() {
        let a = z2();
        assert!(a.evaluate(&Bordism2Canonical::cylinder()).unwrap().is_identity());
        let (p, c) = (Bordism2Canonical::pants(), Bordism2Canonical::copants());
        let lhs = a.evaluate(&compose(&c, &p).unwrap()).unwrap();
        let rhs = a.evaluate(&p).unwrap().mul(&a.evaluate(&c).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invertibility_and_exhibit() {
        let k = FrobeniusAlgebra::new(Algebra::<Q>::ground(), vec![Q::from_i64(2)]);
        assert!(k.is_invertible_theory().invertible);
        assert!(!z2().is_invertible_theory().invertible);
        let f2z3 = FrobeniusAlgebra::new(Algebra::<F2>::cyclic_group(3), vec![F2::new(1), F2::new(0), F2::new(0)]);
        assert_eq!(f2z3.closed_surface(1).unwrap(), F2::new(1));
        let rows = torus_counterexample_exhibit(&[f2z3]).unwrap();
        assert!(rows[0].is_counterexample());
        let rows = torus_counterexample_exhibit(&[k]).unwrap();
        assert!(!rows[0].is_counterexample());
    }
}
