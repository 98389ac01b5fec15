use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, Matrix, Quotient, quotient_from_basis};

/// A finite-dimensional `L`–`R` bimodule.
///
/// Only the generators of each algebra have stored action matrices. Right
/// actions are stored as matrices of `m ↦ m·g`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub left: Arc<Algebra<F>>,
    pub right: Arc<Algebra<F>>,
    pub dim: usize,
    pub left_action: Vec<Matrix<F>>,
    pub right_action: Vec<Matrix<F>>,
}

fn same_algebra<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> bool {
    a.dim() == b.dim() && a.name() == b.name() && a.generators().len() == b.generators().len()
}

impl<F: Field> Bimodule<F> {
    /// `A` over itself on both sides.
    pub fn regular(a: Arc<Algebra<F>>) -> Self {
        let left_action = a.generators().iter().map(|g| a.left_mult(g)).collect();
        let right_action = a.generators().iter().map(|g| a.right_mult(g)).collect();
        Bimodule { dim: a.dim(), left: a.clone(), right: a, left_action, right_action }
    }

    /// Actions commute and have the right shapes.
    pub fn is_valid(&self) -> bool {
        let shape = |m: &Matrix<F>| m.rows() == self.dim && m.cols() == self.dim;
        self.left_action.len() == self.left.generators().len()
            && self.right_action.len() == self.right.generators().len()
            && self.left_action.iter().chain(&self.right_action).all(shape)
            && self.left_action.iter().all(|l| self.right_action.iter().all(|r| l.mul(r) == r.mul(l)))
    }
}

/// `M ⊗_B N` together with the quotient data used to build it.
#[derive(Clone, Debug)]
pub struct TensorProduct<F: Field> {
    pub bimodule: Bimodule<F>,
    /// Ambient index of `m_i ⊗ n_j` is `i * dim(N) + j`.
    pub quotient: Quotient<F>,
    pub outer_dims: (usize, usize),
}

/// Coequalizer of the two `B`-actions on `M ⊗ N`.
///
/// Relations `m·g ⊗ n − m ⊗ g·n` are imposed for generators `g` of `B` only,
/// which spans the same subspace as imposing them for every element.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorProduct<F>> {
    if !same_algebra(&m.right, &n.left) {
        return Err(Error::Arity(format!("right algebra {} does not match left algebra {}", m.right.name(), n.left.name())));
    }
    let (dm, dn) = (m.dim, n.dim);
    let ambient = dm * dn;
    let mut rel = EchelonBasis::new(ambient);
    for (r, l) in m.right_action.iter().zip(&n.left_action) {
        for i in 0..dm {
            for j in 0..dn {
                let mut v = vec![F::zero(); ambient];
                for p in 0..dm {
                    let c = &r[(p, i)];
                    if !c.is_zero() {
                        v[p * dn + j] = v[p * dn + j].clone() + c.clone();
                    }
                }
                for q in 0..dn {
                    let c = &l[(q, j)];
                    if !c.is_zero() {
                        v[i * dn + q] = v[i * dn + q].clone() - c.clone();
                    }
                }
                rel.insert(v);
            }
        }
    }
    let quotient = quotient_from_basis(rel);
    let induce = |amb: Matrix<F>| quotient.projection.mul(&amb).mul(&quotient.section);
    let left_action = m.left_action.iter().map(|l| induce(l.kron(&Matrix::identity(dn)))).collect();
    let right_action = n.right_action.iter().map(|r| induce(Matrix::identity(dm).kron(r))).collect();
    let bimodule = Bimodule { left: m.left.clone(), right: n.right.clone(), dim: quotient.dim, left_action, right_action };
    Ok(TensorProduct { bimodule, quotient, outer_dims: (dm, dn) })
}

impl<F: Field> TensorProduct<F> {
    /// Descends an ambient map `M ⊗ N → target-ambient` through both quotients.
    pub fn descend(&self, ambient_map: &Matrix<F>, target: &Quotient<F>) -> Matrix<F> {
        target.projection.mul(ambient_map).mul(&self.quotient.section)
    }
}

/// A linear map between bimodules with the same outer algebras.
#[derive(Clone, Debug)]
pub struct BimoduleMap<F: Field> {
    pub source: Bimodule<F>,
    pub target: Bimodule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> BimoduleMap<F> {
    pub fn new(source: Bimodule<F>, target: Bimodule<F>, matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::Arity(format!("{}x{} matrix between dims {} and {}", matrix.rows(), matrix.cols(), source.dim, target.dim)));
        }
        if !same_algebra(&source.left, &target.left) || !same_algebra(&source.right, &target.right) {
            return Err(Error::Arity("outer algebras differ".into()));
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    /// Commutes with every generator action on both sides.
    pub fn intertwines(&self) -> bool {
        let f = &self.matrix;
        let left = self.source.left_action.iter().zip(&self.target.left_action).all(|(s, t)| f.mul(s) == t.mul(f));
        left && self.source.right_action.iter().zip(&self.target.right_action).all(|(s, t)| f.mul(s) == t.mul(f))
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.target.dim != other.source.dim {
            return Err(Error::Arity("maps do not compose".into()));
        }
        Ok(BimoduleMap { source: self.source.clone(), target: other.target.clone(), matrix: other.matrix.mul(&self.matrix) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Q;

    #[test]
    fn tensor_over_unit_law() {
        for a in [Algebra::<Q>::matrix(2), Algebra::cyclic_group(3), Algebra::symmetric_group_3()] {
            let a = Arc::new(a);
            let reg = Bimodule::regular(a.clone());
            assert!(reg.is_valid());
            let t = tensor_over(&reg, &reg).unwrap();
            assert_eq!(t.bimodule.dim, a.dim());
            assert!(t.bimodule.is_valid());
        }
    }

    #[test]
    fn associativity_up_to_dimension() {
        let a = Arc::new(Algebra::<Q>::symmetric_group_3());
        let reg = Bimodule::regular(a);
        let left = tensor_over(&tensor_over(&reg, &reg).unwrap().bimodule, &reg).unwrap();
        let right = tensor_over(&reg, &tensor_over(&reg, &reg).unwrap().bimodule).unwrap();
        assert_eq!(left.bimodule.dim, right.bimodule.dim);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = Bimodule::regular(Arc::new(Algebra::<Q>::matrix(2)));
        let b = Bimodule::regular(Arc::new(Algebra::<Q>::cyclic_group(4)));
        assert!(tensor_over(&a, &b).is_err());
    }
}
