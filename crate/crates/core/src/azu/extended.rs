use std::sync::Arc;

use super::{gram, separability_idempotent, symmetric_frobenius_form, tensor_over, tensor_vec, Bimodule, BimoduleMap, Elbows, TensorProduct};
use crate::algebra::{combine, Algebra};
use crate::bord2::{GeneratorWord, OneCell, TwoCell};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Quotient};

/// Evaluation data for a separable algebra with a symmetric Frobenius form.
///
/// On 2-cells:
/// - cup `1 ↦ [z ⊗ 1]`, with `z` a solution of `Σ_i b^i z b_i = 1`;
/// - cap `[x ⊗ y] ↦ λ(xy)`;
/// - saddle `x ⊗ y ↦ Σ_i x b_i y ⊗ b^i` from `R ∘ L` to `A^e`;
/// - co-saddle `a ⊗ b ↦ Σ_i a b_i b ⊗ b^i` from `A^e` to `R ∘ L`;
/// - swap, the flip on the circle.
///
/// With these, `cap ∘ cup = λ(z)` is the sphere and `saddle ∘ co-saddle`
/// equals `λ(z)^{-1}` on Azumaya algebras. The form is rescaled to make the
/// sphere 1 whenever `λ(z)` has a square root in the field.
#[derive(Clone, Debug)]
pub struct ExtendedTheory<F: Field> {
    pub elbows: Elbows<F>,
    pub form: Vec<F>,
    /// `b^i`, with `λ(b_i b^j) = δ_ij`.
    pub dual: Vec<Vec<F>>,
    pub higman: Vec<F>,
    pub sphere: F,
    pub normalized: bool,
    pub separability: Vec<F>,
    circle: TensorProduct<F>,
    rl: TensorProduct<F>,
    interval: Bimodule<F>,
    empty: Bimodule<F>,
}

#[derive(Clone, Debug)]
pub enum Evaluation<F: Field> {
    Bimodule(Bimodule<F>),
    Map(BimoduleMap<F>),
}

fn identity_quotient<F: Field>(n: usize) -> Quotient<F> {
    Quotient { dim: n, projection: Matrix::identity(n), section: Matrix::identity(n) }
}

impl<F: Field> ExtendedTheory<F> {
    pub fn new(a: &Algebra<F>) -> Result<Self> {
        let separability = separability_idempotent(a).ok_or_else(|| Error::Precondition(format!("{} is not separable", a.name())))?;
        let form = symmetric_frobenius_form(a).ok_or_else(|| Error::Precondition(format!("{} has no symmetric Frobenius form", a.name())))?;
        let mut theory = Self::with_form(a, form, separability)?;
        if !theory.sphere.is_one() {
            if let Some(s) = theory.sphere.sqrt() {
                let form = theory.form.iter().map(|x| x.div(&s).expect("sphere is nonzero")).collect();
                let sep = theory.separability.clone();
                theory = Self::with_form(a, form, sep)?;
                theory.normalized = true;
            }
        }
        Ok(theory)
    }

    fn with_form(a: &Algebra<F>, form: Vec<F>, separability: Vec<F>) -> Result<Self> {
        let n = a.dim();
        let inv = gram(a, &form).inverse().ok_or_else(|| Error::Precondition("degenerate form".into()))?;
        let dual: Vec<Vec<F>> = (0..n).map(|j| inv.column(j)).collect();
        // τ(z) = Σ_i b^i z b_i
        let tau_cols: Vec<Vec<F>> = (0..n)
            .map(|j| combine(n, (0..n).map(|i| (F::one(), a.mul(&a.mul(&dual[i], &a.basis(j)), &a.basis(i))))))
            .collect();
        let higman = Matrix::from_columns(&tau_cols, n)
            .solve(a.unit())
            .ok_or_else(|| Error::Precondition(format!("no z with Σ b^i z b_i = 1 in {}", a.name())))?;
        let sphere = Algebra::eval_form(&form, &higman);
        if sphere.is_zero() {
            return Err(Error::Precondition("sphere evaluates to zero".into()));
        }
        let elbows = Elbows::new(a);
        let circle = elbows.circle();
        let rl = tensor_over(&elbows.right, &elbows.left)?;
        let interval = Bimodule::regular(elbows.enveloping.clone());
        let empty = Bimodule::regular(elbows.ground.clone());
        Ok(ExtendedTheory { elbows, form, dual, higman, sphere, normalized: false, separability, circle, rl, interval, empty })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.elbows.algebra
    }

    pub fn one_cell(&self, c: OneCell) -> Bimodule<F> {
        match c {
            OneCell::PositivePoint => Bimodule::regular(self.elbows.algebra.clone()),
            OneCell::NegativePoint => Bimodule::regular(self.elbows.opposite.clone()),
            OneCell::LeftElbow => self.elbows.left.clone(),
            OneCell::RightElbow => self.elbows.right.clone(),
            OneCell::IdentityInterval => self.interval.clone(),
        }
    }

    pub fn one_word(&self, cells: &[OneCell]) -> Result<Bimodule<F>> {
        GeneratorWord::OneMorphism(cells.to_vec()).validate()?;
        match cells {
            [] => Ok(self.empty.clone()),
            [OneCell::LeftElbow, OneCell::RightElbow] => Ok(self.circle.bimodule.clone()),
            [OneCell::RightElbow, OneCell::LeftElbow] => Ok(self.rl.bimodule.clone()),
            [first, rest @ ..] => rest.iter().try_fold(self.one_cell(*first), |acc, c| Ok(tensor_over(&acc, &self.one_cell(*c))?.bimodule)),
        }
    }

    fn endpoint(&self, cells: &[OneCell]) -> (Bimodule<F>, Quotient<F>) {
        let n = self.algebra().dim();
        match cells {
            [] => (self.empty.clone(), identity_quotient(1)),
            [OneCell::LeftElbow, OneCell::RightElbow] => (self.circle.bimodule.clone(), self.circle.quotient.clone()),
            [OneCell::RightElbow, OneCell::LeftElbow] => (self.rl.bimodule.clone(), self.rl.quotient.clone()),
            [OneCell::IdentityInterval] => (self.interval.clone(), identity_quotient(n * n)),
            other => unreachable!("no generator 2-cell has boundary {other:?}"),
        }
    }

    /// `Σ_k b_i b_k b_j ⊗ b^k`.
    fn sandwich(&self, i: usize, j: usize) -> Vec<F> {
        let a = self.algebra();
        let n = a.dim();
        let mut out = vec![F::zero(); n * n];
        for k in 0..n {
            let left = a.mul(&a.mul(&a.basis(i), &a.basis(k)), &a.basis(j));
            for (p, v) in tensor_vec(&left, &self.dual[k]).into_iter().enumerate() {
                if !v.is_zero() {
                    out[p] = out[p].clone() + v;
                }
            }
        }
        out
    }

    /// Ambient matrix of a 2-cell, before passing to quotients.
    fn ambient(&self, c: TwoCell) -> Matrix<F> {
        let a = self.algebra();
        let n = a.dim();
        match c {
            TwoCell::Cup => Matrix::from_columns(&[tensor_vec(&self.higman, a.unit())], n * n),
            TwoCell::Cap | TwoCell::ElbowCounit => {
                let row: Vec<F> = (0..n * n).map(|p| Algebra::eval_form(&self.form, &a.mul(&a.basis(p / n), &a.basis(p % n)))).collect();
                Matrix::from_rows(&[row], n * n)
            }
            TwoCell::Saddle | TwoCell::CoSaddle | TwoCell::ElbowUnit => {
                let cols: Vec<Vec<F>> = (0..n * n).map(|p| self.sandwich(p / n, p % n)).collect();
                Matrix::from_columns(&cols, n * n)
            }
            TwoCell::Swap => Matrix::from_fn(n * n, n * n, |r, col| if r == (col % n) * n + col / n { F::one() } else { F::zero() }),
        }
    }

    pub fn two_cell(&self, c: TwoCell) -> BimoduleMap<F> {
        let (src, src_q) = self.endpoint(c.source());
        let (tgt, tgt_q) = self.endpoint(c.target());
        let matrix = tgt_q.projection.mul(&self.ambient(c)).mul(&src_q.section);
        BimoduleMap { source: src, target: tgt, matrix }
    }
}

/// Evaluates a 1-word to a bimodule or a 2-word to a bimodule map.
pub fn evaluate_extended<F: Field>(theory: &ExtendedTheory<F>, w: &GeneratorWord) -> Result<Evaluation<F>> {
    w.validate()?;
    match w {
        GeneratorWord::OneMorphism(cells) => Ok(Evaluation::Bimodule(theory.one_word(cells)?)),
        GeneratorWord::TwoMorphism(cells) => {
            let (first, rest) = cells.split_first().ok_or_else(|| Error::Arity("empty 2-word has no boundary".into()))?;
            let mut acc = theory.two_cell(*first);
            for c in rest {
                acc = acc.then(&theory.two_cell(*c))?;
            }
            Ok(Evaluation::Map(acc))
        }
    }
}
