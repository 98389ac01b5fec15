//! Built-in algebra and bordism corpora, and field dispatch for file input.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{parse_algebra, Algebra, AlgebraFile, FieldTag};
use crate::azu::{symmetric_frobenius_form, torus_criterion_extended, CriterionReport};
use crate::bord2::{compose, tensor, Bordism2Canonical};
use crate::error::{Error, Result};
use crate::exactlin::{Field, F2, F3, F5, Q};
use crate::frob::{torus_counterexample_exhibit, FrobeniusAlgebra, TorusExhibit};
use crate::par::Exec;

/// An algebra over one of the supported fields.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Q(Algebra<Q>),
    F2(Algebra<F2>),
    F3(Algebra<F3>),
    F5(Algebra<F5>),
}

macro_rules! dispatch {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Q($a) => $body,
            AnyAlgebra::F2($a) => $body,
            AnyAlgebra::F3($a) => $body,
            AnyAlgebra::F5($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn name(&self) -> &str {
        dispatch!(self, a => a.name())
    }

    pub fn dim(&self) -> usize {
        dispatch!(self, a => a.dim())
    }

    pub fn field(&self) -> FieldTag {
        match self {
            AnyAlgebra::Q(_) => FieldTag::Q,
            AnyAlgebra::F2(_) => FieldTag::F2,
            AnyAlgebra::F3(_) => FieldTag::F3,
            AnyAlgebra::F5(_) => FieldTag::F5,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        dispatch!(self, a => a.violations())
    }

    pub fn center_dim(&self) -> usize {
        dispatch!(self, a => crate::azu::center(a).len())
    }

    pub fn circle_dim(&self) -> usize {
        dispatch!(self, a => crate::azu::circle_value(a).dim)
    }

    pub fn azumaya_rank(&self) -> usize {
        dispatch!(self, a => crate::azu::azumaya_map(a).rank())
    }

    pub fn criterion(&self) -> CriterionReport {
        dispatch!(self, a => torus_criterion_extended(a))
    }

    pub fn from_file(f: &AlgebraFile) -> Result<Self> {
        Ok(match f.field {
            FieldTag::Q => AnyAlgebra::Q(f.to_algebra()?),
            FieldTag::F2 => AnyAlgebra::F2(f.to_algebra()?),
            FieldTag::F3 => AnyAlgebra::F3(f.to_algebra()?),
            FieldTag::F5 => AnyAlgebra::F5(f.to_algebra()?),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_file(&parse_algebra(&text, &path.display().to_string())?)
    }

    /// Evaluates the torus as a commutative Frobenius theory, if this algebra is one.
    pub fn torus_exhibit(&self) -> Option<Result<TorusExhibit>> {
        fn go<F: Field>(a: &Algebra<F>) -> Option<Result<TorusExhibit>> {
            let f = frobenius(a)?;
            Some(torus_counterexample_exhibit(std::slice::from_ref(&f)).map(|mut v| v.remove(0)))
        }
        dispatch!(self, a => go(a))
    }
}

/// `a` with its symmetric form as counit, when commutative and Frobenius.
pub fn frobenius<F: Field>(a: &Algebra<F>) -> Option<FrobeniusAlgebra<F>> {
    if !a.is_commutative() {
        return None;
    }
    let form = symmetric_frobenius_form(a)?;
    let f = FrobeniusAlgebra::new(a.clone(), form);
    f.validate().is_valid().then_some(f)
}

fn over<F: Field>(wrap: fn(Algebra<F>) -> AnyAlgebra, matrix_sizes: &[usize], cyclic: &[usize], s3: bool) -> Vec<AnyAlgebra> {
    let mut out = vec![wrap(Algebra::ground())];
    out.extend(matrix_sizes.iter().map(|&n| wrap(Algebra::matrix(n))));
    out.extend(cyclic.iter().map(|&n| wrap(Algebra::cyclic_group(n))));
    if s3 {
        out.push(wrap(Algebra::symmetric_group_3()));
    }
    out
}

/// Separable algebras with symmetric Frobenius forms over Q, F2, F3 and F5.
///
/// Group algebras appear only when the characteristic does not divide the
/// group order.
pub fn builtin_corpus() -> Vec<AnyAlgebra> {
    let mut out = over::<Q>(AnyAlgebra::Q, &[2, 3], &[2, 3, 4, 5, 6], true);
    out.push(AnyAlgebra::Q(Algebra::quaternion_group()));
    let (k, m2, z2, z3) = (Algebra::<Q>::ground(), Algebra::<Q>::matrix(2), Algebra::<Q>::cyclic_group(2), Algebra::<Q>::cyclic_group(3));
    out.push(AnyAlgebra::Q(k.product(&k)));
    out.push(AnyAlgebra::Q(k.product(&m2)));
    out.push(AnyAlgebra::Q(m2.product(&m2)));
    out.push(AnyAlgebra::Q(z2.product(&z3)));
    out.extend(over::<F2>(AnyAlgebra::F2, &[2, 3], &[3, 5], false));
    out.extend(over::<F3>(AnyAlgebra::F3, &[2, 3], &[2, 4, 5], false));
    let m2f3 = Algebra::<F3>::matrix(2);
    out.push(AnyAlgebra::F3(Algebra::ground().product(&m2f3)));
    out.extend(over::<F5>(AnyAlgebra::F5, &[2, 3], &[2, 3, 4, 6], true));
    out
}

/// Algebras the harness must reject as ineligible.
pub fn builtin_ineligible() -> Vec<AnyAlgebra> {
    vec![
        AnyAlgebra::F2(Algebra::cyclic_group(2)),
        AnyAlgebra::F3(Algebra::cyclic_group(3)),
        AnyAlgebra::F5(Algebra::cyclic_group(5)),
        AnyAlgebra::F3(Algebra::symmetric_group_3()),
        AnyAlgebra::Q(Algebra::upper_triangular_2()),
    ]
}

pub fn filter_field(corpus: Vec<AnyAlgebra>, field: Option<FieldTag>) -> Vec<AnyAlgebra> {
    match field {
        None => corpus,
        Some(f) => corpus.into_iter().filter(|a| a.field() == f).collect(),
    }
}

/// Runs the theorem instance on every algebra, in input order.
pub fn run_harness(corpus: &[AnyAlgebra], exec: Exec) -> Vec<CriterionReport> {
    exec.map(corpus, AnyAlgebra::criterion)
}

/// Commutative Frobenius algebras over Q used by the non-extended checks.
pub fn frobenius_corpus_q() -> Vec<FrobeniusAlgebra<Q>> {
    let k = Algebra::<Q>::ground();
    let mut algs = vec![k.clone()];
    algs.extend((2..=6).map(Algebra::cyclic_group));
    algs.push(k.product(&k));
    algs.push(k.product(&k).product(&k));
    algs.push(Algebra::cyclic_group(2).product(&Algebra::cyclic_group(3)));
    algs.iter().filter_map(frobenius).collect()
}

/// Small bordisms with at most two circles on each side and genus at most one,
/// including permuted wirings and closed components.
pub fn bordism_corpus() -> Vec<Bordism2Canonical> {
    let mut out = Vec::new();
    for s in 0..=2 {
        for t in 0..=2 {
            for g in 0..=1 {
                if s + t > 0 {
                    out.push(Bordism2Canonical::single(s, t, g));
                }
            }
        }
    }
    let named = ["cylinder", "swap", "id:2", "cup", "cap"];
    let basic: Vec<_> = named.iter().map(|n| Bordism2Canonical::named(n).unwrap()).collect();
    out.extend(basic.iter().cloned());
    out.push(tensor(&Bordism2Canonical::cylinder(), &Bordism2Canonical::cup()));
    out.push(tensor(&Bordism2Canonical::cap(), &Bordism2Canonical::cylinder()));
    out.push(tensor(&Bordism2Canonical::cylinder(), &Bordism2Canonical::closed(1)));
    out.push(tensor(&Bordism2Canonical::single(1, 2, 0), &Bordism2Canonical::closed(0)));
    out.push(compose(&Bordism2Canonical::swap(), &Bordism2Canonical::pants()).unwrap());
    out.push(compose(&Bordism2Canonical::copants(), &Bordism2Canonical::swap()).unwrap());
    out.push(tensor(&Bordism2Canonical::single(1, 0, 1), &Bordism2Canonical::single(0, 1, 0)));
    out
}

/// Every composable pair `(b1, b2)` from `corpus`, shuffled with `seed` and
/// truncated to `limit`.
pub fn composable_pairs(corpus: &[Bordism2Canonical], seed: u64, limit: usize) -> Vec<(Bordism2Canonical, Bordism2Canonical)> {
    let mut pairs = Vec::new();
    for b1 in corpus {
        for b2 in corpus {
            if b1.target() == b2.source() {
                pairs.push((b1.clone(), b2.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(limit);
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_large_enough() {
        let c = builtin_corpus();
        assert!(c.iter().all(|a| a.violations().is_empty()));
        let core = c.iter().filter(|a| a.field() != FieldTag::F2).count();
        assert!(core >= 15, "{core}");
        assert!(c.iter().all(|a| a.dim() <= 9));
    }

    #[test]
    fn pairs_are_composable_and_deterministic() {
        let corpus = bordism_corpus();
        let a = composable_pairs(&corpus, 0, 150);
        assert!(a.len() >= 100);
        assert!(a.iter().all(|(x, y)| compose(x, y).is_ok()));
        assert_eq!(a, composable_pairs(&corpus, 0, 150));
    }

    #[test]
    fn frobenius_corpus_has_counterexamples() {
        let c = frobenius_corpus_q();
        let rows = torus_counterexample_exhibit(&c).unwrap();
        assert!(rows.iter().filter(|r| r.is_counterexample()).count() >= 3);
    }
}
