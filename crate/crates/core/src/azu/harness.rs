use std::fmt;

use super::{azumaya_map, center, circle_value, ExtendedTheory};
use crate::algebra::Algebra;
use crate::bord2::TwoCell;
use crate::error::Error;
use crate::exactlin::{composite_factors_invertible, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eligibility {
    Eligible,
    Ineligible(String),
}

/// Outcome of the circle/Azumaya/saddle biconditional on one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub center: usize,
    pub circle: usize,
    pub azumaya_rank: usize,
    pub eligibility: Eligibility,
    pub saddle_invertible: Option<bool>,
    pub generators_invertible: Option<bool>,
    pub intertwiners: Option<bool>,
    /// `saddle ∘ co-saddle` and `co-saddle ∘ saddle` both equal the identity.
    pub composite_identity: Option<bool>,
    /// The same composites equal `Z(S²)^{-1}` times the identity.
    pub composite_scaled: Option<bool>,
    /// Whenever an evaluated composite is invertible, so are its factors.
    pub factors_of_invertible: Option<bool>,
    pub normalized: Option<bool>,
}

impl CriterionReport {
    pub fn is_azumaya(&self) -> bool {
        self.azumaya_rank == self.dim * self.dim
    }

    pub fn is_eligible(&self) -> bool {
        self.eligibility == Eligibility::Eligible
    }

    /// circle dim 1 ⇔ Azumaya ⇔ every generator 2-cell invertible, plus the
    /// side conditions that must hold on any eligible algebra.
    pub fn consistent(&self) -> bool {
        if !self.is_eligible() {
            return true;
        }
        let circle_one = self.circle == 1;
        let gens = self.generators_invertible == Some(true);
        let law_ok = !self.is_azumaya() || self.composite_scaled == Some(true);
        let echo_ok = !self.is_azumaya() || self.factors_of_invertible == Some(true);
        circle_one == self.is_azumaya()
            && self.is_azumaya() == gens
            && self.circle == self.center
            && self.intertwiners == Some(true)
            && law_ok
            && echo_ok
    }

    pub fn verdict(&self) -> String {
        match &self.eligibility {
            Eligibility::Ineligible(why) => format!("ineligible: {why}"),
            Eligibility::Eligible if self.consistent() => "ok".into(),
            Eligibility::Eligible => "VIOLATION".into(),
        }
    }
}

impl fmt::Display for CriterionReport {
    /// `name dim center circle azumaya saddle verdict`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let saddle = match self.saddle_invertible {
            Some(true) => "invertible",
            Some(false) => "singular",
            None => "-",
        };
        let n2 = self.dim * self.dim;
        write!(f, "{} {} {} {} {}/{} {} {}", self.name, self.dim, self.center, self.circle, self.azumaya_rank, n2, saddle, self.verdict())
    }
}

/// Runs the base-case theorem instance on one algebra.
///
/// Algebras that are not separable or carry no symmetric Frobenius form are
/// reported as ineligible rather than counted as failures.
pub fn torus_criterion_extended<F: Field>(a: &Algebra<F>) -> CriterionReport {
    let mut report = CriterionReport {
        name: a.name().to_string(),
        field: F::tag(),
        dim: a.dim(),
        center: center(a).len(),
        circle: circle_value(a).dim,
        azumaya_rank: azumaya_map(a).rank(),
        eligibility: Eligibility::Eligible,
        saddle_invertible: None,
        generators_invertible: None,
        intertwiners: None,
        composite_identity: None,
        composite_scaled: None,
        factors_of_invertible: None,
        normalized: None,
    };
    let theory = match ExtendedTheory::new(a) {
        Ok(t) => t,
        Err(Error::Precondition(msg)) => {
            let why = if msg.contains("not separable") {
                "not separable".to_string()
            } else if msg.contains("symmetric Frobenius") {
                "no symmetric Frobenius form".to_string()
            } else {
                msg
            };
            report.eligibility = Eligibility::Ineligible(why);
            return report;
        }
        Err(e) => {
            report.eligibility = Eligibility::Ineligible(e.to_string());
            return report;
        }
    };
    let cells: Vec<_> = TwoCell::ALL.iter().map(|&c| (c, theory.two_cell(c))).collect();
    let get = |c: TwoCell| &cells.iter().find(|(d, _)| *d == c).unwrap().1;
    let (saddle, cosaddle, cup, cap) = (get(TwoCell::Saddle), get(TwoCell::CoSaddle), get(TwoCell::Cup), get(TwoCell::Cap));
    report.saddle_invertible = Some(saddle.is_invertible());
    report.generators_invertible = Some(cells.iter().all(|(_, m)| m.is_invertible()));
    report.intertwiners = Some(cells.iter().all(|(_, m)| m.intertwines()));
    report.normalized = Some(theory.normalized);

    let sc = saddle.matrix.mul(&cosaddle.matrix);
    let cs = cosaddle.matrix.mul(&saddle.matrix);
    report.composite_identity = Some(sc.is_identity() && cs.is_identity());
    report.composite_scaled = Some(sc.scale(&theory.sphere).is_identity() && cs.scale(&theory.sphere).is_identity());

    if report.is_azumaya() {
        let pairs = [(&cosaddle.matrix, &saddle.matrix), (&saddle.matrix, &cosaddle.matrix), (&cup.matrix, &cap.matrix), (&cap.matrix, &cup.matrix)];
        let ok = pairs.iter().all(|(f, g)| g.cols() != f.rows() || composite_factors_invertible(f, g).unwrap_or(true));
        report.factors_of_invertible = Some(ok);
    }
    report
}
