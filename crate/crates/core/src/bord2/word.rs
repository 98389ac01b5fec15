use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointSign {
    Positive,
    Negative,
}

/// Generators of the 1-morphism layer (intervals between points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneCell {
    /// Identity interval on `pt+`.
    PositivePoint,
    /// Identity interval on `pt-`.
    NegativePoint,
    /// `∅ -> pt+ ⊔ pt-`.
    LeftElbow,
    /// `pt+ ⊔ pt- -> ∅`.
    RightElbow,
    /// Identity on `pt+ ⊔ pt-`.
    IdentityInterval,
}

impl OneCell {
    pub fn source(self) -> &'static [PointSign] {
        use PointSign::*;
        match self {
            OneCell::PositivePoint => &[Positive],
            OneCell::NegativePoint => &[Negative],
            OneCell::LeftElbow => &[],
            OneCell::RightElbow | OneCell::IdentityInterval => &[Positive, Negative],
        }
    }

    pub fn target(self) -> &'static [PointSign] {
        use PointSign::*;
        match self {
            OneCell::PositivePoint => &[Positive],
            OneCell::NegativePoint => &[Negative],
            OneCell::RightElbow => &[],
            OneCell::LeftElbow | OneCell::IdentityInterval => &[Positive, Negative],
        }
    }
}

/// Generators of the 2-morphism layer.
///
/// Cup/saddle are the unit and counit of `LeftElbow ⊣ RightElbow`; co-saddle/cap
/// those of `RightElbow ⊣ LeftElbow`. `ElbowUnit` and `ElbowCounit` name the
/// latter pair from the elbows' point of view and evaluate identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoCell {
    Cup,
    Cap,
    Saddle,
    CoSaddle,
    Swap,
    ElbowUnit,
    ElbowCounit,
}

impl TwoCell {
    pub const ALL: [TwoCell; 7] =
        [TwoCell::Cup, TwoCell::Cap, TwoCell::Saddle, TwoCell::CoSaddle, TwoCell::Swap, TwoCell::ElbowUnit, TwoCell::ElbowCounit];

    pub fn source(self) -> &'static [OneCell] {
        use OneCell::*;
        match self {
            TwoCell::Cup => &[],
            TwoCell::Cap | TwoCell::ElbowCounit | TwoCell::Swap => &[LeftElbow, RightElbow],
            TwoCell::Saddle => &[RightElbow, LeftElbow],
            TwoCell::CoSaddle | TwoCell::ElbowUnit => &[IdentityInterval],
        }
    }

    pub fn target(self) -> &'static [OneCell] {
        use OneCell::*;
        match self {
            TwoCell::Cap | TwoCell::ElbowCounit => &[],
            TwoCell::Cup | TwoCell::Swap => &[LeftElbow, RightElbow],
            TwoCell::Saddle => &[IdentityInterval],
            TwoCell::CoSaddle | TwoCell::ElbowUnit => &[RightElbow, LeftElbow],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TwoCell::Cup => "cup",
            TwoCell::Cap => "cap",
            TwoCell::Saddle => "saddle",
            TwoCell::CoSaddle => "co-saddle",
            TwoCell::Swap => "swap",
            TwoCell::ElbowUnit => "elbow-unit",
            TwoCell::ElbowCounit => "elbow-counit",
        }
    }
}

/// A composable word of generators: horizontal for 1-cells, vertical for 2-cells.
/// Words are not normalized; equality is decided after evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorWord {
    OneMorphism(Vec<OneCell>),
    TwoMorphism(Vec<TwoCell>),
}

impl GeneratorWord {
    pub fn circle() -> Self {
        GeneratorWord::OneMorphism(vec![OneCell::LeftElbow, OneCell::RightElbow])
    }

    pub fn cell(c: TwoCell) -> Self {
        GeneratorWord::TwoMorphism(vec![c])
    }

    /// Checks that adjacent generators compose.
    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorWord::OneMorphism(cells) => {
                for w in cells.windows(2) {
                    if w[0].target() != w[1].source() {
                        return Err(Error::Arity(format!("{:?} does not compose with {:?}", w[0], w[1])));
                    }
                }
            }
            GeneratorWord::TwoMorphism(cells) => {
                for w in cells.windows(2) {
                    if w[0].target() != w[1].source() {
                        return Err(Error::Arity(format!("{} does not compose with {}", w[0].name(), w[1].name())));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        let w = match (self, other) {
            (GeneratorWord::OneMorphism(a), GeneratorWord::OneMorphism(b)) => {
                GeneratorWord::OneMorphism(a.iter().chain(b).copied().collect())
            }
            (GeneratorWord::TwoMorphism(a), GeneratorWord::TwoMorphism(b)) => {
                GeneratorWord::TwoMorphism(a.iter().chain(b).copied().collect())
            }
            _ => return Err(Error::Arity("cannot compose words of different layers".into())),
        };
        w.validate()?;
        Ok(w)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorWord::OneMorphism(c) => write!(f, "{c:?}"),
            GeneratorWord::TwoMorphism(c) => {
                let names: Vec<_> = c.iter().map(|x| x.name()).collect();
                write!(f, "[{}]", names.join(" ; "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_word_is_well_typed() {
        assert!(GeneratorWord::circle().validate().is_ok());
        let bad = GeneratorWord::OneMorphism(vec![OneCell::LeftElbow, OneCell::LeftElbow]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn saddle_and_cosaddle_compose_both_ways() {
        let s = GeneratorWord::cell(TwoCell::Saddle);
        let c = GeneratorWord::cell(TwoCell::CoSaddle);
        assert!(c.then(&s).is_ok());
        assert!(s.then(&c).is_ok());
        assert!(s.then(&s).is_err());
        assert!(GeneratorWord::cell(TwoCell::Cup).then(&GeneratorWord::cell(TwoCell::Cap)).is_ok());
        assert!(GeneratorWord::circle().then(&s).is_err());
    }
}
