//! Tangential-structure data: spherophilia, 2-framing integers, holonomy and
//! component counts for dimensional reduction along a circle.
//!
//! Homotopy groups are supplied as data; nothing here computes them.

use std::fmt;

use crate::bord2::Elementary;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1F {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Pi1F {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1F::Finite(n) => write!(f, "{n}"),
            Pi1F::Infinite => f.write_str("inf"),
        }
    }
}

/// Data of one component of `X` for `ξ: X → BO(d)` with homotopy fiber `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureComponent {
    pub name: String,
    pub pi1_f: Pi1F,
    /// The image of `π₂X` in `π₂BO(2) ≅ Z` is `pi2_generator · Z`. For `d ≥ 3`
    /// only its parity is read: odd means `π₂X → π₂BO(d) ≅ Z/2` is onto.
    pub pi2_generator: u64,
    /// Order of the image of `π₂BO(d)` in `π₁F`; 1 or 2.
    pub pi2_bod_image_order: u64,
}

impl StructureComponent {
    pub fn new(name: impl Into<String>, pi1_f: Pi1F, pi2_generator: u64, pi2_bod_image_order: u64) -> Result<Self> {
        let c = StructureComponent { name: name.into(), pi1_f, pi2_generator, pi2_bod_image_order };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        if !matches!(self.pi2_bod_image_order, 1 | 2) {
            return Err(Error::DataInconsistency(format!("{}: image order must be 1 or 2", self.name)));
        }
        if let Pi1F::Finite(n) = self.pi1_f {
            if n == 0 || n % self.pi2_bod_image_order != 0 {
                return Err(Error::DataInconsistency(format!("{}: image order {} does not divide |π₁F| = {n}", self.name, self.pi2_bod_image_order)));
            }
        }
        Ok(())
    }

    pub fn pi2_onto_z2(&self) -> bool {
        self.pi2_generator % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentialStructureData {
    pub d: u32,
    pub components: Vec<StructureComponent>,
}

/// Spherophilic iff the image `g·Z` contains `2Z`, i.e. `g ∈ {1, 2}`.
pub fn generator_is_spherophilic(g: u64) -> bool {
    g == 1 || g == 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherophiliaReport {
    pub per_component: Vec<(String, bool)>,
}

impl SpherophiliaReport {
    pub fn all(&self) -> bool {
        self.per_component.iter().all(|c| c.1)
    }
}

pub fn spherophilic(t: &TangentialStructureData) -> Result<SpherophiliaReport> {
    if t.d != 2 {
        return Err(Error::Precondition(format!("spherophilia is decided on d = 2 data, got d = {}", t.d)));
    }
    Ok(SpherophiliaReport { per_component: t.components.iter().map(|c| (c.name.clone(), generator_is_spherophilic(c.pi2_generator))).collect() })
}

/// Pulls a `d ≥ 3` structure back to dimension 2. The generator becomes 1
/// when `π₂X → Z/2` is onto and 2 otherwise.
pub fn restrict_to_dim2(t: &TangentialStructureData, pi2x_onto_z2: &[bool]) -> Result<TangentialStructureData> {
    if t.d < 3 {
        return Err(Error::Precondition(format!("restriction needs d ≥ 3, got d = {}", t.d)));
    }
    if pi2x_onto_z2.len() != t.components.len() {
        return Err(Error::Arity(format!("{} flags for {} components", pi2x_onto_z2.len(), t.components.len())));
    }
    let components = t
        .components
        .iter()
        .zip(pi2x_onto_z2)
        .map(|(c, &onto)| StructureComponent { pi2_generator: if onto { 1 } else { 2 }, pi2_bod_image_order: 1, ..c.clone() })
        .collect();
    Ok(TangentialStructureData { d: 2, components })
}

/// Restriction using each component's own parity flag.
pub fn restrict_to_dim2_from_data(t: &TangentialStructureData) -> Result<TangentialStructureData> {
    let flags: Vec<bool> = t.components.iter().map(StructureComponent::pi2_onto_z2).collect();
    restrict_to_dim2(t, &flags)
}

/// The 2-framed circle `θ_k`; `θ₀` is the Lie group framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FramedCircle {
    pub k: i64,
}

impl FramedCircle {
    pub const LIE: FramedCircle = FramedCircle { k: 0 };
}

/// Product framing on `T^{d-1}`, one integer per circle factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedTorus {
    pub factors: Vec<i64>,
}

impl FramedTorus {
    /// `θ_{+1} × θ_Lie × ... × θ_Lie` on `T^{d-1}`.
    pub fn bounding_times_lie(d: usize) -> Self {
        assert!(d >= 2);
        let mut factors = vec![0; d - 1];
        factors[0] = 1;
        FramedTorus { factors }
    }
}

/// Framing induced on the boundary of a disk: `+1` for the cup, `-1` for the cap.
pub fn boundary_framing(piece: Elementary) -> Option<FramedCircle> {
    match piece {
        Elementary::Cup => Some(FramedCircle { k: 1 }),
        Elementary::Cap => Some(FramedCircle { k: -1 }),
        _ => None,
    }
}

/// Components of `X_{S¹}` over each component of `X`: `|π₁F|` each.
pub fn pi0_total_reduction_s1(t: &TangentialStructureData) -> Result<Vec<u64>> {
    t.components
        .iter()
        .map(|c| match c.pi1_f {
            Pi1F::Finite(n) => Ok(n),
            Pi1F::Infinite => Err(Error::Unsupported(format!("{}: π₁F is infinite", c.name))),
        })
        .collect()
}

/// Components of the null-holonomic part: the order of `im(π₂BO(d) → π₁F)`.
pub fn pi0_nullholonomic_reduction_s1(t: &TangentialStructureData) -> Result<Vec<u64>> {
    if t.d < 3 {
        return Err(Error::Precondition(format!("null-holonomic reduction needs d ≥ 3, got d = {}", t.d)));
    }
    Ok(t.components.iter().map(|c| c.pi2_bod_image_order).collect())
}

/// `Z^r × Π Z/n_i`, written as moduli with 0 for a free factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub moduli: Vec<u64>,
}

impl AbelianGroup {
    /// Reads `Z x Z/2 x Z/3`-style presentations; `1` is the trivial group.
    /// Anything else (for instance `S3`) is rejected: holonomy classes are only
    /// modelled for abelian groups.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(AbelianGroup { moduli: vec![] });
        }
        let moduli = s
            .split(['x', '×'])
            .map(|f| {
                let f = f.trim();
                if f == "Z" {
                    Ok(0)
                } else if let Some(n) = f.strip_prefix("Z/") {
                    n.parse::<u64>().ok().filter(|&n| n > 0).ok_or_else(|| Error::Config(format!("bad cyclic factor `{f}`")))
                } else {
                    Err(Error::Unsupported(format!("`{f}` is not a finitely generated abelian factor")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(AbelianGroup { moduli })
    }

    pub fn normalize(&self, g: &[i64]) -> Result<Vec<i64>> {
        if g.len() != self.moduli.len() {
            return Err(Error::Arity(format!("element has {} coordinates, group has {}", g.len(), self.moduli.len())));
        }
        Ok(g.iter().zip(&self.moduli).map(|(&x, &m)| if m == 0 { x } else { x.rem_euclid(m as i64) }).collect())
    }

    pub fn inverse(&self, g: &[i64]) -> Result<Vec<i64>> {
        self.normalize(&g.iter().map(|x| -x).collect::<Vec<_>>())
    }
}

/// The unordered pair `{g, g⁻¹}`, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HolonomyClass {
    pub elements: Vec<Vec<i64>>,
}

impl HolonomyClass {
    pub fn is_null(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].iter().all(|&x| x == 0)
    }
}

pub fn holonomy(group: &AbelianGroup, loop_image: &[i64]) -> Result<HolonomyClass> {
    let g = group.normalize(loop_image)?;
    let h = group.inverse(&g)?;
    let mut elements = vec![g, h];
    elements.sort();
    elements.dedup();
    Ok(HolonomyClass { elements })
}

/// Whether every structure pulled back along `M × −` is spherophilic, which
/// happens exactly when `χ(M)` is even.
pub fn chi_even_spherophilia(chi: i64) -> bool {
    chi % 2 == 0
}

/// Reference generators of `π₂X → π₂BO(2)` for common 2-dimensional structures.
pub fn reference_structures() -> Vec<(&'static str, u64)> {
    vec![("orientation", 1), ("spin", 2), ("stable framing", 2), ("tangential 2-framing", 0)]
}

/// Reads the structure format:
///
/// ```text
/// d 3
/// component spin pi1F=2 pi2gen=2 pi2BOdimg=2
/// ```
pub fn parse_structure(text: &str, file: &str) -> Result<TangentialStructureData> {
    let mut d = None;
    let mut components = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "d" => d = Some(words.next().and_then(|w| w.parse::<u32>().ok()).ok_or_else(|| Error::parse(file, ln, "expected `d <int>`"))?),
            "component" => {
                let name = words.next().ok_or_else(|| Error::parse(file, ln, "missing component name"))?;
                let (mut pi1, mut gen, mut img) = (None, None, None);
                for w in words {
                    let (k, v) = w.split_once('=').ok_or_else(|| Error::parse(file, ln, format!("expected key=value, got `{w}`")))?;
                    let bad = || Error::parse(file, ln, format!("bad value `{v}` for {k}"));
                    match k {
                        "pi1F" => pi1 = Some(if v == "inf" { Pi1F::Infinite } else { Pi1F::Finite(v.parse().map_err(|_| bad())?) }),
                        "pi2gen" => gen = Some(v.parse().map_err(|_| bad())?),
                        "pi2BOdimg" => img = Some(v.parse().map_err(|_| bad())?),
                        _ => return Err(Error::parse(file, ln, format!("unknown key `{k}`"))),
                    }
                }
                let pi1 = pi1.ok_or_else(|| Error::parse(file, ln, "missing pi1F"))?;
                let gen = gen.ok_or_else(|| Error::parse(file, ln, "missing pi2gen"))?;
                let c = StructureComponent::new(name, pi1, gen, img.unwrap_or(1)).map_err(|e| Error::parse(file, ln, e.to_string()))?;
                components.push(c);
            }
            other => return Err(Error::parse(file, ln, format!("unknown keyword `{other}`"))),
        }
    }
    let d = d.ok_or_else(|| Error::parse(file, text.lines().count().max(1), "missing `d` line"))?;
    Ok(TangentialStructureData { d, components })
}
