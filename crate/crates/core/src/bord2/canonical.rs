use std::fmt;

use crate::error::{Error, Result};

/// A disjoint union of `circles` circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedOneManifold {
    pub circles: usize,
}

/// A connected component that meets the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub genus: u32,
    /// Sorted source circle indices.
    pub ins: Vec<usize>,
    /// Sorted target circle indices.
    pub outs: Vec<usize>,
}

impl Component {
    pub fn new(genus: u32, mut ins: Vec<usize>, mut outs: Vec<usize>) -> Self {
        ins.sort_unstable();
        outs.sort_unstable();
        Component { genus, ins, outs }
    }

    pub fn boundary(&self) -> usize {
        self.ins.len() + self.outs.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary() as i64
    }
}

/// A compact oriented 2-bordism between closed 1-manifolds, up to diffeomorphism
/// rel boundary wiring.
///
/// Components are kept sorted by `(ins, outs)`, which is a total order since every
/// boundary index occurs exactly once; closed genera are sorted ascending. Two
/// values are therefore equal iff the bordisms are diffeomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bordism2Canonical {
    source: usize,
    target: usize,
    components: Vec<Component>,
    closed: Vec<u32>,
}

impl Bordism2Canonical {
    pub fn new(source: usize, target: usize, mut components: Vec<Component>, mut closed: Vec<u32>) -> Result<Self> {
        let mut seen_in = vec![false; source];
        let mut seen_out = vec![false; target];
        for c in &mut components {
            c.ins.sort_unstable();
            c.outs.sort_unstable();
            if c.ins.is_empty() && c.outs.is_empty() {
                return Err(Error::Arity("open component without boundary; list it as closed".into()));
            }
            for &i in &c.ins {
                match seen_in.get_mut(i) {
                    Some(s) if !*s => *s = true,
                    Some(_) => return Err(Error::Arity(format!("source circle {i} used twice"))),
                    None => return Err(Error::Arity(format!("source circle {i} out of range 0..{source}"))),
                }
            }
            for &o in &c.outs {
                match seen_out.get_mut(o) {
                    Some(s) if !*s => *s = true,
                    Some(_) => return Err(Error::Arity(format!("target circle {o} used twice"))),
                    None => return Err(Error::Arity(format!("target circle {o} out of range 0..{target}"))),
                }
            }
        }
        if let Some(i) = seen_in.iter().position(|s| !s) {
            return Err(Error::Arity(format!("source circle {i} not attached")));
        }
        if let Some(o) = seen_out.iter().position(|s| !s) {
            return Err(Error::Arity(format!("target circle {o} not attached")));
        }
        components.sort_by(|a, b| (&a.ins, &a.outs).cmp(&(&b.ins, &b.outs)));
        closed.sort_unstable();
        Ok(Bordism2Canonical { source, target, components, closed })
    }

    pub fn source(&self) -> ClosedOneManifold {
        ClosedOneManifold { circles: self.source }
    }

    pub fn target(&self) -> ClosedOneManifold {
        ClosedOneManifold { circles: self.target }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn closed_components(&self) -> &[u32] {
        &self.closed
    }

    pub fn open_part(&self) -> Self {
        Bordism2Canonical { closed: Vec::new(), ..self.clone() }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let open: i64 = self.components.iter().map(Component::euler_characteristic).sum();
        let closed: i64 = self.closed.iter().map(|&g| 2 - 2 * g as i64).sum();
        open + closed
    }

    pub fn is_empty(&self) -> bool {
        self.source == 0 && self.target == 0 && self.closed.is_empty()
    }

    // --- named bordisms ---

    pub fn empty() -> Self {
        Bordism2Canonical { source: 0, target: 0, components: vec![], closed: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        let components = (0..n).map(|i| Component::new(0, vec![i], vec![i])).collect();
        Bordism2Canonical { source: n, target: n, components, closed: vec![] }
    }

    pub fn cylinder() -> Self {
        Self::identity(1)
    }

    /// Disk read `0 -> 1`.
    pub fn cup() -> Self {
        Self::single(0, 1, 0)
    }

    /// Disk read `1 -> 0`.
    pub fn cap() -> Self {
        Self::single(1, 0, 0)
    }

    /// Pair of pants `2 -> 1`.
    pub fn pants() -> Self {
        Self::single(2, 1, 0)
    }

    /// Pair of pants `1 -> 2`.
    pub fn copants() -> Self {
        Self::single(1, 2, 0)
    }

    pub fn swap() -> Self {
        let components = vec![Component::new(0, vec![0], vec![1]), Component::new(0, vec![1], vec![0])];
        Bordism2Canonical { source: 2, target: 2, components, closed: vec![] }
    }

    /// Connected genus-`genus` surface with `source` incoming and `target` outgoing circles.
    pub fn single(source: usize, target: usize, genus: u32) -> Self {
        if source + target == 0 {
            return Self::closed(genus);
        }
        let c = Component::new(genus, (0..source).collect(), (0..target).collect());
        Bordism2Canonical { source, target, components: vec![c], closed: vec![] }
    }

    pub fn closed(genus: u32) -> Self {
        Bordism2Canonical { source: 0, target: 0, components: vec![], closed: vec![genus] }
    }

    pub fn closed_many(genera: &[u32]) -> Self {
        let mut closed = genera.to_vec();
        closed.sort_unstable();
        Bordism2Canonical { source: 0, target: 0, components: vec![], closed }
    }

    /// Looks up a named bordism: `cup`, `cap`, `pants`, `copants`, `cylinder`,
    /// `swap`, `empty`, `sphere`, `torus`, `genus:<g>`, `id:<n>`.
    pub fn named(name: &str) -> Option<Self> {
        let b = match name {
            "cup" => Self::cup(),
            "cap" => Self::cap(),
            "pants" => Self::pants(),
            "copants" => Self::copants(),
            "cylinder" => Self::cylinder(),
            "swap" => Self::swap(),
            "empty" => Self::empty(),
            "sphere" => Self::closed(0),
            "torus" => Self::closed(1),
            other => {
                if let Some(g) = other.strip_prefix("genus:") {
                    Self::closed(g.parse().ok()?)
                } else {
                    let n = other.strip_prefix("id:")?;
                    Self::identity(n.parse().ok()?)
                }
            }
        };
        Some(b)
    }
}

/// Glues `b2` after `b1` along `target(b1) = source(b2)`.
///
/// Components are merged with a union-find over the glued circles; the genus
/// of each merged piece follows from additivity of the Euler characteristic.
pub fn compose(b1: &Bordism2Canonical, b2: &Bordism2Canonical) -> Result<Bordism2Canonical> {
    if b1.target != b2.source {
        return Err(Error::Arity(format!("cannot glue {} outgoing circles to {} incoming", b1.target, b2.source)));
    }
    let k1 = b1.components.len();
    let n = k1 + b2.components.len();
    let mut uf = UnionFind::new(n);
    let mut owner_out = vec![usize::MAX; b1.target];
    for (ci, c) in b1.components.iter().enumerate() {
        for &o in &c.outs {
            owner_out[o] = ci;
        }
    }
    for (cj, c) in b2.components.iter().enumerate() {
        for &i in &c.ins {
            uf.union(owner_out[i], k1 + cj);
        }
    }

    let mut groups: Vec<(i64, Vec<usize>, Vec<usize>)> = vec![(0, vec![], vec![]); n];
    let mut used = vec![false; n];
    for (idx, c) in b1.components.iter().chain(&b2.components).enumerate() {
        let root = uf.find(idx);
        used[root] = true;
        let g = &mut groups[root];
        g.0 += c.euler_characteristic();
        if idx < k1 {
            g.1.extend(&c.ins);
        } else {
            g.2.extend(&c.outs);
        }
    }

    let mut components = Vec::new();
    let mut closed: Vec<u32> = b1.closed.iter().chain(&b2.closed).copied().collect();
    for (root, (chi, ins, outs)) in groups.into_iter().enumerate() {
        if !used[root] {
            continue;
        }
        let b = (ins.len() + outs.len()) as i64;
        let twice_genus = 2 - chi - b;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0, "orientable gluing has integral genus");
        let genus = (twice_genus / 2) as u32;
        if b == 0 {
            closed.push(genus);
        } else {
            components.push(Component::new(genus, ins, outs));
        }
    }
    Bordism2Canonical::new(b1.source, b2.target, components, closed)
}

/// Composes a nonempty chain left to right.
pub fn compose_all<'a>(items: impl IntoIterator<Item = &'a Bordism2Canonical>) -> Result<Option<Bordism2Canonical>> {
    let mut acc: Option<Bordism2Canonical> = None;
    for b in items {
        acc = Some(match acc {
            None => b.clone(),
            Some(a) => compose(&a, b)?,
        });
    }
    Ok(acc)
}

/// Disjoint union, `b2` placed after `b1` in both boundary orders.
pub fn tensor(b1: &Bordism2Canonical, b2: &Bordism2Canonical) -> Bordism2Canonical {
    let shifted = b2.components.iter().map(|c| {
        Component::new(c.genus, c.ins.iter().map(|i| i + b1.source).collect(), c.outs.iter().map(|o| o + b1.target).collect())
    });
    let components = b1.components.iter().cloned().chain(shifted).collect();
    let closed = b1.closed.iter().chain(&b2.closed).copied().collect();
    Bordism2Canonical::new(b1.source + b2.source, b1.target + b2.target, components, closed)
        .expect("disjoint union of valid bordisms is valid")
}

pub fn tensor_all<'a>(items: impl IntoIterator<Item = &'a Bordism2Canonical>) -> Bordism2Canonical {
    items.into_iter().fold(Bordism2Canonical::empty(), |acc, b| tensor(&acc, b))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl fmt::Display for Bordism2Canonical {
    /// One line per component: `g=<int> in=<idx,...> out=<idx,...>`, then `closed g=<int>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        for c in &self.components {
            writeln!(f, "g={} in={} out={}", c.genus, join(&c.ins), join(&c.outs))?;
        }
        for g in &self.closed {
            writeln!(f, "closed g={g}")?;
        }
        Ok(())
    }
}

/// Parses the line format written by `Display`.
///
/// Circle counts are inferred from the indices unless a `source <m> target <n>`
/// header line is present. `#` starts a comment.
pub fn parse_bordism(text: &str, file: &str) -> Result<Bordism2Canonical> {
    let mut header: Option<(usize, usize)> = None;
    let mut components = Vec::new();
    let mut closed = Vec::new();
    let parse_list = |s: &str, line: usize| -> Result<Vec<usize>> {
        if s.is_empty() {
            return Ok(vec![]);
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse(file, line, format!("bad index '{t}'"))))
            .collect()
    };
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "source" => {
                let (s, t) = match toks.as_slice() {
                    ["source", s, "target", t] => (s.parse(), t.parse()),
                    _ => return Err(Error::parse(file, line_no, "expected 'source <m> target <n>'")),
                };
                match (s, t) {
                    (Ok(s), Ok(t)) => header = Some((s, t)),
                    _ => return Err(Error::parse(file, line_no, "bad circle count")),
                }
            }
            "closed" => {
                let g = toks
                    .get(1)
                    .and_then(|t| t.strip_prefix("g="))
                    .and_then(|v| v.parse::<u32>().ok())
                    .ok_or_else(|| Error::parse(file, line_no, "expected 'closed g=<int>'"))?;
                closed.push(g);
            }
            _ => {
                let mut genus = None;
                let mut ins = None;
                let mut outs = None;
                for t in &toks {
                    if let Some(v) = t.strip_prefix("g=") {
                        genus = Some(v.parse::<u32>().map_err(|_| Error::parse(file, line_no, "bad genus"))?);
                    } else if let Some(v) = t.strip_prefix("in=") {
                        ins = Some(parse_list(v, line_no)?);
                    } else if let Some(v) = t.strip_prefix("out=") {
                        outs = Some(parse_list(v, line_no)?);
                    } else {
                        return Err(Error::parse(file, line_no, format!("unexpected token '{t}'")));
                    }
                }
                let genus = genus.ok_or_else(|| Error::parse(file, line_no, "missing g="))?;
                components.push(Component::new(genus, ins.unwrap_or_default(), outs.unwrap_or_default()));
            }
        }
    }
    let (source, target) = header.unwrap_or_else(|| {
        let s = components.iter().map(|c: &Component| c.ins.len()).sum();
        let t = components.iter().map(|c: &Component| c.outs.len()).sum();
        (s, t)
    });
    Bordism2Canonical::new(source, target, components, closed).map_err(|e| Error::parse(file, 0, e.to_string()))
}
