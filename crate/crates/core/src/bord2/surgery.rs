use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::canonical::{compose, tensor_all, Bordism2Canonical, Component};
use crate::error::{Error, Result};

pub const DEFAULT_GENUS_CAP: u32 = 8;

/// A closed oriented surface, recorded as the sorted multiset of component genera.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceState(Vec<u32>);

impl SurfaceState {
    pub fn new(mut genera: Vec<u32>) -> Self {
        genera.sort_unstable();
        SurfaceState(genera)
    }

    pub fn genera(&self) -> &[u32] {
        &self.0
    }

    pub fn total_genus(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().map(|&g| 2 - 2 * g as i64).sum()
    }

    pub fn as_bordism(&self) -> Bordism2Canonical {
        Bordism2Canonical::closed_many(&self.0)
    }

    /// Parses `{g1,g2,...}`; braces optional, `{}` is the empty surface.
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Some(SurfaceState(vec![]));
        }
        let genera: Option<Vec<u32>> = inner.split(',').map(|t| t.trim().parse().ok()).collect();
        genera.map(SurfaceState::new)
    }
}

impl fmt::Display for SurfaceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Surgery along an embedded `S^0 x D^2` (zero-moves) or `S^1 x D^1` (one-moves).
/// Component indices refer to positions in the sorted genus list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurgeryMove {
    /// Both feet of the 0-handle on one component: adds a handle.
    ZeroInternal { component: usize },
    /// 0-handle joining two components: connected sum.
    ZeroJoin { a: usize, b: usize },
    /// Cut along a nonseparating curve and cap: removes a handle.
    OneNonseparating { component: usize },
    /// Cut along a separating curve splitting genus into `g1 + g2`.
    OneSeparating { component: usize, g1: u32, g2: u32 },
}

impl fmt::Display for SurgeryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryMove::ZeroInternal { component } => write!(f, "zero_internal({component})"),
            SurgeryMove::ZeroJoin { a, b } => write!(f, "zero_join({a},{b})"),
            SurgeryMove::OneNonseparating { component } => write!(f, "one_nonseparating({component})"),
            SurgeryMove::OneSeparating { component, g1, g2 } => write!(f, "one_separating({component},{g1}+{g2})"),
        }
    }
}

fn genus_at(s: &SurfaceState, i: usize) -> Result<u32> {
    s.0.get(i).copied().ok_or_else(|| Error::InvalidMove(format!("no component {i} in {s}")))
}

fn validate(s: &SurfaceState, m: &SurgeryMove) -> Result<()> {
    match *m {
        SurgeryMove::ZeroInternal { component } => genus_at(s, component).map(|_| ()),
        SurgeryMove::ZeroJoin { a, b } => {
            genus_at(s, a)?;
            genus_at(s, b)?;
            if a == b {
                return Err(Error::InvalidMove("zero_join needs two distinct components".into()));
            }
            Ok(())
        }
        SurgeryMove::OneNonseparating { component } => {
            if genus_at(s, component)? == 0 {
                return Err(Error::InvalidMove("a sphere has no nonseparating curve".into()));
            }
            Ok(())
        }
        SurgeryMove::OneSeparating { component, g1, g2 } => {
            let g = genus_at(s, component)?;
            if g1 + g2 != g {
                return Err(Error::InvalidMove(format!("split {g1}+{g2} does not add up to genus {g}")));
            }
            Ok(())
        }
    }
}

pub fn surgery_apply(s: &SurfaceState, m: &SurgeryMove) -> Result<SurfaceState> {
    validate(s, m)?;
    let mut g = s.0.clone();
    match *m {
        SurgeryMove::ZeroInternal { component } => g[component] += 1,
        SurgeryMove::ZeroJoin { a, b } => {
            let (lo, hi) = (a.min(b), a.max(b));
            let joined = g[lo] + g[hi];
            g.remove(hi);
            g[lo] = joined;
        }
        SurgeryMove::OneNonseparating { component } => g[component] -= 1,
        SurgeryMove::OneSeparating { component, g1, g2 } => {
            g[component] = g1;
            g.push(g2);
        }
    }
    Ok(SurfaceState::new(g))
}

/// All valid moves on `s`, in a fixed order. Moves on equal-genus components
/// are deduplicated since they give diffeomorphic results.
pub fn moves(s: &SurfaceState) -> Vec<SurgeryMove> {
    let g = &s.0;
    let firsts: Vec<usize> = (0..g.len()).filter(|&i| i == 0 || g[i] != g[i - 1]).collect();
    let mut out = Vec::new();
    for &i in &firsts {
        out.push(SurgeryMove::ZeroInternal { component: i });
    }
    for (ai, &a) in firsts.iter().enumerate() {
        // a joined with a second copy of its own genus, then with later genera
        if a + 1 < g.len() && g[a + 1] == g[a] {
            out.push(SurgeryMove::ZeroJoin { a, b: a + 1 });
        }
        for &b in &firsts[ai + 1..] {
            out.push(SurgeryMove::ZeroJoin { a, b });
        }
    }
    for &i in &firsts {
        if g[i] >= 1 {
            out.push(SurgeryMove::OneNonseparating { component: i });
        }
        for g1 in (0..=g[i]).rev() {
            let g2 = g[i] - g1;
            if g1 >= g2 {
                out.push(SurgeryMove::OneSeparating { component: i, g1, g2 });
            }
        }
    }
    out
}

/// Shortest surgery sequence from `s` to `t` by breadth-first search.
///
/// The search stays inside states of total genus `<= genus_cap` and with at
/// most `max(|s|, |t|) + 1` components, which keeps the state space finite.
pub fn surgery_path(s: &SurfaceState, t: &SurfaceState, genus_cap: u32) -> Result<Vec<SurgeryMove>> {
    if s == t {
        return Ok(vec![]);
    }
    let max_components = s.0.len().max(t.0.len()) + 1;
    let admissible = |x: &SurfaceState| x.total_genus() <= genus_cap && x.0.len() <= max_components;
    if !admissible(s) || !admissible(t) {
        return Err(Error::NotFound { cap: genus_cap });
    }
    let mut parent: HashMap<SurfaceState, (SurfaceState, SurgeryMove)> = HashMap::new();
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(cur) = queue.pop_front() {
        for m in moves(&cur) {
            let next = surgery_apply(&cur, &m).expect("generated moves are valid");
            if !admissible(&next) || next == *s || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (cur.clone(), m));
            if next == *t {
                let mut path = Vec::new();
                let mut at = next;
                while at != *s {
                    let (prev, mv) = parent.remove(&at).expect("visited state has a parent");
                    path.push(mv);
                    at = prev;
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(next);
        }
    }
    Err(Error::NotFound { cap: genus_cap })
}

/// Replays `path` from `s`, returning the final state.
pub fn replay(s: &SurfaceState, path: &[SurgeryMove]) -> Result<SurfaceState> {
    path.iter().try_fold(s.clone(), |acc, m| surgery_apply(&acc, m))
}

/// The two pieces of a surgery: the complement of the handle neighbourhood
/// (read as a bordism from the empty set to the boundary circles) and the
/// capping piece glued back in. Untouched components ride along as closed
/// components of the complement.
pub fn surgery_cobordism(m: &SurgeryMove, ambient: &SurfaceState) -> Result<(Bordism2Canonical, Bordism2Canonical)> {
    validate(ambient, m)?;
    let g = &ambient.0;
    let rest = |skip: &[usize]| -> Vec<u32> {
        g.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &x)| x).collect()
    };
    let annulus_out = Bordism2Canonical::single(2, 0, 0);
    let two_disks = tensor_all(&[Bordism2Canonical::cap(), Bordism2Canonical::cap()]);
    let (pieces, untouched, glue) = match *m {
        SurgeryMove::ZeroInternal { component } => {
            (vec![Component::new(g[component], vec![], vec![0, 1])], rest(&[component]), annulus_out)
        }
        SurgeryMove::ZeroJoin { a, b } => (
            vec![Component::new(g[a], vec![], vec![0]), Component::new(g[b], vec![], vec![1])],
            rest(&[a, b]),
            annulus_out,
        ),
        SurgeryMove::OneNonseparating { component } => {
            (vec![Component::new(g[component] - 1, vec![], vec![0, 1])], rest(&[component]), two_disks)
        }
        SurgeryMove::OneSeparating { component, g1, g2 } => (
            vec![Component::new(g1, vec![], vec![0]), Component::new(g2, vec![], vec![1])],
            rest(&[component]),
            two_disks,
        ),
    };
    let complement = Bordism2Canonical::new(0, 2, pieces, untouched)?;
    Ok((complement, glue))
}

/// A surface with corners, recorded only by genus and boundary circle count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerSurface {
    pub genus: u32,
    pub boundary_circles: usize,
}

impl CornerSurface {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_circles as i64
    }
}

/// The cancelling pair `H_p ∘ H_{p-1}` in dimension two, `p ∈ {0, 1}`.
///
/// `p = 0`: `(cylinder ⊔ cup)` then pants. `p = 1`: copants then `(cap ⊔ cylinder)`.
/// Both compose to the cylinder on one circle.
pub fn handle_pair(p: u8) -> Result<(Bordism2Canonical, Bordism2Canonical)> {
    let cyl = Bordism2Canonical::cylinder();
    match p {
        0 => Ok((tensor_all(&[cyl, Bordism2Canonical::cup()]), Bordism2Canonical::pants())),
        1 => Ok((Bordism2Canonical::copants(), tensor_all(&[Bordism2Canonical::cap(), cyl]))),
        _ => Err(Error::Precondition(format!("handle index {p} must be 0 or 1"))),
    }
}

pub fn handle_pair_compose(p: u8) -> Result<Bordism2Canonical> {
    let (lower, upper) = handle_pair(p)?;
    compose(&lower, &upper)
}

/// The punctured composite `H'_p ∘ H'_{p-1}`: the cancelling pair with a strip
/// `D^1 x I` removed from the product region.
///
/// The strip runs from the incoming to the outgoing circle of the composite
/// cylinder, so cutting it out fuses those two circles into one corner
/// boundary circle and raises the Euler characteristic by one (removing a
/// contractible strip attached along two arcs).
pub fn punctured_handle_compose(p: u8) -> Result<CornerSurface> {
    let composite = handle_pair_compose(p)?;
    let [c] = composite.components() else {
        return Err(Error::Precondition("cancelling pair is not connected".into()));
    };
    if c.ins.len() != 1 || c.outs.len() != 1 || !composite.closed_components().is_empty() {
        return Err(Error::Precondition("cancelling pair is not a product on one circle".into()));
    }
    let cut = CornerSurface { genus: c.genus, boundary_circles: c.boundary() - 1 };
    debug_assert_eq!(cut.euler_characteristic(), c.euler_characteristic() + 1);
    Ok(cut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(g: &[u32]) -> SurfaceState {
        SurfaceState::new(g.to_vec())
    }

    #[test]
    fn apply_examples() {
        assert_eq!(surgery_apply(&st(&[0]), &SurgeryMove::ZeroInternal { component: 0 }).unwrap(), st(&[1]));
        assert_eq!(surgery_apply(&st(&[1, 1]), &SurgeryMove::ZeroJoin { a: 0, b: 1 }).unwrap(), st(&[2]));
        assert_eq!(surgery_apply(&st(&[3]), &SurgeryMove::OneNonseparating { component: 0 }).unwrap(), st(&[2]));
    }

    #[test]
    fn invalid_moves_are_rejected() {
        assert!(matches!(
            surgery_apply(&st(&[0]), &SurgeryMove::OneNonseparating { component: 0 }),
            Err(Error::InvalidMove(_))
        ));
        assert!(surgery_apply(&st(&[2]), &SurgeryMove::OneSeparating { component: 0, g1: 2, g2: 1 }).is_err());
        assert!(surgery_apply(&st(&[2]), &SurgeryMove::ZeroJoin { a: 0, b: 0 }).is_err());
        assert!(surgery_apply(&st(&[2]), &SurgeryMove::ZeroInternal { component: 3 }).is_err());
    }

    #[test]
    fn path_examples() {
        assert_eq!(surgery_path(&st(&[0]), &st(&[1]), 8).unwrap().len(), 1);
        assert_eq!(surgery_path(&st(&[3]), &st(&[1]), 8).unwrap().len(), 2);
        assert_eq!(surgery_path(&st(&[1, 1]), &st(&[1]), 8).unwrap().len(), 2);
        assert!(surgery_path(&st(&[1]), &st(&[1]), 8).unwrap().is_empty());
    }

    #[test]
    fn path_respects_cap() {
        assert!(matches!(surgery_path(&st(&[5]), &st(&[1]), 3), Err(Error::NotFound { cap: 3 })));
        assert!(surgery_path(&st(&[]), &st(&[1]), 8).is_err());
    }

    #[test]
    fn cobordism_pieces_reproduce_surgery() {
        let cases = [
            (st(&[0]), SurgeryMove::ZeroInternal { component: 0 }),
            (st(&[1]), SurgeryMove::OneNonseparating { component: 0 }),
            (st(&[1]), SurgeryMove::OneSeparating { component: 0, g1: 1, g2: 0 }),
            (st(&[0, 2, 3]), SurgeryMove::ZeroJoin { a: 0, b: 2 }),
        ];
        for (s, m) in cases {
            let (pre, glue) = surgery_cobordism(&m, &s).unwrap();
            let glued = compose(&pre, &glue).unwrap();
            assert_eq!(glued, surgery_apply(&s, &m).unwrap().as_bordism(), "{m} on {s}");
        }
        let (pre, glue) = surgery_cobordism(&SurgeryMove::ZeroInternal { component: 0 }, &st(&[0])).unwrap();
        assert_eq!(pre, Bordism2Canonical::single(0, 2, 0));
        assert_eq!(glue, Bordism2Canonical::single(2, 0, 0));
    }

    #[test]
    fn handle_pairs_cancel() {
        for p in 0..2 {
            let c = handle_pair_compose(p).unwrap();
            assert_eq!(c, Bordism2Canonical::cylinder());
            assert_eq!(c.euler_characteristic(), 0);
            let cut = punctured_handle_compose(p).unwrap();
            assert_eq!(cut, CornerSurface { genus: 0, boundary_circles: 1 });
            assert_eq!(cut.euler_characteristic(), 1);
        }
        assert!(handle_pair_compose(2).is_err());
    }

    #[test]
    fn state_text() {
        assert_eq!(SurfaceState::parse("{1, 0,3}").unwrap().to_string(), "{0,1,3}");
        assert_eq!(SurfaceState::parse("{}").unwrap(), st(&[]));
        assert!(SurfaceState::parse("{a}").is_none());
    }
}
