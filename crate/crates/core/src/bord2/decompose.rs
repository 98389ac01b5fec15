use super::canonical::{compose, tensor_all, Bordism2Canonical};

/// Elementary pieces that generate every 2-bordism between closed 1-manifolds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Cup,
    Cap,
    Pants,
    Copants,
    Cylinder,
    Swap,
}

impl Elementary {
    pub fn source(self) -> usize {
        match self {
            Elementary::Cup => 0,
            Elementary::Cap | Elementary::Copants | Elementary::Cylinder => 1,
            Elementary::Pants | Elementary::Swap => 2,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Elementary::Cap => 0,
            Elementary::Cup | Elementary::Pants | Elementary::Cylinder => 1,
            Elementary::Copants | Elementary::Swap => 2,
        }
    }

    pub fn bordism(self) -> Bordism2Canonical {
        match self {
            Elementary::Cup => Bordism2Canonical::cup(),
            Elementary::Cap => Bordism2Canonical::cap(),
            Elementary::Pants => Bordism2Canonical::pants(),
            Elementary::Copants => Bordism2Canonical::copants(),
            Elementary::Cylinder => Bordism2Canonical::cylinder(),
            Elementary::Swap => Bordism2Canonical::swap(),
        }
    }
}

/// One horizontal slice: elementary pieces placed side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer(pub Vec<Elementary>);

impl Layer {
    pub fn identity(width: usize) -> Self {
        Layer(vec![Elementary::Cylinder; width])
    }

    pub fn source(&self) -> usize {
        self.0.iter().map(|e| e.source()).sum()
    }

    pub fn target(&self) -> usize {
        self.0.iter().map(|e| e.target()).sum()
    }

    pub fn bordism(&self) -> Bordism2Canonical {
        let parts: Vec<_> = self.0.iter().map(|e| e.bordism()).collect();
        tensor_all(&parts)
    }

    /// Swap of positions `i, i+1` in a strand of the given width.
    fn adjacent_swap(width: usize, i: usize) -> Self {
        let mut v = vec![Elementary::Cylinder; i];
        v.push(Elementary::Swap);
        v.extend(std::iter::repeat_n(Elementary::Cylinder, width - i - 2));
        Layer(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|e| *e == Elementary::Cylinder)
    }
}

/// How handles are laid out inside each connected piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// One copants/pants pair per handle, stacked.
    #[default]
    Stacked,
    /// Split into `g + 1` strands, then merge them all back.
    Nested,
}

/// Composes layers in order; an empty list is the identity on `source` circles.
pub fn compose_layers(source: usize, layers: &[Layer]) -> Bordism2Canonical {
    layers.iter().fold(Bordism2Canonical::identity(source), |acc, l| {
        compose(&acc, &l.bordism()).expect("layers are composable by construction")
    })
}

pub fn pants_decompose(b: &Bordism2Canonical) -> Vec<Layer> {
    pants_decompose_with(b, Strategy::Stacked)
}

/// Writes `b` as a composite of layers over cup, cap, pants, copants,
/// cylinder and swap. Composing the layers reproduces `b` exactly.
pub fn pants_decompose_with(b: &Bordism2Canonical, strategy: Strategy) -> Vec<Layer> {
    let source = b.source().circles;
    let target = b.target().circles;

    // columns: one per open component, then one per closed component
    let mut columns: Vec<Vec<Vec<Elementary>>> = Vec::new();
    let mut widths_in = Vec::new();
    let mut order_in: Vec<usize> = Vec::new();
    let mut outs_of_column: Vec<Vec<usize>> = Vec::new();
    for c in b.components() {
        columns.push(column(c.ins.len(), c.genus, c.outs.len(), strategy));
        widths_in.push(c.ins.len());
        order_in.extend(&c.ins);
        outs_of_column.push(c.outs.clone());
    }
    for &g in b.closed_components() {
        columns.push(column(0, g, 0, strategy));
        widths_in.push(0);
        outs_of_column.push(vec![]);
    }

    let mut layers = Vec::new();

    // permute source circles into column order: position p must carry circle order_in[p]
    let mut cur: Vec<usize> = vec![0; source];
    for (p, &circle) in order_in.iter().enumerate() {
        cur[circle] = p;
    }
    layers.extend(bubble_swaps(&mut cur));

    // run all columns in parallel, padding finished columns with cylinders
    let depth = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = widths_in;
    for step in 0..depth {
        let mut layer = Vec::new();
        for (col, w) in columns.iter().zip(widths.iter_mut()) {
            match col.get(step) {
                Some(slice) => {
                    layer.extend(slice.iter().copied());
                    *w = slice.iter().map(|e| e.target()).sum();
                }
                None => layer.extend(std::iter::repeat_n(Elementary::Cylinder, *w)),
            }
        }
        layers.push(Layer(layer));
    }

    // route outputs to their target indices
    let mut cur: Vec<usize> = outs_of_column.into_iter().flatten().collect();
    debug_assert_eq!(cur.len(), target);
    layers.extend(bubble_swaps(&mut cur));

    if layers.is_empty() {
        layers.push(Layer::identity(source));
    }
    layers
}

/// Layers for one connected piece with `k` inputs, genus `g`, `m` outputs.
/// Each entry is the slice this piece contributes to one global layer.
fn column(k: usize, g: u32, m: usize, strategy: Strategy) -> Vec<Vec<Elementary>> {
    use Elementary::*;
    let mut steps = Vec::new();
    let mut width = k;
    let strand = |w: usize, first: Elementary| -> Vec<Elementary> {
        let mut v = vec![first];
        v.extend(std::iter::repeat_n(Cylinder, w - 1));
        v
    };
    if width == 0 {
        steps.push(vec![Cup]);
        width = 1;
    }
    while width > 1 {
        steps.push(strand(width - 1, Pants));
        width -= 1;
    }
    match strategy {
        Strategy::Stacked => {
            for _ in 0..g {
                steps.push(vec![Copants]);
                steps.push(vec![Pants]);
            }
        }
        Strategy::Nested => {
            for _ in 0..g {
                steps.push(strand(width, Copants));
                width += 1;
            }
            while width > 1 {
                steps.push(strand(width - 1, Pants));
                width -= 1;
            }
        }
    }
    if m == 0 {
        steps.push(vec![Cap]);
    } else {
        while width < m {
            steps.push(strand(width, Copants));
            width += 1;
        }
    }
    steps
}

/// Sorts `cur` (a permutation of `0..n`) with adjacent swaps, returning one layer per swap.
/// A swap at `i` exchanges the circles at positions `i` and `i + 1`.
fn bubble_swaps(cur: &mut [usize]) -> Vec<Layer> {
    let n = cur.len();
    let mut layers = Vec::new();
    for pass in 0..n {
        for i in 0..n.saturating_sub(1 + pass) {
            if cur[i] > cur[i + 1] {
                cur.swap(i, i + 1);
                layers.push(Layer::adjacent_swap(n, i));
            }
        }
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bord2::canonical::Component;

    #[test]
    fn cylinder_decomposes_to_itself() {
        let layers = pants_decompose(&Bordism2Canonical::cylinder());
        assert_eq!(layers, vec![Layer(vec![Elementary::Cylinder])]);
    }

    #[test]
    fn sphere_is_cup_then_cap() {
        let layers = pants_decompose(&Bordism2Canonical::closed(0));
        assert_eq!(layers, vec![Layer(vec![Elementary::Cup]), Layer(vec![Elementary::Cap])]);
    }

    #[test]
    fn closed_genus_layers() {
        for g in 0..4 {
            let b = Bordism2Canonical::closed(g);
            for s in [Strategy::Stacked, Strategy::Nested] {
                let layers = pants_decompose_with(&b, s);
                assert_eq!(layers.first().unwrap().0, vec![Elementary::Cup]);
                assert_eq!(layers.last().unwrap().0, vec![Elementary::Cap]);
                let back = compose_layers(0, &layers);
                assert_eq!(back, b);
                assert_eq!(back.euler_characteristic(), 2 - 2 * g as i64);
            }
        }
    }

    #[test]
    fn permuted_wiring_round_trips() {
        let b = Bordism2Canonical::new(
            3,
            3,
            vec![Component::new(1, vec![0, 2], vec![1]), Component::new(0, vec![1], vec![0, 2])],
            vec![2],
        )
        .unwrap();
        for s in [Strategy::Stacked, Strategy::Nested] {
            assert_eq!(compose_layers(3, &pants_decompose_with(&b, s)), b);
        }
    }
}
