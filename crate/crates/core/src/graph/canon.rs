//! Canonical labeling for small graphs.
//!
//! Connected graphs are labeled by an individualization-refinement search:
//! vertices are split by degree, cells are refined until equitable, and the
//! first non-singleton cell is individualized one vertex at a time. Every
//! discrete leaf gives a relabeling; the lexicographically largest graph6
//! string among the leaves is the certificate. Two vertices of the same cell
//! with equal neighborhoods (twins) are swapped by an automorphism that fixes
//! the current partition, so only one of them is branched on.
//!
//! Disconnected graphs are labeled component by component and the canonical
//! components are concatenated in increasing certificate order.

use std::cmp::Ordering;
use std::fmt;

use super::{to_graph6, Graph};

/// A labeling-invariant byte string: the graph6 encoding of the canonical
/// relabeling. Equal forms iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_graph(g).1
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && canonical_form(g) == canonical_form(h)
}

/// Returns the canonical relabeling of `g` together with its form.
pub fn canonical_graph(g: &Graph) -> (Graph, CanonicalForm) {
    if g.is_connected() {
        return canonical_connected(g);
    }
    let mut parts: Vec<(Graph, CanonicalForm)> = g
        .components()
        .parts
        .iter()
        .map(|p| canonical_connected(&p.graph))
        .collect();
    parts.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out = Graph::empty(0).expect("empty graph");
    for (part, _) in &parts {
        out = out
            .disjoint_union(part)
            .expect("order bounded by the input");
    }
    let form = CanonicalForm(to_graph6(&out).into_bytes());
    (out, form)
}

fn canonical_connected(g: &Graph) -> (Graph, CanonicalForm) {
    let n = g.n();
    if n <= 1 {
        return (g.clone(), CanonicalForm(to_graph6(g).into_bytes()));
    }
    let initial = refine(g, vec![(0..n).collect()]);
    let mut best: Option<(Vec<u8>, Graph)> = None;
    search(g, initial, &mut best);
    let (bytes, graph) = best.expect("search visits at least one leaf");
    (graph, CanonicalForm(bytes))
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u8>, Graph)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0; g.n()];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell[0]] = label;
        }
        let candidate = g.permute(&perm);
        let bytes = to_graph6(&candidate).into_bytes();
        let better = match best {
            Some((b, _)) => bytes.cmp(b) == Ordering::Greater,
            None => true,
        };
        if better {
            *best = Some((bytes, candidate));
        }
        return;
    };

    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&t| are_twins(g, t, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(g, refine(g, next), best);
    }
}

fn are_twins(g: &Graph, a: usize, b: usize) -> bool {
    let strip = !(1u64 << a | 1u64 << b);
    g.neighbor_mask(a) & strip == g.neighbor_mask(b) & strip
}

/// Splits cells by neighbor counts into every cell until nothing changes.
/// The split order depends only on the counts, never on vertex labels.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let nb = g.neighbor_mask(v);
                    (masks.iter().map(|&m| (nb & m).count_ones()).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = Vec::new();
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(keyed[i].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}
