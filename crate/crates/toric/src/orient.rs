//! Acyclic orientations, the orientation induced by a labeling, flip and
//! double-flip moves, and the two equivalence-class partitions they
//! generate on the set of all acyclic orientations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{all_labelings, factorial, Labeling};
use crate::Caps;

/// An acyclic orientation of a graph, one bit per canonical edge:
/// 0 directs the edge from its low-index vertex to its high-index vertex,
/// 1 reverses it. The orientation machinery supports up to 64 edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcyclicOrientation {
    bits: u64,
}

impl AcyclicOrientation {
    /// Wraps raw direction bits after checking for directed cycles.
    pub fn from_bits(g: &Graph, bits: u64) -> Result<AcyclicOrientation> {
        if is_acyclic(g, bits) {
            Ok(AcyclicOrientation { bits })
        } else {
            Err(Error::CyclicOrientation { bits })
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Directed edges `(tail, head)` in canonical edge order.
    pub fn directed_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| if self.bits >> e & 1 == 0 { (u, v) } else { (v, u) })
            .collect()
    }

    /// Diagnostic rendering: `u->v` per canonical edge, space-separated.
    pub fn render(&self, g: &Graph) -> String {
        let parts: Vec<String> = self
            .directed_edges(g)
            .iter()
            .map(|&(t, h)| format!("{t}->{h}"))
            .collect();
        parts.join(" ")
    }
}

fn is_acyclic(g: &Graph, bits: u64) -> bool {
    let n = g.n();
    assert!(g.edge_count() <= 64, "orientation bits support up to 64 edges");
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (tail, head) = if bits >> e & 1 == 0 { (u, v) } else { (v, u) };
        out[tail].push(head);
        indegree[head] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    removed == n
}

/// Orients every edge from the smaller label to the larger label. Always
/// acyclic, since labels strictly increase along directed edges.
pub fn induced_orientation(g: &Graph, sigma: &Labeling) -> AcyclicOrientation {
    assert_eq!(g.n(), sigma.n());
    assert!(g.edge_count() <= 64, "orientation bits support up to 64 edges");
    let mut bits = 0u64;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if sigma.label(u) > sigma.label(v) {
            bits |= 1 << e;
        }
    }
    AcyclicOrientation { bits }
}

/// In-degree-0 and out-degree-0 vertex sets. Isolated vertices appear in
/// both.
pub fn sources_and_sinks(g: &Graph, alpha: &AcyclicOrientation) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut indegree = vec![0usize; n];
    let mut outdegree = vec![0usize; n];
    for (tail, head) in alpha.directed_edges(g) {
        outdegree[tail] += 1;
        indegree[head] += 1;
    }
    let sources = (0..n).filter(|&v| indegree[v] == 0).collect();
    let sinks = (0..n).filter(|&v| outdegree[v] == 0).collect();
    (sources, sinks)
}

fn incident_mask(g: &Graph, v: usize) -> u64 {
    g.incident_edges(v).iter().fold(0u64, |m, &e| m | 1 << e)
}

/// Reverses every edge at a source or sink. An involution at the same
/// vertex; the result is again acyclic.
pub fn flip(g: &Graph, alpha: &AcyclicOrientation, v: usize) -> Result<AcyclicOrientation> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let (sources, sinks) = sources_and_sinks(g, alpha);
    if !sources.contains(&v) && !sinks.contains(&v) {
        return Err(Error::FlipIllegal(v));
    }
    let flipped = AcyclicOrientation {
        bits: alpha.bits ^ incident_mask(g, v),
    };
    debug_assert!(is_acyclic(g, flipped.bits));
    Ok(flipped)
}

/// Simultaneously reverses all edges at a source `u` and a sink `v`.
/// Legal only when `u != v` and the two vertices are not adjacent; each
/// precondition failure is reported distinctly.
pub fn double_flip(
    g: &Graph,
    alpha: &AcyclicOrientation,
    u: usize,
    v: usize,
) -> Result<AcyclicOrientation> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    let (sources, sinks) = sources_and_sinks(g, alpha);
    if !sources.contains(&u) {
        return Err(Error::DoubleFlipNotSource(u));
    }
    if !sinks.contains(&v) {
        return Err(Error::DoubleFlipNotSink(v));
    }
    if u == v {
        return Err(Error::DoubleFlipSameVertex(u));
    }
    if g.has_edge(u, v) {
        return Err(Error::DoubleFlipAdjacent { u, v });
    }
    let flipped = AcyclicOrientation {
        bits: alpha.bits ^ incident_mask(g, u) ^ incident_mask(g, v),
    };
    debug_assert!(is_acyclic(g, flipped.bits));
    Ok(flipped)
}

/// All acyclic orientations, in increasing bit order.
pub fn enumerate_acyclic_orientations(g: &Graph, caps: &Caps) -> Result<Vec<AcyclicOrientation>> {
    let m = g.edge_count();
    if m > caps.max_orientation_edges {
        return Err(Error::CapExceeded {
            what: "orientation enumeration edge count",
            requested: m,
            cap: caps.max_orientation_edges,
        });
    }
    Ok((0..1u64 << m)
        .filter(|&bits| is_acyclic(g, bits))
        .map(|bits| AcyclicOrientation { bits })
        .collect())
}

/// The move kind generating an orientation partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Flip,
    DoubleFlip,
}

/// A partition of all acyclic orientations into classes closed under one
/// move kind. Classes are ordered by their smallest member, members by
/// bit value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationPartition {
    kind: MoveKind,
    classes: Vec<Vec<AcyclicOrientation>>,
}

impl OrientationPartition {
    pub fn kind(&self) -> MoveKind {
        self.kind
    }

    pub fn classes(&self) -> &[Vec<AcyclicOrientation>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `alpha`.
    pub fn class_of(&self, alpha: &AcyclicOrientation) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.binary_search(alpha).is_ok())
    }
}

fn closure_classes<F>(g: &Graph, caps: &Caps, kind: MoveKind, moves: F) -> Result<OrientationPartition>
where
    F: Fn(&Graph, &AcyclicOrientation) -> Vec<AcyclicOrientation>,
{
    let all = enumerate_acyclic_orientations(g, caps)?;
    let index: HashMap<u64, usize> = all.iter().enumerate().map(|(i, a)| (a.bits, i)).collect();
    let mut seen = vec![false; all.len()];
    let mut classes = Vec::new();
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut class = vec![all[start]];
        let mut queue = vec![all[start]];
        while let Some(alpha) = queue.pop() {
            for next in moves(g, &alpha) {
                let i = index[&next.bits];
                if !seen[i] {
                    seen[i] = true;
                    class.push(next);
                    queue.push(next);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok(OrientationPartition { kind, classes })
}

/// Equivalence classes under single flips (breadth-first closure).
/// A tree has exactly one class.
pub fn flip_classes(g: &Graph, caps: &Caps) -> Result<OrientationPartition> {
    closure_classes(g, caps, MoveKind::Flip, |g, alpha| {
        let (sources, sinks) = sources_and_sinks(g, alpha);
        let mut out = Vec::new();
        for v in sources.into_iter().chain(sinks) {
            out.push(AcyclicOrientation {
                bits: alpha.bits ^ incident_mask(g, v),
            });
        }
        out
    })
}

/// Equivalence classes under double flips. Refines the flip partition;
/// a tree on `n` vertices has exactly `n` classes.
pub fn double_flip_classes(g: &Graph, caps: &Caps) -> Result<OrientationPartition> {
    closure_classes(g, caps, MoveKind::DoubleFlip, |g, alpha| {
        let (sources, sinks) = sources_and_sinks(g, alpha);
        let mut out = Vec::new();
        for &u in &sources {
            for &v in &sinks {
                if u != v && !g.has_edge(u, v) {
                    out.push(AcyclicOrientation {
                        bits: alpha.bits ^ incident_mask(g, u) ^ incident_mask(g, v),
                    });
                }
            }
        }
        out
    })
}

/// Exactly the labelings whose induced orientation lies in `set`, in rank
/// order.
pub fn linear_extensions(
    g: &Graph,
    set: &[AcyclicOrientation],
    caps: &Caps,
) -> Result<Vec<Labeling>> {
    let n = g.n();
    if n > caps.max_census_n {
        return Err(Error::CapExceeded {
            what: "linear extension vertex count",
            requested: n,
            cap: caps.max_census_n,
        });
    }
    let _ = factorial(n);
    let wanted: std::collections::HashSet<u64> = set.iter().map(|a| a.bits).collect();
    Ok(all_labelings(n)
        .filter(|sigma| wanted.contains(&induced_orientation(g, sigma).bits))
        .collect())
}

/// The gcd of the connected-component sizes.
pub fn nu(g: &Graph) -> usize {
    g.connected_components()
        .block_sizes()
        .into_iter()
        .fold(0, gcd)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn path(n: usize) -> Graph {
        Graph::generate(GraphFamily::Path, n).unwrap()
    }

    fn lab(word: &str, n: usize) -> Labeling {
        Labeling::parse(word, n).unwrap()
    }

    #[test]
    fn induced_orientations() {
        let edge = path(2);
        let alpha = induced_orientation(&edge, &lab("12", 2));
        assert_eq!(alpha.directed_edges(&edge), vec![(0, 1)]);

        let g = path(3);
        let alpha = induced_orientation(&g, &lab("213", 3));
        assert_eq!(alpha.directed_edges(&g), vec![(1, 0), (1, 2)]);
        let (sources, sinks) = sources_and_sinks(&g, &alpha);
        assert_eq!(sources, vec![1]);
        assert_eq!(sinks, vec![0, 2]);
    }

    #[test]
    fn promotion_preserves_induced_orientation() {
        let g = path(5);
        for sigma in all_labelings(5) {
            let promoted = crate::ops::promotion(&g, &sigma);
            assert_eq!(
                induced_orientation(&g, &sigma),
                induced_orientation(&g, &promoted)
            );
        }
    }

    #[test]
    fn toric_promotion_preserves_double_flip_class() {
        let caps = Caps::default();
        for g in [
            path(4),
            Graph::generate(GraphFamily::Cycle, 4).unwrap(),
            Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap(),
        ] {
            let classes = double_flip_classes(&g, &caps).unwrap();
            for sigma in all_labelings(4) {
                let before = classes.class_of(&induced_orientation(&g, &sigma));
                let after = classes.class_of(&induced_orientation(
                    &g,
                    &crate::ops::toric_promotion(&g, &sigma).unwrap(),
                ));
                assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn sources_sinks_isolated() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        let alpha = AcyclicOrientation::from_bits(&g, 0).unwrap();
        let (sources, sinks) = sources_and_sinks(&g, &alpha);
        assert!(sources.contains(&2) && sinks.contains(&2));
    }

    #[test]
    fn flips() {
        let edge = path(2);
        let fwd = AcyclicOrientation::from_bits(&edge, 0).unwrap();
        let rev = flip(&edge, &fwd, 0).unwrap();
        assert_eq!(rev.directed_edges(&edge), vec![(1, 0)]);
        assert_eq!(flip(&edge, &rev, 0).unwrap(), fwd);

        let g = path(3);
        let chain = AcyclicOrientation::from_bits(&g, 0).unwrap(); // 0->1->2
        let flipped = flip(&g, &chain, 2).unwrap();
        assert_eq!(flipped.directed_edges(&g), vec![(0, 1), (2, 1)]);
        assert_eq!(flip(&g, &chain, 1), Err(Error::FlipIllegal(1)));
    }

    #[test]
    fn double_flips() {
        let g = path(3);
        let chain = AcyclicOrientation::from_bits(&g, 0).unwrap(); // 0->1->2
        let both = double_flip(&g, &chain, 0, 2).unwrap();
        assert_eq!(both.directed_edges(&g), vec![(1, 0), (2, 1)]);

        let edge = path(2);
        let fwd = AcyclicOrientation::from_bits(&edge, 0).unwrap();
        assert_eq!(
            double_flip(&edge, &fwd, 0, 1),
            Err(Error::DoubleFlipAdjacent { u: 0, v: 1 })
        );

        // 0->1<-2: the only sink is adjacent to both sources.
        let vee = AcyclicOrientation::from_bits(&g, 0b10).unwrap();
        assert_eq!(
            double_flip(&g, &vee, 0, 1),
            Err(Error::DoubleFlipAdjacent { u: 0, v: 1 })
        );
        assert_eq!(double_flip(&g, &chain, 1, 2), Err(Error::DoubleFlipNotSource(1)));
        assert_eq!(double_flip(&g, &chain, 0, 1), Err(Error::DoubleFlipNotSink(1)));

        let lonely = Graph::from_edge_list(2, &[]).unwrap();
        let empty = AcyclicOrientation::from_bits(&lonely, 0).unwrap();
        assert_eq!(
            double_flip(&lonely, &empty, 0, 0),
            Err(Error::DoubleFlipSameVertex(0))
        );
        // Two isolated vertices: a legal double flip that reverses nothing.
        assert_eq!(double_flip(&lonely, &empty, 0, 1).unwrap(), empty);
    }

    #[test]
    fn orientation_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_acyclic_orientations(&path(2), &caps).unwrap().len(), 2);
        assert_eq!(enumerate_acyclic_orientations(&path(3), &caps).unwrap().len(), 4);
        let triangle = Graph::generate(GraphFamily::Cycle, 3).unwrap();
        assert_eq!(enumerate_acyclic_orientations(&triangle, &caps).unwrap().len(), 6);

        for g in [path(4), Graph::generate(GraphFamily::Star, 5).unwrap()] {
            let count = enumerate_acyclic_orientations(&g, &caps).unwrap().len();
            assert_eq!(count, 1 << g.edge_count());
        }
    }

    #[test]
    fn flip_class_structure() {
        let caps = Caps::default();
        for g in [path(2), path(4), Graph::generate(GraphFamily::Star, 5).unwrap()] {
            let part = flip_classes(&g, &caps).unwrap();
            assert_eq!(part.len(), 1, "a tree has a single flip class");
        }

        let triangle = Graph::generate(GraphFamily::Cycle, 3).unwrap();
        let part = flip_classes(&triangle, &caps).unwrap();
        let total: usize = part.classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn double_flip_class_structure() {
        let caps = Caps::default();
        let edge = path(2);
        let part = double_flip_classes(&edge, &caps).unwrap();
        assert_eq!(part.len(), 2);
        assert!(part.classes().iter().all(|c| c.len() == 1));

        let g = path(3);
        let part = double_flip_classes(&g, &caps).unwrap();
        assert_eq!(part.len(), 3);
        let mut sizes: Vec<usize> = part.classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);

        for n in 2..=6 {
            let star = Graph::generate(GraphFamily::Star, n).unwrap();
            assert_eq!(double_flip_classes(&star, &caps).unwrap().len(), n);
        }
    }

    #[test]
    fn extension_sets() {
        let caps = Caps::default();
        let edge = path(2);
        let fwd = AcyclicOrientation::from_bits(&edge, 0).unwrap();
        let exts = linear_extensions(&edge, &[fwd], &caps).unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].word(), "12");

        let g = path(3);
        // The orientation with both edges pointing into the middle vertex.
        let vee = induced_orientation(&g, &lab("132", 3));
        let words: Vec<String> = linear_extensions(&g, &[vee], &caps)
            .unwrap()
            .iter()
            .map(|l| l.word())
            .collect();
        assert_eq!(words, vec!["132", "231"]);

        assert!(linear_extensions(&g, &[], &caps).unwrap().is_empty());

        let all = enumerate_acyclic_orientations(&g, &caps).unwrap();
        assert_eq!(linear_extensions(&g, &all, &caps).unwrap().len(), 6);
    }

    #[test]
    fn component_gcd() {
        assert_eq!(nu(&path(5)), 5);
        assert_eq!(nu(&Graph::from_edge_list(3, &[(0, 1)]).unwrap()), 1);
        let two_paths = Graph::from_edge_list(10, &[(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)]).unwrap();
        assert_eq!(nu(&two_paths), 2);
    }
}
