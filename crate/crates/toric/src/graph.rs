//! Simple undirected graphs with a canonical edge order, small generators,
//! and desk-scale enumeration of labeled trees and forests.

use crate::error::{Error, Result};
use crate::Caps;

/// Built-in graph families for [`Graph::generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Path,
    Cycle,
    Star,
    Complete,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically.
/// This canonical order is what orientation bit vectors index into, so it
/// must stay stable across construction paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating and canonicalizing.
    ///
    /// Rejects `n = 0`, self-loops, and out-of-range endpoints.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph::build(n, edges))
    }

    /// Builds one of the named families on `n` vertices.
    ///
    /// The cycle on 2 vertices collapses to a single edge; a 1-vertex cycle
    /// would be a self-loop and is rejected.
    pub fn generate(family: GraphFamily, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let pairs: Vec<(usize, usize)> = match family {
            GraphFamily::Path => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            GraphFamily::Cycle => {
                if n == 1 {
                    return Err(Error::CycleTooSmall(1));
                }
                let mut p: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
                p.push((n - 1, 0));
                p
            }
            GraphFamily::Star => (1..n).map(|i| (0, i)).collect(),
            GraphFamily::Complete => {
                let mut p = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        p.push((u, v));
                    }
                }
                p
            }
        };
        Graph::from_edge_list(n, &pairs)
    }

    /// Decodes a Prufer sequence into the labeled tree it encodes.
    ///
    /// A sequence of length `n - 2` over `0..n` yields a tree on `n`
    /// vertices; the empty sequence yields the single edge on 2 vertices.
    pub fn from_prufer(seq: &[usize]) -> Result<Graph> {
        let n = seq.len() + 2;
        for (position, &value) in seq.iter().enumerate() {
            if value >= n {
                return Err(Error::PruferEntryOutOfRange { position, value, n });
            }
        }
        let mut degree = vec![1usize; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut pairs = Vec::with_capacity(n - 1);
        for &s in seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always remains");
            pairs.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let mut last = (0..n).filter(|&v| degree[v] == 1);
        let u = last.next().expect("two leaves remain");
        let v = last.next().expect("two leaves remain");
        pairs.push((u, v));
        Graph::from_edge_list(n, &pairs)
    }

    /// Parses the edge-list text format: the first significant line holds
    /// the vertex count, each following non-empty line holds `u v`, and
    /// lines starting with `#` are comments. Errors carry the 1-based line
    /// number.
    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    n = Some(trimmed.parse().map_err(|_| Error::EdgeListLine {
                        line,
                        message: format!("expected a vertex count, got {trimmed:?}"),
                    })?);
                }
                Some(count) => {
                    let mut it = trimmed.split_whitespace();
                    let u: usize = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::EdgeListLine {
                            line,
                            message: format!("expected 'u v', got {trimmed:?}"),
                        })?;
                    let v: usize = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::EdgeListLine {
                            line,
                            message: format!("expected 'u v', got {trimmed:?}"),
                        })?;
                    if it.next().is_some() {
                        return Err(Error::EdgeListLine {
                            line,
                            message: format!("trailing tokens after edge in {trimmed:?}"),
                        });
                    }
                    if u == v {
                        return Err(Error::EdgeListLine {
                            line,
                            message: format!("self-loop at vertex {u}"),
                        });
                    }
                    if u >= count || v >= count {
                        return Err(Error::EdgeListLine {
                            line,
                            message: format!("vertex out of range 0..{count} in {trimmed:?}"),
                        });
                    }
                    pairs.push((u, v));
                }
            }
        }
        match n {
            Some(count) => Graph::from_edge_list(count, &pairs),
            None => Err(Error::EdgeListLine {
                line: 1,
                message: "empty edge-list input".into(),
            }),
        }
    }

    fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        let mut incident = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            incident[u].push(e);
            incident[v].push(e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            matrix,
            incident,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Indices into [`Graph::edges`] of the edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// The complement graph: same vertices, exactly the missing edges.
    pub fn complement(&self) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::from_edge_list(self.n, &pairs).expect("complement of a valid graph is valid")
    }

    /// Connected components as a vertex partition, blocks ordered by their
    /// smallest vertex.
    pub fn connected_components(&self) -> VertexPartition {
        let mut seen = vec![false; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        block.push(w);
                        queue.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        VertexPartition { blocks }
    }

    /// True iff the graph has no cycle, i.e. `|E| = n - #components`.
    pub fn is_forest(&self) -> bool {
        let components = self.connected_components().blocks.len();
        self.edges.len() == self.n - components
    }

    /// The unique simple path between two vertices of a forest, endpoints
    /// inclusive; a single vertex when `u == v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if !self.is_forest() {
            return Err(Error::NotAForest);
        }
        if u == v {
            return Ok(vec![u]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[u] = u;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &w in self.neighbors(x) {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        if parent[v] == usize::MAX {
            return Err(Error::DisconnectedPair { u, v });
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }

    /// Renders the graph in the `edges:N;u-v,...` descriptor form.
    pub fn descriptor(&self) -> String {
        let body: Vec<String> = self.edges.iter().map(|&(u, v)| format!("{u}-{v}")).collect();
        format!("edges:{};{}", self.n, body.join(","))
    }

    /// All labeled trees on `n` vertices, one per Prufer sequence, in
    /// lexicographic sequence order. Yields `n^(n-2)` trees.
    pub fn enumerate_trees(n: usize, caps: &Caps) -> Result<TreeIter> {
        if n < 2 {
            return Err(Error::TooFewVertices { needed: 2, n });
        }
        if n > caps.max_tree_n {
            return Err(Error::CapExceeded {
                what: "tree enumeration vertex count",
                requested: n,
                cap: caps.max_tree_n,
            });
        }
        Ok(TreeIter {
            n,
            seq: vec![0; n - 2],
            done: false,
        })
    }

    /// All forests on `n` labeled vertices: acyclic edge subsets of the
    /// complete graph, in increasing bitmask order over the canonical edges.
    pub fn enumerate_forests(n: usize, caps: &Caps) -> Result<ForestIter> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > caps.max_forest_n {
            return Err(Error::CapExceeded {
                what: "forest enumeration vertex count",
                requested: n,
                cap: caps.max_forest_n,
            });
        }
        Ok(ForestIter {
            inner: EdgeSubsetIter::new(n),
            forests_only: true,
        })
    }

    /// All simple graphs on `n` labeled vertices, in increasing bitmask
    /// order. Sweep-driver plumbing; intended for small `n` only.
    pub fn enumerate_graphs(n: usize) -> ForestIter {
        ForestIter {
            inner: EdgeSubsetIter::new(n),
            forests_only: false,
        }
    }
}

/// Disjoint vertex blocks covering `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// The index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("partition covers all vertices")
    }
}

/// Iterator over all labeled trees on `n` vertices via Prufer decoding.
pub struct TreeIter {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for TreeIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let tree = Graph::from_prufer(&self.seq).expect("in-range Prufer sequence");
        // Odometer increment in base n, most significant digit first.
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.seq[i] + 1 < self.n {
                self.seq[i] += 1;
                for d in &mut self.seq[i + 1..] {
                    *d = 0;
                }
                break;
            }
        }
        if self.seq.is_empty() {
            self.done = true;
        }
        Some(tree)
    }
}

struct EdgeSubsetIter {
    n: usize,
    all_edges: Vec<(usize, usize)>,
    mask: u64,
    end: u64,
}

impl EdgeSubsetIter {
    fn new(n: usize) -> Self {
        let mut all_edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                all_edges.push((u, v));
            }
        }
        let end = 1u64 << all_edges.len();
        EdgeSubsetIter {
            n,
            all_edges,
            mask: 0,
            end,
        }
    }
}

/// Iterator over edge subsets of the complete graph, optionally filtered
/// down to forests.
pub struct ForestIter {
    inner: EdgeSubsetIter,
    forests_only: bool,
}

impl Iterator for ForestIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let it = &mut self.inner;
        while it.mask < it.end {
            let mask = it.mask;
            it.mask += 1;
            let pairs: Vec<(usize, usize)> = it
                .all_edges
                .iter()
                .enumerate()
                .filter(|(e, _)| mask >> e & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if self.forests_only && !acyclic_subset(it.n, &pairs) {
                continue;
            }
            return Some(Graph::from_edge_list(it.n, &pairs).expect("subset of K_n is valid"));
        }
        None
    }
}

/// Union-find acyclicity test on an explicit edge set.
fn acyclic_subset(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for &(u, v) in pairs {
        let ru = find(&mut root, u);
        let rv = find(&mut root, v);
        if ru == rv {
            return false;
        }
        root[ru] = rv;
    }
    true
}
