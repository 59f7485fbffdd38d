//! Connected undirected multigraphs over labels, with optional per-edge
//! orientation for DAG inputs.

use crate::error::{Error, Result};
use crate::label::Label;
use crate::tree::GTree;
use std::collections::BTreeMap;

/// One edge of a [`Graph`]. When `oriented` is set the edge is directed from
/// `a` to `b`; otherwise the pair is unordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: Label,
    pub b: Label,
    pub oriented: bool,
}

impl Edge {
    pub fn undirected(a: Label, b: Label) -> Self {
        Edge {
            a,
            b,
            oriented: false,
        }
    }

    pub fn directed(source: Label, target: Label) -> Self {
        Edge {
            a: source,
            b: target,
            oriented: true,
        }
    }
}

/// A connected multigraph on vertices `1..=n1` (all replica index 0).
/// Self-loops are rejected; parallel edges are allowed. Adjacency lists are
/// kept sorted ascending by label, which fixes the tie-breaking of every
/// traversal built on top.
#[derive(Debug, Clone)]
pub struct Graph {
    n1: u32,
    edges: Vec<Edge>,
    // CSR adjacency: for vertex index v, adj[adj_off[v]..adj_off[v+1]] lists
    // (neighbor index, edge id) sorted by neighbor label then edge id.
    adj_off: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl Graph {
    /// Validates endpoints, rejects self-loops and disconnected inputs, and
    /// builds the sorted adjacency.
    pub fn new(n1: u32, edges: Vec<Edge>) -> Result<Self> {
        if n1 == 0 {
            return Err(Error::EmptyGraph);
        }
        for e in &edges {
            for endpoint in [e.a, e.b] {
                if endpoint.is_replica() || endpoint.base() > n1 {
                    return Err(Error::EndpointOutOfRange {
                        endpoint,
                        n1,
                    });
                }
            }
            if e.a == e.b {
                return Err(Error::SelfLoop(e.a));
            }
        }

        let mut degree = vec![0u32; n1 as usize];
        for e in &edges {
            degree[(e.a.base() - 1) as usize] += 1;
            degree[(e.b.base() - 1) as usize] += 1;
        }
        let mut adj_off = vec![0u32; n1 as usize + 1];
        for v in 0..n1 as usize {
            adj_off[v + 1] = adj_off[v] + degree[v];
        }
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        let mut cursor: Vec<u32> = adj_off[..n1 as usize].to_vec();
        for (id, e) in edges.iter().enumerate() {
            let (ia, ib) = ((e.a.base() - 1) as usize, (e.b.base() - 1) as usize);
            adj[cursor[ia] as usize] = (ib as u32, id as u32);
            cursor[ia] += 1;
            adj[cursor[ib] as usize] = (ia as u32, id as u32);
            cursor[ib] += 1;
        }
        for v in 0..n1 as usize {
            adj[adj_off[v] as usize..adj_off[v + 1] as usize].sort_unstable();
        }

        let graph = Graph {
            n1,
            edges,
            adj_off,
            adj,
        };
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.n1 as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached < n {
            let unreached = seen.iter().position(|s| !s).unwrap() as u32 + 1;
            return Err(Error::Disconnected {
                component: Label::original(1),
                unreached: Label::original(unreached),
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> u32 {
        self.n1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of vertex index `v` (0-based), sorted ascending.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[self.adj_off[v as usize] as usize..self.adj_off[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj_off[v as usize + 1] - self.adj_off[v as usize]
    }

    pub fn label_of(&self, v: u32) -> Label {
        Label::original(v + 1)
    }

    /// True when at least one edge carries an orientation.
    pub fn has_directions(&self) -> bool {
        self.edges.iter().any(|e| e.oriented)
    }

    /// True when every edge carries an orientation.
    pub fn fully_directed(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.oriented)
    }

    pub fn degree_map(&self) -> DegreeMap {
        let mut map = BTreeMap::new();
        for e in &self.edges {
            *map.entry(e.a).or_insert(0) += 1;
            *map.entry(e.b).or_insert(0) += 1;
        }
        for v in 1..=self.n1 {
            map.entry(Label::original(v)).or_insert(0);
        }
        DegreeMap(map)
    }
}

/// Per-label degrees; the sum of all degrees is twice the edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMap(pub BTreeMap<Label, usize>);

impl DegreeMap {
    pub fn get(&self, label: Label) -> usize {
        self.0.get(&label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

/// Identifies every replica label `(b, k)` with its base `(b, 0)` and
/// re-targets edges accordingly, recovering the graph a g-tree encodes.
pub fn merge_replicas(tree: &GTree) -> Result<Graph> {
    let mut n1 = 0u32;
    let mut base_seen = BTreeMap::new();
    for &label in tree.labels() {
        if !label.is_replica() {
            n1 = n1.max(label.base());
        }
        base_seen.entry(label.base()).or_insert(false);
    }
    for &label in tree.labels() {
        if !label.is_replica() {
            base_seen.insert(label.base(), true);
        }
    }
    if let Some((&missing, _)) = base_seen.iter().find(|(_, covered)| !**covered) {
        return Err(Error::BaseLabelGap { n1, missing });
    }
    for base in 1..=n1 {
        if !base_seen.contains_key(&base) {
            return Err(Error::BaseLabelGap { n1, missing: base });
        }
    }

    let mut edges = Vec::with_capacity(tree.edge_count());
    for e in tree.edges() {
        let a = tree.label_of(e.u).to_original();
        let b = tree.label_of(e.v).to_original();
        if a == b {
            return Err(Error::CorruptGTree(a));
        }
        edges.push(Edge {
            a,
            b,
            oriented: e.oriented,
        });
    }
    Graph::new(n1, edges)
}

/// Structural equality: same vertex count and same multiset of unordered
/// edges; orientations are compared only when both graphs carry them.
pub fn graphs_equal(a: &Graph, b: &Graph) -> bool {
    if a.n1 != b.n1 || a.edges.len() != b.edges.len() {
        return false;
    }
    let both_directed = a.has_directions() && b.has_directions();
    let canon = |g: &Graph| {
        let mut v: Vec<(Label, Label, bool)> = g
            .edges
            .iter()
            .map(|e| {
                if both_directed && e.oriented {
                    (e.a, e.b, true)
                } else {
                    (e.a.min(e.b), e.a.max(e.b), false)
                }
            })
            .collect();
        v.sort_unstable();
        v
    };
    canon(a) == canon(b)
}
