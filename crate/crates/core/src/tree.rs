//! Trees over labels, including the g-trees produced by graph-to-tree
//! enhancement.

use crate::error::{Error, Result};
use crate::label::Label;
use std::collections::BTreeSet;
use std::fmt;

/// Which enhancement produced a tree. `Plain` marks trees that were never
/// enhanced (direct tree inputs, decoder outputs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TreePartition,
    Scesor,
    Plain,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::TreePartition => "treepart",
            Method::Scesor => "scesor",
            Method::Plain => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "treepart" => Some(Method::TreePartition),
            "scesor" => Some(Method::Scesor),
            "none" => Some(Method::Plain),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tree edge by label, prior to index resolution. `oriented` means the edge
/// is directed `u -> v`; `source` carries the id of the graph edge the tree
/// edge descends from, when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GEdge {
    pub u: Label,
    pub v: Label,
    pub oriented: bool,
    pub source: Option<u32>,
}

impl GEdge {
    pub fn plain(u: Label, v: Label) -> Self {
        GEdge {
            u,
            v,
            oriented: false,
            source: None,
        }
    }
}

/// Resolved tree edge: endpoints are vertex indices into the label table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub u: u32,
    pub v: u32,
    pub oriented: bool,
    pub source: Option<u32>,
}

/// A tree over labels. Vertex indices coincide with label rank: index 0 is
/// the order-smallest label. A g-tree additionally satisfies the replica
/// arithmetic of its source graph, checked by [`crate::graph::merge_replicas`].
#[derive(Debug, Clone)]
pub struct GTree {
    labels: Vec<Label>,
    edges: Vec<TreeEdge>,
    method: Method,
    adj_off: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl GTree {
    /// Builds a tree from its edge list; the vertex set is the set of
    /// endpoint labels. Rejects duplicate structure, cycles, and forests.
    pub fn from_parts(method: Method, edges: Vec<GEdge>) -> Result<Self> {
        let mut label_set = BTreeSet::new();
        for e in &edges {
            label_set.insert(e.u);
            label_set.insert(e.v);
        }
        let labels: Vec<Label> = label_set.into_iter().collect();
        Self::from_labels_and_edges(method, labels, edges)
    }

    /// Like [`GTree::from_parts`] with an explicit vertex set (needed for the
    /// single-vertex tree, which has no edges).
    pub fn from_labels_and_edges(
        method: Method,
        labels: Vec<Label>,
        edges: Vec<GEdge>,
    ) -> Result<Self> {
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateLabel(w[0]));
            }
            if w[0] > w[1] {
                return Err(Error::DuplicateLabel(w[1]));
            }
        }
        let index_of = |label: Label| -> Result<u32> {
            labels
                .binary_search(&label)
                .map(|i| i as u32)
                .map_err(|_| Error::DuplicateLabel(label))
        };
        let n = labels.len();
        if edges.len() + 1 != n {
            return Err(Error::EdgeCountMismatch {
                vertices: n,
                expected: n.saturating_sub(1),
                found: edges.len(),
            });
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            resolved.push(TreeEdge {
                u: index_of(e.u)?,
                v: index_of(e.v)?,
                oriented: e.oriented,
                source: e.source,
            });
        }

        let (adj_off, adj) = build_adjacency(n, &resolved);
        let tree = GTree {
            labels,
            edges: resolved,
            method,
            adj_off,
            adj,
        };
        tree.check_tree()?;
        Ok(tree)
    }

    /// Fast-path constructor for the enhancement pipelines: vertices arrive
    /// as an unsorted label table with edges as table indices. Sorts the
    /// table, remaps the edges, and validates as usual.
    pub(crate) fn from_node_table(
        method: Method,
        node_labels: Vec<Label>,
        node_edges: Vec<(u32, u32, bool, Option<u32>)>,
    ) -> Result<Self> {
        let n = node_labels.len();
        if node_edges.len() + 1 != n {
            return Err(Error::EdgeCountMismatch {
                vertices: n,
                expected: n.saturating_sub(1),
                found: node_edges.len(),
            });
        }
        // The enhancers emit replicas of one base in increasing index order,
        // so a stable counting sort on the base yields full label order in
        // linear time; an order check guards the assumption, falling back to
        // a comparison sort.
        let max_base = node_labels.iter().map(|l| l.base()).max().unwrap_or(1) as usize;
        let mut offset = vec![0u32; max_base + 1];
        for l in &node_labels {
            offset[l.base() as usize] += 1;
        }
        let mut sum = 0u32;
        for slot in offset.iter_mut() {
            let count = *slot;
            *slot = sum;
            sum += count;
        }
        let mut perm = vec![0u32; n];
        for (i, l) in node_labels.iter().enumerate() {
            let slot = &mut offset[l.base() as usize];
            perm[*slot as usize] = i as u32;
            *slot += 1;
        }
        let mut sorted = perm
            .iter()
            .map(|&i| (node_labels[i as usize], i))
            .collect::<Vec<(Label, u32)>>();
        if sorted.windows(2).any(|w| w[0].0 >= w[1].0) {
            sorted.sort_unstable();
        }
        let mut rank = vec![0u32; n];
        let mut labels = Vec::with_capacity(n);
        for (new_index, &(label, old)) in sorted.iter().enumerate() {
            rank[old as usize] = new_index as u32;
            labels.push(label);
        }
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateLabel(w[0]));
            }
        }
        let edges: Vec<TreeEdge> = node_edges
            .into_iter()
            .map(|(u, v, oriented, source)| TreeEdge {
                u: rank[u as usize],
                v: rank[v as usize],
                oriented,
                source,
            })
            .collect();
        let (adj_off, adj) = build_adjacency(n, &edges);
        let tree = GTree {
            labels,
            edges,
            method,
            adj_off,
            adj,
        };
        tree.check_tree()?;
        Ok(tree)
    }

    fn check_tree(&self) -> Result<()> {
        // Edge count already matches n - 1, so connectivity implies
        // acyclicity; a sequential union-find sweep checks both at once.
        let n = self.labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        for e in &self.edges {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru == rv {
                return Err(Error::CycleInTree(self.labels[e.u as usize]));
            }
            parent[ru as usize] = rv;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_of(&self, v: u32) -> Label {
        self.labels[v as usize]
    }

    pub fn index_of(&self, label: Label) -> Option<u32> {
        self.labels.binary_search(&label).ok().map(|i| i as u32)
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Neighbors of vertex index `v`, sorted by label rank: `(neighbor,
    /// edge id)` pairs.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[self.adj_off[v as usize] as usize..self.adj_off[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj_off[v as usize + 1] - self.adj_off[v as usize]
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.labels.len() as u32).map(|v| self.degree(v)).collect()
    }

    /// Number of replica-labeled vertices.
    pub fn replica_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_replica()).count()
    }

    pub fn pendant_labels(&self) -> Vec<Label> {
        (0..self.labels.len() as u32)
            .filter(|&v| self.degree(v) == 1)
            .map(|v| self.label_of(v))
            .collect()
    }
}

fn build_adjacency(n: usize, edges: &[TreeEdge]) -> (Vec<u32>, Vec<(u32, u32)>) {
    let mut degree = vec![0u32; n];
    for e in edges {
        degree[e.u as usize] += 1;
        degree[e.v as usize] += 1;
    }
    let mut off = vec![0u32; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + degree[v];
    }
    let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
    if n > 1 << 18 {
        // Large tables: scatter in two rounds, first into 256 vertex-range
        // buckets (sequential-ish writes), then within each bucket while it
        // is cache-resident.
        let bits = u32::BITS - (n as u32 - 1).leading_zeros();
        let shift = bits.saturating_sub(8);
        let bucket_of = |v: u32| (v >> shift) as usize;
        let mut counts = [0u32; 256];
        for e in edges {
            counts[bucket_of(e.u)] += 1;
            counts[bucket_of(e.v)] += 1;
        }
        let mut starts = [0u32; 256];
        let mut sum = 0;
        for (s, c) in starts.iter_mut().zip(counts.iter()) {
            *s = sum;
            sum += c;
        }
        let mut staged = vec![(0u32, 0u32, 0u32); 2 * edges.len()];
        let mut fill = starts;
        for (id, e) in edges.iter().enumerate() {
            staged[fill[bucket_of(e.u)] as usize] = (e.u, e.v, id as u32);
            fill[bucket_of(e.u)] += 1;
            staged[fill[bucket_of(e.v)] as usize] = (e.v, e.u, id as u32);
            fill[bucket_of(e.v)] += 1;
        }
        let mut cursor: Vec<u32> = off[..n].to_vec();
        for &(v, w, id) in &staged {
            adj[cursor[v as usize] as usize] = (w, id);
            cursor[v as usize] += 1;
        }
    } else {
        let mut cursor: Vec<u32> = off[..n].to_vec();
        for (id, e) in edges.iter().enumerate() {
            adj[cursor[e.u as usize] as usize] = (e.v, id as u32);
            cursor[e.u as usize] += 1;
            adj[cursor[e.v as usize] as usize] = (e.u, id as u32);
            cursor[e.v as usize] += 1;
        }
    }
    for v in 0..n {
        adj[off[v] as usize..off[v + 1] as usize].sort_unstable();
    }
    (off, adj)
}
