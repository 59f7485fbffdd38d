//! Seek-Clear-Edge traversal with Split-On-Revisit.
//!
//! The traversal is edge-centric: from the current vertex it always takes
//! the order-smallest unvisited incident edge, and it backtracks only when
//! none remains, so a vertex is treated the same whether it is being
//! discovered or revisited. Revisiting a vertex `v` through a fresh edge
//! closes a cycle; the split-pair of `v` — the edge of its latest arrival
//! and the edge of its latest departure — moves onto a new replica `v^i`,
//! which breaks the cycle and drops the degree of `v` by two. Replicas come
//! out with degree two, so their labels always appear in the code and the
//! pendant list stays empty whenever the traversal starts at a pendant
//! vertex.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::label::Label;
use crate::stats::{ClassCounts, EnhanceStats};
use crate::tree::{GTree, Method};

/// Classification of g-tree vertices after the traversal: split originals,
/// untouched originals, and replicas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    SVertex,
    GVertex,
    RVertex,
}

/// Last-visit record of one vertex during the traversal.
#[derive(Debug, Clone, Copy)]
pub struct VisitRecord {
    /// Edge of the latest arrival, `None` at the traversal root.
    pub entry: Option<u32>,
    /// Edge of the latest departure, `None` until the vertex departs again.
    pub exit: Option<u32>,
}

// Internal packed form: u32::MAX marks absence.
const NO_EDGE: u32 = u32::MAX;

// Per-vertex traversal state in one record: arrival and departure edges of
// the latest visit (NO_EDGE marks absence), the adjacency cursor, and the
// replica counter with a visited flag folded into its top bit.
#[derive(Clone, Copy)]
struct VState {
    entry: u32,
    exit: u32,
    cursor: u32,
    splits_and_visited: u32,
}

const VISITED_BIT: u32 = 1 << 31;

impl VState {
    fn visited(self) -> bool {
        self.splits_and_visited & VISITED_BIT != 0
    }

    fn splits(self) -> u32 {
        self.splits_and_visited & !VISITED_BIT
    }
}

struct Traversal {
    state: Vec<VState>,
    edge_visited: Vec<bool>,
    /// Edge endpoints as node ids: originals are `0..n1`, replicas get
    /// fresh ids as they are created.
    endpoints: Vec<(u32, u32)>,
    node_labels: Vec<Label>,
    visit_order: Vec<u32>,
}

impl Traversal {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count() as usize;
        Traversal {
            state: vec![
                VState {
                    entry: NO_EDGE,
                    exit: NO_EDGE,
                    cursor: 0,
                    splits_and_visited: 0,
                };
                n
            ],
            edge_visited: vec![false; g.edge_count()],
            endpoints: g
                .edges()
                .iter()
                .map(|e| (e.a.base() - 1, e.b.base() - 1))
                .collect(),
            node_labels: (0..n as u32).map(|v| Label::original(v + 1)).collect(),
            visit_order: Vec::with_capacity(g.edge_count()),
        }
    }

    fn retarget(&mut self, edge: u32, from: u32, to: u32) {
        let (a, b) = self.endpoints[edge as usize];
        self.endpoints[edge as usize] = if a == from { (to, b) } else { (a, to) };
    }

    /// Split-On-Revisit: move the recorded split-pair of `v` onto a fresh
    /// replica. The degenerate cases keep one edge each: the root has no
    /// entry edge on its first revisit, and a vertex revisited before
    /// departing again has no exit edge; either way the replica comes out
    /// pendant and must be stored in `L`.
    fn split(&mut self, v: u32, cycle_edge: u32) -> Label {
        self.state[v as usize].splits_and_visited += 1;
        let replica = Label::replica(v + 1, self.state[v as usize].splits());
        let node = self.node_labels.len() as u32;
        self.node_labels.push(replica);
        let VState { entry, exit, .. } = self.state[v as usize];
        if entry != NO_EDGE {
            self.retarget(entry, v, node);
        }
        if exit != NO_EDGE {
            self.retarget(exit, v, node);
        }
        self.state[v as usize].entry = cycle_edge;
        self.state[v as usize].exit = NO_EDGE;
        replica
    }

    fn run(&mut self, g: &Graph, start: u32, mut on_revisit: impl FnMut(Label, VisitRecord, u32)) {
        let mut stack = vec![start];
        self.state[start as usize].splits_and_visited |= VISITED_BIT;
        while let Some(&v) = stack.last() {
            let nbrs = g.neighbors(v);
            let mut advanced = false;
            while (self.state[v as usize].cursor as usize) < nbrs.len() {
                let (w, eid) = nbrs[self.state[v as usize].cursor as usize];
                self.state[v as usize].cursor += 1;
                if self.edge_visited[eid as usize] {
                    continue;
                }
                self.edge_visited[eid as usize] = true;
                self.visit_order.push(eid);
                self.state[v as usize].exit = eid;
                if self.state[w as usize].visited() {
                    let VState { entry, exit, .. } = self.state[w as usize];
                    let record = VisitRecord {
                        entry: (entry != NO_EDGE).then_some(entry),
                        exit: (exit != NO_EDGE).then_some(exit),
                    };
                    on_revisit(Label::original(w + 1), record, eid);
                    self.split(w, eid);
                } else {
                    self.state[w as usize].splits_and_visited |= VISITED_BIT;
                    self.state[w as usize].entry = eid;
                    self.state[w as usize].exit = NO_EDGE;
                }
                stack.push(w);
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
            }
        }
    }
}

/// Default start vertex: the order-smallest pendant vertex, or the
/// order-smallest vertex when the graph has no pendant vertex.
pub fn default_start(g: &Graph) -> Label {
    for v in 0..g.vertex_count() {
        if g.degree(v) == 1 {
            return Label::original(v + 1);
        }
    }
    Label::original(1)
}

/// Runs the traversal and reports the order in which edges were visited;
/// `on_revisit` fires once per cycle-closing arrival with the revisited
/// vertex, its last-visit record, and the closing edge.
pub fn sce_traverse(
    g: &Graph,
    start: Label,
    on_revisit: impl FnMut(Label, VisitRecord, u32),
) -> Result<Vec<u32>> {
    if start.is_replica() || start.base() > g.vertex_count() {
        return Err(Error::StartVertexMissing(start));
    }
    let mut t = Traversal::new(g);
    t.run(g, start.base() - 1, on_revisit);
    Ok(t.visit_order)
}

/// Output of the SCESOR pipeline.
#[derive(Debug, Clone)]
pub struct Enhanced {
    pub tree: GTree,
    pub pendant_list: Vec<Label>,
    pub classes: Vec<(Label, VertexClass)>,
    pub stats: EnhanceStats,
    pub visit_order: Vec<u32>,
}

/// Enhances a graph from the default start vertex.
pub fn enhance_scesor(g: &Graph) -> Result<Enhanced> {
    enhance_scesor_from(g, default_start(g))
}

/// Enhances a graph from an explicit start vertex.
pub fn enhance_scesor_from(g: &Graph, start: Label) -> Result<Enhanced> {
    if start.is_replica() || start.base() > g.vertex_count() {
        return Err(Error::StartVertexMissing(start));
    }
    let began = std::time::Instant::now();
    let mut t = Traversal::new(g);
    t.run(g, start.base() - 1, |_, _, _| {});
    debug_assert!(t.edge_visited.iter().all(|&v| v));

    let n1 = g.vertex_count() as usize;
    // The source orientation stays attached to the physical endpoints:
    // node `a` descends from the edge's `a` side.
    let edges: Vec<(u32, u32, bool, Option<u32>)> = t
        .endpoints
        .iter()
        .enumerate()
        .map(|(eid, &(a, b))| (a, b, g.edges()[eid].oriented, Some(eid as u32)))
        .collect();

    let mut classes = Vec::with_capacity(t.node_labels.len());
    let mut counts = ClassCounts::default();
    for (node, &label) in t.node_labels.iter().enumerate() {
        let class = if node >= n1 {
            counts.replicas += 1;
            VertexClass::RVertex
        } else if t.state[node].splits() > 0 {
            counts.split += 1;
            VertexClass::SVertex
        } else {
            counts.untouched += 1;
            VertexClass::GVertex
        };
        classes.push((label, class));
    }
    let splits: u64 = t.state.iter().map(|s| s.splits() as u64).sum();

    let tree = GTree::from_node_table(Method::Scesor, t.node_labels, edges)?;
    let pendant_list: Vec<Label> = tree
        .pendant_labels()
        .into_iter()
        .filter(|l| l.is_replica())
        .collect();
    let stats = EnhanceStats {
        vertex_splits: splits,
        edge_swaps: 0,
        label_swaps: 0,
        max_be_class: 0,
        be_tree_count: 0,
        pendant_list_len: pendant_list.len() as u64,
        vertex_classes: Some(counts),
        elapsed: began.elapsed(),
    };

    Ok(Enhanced {
        tree,
        pendant_list,
        classes,
        stats,
        visit_order: t.visit_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graphs_equal, merge_replicas, Edge};
    use crate::tree::GEdge;

    fn graph(n: u32, pairs: &[(u32, u32)]) -> Graph {
        Graph::new(
            n,
            pairs
                .iter()
                .map(|&(a, b)| Edge::undirected(Label::original(a), Label::original(b)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn path_graph_visits_in_path_order_without_revisits() {
        let g = graph(4, &[(1, 2), (2, 3), (3, 4)]);
        let mut revisits = 0;
        let order = sce_traverse(&g, Label::original(1), |_, _, _| revisits += 1).unwrap();
        assert_eq!(order, vec![0, 1, 2]);
        assert_eq!(revisits, 0);
    }

    #[test]
    fn cycle_with_tail_revisits_once() {
        // Tail 1-2 plus cycle 2-3-4-5-2, started at the pendant vertex 1.
        let g = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 2)]);
        let mut revisited = Vec::new();
        let order = sce_traverse(&g, Label::original(1), |l, rec, cycle| {
            revisited.push((l, rec.entry, rec.exit, cycle));
        })
        .unwrap();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
        // Vertex 2 is revisited through edge (5,2); its split-pair is the
        // tail edge it arrived by and the cycle edge it departed by.
        assert_eq!(revisited, vec![(Label::original(2), Some(0), Some(1), 4)]);

        let enhanced = enhance_scesor(&g).unwrap();
        // The split moves the tail edge and the first cycle edge onto 2^1,
        // leaving the path 1 - 2^1 - 3 - 4 - 5 - 2.
        let expected = GTree::from_parts(
            Method::Scesor,
            vec![
                GEdge::plain(Label::original(1), Label::replica(2, 1)),
                GEdge::plain(Label::replica(2, 1), Label::original(3)),
                GEdge::plain(Label::original(3), Label::original(4)),
                GEdge::plain(Label::original(4), Label::original(5)),
                GEdge::plain(Label::original(5), Label::original(2)),
            ],
        )
        .unwrap();
        assert_eq!(enhanced.tree.labels(), expected.labels());
        let canon = |t: &GTree| {
            let mut e: Vec<(Label, Label)> = t
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (t.label_of(e.u), t.label_of(e.v));
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            e
        };
        assert_eq!(canon(&enhanced.tree), canon(&expected));
        assert!(enhanced.pendant_list.is_empty());
    }

    #[test]
    fn any_tree_passes_through_unchanged() {
        let g = graph(5, &[(1, 3), (3, 2), (3, 4), (4, 5)]);
        let enhanced = enhance_scesor(&g).unwrap();
        assert_eq!(enhanced.stats.vertex_splits, 0);
        assert_eq!(enhanced.tree.replica_count(), 0);
        assert!(graphs_equal(&merge_replicas(&enhanced.tree).unwrap(), &g));
    }

    #[test]
    fn triangle_without_pendant_start_leaves_one_pendant_replica() {
        let g = graph(3, &[(1, 2), (2, 3), (3, 1)]);
        let enhanced = enhance_scesor(&g).unwrap();
        assert_eq!(enhanced.tree.replica_count(), 1);
        assert_eq!(enhanced.pendant_list, vec![Label::replica(1, 1)]);
        let r = enhanced.tree.index_of(Label::replica(1, 1)).unwrap();
        assert_eq!(enhanced.tree.degree(r), 1);
        assert!(graphs_equal(&merge_replicas(&enhanced.tree).unwrap(), &g));
    }

    #[test]
    fn second_revisit_creates_second_replica() {
        // Two cycles through vertex 2, entered from the pendant tail 1.
        let g = graph(
            6,
            &[(1, 2), (2, 3), (3, 4), (4, 2), (2, 5), (5, 6), (6, 2)],
        );
        let enhanced = enhance_scesor(&g).unwrap();
        assert_eq!(enhanced.tree.replica_count(), 2);
        assert!(enhanced
            .tree
            .index_of(Label::replica(2, 2))
            .is_some());
        assert!(enhanced.pendant_list.is_empty());
        assert!(graphs_equal(&merge_replicas(&enhanced.tree).unwrap(), &g));
    }

    #[test]
    fn pendant_start_makes_all_replicas_degree_two() {
        let g = graph(
            7,
            &[(1, 2), (2, 3), (3, 4), (4, 2), (4, 5), (5, 6), (6, 4), (2, 7)],
        );
        let enhanced = enhance_scesor(&g).unwrap();
        assert!(enhanced.pendant_list.is_empty());
        for (label, class) in &enhanced.classes {
            if *class == VertexClass::RVertex {
                let idx = enhanced.tree.index_of(*label).unwrap();
                assert_eq!(enhanced.tree.degree(idx), 2);
            }
        }
        assert!(graphs_equal(&merge_replicas(&enhanced.tree).unwrap(), &g));
    }

    #[test]
    fn parallel_edges_form_a_two_cycle() {
        let g = graph(3, &[(1, 2), (2, 3), (2, 3)]);
        let enhanced = enhance_scesor(&g).unwrap();
        assert_eq!(enhanced.tree.replica_count(), 1);
        assert!(graphs_equal(&merge_replicas(&enhanced.tree).unwrap(), &g));
    }

    #[test]
    fn start_override_is_validated() {
        let g = graph(3, &[(1, 2), (2, 3), (3, 1)]);
        assert!(matches!(
            enhance_scesor_from(&g, Label::original(9)),
            Err(Error::StartVertexMissing(_))
        ));
    }
}
