//! Tree-partition enhancement.
//!
//! A single DFS splits the edge set into a spanning tree plus classed
//! back-edge trees (be-trees): a back edge lands in the smallest class where
//! it closes no cycle, same-class trees stay vertex-disjoint, and an edge
//! that would open a new class can instead swap places with a tree edge on
//! its cycle. Each be-tree is then grafted onto the spanning tree at a join
//! vertex, every other shared vertex is split into a replica, and label
//! swaps move replica labels off pendant vertices so they need not be stored
//! in the list `L`.

use crate::error::Result;
use crate::graph::Graph;
use crate::label::Label;
use crate::stats::EnhanceStats;
use crate::tree::{GEdge, GTree, Method};
use std::collections::{BTreeMap, BTreeSet};

/// A cycle-edge is re-probed against at most this many backtracked tree
/// edges before it is finalized into a higher class. Keeps the swap search
/// linear; only optimization quality is at stake, never correctness.
const PROBE_CAP: u32 = 48;

/// Final partition assignment of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    DfsTree,
    BeTree { class: u32, tree: u32 },
}

/// Incremental record of the partition construction, replayable by test
/// oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionEvent {
    TreeEdge { edge: u32 },
    NewBeTree { edge: u32, class: u32, tree: u32 },
    JoinBeTree { edge: u32, class: u32, tree: u32 },
    UnionBeTrees { edge: u32, class: u32, kept: u32, absorbed: u32 },
    /// `cycle_edge` joins the spanning tree; `swap_edge` leaves it (the next
    /// event assigns `swap_edge` to class 1).
    EdgeSwap { cycle_edge: u32, swap_edge: u32 },
}

/// Cycle-edge bookkeeping for the edge-swap search.
#[derive(Debug, Clone, Default)]
pub struct SwapLedger {
    /// Cycle-edges that were never rescued by a swap.
    pub cycle_edges: Vec<u32>,
    /// Tree edges probed as swap candidates.
    pub probed: Vec<u32>,
    /// Applied swaps as (cycle edge, swapped-out tree edge).
    pub applied: Vec<(u32, u32)>,
}

/// Per-vertex tree-index lists, stored flat: `of(v)` yields the
/// `(class, be-tree id)` pairs of vertex `v`, sorted by class, with ids
/// resolved to their final representatives.
#[derive(Debug, Clone)]
pub struct VertexTreeLists {
    offsets: Vec<u32>,
    entries: Vec<(u32, u32)>,
}

impl VertexTreeLists {
    pub fn of(&self, v: u32) -> &[(u32, u32)] {
        &self.entries[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// Everything the DFS learned about the edge partition.
#[derive(Debug, Clone)]
pub struct PartitionInfo {
    /// Per-edge assignment, indexed by graph edge id.
    pub assignments: Vec<Partition>,
    /// Per-vertex tree-index lists.
    pub tree_lists: VertexTreeLists,
    pub events: Vec<PartitionEvent>,
    pub ledger: SwapLedger,
    pub max_class: u32,
    /// Number of distinct be-trees after all unions.
    pub be_tree_count: u32,
    /// Groups of be-trees that share vertices, each `(class, tree id)`.
    pub families: Vec<Vec<(u32, u32)>>,
}

/// Disjoint-set index over be-trees plus the per-vertex tree lists.
///
/// Union is by size with path compression; the representative's id is the
/// reported be-tree index. The per-vertex lists live in one arena as linked
/// chains, which keeps million-edge runs allocation-light.
#[derive(Debug, Clone, Default)]
pub struct BeTreeIndex {
    parent: Vec<u32>,
    size: Vec<u32>,
    list_head: Vec<u32>,
    list_entries: Vec<(u32, u32, u32)>, // (class, tree, next)
}

const NO_ENTRY: u32 = u32::MAX;

/// What [`BeTreeIndex::add_edge`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddEdgeOutcome {
    New { class: u32, tree: u32 },
    Join { class: u32, tree: u32 },
    Union { class: u32, kept: u32, absorbed: u32 },
}

impl BeTreeIndex {
    pub fn new(vertices: usize) -> Self {
        BeTreeIndex {
            parent: Vec::new(),
            size: Vec::new(),
            list_head: vec![NO_ENTRY; vertices],
            list_entries: Vec::new(),
        }
    }

    pub fn find(&mut self, t: u32) -> u32 {
        let mut root = t;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = t;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn push_entry(&mut self, v: u32, class: u32, tree: u32) {
        let next = self.list_head[v as usize];
        self.list_entries.push((class, tree, next));
        self.list_head[v as usize] = self.list_entries.len() as u32 - 1;
    }

    fn raw_membership(&self, v: u32, class: u32) -> Option<u32> {
        let mut cursor = self.list_head[v as usize];
        while cursor != NO_ENTRY {
            let (c, t, next) = self.list_entries[cursor as usize];
            if c == class {
                return Some(t);
            }
            cursor = next;
        }
        None
    }

    /// The class-`class` be-tree containing `v`, if any.
    pub fn membership(&mut self, v: u32, class: u32) -> Option<u32> {
        let entry = self.raw_membership(v, class)?;
        Some(self.find(entry))
    }

    /// Smallest class in which assigning an edge `(u, v)` closes no cycle,
    /// i.e. the endpoints do not share a be-tree of that class.
    pub fn smallest_free_class(&mut self, u: u32, v: u32) -> u32 {
        let mut class = 1;
        loop {
            match (self.membership(u, class), self.membership(v, class)) {
                (Some(a), Some(b)) if a == b => class += 1,
                _ => return class,
            }
        }
    }

    /// Assigns a back edge to its smallest free class: union two trees, join
    /// an existing one, or open a fresh be-tree with a one-higher index.
    pub fn add_edge(&mut self, u: u32, v: u32) -> AddEdgeOutcome {
        let class = self.smallest_free_class(u, v);
        match (self.membership(u, class), self.membership(v, class)) {
            (Some(a), Some(b)) => {
                debug_assert_ne!(a, b);
                let (mut kept, mut absorbed) = (a, b);
                if self.size[kept as usize] < self.size[absorbed as usize] {
                    std::mem::swap(&mut kept, &mut absorbed);
                }
                self.parent[absorbed as usize] = kept;
                self.size[kept as usize] += self.size[absorbed as usize];
                AddEdgeOutcome::Union {
                    class,
                    kept,
                    absorbed,
                }
            }
            (Some(t), None) => {
                self.push_entry(v, class, t);
                AddEdgeOutcome::Join { class, tree: t }
            }
            (None, Some(t)) => {
                self.push_entry(u, class, t);
                AddEdgeOutcome::Join { class, tree: t }
            }
            (None, None) => {
                let t = self.parent.len() as u32;
                self.parent.push(t);
                self.size.push(1);
                self.push_entry(u, class, t);
                self.push_entry(v, class, t);
                AddEdgeOutcome::New { class, tree: t }
            }
        }
    }

    fn resolved_lists(&mut self) -> VertexTreeLists {
        let heads = self.list_head.clone();
        let mut offsets = Vec::with_capacity(heads.len() + 1);
        offsets.push(0u32);
        let mut entries: Vec<(u32, u32)> = Vec::with_capacity(self.list_entries.len());
        for &head in &heads {
            let start = entries.len();
            let mut cursor = head;
            while cursor != NO_ENTRY {
                let (c, t, next) = self.list_entries[cursor as usize];
                entries.push((c, t));
                cursor = next;
            }
            for e in entries[start..].iter_mut() {
                e.1 = self.find(e.1);
            }
            entries[start..].sort_unstable();
            offsets.push(entries.len() as u32);
        }
        VertexTreeLists { offsets, entries }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pending {
    edge: u32,
    low: u32,
    high: u32,
    probes: u32,
}

/// Partitions the edges of `g` by a single DFS from the order-smallest
/// vertex, visiting neighbors in ascending label order.
pub fn dfs_partition(g: &Graph) -> PartitionInfo {
    // Per-vertex traversal state packed into one record per vertex; the
    // DFS touches all four fields per step. `enter == u32::MAX` means
    // unvisited.
    #[derive(Clone, Copy)]
    struct VertexState {
        enter: u32,
        depth: u32,
        parent_edge: u32,
        cursor: u32,
    }
    let n = g.vertex_count() as usize;
    let m = g.edge_count();
    let mut state = vec![
        VertexState {
            enter: u32::MAX,
            depth: 0,
            parent_edge: u32::MAX,
            cursor: 0,
        };
        n
    ];
    let mut edge_done = vec![false; m];
    let mut is_tree = vec![false; m];
    let mut index = BeTreeIndex::new(n);
    let mut events = Vec::with_capacity(m + m / 8);
    let mut ledger = SwapLedger::default();
    let mut pendings: Vec<Pending> = Vec::new();
    let mut assignments = vec![Partition::DfsTree; m];

    let finalize = |pend: Pending,
                        index: &mut BeTreeIndex,
                        events: &mut Vec<PartitionEvent>,
                        ledger: &mut SwapLedger,
                        assignments: &mut Vec<Partition>| {
        let outcome = index.add_edge(pend.low, pend.high);
        record_outcome(pend.edge, outcome, events, assignments);
        ledger.cycle_edges.push(pend.edge);
    };

    let mut stack = vec![0u32];
    state[0].enter = 0;
    let mut time = 1u32;
    while let Some(&v) = stack.last() {
        let nbrs = g.neighbors(v);
        let mut descended = false;
        while (state[v as usize].cursor as usize) < nbrs.len() {
            let (w, eid) = nbrs[state[v as usize].cursor as usize];
            state[v as usize].cursor += 1;
            if edge_done[eid as usize] {
                continue;
            }
            edge_done[eid as usize] = true;
            if state[w as usize].enter == u32::MAX {
                state[w as usize].enter = time;
                time += 1;
                state[w as usize].depth = state[v as usize].depth + 1;
                state[w as usize].parent_edge = eid;
                is_tree[eid as usize] = true;
                events.push(PartitionEvent::TreeEdge { edge: eid });
                stack.push(w);
                descended = true;
                break;
            }
            // Back edge: w is an ancestor of v.
            if index.smallest_free_class(v, w) == 1 {
                let outcome = index.add_edge(v, w);
                record_outcome(eid, outcome, &mut events, &mut assignments);
            } else {
                pendings.push(Pending {
                    edge: eid,
                    low: v,
                    high: w,
                    probes: 0,
                });
            }
        }
        if descended {
            continue;
        }
        stack.pop();
        let Some(&p) = stack.last() else {
            for pend in std::mem::take(&mut pendings) {
                finalize(pend, &mut index, &mut events, &mut ledger, &mut assignments);
            }
            break;
        };
        // Backtracking tree edge (p, v): resolve the cycle-edges discovered
        // inside v's subtree.
        let seg_start = pendings
            .iter()
            .rposition(|pend| state[pend.low as usize].enter < state[v as usize].enter)
            .map(|i| i + 1)
            .unwrap_or(0);
        let segment: Vec<Pending> = pendings.split_off(seg_start);
        let mut candidates = Vec::new();
        for pend in segment {
            if state[pend.high as usize].depth >= state[v as usize].depth {
                // The whole cycle lies inside the finished subtree; no
                // further tree edge can rescue it.
                finalize(pend, &mut index, &mut events, &mut ledger, &mut assignments);
            } else {
                candidates.push(pend);
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let swap_edge = state[v as usize].parent_edge;
        ledger.probed.push(swap_edge);
        let assignable = match (index.membership(p, 1), index.membership(v, 1)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        };
        if assignable {
            // Swap with the earliest-discovered candidate; the others lose
            // the swapped-out edge from their cycle path and are finalized.
            let rescue = candidates.remove(0);
            is_tree[swap_edge as usize] = false;
            is_tree[rescue.edge as usize] = true;
            events.push(PartitionEvent::EdgeSwap {
                cycle_edge: rescue.edge,
                swap_edge,
            });
            ledger.applied.push((rescue.edge, swap_edge));
            assignments[rescue.edge as usize] = Partition::DfsTree;
            let outcome = index.add_edge(p, v);
            debug_assert!(matches!(
                outcome,
                AddEdgeOutcome::New { class: 1, .. }
                    | AddEdgeOutcome::Join { class: 1, .. }
                    | AddEdgeOutcome::Union { class: 1, .. }
            ));
            record_outcome(swap_edge, outcome, &mut events, &mut assignments);
            for dirty in candidates {
                finalize(dirty, &mut index, &mut events, &mut ledger, &mut assignments);
            }
        } else {
            for mut pend in candidates {
                pend.probes += 1;
                if pend.probes >= PROBE_CAP {
                    finalize(pend, &mut index, &mut events, &mut ledger, &mut assignments);
                } else {
                    pendings.push(pend);
                }
            }
        }
    }

    // Resolve stale tree ids and derive summary structure.
    let tree_lists = index.resolved_lists();
    let mut max_class = 0;
    let mut roots = BTreeSet::new();
    for a in assignments.iter_mut() {
        if let Partition::BeTree { class, tree } = a {
            *tree = index.find(*tree);
            max_class = max_class.max(*class);
            roots.insert((*class, *tree));
        }
    }
    let families = group_families(&tree_lists, &roots);

    PartitionInfo {
        assignments,
        tree_lists,
        events,
        ledger,
        max_class,
        be_tree_count: roots.len() as u32,
        families,
    }
}

fn record_outcome(
    edge: u32,
    outcome: AddEdgeOutcome,
    events: &mut Vec<PartitionEvent>,
    assignments: &mut [Partition],
) {
    let (class, tree, event) = match outcome {
        AddEdgeOutcome::New { class, tree } => {
            (class, tree, PartitionEvent::NewBeTree { edge, class, tree })
        }
        AddEdgeOutcome::Join { class, tree } => {
            (class, tree, PartitionEvent::JoinBeTree { edge, class, tree })
        }
        AddEdgeOutcome::Union {
            class,
            kept,
            absorbed,
        } => (
            class,
            kept,
            PartitionEvent::UnionBeTrees {
                edge,
                class,
                kept,
                absorbed,
            },
        ),
    };
    events.push(event);
    assignments[edge as usize] = Partition::BeTree { class, tree };
}

fn group_families(
    tree_lists: &VertexTreeLists,
    roots: &BTreeSet<(u32, u32)>,
) -> Vec<Vec<(u32, u32)>> {
    let ids: Vec<(u32, u32)> = roots.iter().copied().collect();
    let index_of: BTreeMap<(u32, u32), usize> =
        ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            parent[x] = find(parent, parent[x]);
        }
        parent[x]
    }
    for v in 0..tree_lists.vertex_count() as u32 {
        let list = tree_lists.of(v);
        for pair in list.windows(2) {
            let a = find(&mut parent, index_of[&pair[0]]);
            let b = find(&mut parent, index_of[&pair[1]]);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
    for (i, &id) in ids.iter().enumerate() {
        groups.entry(find(&mut parent, i)).or_default().push(id);
    }
    groups.into_values().collect()
}

/// Picks the vertex at which a be-tree attaches to the spanning tree: it
/// must be pendant within the be-tree, preferring one that is also pendant
/// in the spanning tree, with ties broken by smallest label.
pub fn choose_join_vertex(be_edges: &[(Label, Label)], dfs_pendants: &BTreeSet<Label>) -> Label {
    let mut degree: BTreeMap<Label, u32> = BTreeMap::new();
    for &(a, b) in be_edges {
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    let pendants: Vec<Label> = degree
        .iter()
        .filter(|(_, &d)| d == 1)
        .map(|(&l, _)| l)
        .collect();
    pendants
        .iter()
        .copied()
        .find(|l| dfs_pendants.contains(l))
        .unwrap_or_else(|| pendants[0])
}

/// Replica assignments for a vertex that belongs to secondary partitions:
/// one replica per partition, in (class, tree) order, except partitions
/// where the vertex is the join vertex.
pub fn vertex_split_plan(
    v: Label,
    memberships: &[(u32, u32)],
    is_join_of: impl Fn((u32, u32)) -> bool,
) -> Vec<(Label, (u32, u32))> {
    let mut next = 1;
    let mut plan = Vec::new();
    for &part in memberships {
        if is_join_of(part) {
            continue;
        }
        plan.push((Label::replica(v.base(), next), part));
        next += 1;
    }
    plan
}

/// Exchanges the labels of a non-pendant vertex and one of its pendant
/// replicas so the replica label need not enter `L`. Returns `None` without
/// touching the tree when the precondition does not hold.
pub fn label_swap(tree: &GTree, v: Label, replica: Label) -> Option<GTree> {
    if replica.to_original() != v || !replica.is_replica() {
        return None;
    }
    let vi = tree.index_of(v)?;
    let ri = tree.index_of(replica)?;
    if tree.degree(vi) <= 1 || tree.degree(ri) != 1 {
        return None;
    }
    let rename = |l: Label| {
        if l == v {
            replica
        } else if l == replica {
            v
        } else {
            l
        }
    };
    let edges: Vec<GEdge> = tree
        .edges()
        .iter()
        .map(|e| GEdge {
            u: rename(tree.label_of(e.u)),
            v: rename(tree.label_of(e.v)),
            oriented: e.oriented,
            source: e.source,
        })
        .collect();
    GTree::from_parts(tree.method(), edges).ok()
}

/// Output of the tree-partition pipeline.
#[derive(Debug, Clone)]
pub struct Enhanced {
    pub tree: GTree,
    /// Pendant replica labels that survived all reductions.
    pub pendant_list: Vec<Label>,
    pub stats: EnhanceStats,
    pub partition: PartitionInfo,
}

/// Runs the full pipeline: DFS partition with inline add-edge and
/// edge-swap, join-vertex choice, vertex split, and label swap.
pub fn enhance_treepart(g: &Graph) -> Result<Enhanced> {
    let start = std::time::Instant::now();
    let partition = dfs_partition(g);
    let n = g.vertex_count() as usize;

    // Group be-tree edges by their final tree id; tree ids are unique
    // across classes, so the id alone identifies a group.
    let mut be_edges: Vec<(u32, u32)> =
        Vec::with_capacity(g.edge_count().saturating_sub(n - 1));
    let mut max_root = 0u32;
    for (eid, a) in partition.assignments.iter().enumerate() {
        if let Partition::BeTree { tree, .. } = a {
            be_edges.push((*tree, eid as u32));
            max_root = max_root.max(*tree);
        }
    }
    be_edges.sort_unstable();

    // Spanning-tree degrees (after swaps) drive the join-vertex preference.
    let mut dfs_degree = vec![0u32; n];
    for (eid, a) in partition.assignments.iter().enumerate() {
        if matches!(a, Partition::DfsTree) {
            let e = g.edges()[eid];
            dfs_degree[(e.a.base() - 1) as usize] += 1;
            dfs_degree[(e.b.base() - 1) as usize] += 1;
        }
    }

    // Join vertex per be-tree: pendant within the be-tree, preferring one
    // pendant in the spanning tree too, smallest label on ties. Degrees are
    // counted in a scratch array reset through a touched list.
    let mut join_of_root = vec![u32::MAX; max_root as usize + 1];
    {
        let mut be_degree = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut run = 0usize;
        while run < be_edges.len() {
            let root = be_edges[run].0;
            let mut end = run;
            while end < be_edges.len() && be_edges[end].0 == root {
                let e = g.edges()[be_edges[end].1 as usize];
                for v in [e.a.base() - 1, e.b.base() - 1] {
                    if be_degree[v as usize] == 0 {
                        touched.push(v);
                    }
                    be_degree[v as usize] += 1;
                }
                end += 1;
            }
            let mut best: Option<(bool, u32)> = None;
            for &v in &touched {
                if be_degree[v as usize] == 1 {
                    let key = (dfs_degree[v as usize] != 1, v);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            join_of_root[root as usize] = best.expect("a tree has pendant vertices").1;
            for v in touched.drain(..) {
                be_degree[v as usize] = 0;
            }
            run = end;
        }
    }

    // Physical nodes: every original vertex, plus one replica per
    // (vertex, partition) pair that splits off, created in ascending vertex
    // order and (class, tree) order within a vertex. Labels may still move
    // between nodes during label swaps.
    let mut node_label: Vec<Label> = (0..n).map(|v| Label::original(v as u32 + 1)).collect();
    let mut split_lookup: Vec<(u32, u32)> = Vec::new(); // (root, node), per-vertex runs
    let mut split_range = vec![(0u32, 0u32); n];
    let mut replica_range = vec![(0u32, 0u32); n]; // node-id span of v's replicas
    let mut vertex_splits = 0u64;
    for v in 0..n as u32 {
        let memberships = partition.tree_lists.of(v);
        if memberships.is_empty() {
            continue;
        }
        let start = split_lookup.len() as u32;
        let node_start = node_label.len() as u32;
        let mut next_replica = 1u32;
        for &(_, root) in memberships {
            if join_of_root[root as usize] == v {
                continue;
            }
            let node = node_label.len() as u32;
            node_label.push(Label::replica(v + 1, next_replica));
            next_replica += 1;
            split_lookup.push((root, node));
            vertex_splits += 1;
        }
        split_range[v as usize] = (start, split_lookup.len() as u32 - start);
        replica_range[v as usize] = (node_start, node_label.len() as u32 - node_start);
    }

    let resolve = |v: u32, root: u32| -> u32 {
        let (start, len) = split_range[v as usize];
        for &(r, node) in &split_lookup[start as usize..(start + len) as usize] {
            if r == root {
                return node;
            }
        }
        v // the join vertex keeps its edges
    };
    let mut node_edges: Vec<(u32, u32, bool, Option<u32>)> = Vec::with_capacity(g.edge_count());
    for (eid, assignment) in partition.assignments.iter().enumerate() {
        let e = g.edges()[eid];
        let (va, vb) = (e.a.base() - 1, e.b.base() - 1);
        let (na, nb) = match assignment {
            Partition::DfsTree => (va, vb),
            Partition::BeTree { tree, .. } => (resolve(va, *tree), resolve(vb, *tree)),
        };
        node_edges.push((na, nb, e.oriented, Some(eid as u32)));
    }

    // Label swap: for each base in ascending order, move the original label
    // onto its first pendant replica when the original sits on a non-pendant
    // node. One swap per base is the most the original label can cover.
    let mut node_degree = vec![0u32; node_label.len()];
    for &(a, b, _, _) in &node_edges {
        node_degree[a as usize] += 1;
        node_degree[b as usize] += 1;
    }
    let mut label_swaps = 0u64;
    for v in 0..n as u32 {
        if node_degree[v as usize] <= 1 {
            continue;
        }
        let (start, len) = replica_range[v as usize];
        let pendant_replica =
            (start..start + len).find(|&node| node_degree[node as usize] == 1);
        if let Some(r) = pendant_replica {
            node_label.swap(v as usize, r as usize);
            label_swaps += 1;
        }
    }

    let tree = GTree::from_node_table(Method::TreePartition, node_label, node_edges)?;

    let pendant_list: Vec<Label> = tree
        .pendant_labels()
        .into_iter()
        .filter(|l| l.is_replica())
        .collect();

    let stats = EnhanceStats {
        vertex_splits,
        edge_swaps: partition.ledger.applied.len() as u64,
        label_swaps,
        max_be_class: partition.max_class,
        be_tree_count: partition.be_tree_count,
        pendant_list_len: pendant_list.len() as u64,
        vertex_classes: None,
        elapsed: start.elapsed(),
    };

    Ok(Enhanced {
        tree,
        pendant_list,
        stats,
        partition,
    })
}
