//! Code selection: a tree has many Prüfer codes, one per labeling, and the
//! three schemes here pick codes with useful structure.
//!
//! * DCC relabels a DAG topologically, so every edge ascends and directions
//!   are recoverable from the labels alone.
//! * PCC keeps DCC labels but defers the tree's leaves behind every
//!   non-leaf during encoding; each leaf then contributes its path vertices
//!   consecutively, ending at a junction vertex that a right-to-left scan
//!   can mark.
//! * LCC relabels by leaf-stages so that position `k` of the code always
//!   pairs with the vertex labeled `k`: the code becomes readable as an
//!   edge list. Replica groups keep their identity through a shared
//!   superscript that does not affect encoding order.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::label::Label;
use crate::order::VertexRanking;
use crate::prufer::{
    encode_with_order, Encoding, LastEdgeDir, PendantOrder, PruferCode, Scheme, TokenDir,
};
use crate::tree::{GEdge, GTree};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

/// A bijective relabeling, kept as both directions.
#[derive(Debug, Clone, Default)]
pub struct RelabelMap {
    forward: BTreeMap<Label, Label>,
}

impl RelabelMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Label)>) -> Self {
        RelabelMap {
            forward: pairs.into_iter().collect(),
        }
    }

    pub fn apply(&self, label: Label) -> Label {
        self.forward.get(&label).copied().unwrap_or(label)
    }

    pub fn invert(&self) -> RelabelMap {
        RelabelMap {
            forward: self.forward.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().all(|(a, b)| a == b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }

    pub fn apply_graph(&self, g: &Graph) -> Result<Graph> {
        let edges = g
            .edges()
            .iter()
            .map(|e| Edge {
                a: self.apply(e.a),
                b: self.apply(e.b),
                oriented: e.oriented,
            })
            .collect();
        Graph::new(g.vertex_count(), edges)
    }

    pub fn apply_tree(&self, t: &GTree) -> Result<GTree> {
        let edges = t
            .edges()
            .iter()
            .map(|e| GEdge {
                u: self.apply(t.label_of(e.u)),
                v: self.apply(t.label_of(e.v)),
                oriented: e.oriented,
                source: e.source,
            })
            .collect();
        GTree::from_parts(t.method(), edges)
    }

    /// Two-column `old new` table for audit.
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        for (old, new) in &self.forward {
            out.push_str(&format!("{old} {new}\n"));
        }
        out
    }
}

/// Topological relabeling of a directed graph: every directed edge ends up
/// ascending. Ties go to the external ranking when present, then to the
/// ascending old label. Rejects graphs with a directed cycle, returning a
/// witness.
pub fn relabel_dcc(g: &Graph, ranking: Option<&VertexRanking>) -> Result<RelabelMap> {
    if !g.fully_directed() {
        return Err(Error::DirectionsRequired { scheme: "dcc" });
    }
    let n = g.vertex_count() as usize;
    let mut indegree = vec![0u32; n];
    let mut successors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in g.edges() {
        let (s, t) = ((e.a.base() - 1) as usize, (e.b.base() - 1) as usize);
        indegree[t] += 1;
        successors[s].push(t as u32);
    }
    let key = |v: u32| {
        let label = Label::original(v + 1);
        (
            ranking.map(|r| r.rank(label)).unwrap_or(u64::MAX),
            label,
        )
    };
    let mut heap: BinaryHeap<Reverse<((u64, Label), u32)>> = BinaryHeap::new();
    for v in 0..n as u32 {
        if indegree[v as usize] == 0 {
            heap.push(Reverse((key(v), v)));
        }
    }
    let mut pairs = Vec::with_capacity(n);
    let mut next = 1u32;
    while let Some(Reverse((_, v))) = heap.pop() {
        pairs.push((Label::original(v + 1), Label::original(next)));
        next += 1;
        for &t in &successors[v as usize] {
            indegree[t as usize] -= 1;
            if indegree[t as usize] == 0 {
                heap.push(Reverse((key(t), t)));
            }
        }
    }
    if pairs.len() < n {
        return Err(Error::DirectedCycle {
            witness: cycle_witness(&indegree, g),
        });
    }
    Ok(RelabelMap::from_pairs(pairs))
}

/// Walks predecessors among the vertices Kahn could not retire until one
/// repeats; the returned path starts and ends at the repeated vertex.
fn cycle_witness(indegree: &[u32], g: &Graph) -> Vec<Label> {
    let n = g.vertex_count() as usize;
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in g.edges() {
        predecessors[(e.b.base() - 1) as usize].push(e.a.base() - 1);
    }
    let stuck: Vec<bool> = indegree.iter().map(|&d| d > 0).collect();
    let start = stuck.iter().position(|&s| s).unwrap() as u32;
    let mut position_in_walk = vec![usize::MAX; n];
    let mut walk = vec![start];
    position_in_walk[start as usize] = 0;
    loop {
        let cur = *walk.last().unwrap();
        let prev = predecessors[cur as usize]
            .iter()
            .copied()
            .filter(|&p| stuck[p as usize])
            .min()
            .expect("a stuck vertex always has a stuck predecessor");
        if position_in_walk[prev as usize] != usize::MAX {
            let mut cycle: Vec<Label> = walk[position_in_walk[prev as usize]..]
                .iter()
                .map(|&v| Label::original(v + 1))
                .collect();
            cycle.reverse();
            cycle.push(cycle[0]);
            return cycle;
        }
        position_in_walk[prev as usize] = walk.len();
        walk.push(prev);
    }
}

/// Encodes a g-tree with the path-centric vertex order and junction marks:
/// leaves rank after every non-leaf, and among leaves the larger label is
/// processed first.
pub fn encode_pcc(tree: &GTree) -> Result<Encoding> {
    let leaf: Vec<bool> = (0..tree.vertex_count() as u32)
        .map(|v| tree.degree(v) == 1)
        .collect();
    let mut enc = encode_with_order(tree, &PendantOrder::LeafsDeferred { leaf }, Scheme::Pcc)?;
    mark_junctions(&mut enc.code);
    Ok(enc)
}

/// Junction marks: scanning the tokens right to left, a token whose label
/// was already seen names a vertex of degree greater than two.
pub fn junction_marks_for(tokens: &[Label]) -> Vec<bool> {
    let mut seen = std::collections::HashSet::new();
    let mut marks = vec![false; tokens.len()];
    for (i, token) in tokens.iter().enumerate().rev() {
        if !seen.insert(*token) {
            marks[i] = true;
        }
    }
    marks
}

pub fn mark_junctions(code: &mut PruferCode) {
    let marks = junction_marks_for(code.tokens());
    code.set_junction_marks(marks);
}

/// Leaf-stage partition of a tree: stage 1 holds the leaves, stage `i` the
/// leaves left after peeling stages below it, and the final stage is the
/// tree center of one or two vertices.
#[derive(Debug, Clone)]
pub struct LeafStagePartition {
    pub stages: Vec<Vec<Label>>,
    pub center: Vec<Label>,
    /// Depth of each vertex when the tree is rooted at the center.
    pub levels: BTreeMap<Label, u32>,
}

pub fn compute_leaf_stages(tree: &GTree) -> LeafStagePartition {
    let n = tree.vertex_count();
    let mut degree = tree.degrees();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut stages = Vec::new();
    while remaining > 0 {
        let peel: Vec<u32> = (0..n as u32)
            .filter(|&v| alive[v as usize] && degree[v as usize] <= 1)
            .collect();
        for &v in &peel {
            alive[v as usize] = false;
            remaining -= 1;
            for &(w, _) in tree.neighbors(v) {
                if alive[w as usize] {
                    degree[w as usize] -= 1;
                }
            }
        }
        stages.push(peel.iter().map(|&v| tree.label_of(v)).collect::<Vec<_>>());
    }
    let center = stages.last().cloned().unwrap_or_default();

    let mut levels = BTreeMap::new();
    let mut frontier: Vec<u32> = center
        .iter()
        .map(|&l| tree.index_of(l).unwrap())
        .collect();
    for &v in &frontier {
        levels.insert(tree.label_of(v), 0);
    }
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &(w, _) in tree.neighbors(v) {
                let label = tree.label_of(w);
                if let std::collections::btree_map::Entry::Vacant(e) = levels.entry(label) {
                    e.insert(depth);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }

    LeafStagePartition {
        stages,
        center,
        levels,
    }
}

/// Leaf-centric relabeling plus its code.
///
/// Stage `k` takes the labels just above the cumulative size of the stages
/// below it; within a stage, labels descend from the center outward (lower
/// level first, then higher-labeled parent, then the external ranking, then
/// ascending old label). The assignment starts at `n` on the center; for a
/// two-vertex center the smaller old label takes `n`. Replica groups are
/// then re-labeled `l^(g)` where `g` is the group's smallest new label. The
/// resulting code reads positionally: `(k, c_k)` is an edge for every `k`.
pub fn relabel_lcc(
    tree: &GTree,
    ranking: Option<&VertexRanking>,
) -> Result<(RelabelMap, GTree, Encoding)> {
    let n = tree.vertex_count();
    let partition = compute_leaf_stages(tree);
    let index_of = |l: Label| tree.index_of(l).unwrap();

    // Parent toward the center; the center vertices have none.
    let mut parent: Vec<Option<u32>> = vec![None; n];
    for (label, &level) in &partition.levels {
        if level == 0 {
            continue;
        }
        let v = index_of(*label);
        let up = tree
            .neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| partition.levels[&tree.label_of(w)] == level - 1)
            .expect("non-center vertex has a neighbor one level up");
        parent[v as usize] = Some(up);
    }

    let mut new_int = vec![0u32; n];
    let mut next = n as u32;
    for stage in partition.stages.iter().rev() {
        // Group the stage by level, ascending.
        let mut by_level: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &label in stage {
            by_level
                .entry(partition.levels[&label])
                .or_default()
                .push(index_of(label));
        }
        for (_, mut members) in by_level {
            // Parents are already labeled: they sit in a higher stage or in
            // this stage at a lower level.
            members.sort_by_key(|&v| {
                let parent_label = parent[v as usize].map(|p| new_int[p as usize]).unwrap_or(0);
                let label = tree.label_of(v);
                (
                    Reverse(parent_label),
                    ranking.map(|r| r.rank(label)).unwrap_or(u64::MAX),
                    label,
                )
            });
            for v in members {
                new_int[v as usize] = next;
                next -= 1;
            }
        }
    }
    debug_assert_eq!(next, 0);

    // Replica groups share the smallest member's new label as superscript.
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in 0..n as u32 {
        groups
            .entry(tree.label_of(v).base())
            .or_default()
            .push(v);
    }
    let mut new_label = vec![Label::original(1); n];
    for (_, members) in groups {
        if members.len() == 1 {
            let v = members[0];
            new_label[v as usize] = Label::original(new_int[v as usize]);
        } else {
            let group_id = members
                .iter()
                .map(|&v| new_int[v as usize])
                .min()
                .unwrap();
            for &v in &members {
                new_label[v as usize] = Label::new(new_int[v as usize], group_id);
            }
        }
    }

    let map = RelabelMap::from_pairs(
        (0..n as u32).map(|v| (tree.label_of(v), new_label[v as usize])),
    );
    let relabeled = map.apply_tree(tree)?;
    let enc = encode_with_order(&relabeled, &PendantOrder::Ascending, Scheme::Lcc)?;
    Ok((map, relabeled, enc))
}

/// Annotates every token whose edge carries a direction, and the final
/// edge, with converging/diverging marks. Requires each code position to
/// resolve to a source edge, which the enhancement pipelines guarantee.
pub fn mark_directions(enc: &mut Encoding, tree: &GTree, source: &Graph) -> Result<()> {
    if !source.has_directions() {
        return Ok(());
    }
    let mut marks = Vec::with_capacity(enc.removals.len());
    for (position, removal) in enc.removals.iter().enumerate() {
        let edge = tree.edges()[removal.tree_edge as usize];
        if edge.source.is_none() {
            return Err(Error::EdgeResolution { position });
        }
        let mark = if edge.oriented {
            let source_side = tree.label_of(edge.u);
            if source_side == removal.pendant {
                Some(TokenDir::Converging)
            } else {
                Some(TokenDir::Diverging)
            }
        } else {
            None
        };
        marks.push(mark);
    }
    let (x, y, eid) = enc.last_pair;
    let last_edge = tree.edges()[eid as usize];
    let last = if last_edge.oriented {
        let source_side = tree.label_of(last_edge.u);
        let small = x.min(y);
        Some(if source_side == small {
            LastEdgeDir::Ascending
        } else {
            LastEdgeDir::Descending
        })
    } else {
        None
    };
    enc.code.set_direction_marks(marks, last);
    Ok(())
}

/// Orients every edge from its smaller to its larger label; the direction
/// recovery rule for DCC- and PCC-labeled graphs.
pub fn orient_ascending(g: &Graph) -> Graph {
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let (s, t) = if e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
            Edge::directed(s, t)
        })
        .collect();
    Graph::new(g.vertex_count(), edges).expect("relabeling preserves validity")
}

/// Merges the replica groups of a leaf-centric tree (members share a
/// superscript) and compresses the result onto labels `1..=n1`.
pub fn merge_lcc_groups(tree: &GTree) -> Result<Graph> {
    let representative = |l: Label| -> u32 {
        if l.is_replica() {
            l.replica_index()
        } else {
            l.base()
        }
    };
    let mut reps: Vec<u32> = tree
        .labels()
        .iter()
        .map(|&l| representative(l))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    let compress = |l: Label| -> Label {
        let r = representative(l);
        Label::original(reps.binary_search(&r).unwrap() as u32 + 1)
    };
    let mut edges = Vec::with_capacity(tree.edge_count());
    for e in tree.edges() {
        let a = compress(tree.label_of(e.u));
        let b = compress(tree.label_of(e.v));
        if a == b {
            return Err(Error::CorruptGTree(a));
        }
        edges.push(Edge {
            a,
            b,
            oriented: e.oriented,
        });
    }
    Graph::new(reps.len() as u32, edges)
}
