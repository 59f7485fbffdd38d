//! Shared test helpers: a deterministic generator, graph builders, and
//! brute-force oracles kept independent of the code paths they check.
#![allow(dead_code)]

use prufer_codec::graph::{Edge, Graph};
use prufer_codec::label::Label;
use prufer_codec::tree::GTree;
use prufer_codec::treepart::{PartitionEvent, PartitionInfo};
use std::collections::{BTreeMap, BTreeSet};

/// splitmix64; deterministic across platforms.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

/// Random labeled tree edges on vertices `1..=n`, built directly from a
/// random parent assignment (independent of the Prüfer code path).
pub fn random_tree_edges(n: u32, rng: &mut DetRng) -> Vec<(u32, u32)> {
    let mut edges = Vec::with_capacity(n.saturating_sub(1) as usize);
    // Random attachment over a random vertex permutation.
    let mut order: Vec<u32> = (1..=n).collect();
    for i in (1..order.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    for i in 1..n as usize {
        let parent = order[rng.below(i as u64) as usize];
        edges.push((parent, order[i]));
    }
    edges
}

/// Profile of random connected inputs: pure trees, sparse graphs, and
/// graphs with a dense block, all within `|E| <= 2|V|`.
pub fn random_connected_graph(n: u32, profile: u64, rng: &mut DetRng) -> Graph {
    let mut pairs = random_tree_edges(n, rng);
    let budget = (n as usize + 1).saturating_sub(0);
    match profile % 3 {
        0 => {}
        1 => {
            let extra = rng.below(budget as u64 + 1) as usize;
            for _ in 0..extra {
                let a = rng.below(n as u64) as u32 + 1;
                let b = rng.below(n as u64) as u32 + 1;
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        _ => {
            // Dense block: a small clique over random vertices.
            let k = (3 + rng.below(5)) as usize;
            let k = k.min(n as usize);
            let mut members = BTreeSet::new();
            while members.len() < k {
                members.insert(rng.below(n as u64) as u32 + 1);
            }
            let members: Vec<u32> = members.into_iter().collect();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if pairs.len() < (n as usize - 1) + budget {
                        pairs.push((members[i], members[j]));
                    }
                }
            }
        }
    }
    graph_from_pairs(n, &pairs)
}

pub fn graph_from_pairs(n: u32, pairs: &[(u32, u32)]) -> Graph {
    Graph::new(
        n,
        pairs
            .iter()
            .map(|&(a, b)| Edge::undirected(Label::original(a), Label::original(b)))
            .collect(),
    )
    .unwrap()
}

/// Random DAG on `1..=n`: a random tree oriented low-to-high in a random
/// vertex permutation, plus forward chords.
pub fn random_dag(n: u32, rng: &mut DetRng) -> Graph {
    let mut rank: Vec<u32> = (0..n).collect();
    for i in (1..rank.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        rank.swap(i, j);
    }
    let position: BTreeMap<u32, u32> = rank
        .iter()
        .enumerate()
        .map(|(i, &v)| (v + 1, i as u32))
        .collect();
    let mut edges = Vec::new();
    let orient = |a: u32, b: u32| {
        if position[&a] < position[&b] {
            Edge::directed(Label::original(a), Label::original(b))
        } else {
            Edge::directed(Label::original(b), Label::original(a))
        }
    };
    for (a, b) in random_tree_edges(n, rng) {
        edges.push(orient(a, b));
    }
    let extra = rng.below(n as u64) as usize;
    for _ in 0..extra {
        let a = rng.below(n as u64) as u32 + 1;
        let b = rng.below(n as u64) as u32 + 1;
        if a != b {
            edges.push(orient(a, b));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Edge set forms a tree over exactly `vertices`.
pub fn is_tree_over(vertices: &BTreeSet<u32>, edges: &[(u32, u32)]) -> bool {
    if vertices.is_empty() {
        return edges.is_empty();
    }
    if edges.len() + 1 != vertices.len() {
        return false;
    }
    let ids: Vec<u32> = vertices.iter().copied().collect();
    let index: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            parent[x] = find(parent, parent[x]);
        }
        parent[x]
    }
    for &(a, b) in edges {
        let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
            return false;
        };
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Replays the partition event log against its own bookkeeping, checking
/// after every add-edge that same-class be-trees are vertex-disjoint and
/// every be-tree is acyclic, and after every swap that the spanning edge
/// set still forms a tree over the vertices it covered.
pub fn replay_partition_events(g: &Graph, info: &PartitionInfo) -> Result<(), String> {
    struct BeTree {
        class: u32,
        edges: Vec<(u32, u32)>,
        vertices: BTreeSet<u32>,
    }
    let endpoints = |edge: u32| {
        let e = g.edges()[edge as usize];
        (e.a.base(), e.b.base())
    };
    let mut trees: BTreeMap<u32, BeTree> = BTreeMap::new();
    let mut spanning: BTreeSet<u32> = BTreeSet::new();

    let check_class = |trees: &BTreeMap<u32, BeTree>, class: u32| -> Result<(), String> {
        let members: Vec<&BeTree> = trees.values().filter(|t| t.class == class).collect();
        for (i, a) in members.iter().enumerate() {
            if !is_tree_over(&a.vertices, &a.edges) {
                return Err(format!("class-{class} be-tree is not a tree"));
            }
            for b in &members[i + 1..] {
                if a.vertices.intersection(&b.vertices).next().is_some() {
                    return Err(format!("class-{class} be-trees share a vertex"));
                }
            }
        }
        Ok(())
    };
    let spanning_ok = |spanning: &BTreeSet<u32>| -> Result<(), String> {
        let edges: Vec<(u32, u32)> = spanning.iter().map(|&e| endpoints(e)).collect();
        let mut vertices = BTreeSet::new();
        for &(a, b) in &edges {
            vertices.insert(a);
            vertices.insert(b);
        }
        if !is_tree_over(&vertices, &edges) {
            return Err("spanning edge set is not a tree".into());
        }
        Ok(())
    };

    for event in &info.events {
        match *event {
            PartitionEvent::TreeEdge { edge } => {
                spanning.insert(edge);
            }
            PartitionEvent::NewBeTree { edge, class, tree } => {
                let (a, b) = endpoints(edge);
                trees.insert(
                    tree,
                    BeTree {
                        class,
                        edges: vec![(a, b)],
                        vertices: [a, b].into_iter().collect(),
                    },
                );
                check_class(&trees, class)?;
            }
            PartitionEvent::JoinBeTree { edge, class, tree } => {
                let (a, b) = endpoints(edge);
                let t = trees.get_mut(&tree).ok_or("join names unknown tree")?;
                if t.class != class {
                    return Err("join class mismatch".into());
                }
                t.edges.push((a, b));
                t.vertices.insert(a);
                t.vertices.insert(b);
                check_class(&trees, class)?;
            }
            PartitionEvent::UnionBeTrees {
                edge,
                class,
                kept,
                absorbed,
            } => {
                let (a, b) = endpoints(edge);
                let absorbed = trees.remove(&absorbed).ok_or("union names unknown tree")?;
                let t = trees.get_mut(&kept).ok_or("union names unknown tree")?;
                if t.class != class || absorbed.class != class {
                    return Err("union class mismatch".into());
                }
                t.edges.extend(absorbed.edges);
                t.vertices.extend(absorbed.vertices);
                t.edges.push((a, b));
                t.vertices.insert(a);
                t.vertices.insert(b);
                check_class(&trees, class)?;
            }
            PartitionEvent::EdgeSwap {
                cycle_edge,
                swap_edge,
            } => {
                let before: BTreeSet<u32> = spanning
                    .iter()
                    .flat_map(|&e| {
                        let (a, b) = endpoints(e);
                        [a, b]
                    })
                    .collect();
                if !spanning.remove(&swap_edge) {
                    return Err("swap removed a non-tree edge".into());
                }
                spanning.insert(cycle_edge);
                let after: BTreeSet<u32> = spanning
                    .iter()
                    .flat_map(|&e| {
                        let (a, b) = endpoints(e);
                        [a, b]
                    })
                    .collect();
                if before != after {
                    return Err("swap changed the covered vertex set".into());
                }
                spanning_ok(&spanning)?;
            }
        }
    }

    // Final spanning tree covers every vertex.
    let edges: Vec<(u32, u32)> = spanning.iter().map(|&e| endpoints(e)).collect();
    let all: BTreeSet<u32> = (1..=g.vertex_count()).collect();
    if !is_tree_over(&all, &edges) {
        return Err("final spanning set does not span the graph".into());
    }
    Ok(())
}

/// Canonical signature of the unlabeled shape of a tree: the minimum AHU
/// string over all roots. Exponential in nothing, fine for small n.
pub fn shape_signature(tree: &GTree) -> String {
    fn canon(tree: &GTree, v: u32, parent: Option<u32>) -> String {
        let mut parts: Vec<String> = tree
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| Some(w) != parent)
            .map(|&(w, _)| canon(tree, w, Some(v)))
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    (0..tree.vertex_count() as u32)
        .map(|v| canon(tree, v, None))
        .min()
        .unwrap()
}
