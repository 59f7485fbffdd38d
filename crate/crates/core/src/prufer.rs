//! Prüfer encoding and decoding over the replica-bearing label alphabet.
//!
//! Encoding repeatedly removes the order-smallest pendant vertex and appends
//! its neighbor's label; a tree on `n` vertices yields `n - 2` tokens.
//! Because each removal retires one edge, a code is really a sequence of
//! edges: position `k` pairs the k-th removed pendant with token `k`, and the
//! final two survivors contribute the last edge.

use crate::error::{Error, Result};
use crate::label::Label;
use crate::tree::{GEdge, GTree, Method};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::fmt;

/// Code-selection scheme recorded alongside a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Raw,
    Dcc,
    Pcc,
    Lcc,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Raw => "raw",
            Scheme::Dcc => "dcc",
            Scheme::Pcc => "pcc",
            Scheme::Lcc => "lcc",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        match s {
            "raw" => Some(Scheme::Raw),
            "dcc" => Some(Scheme::Dcc),
            "pcc" => Some(Scheme::Pcc),
            "lcc" => Some(Scheme::Lcc),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction annotation on a token, relative to the token's vertex:
/// `Converging` means the edge at this position points into the token's
/// vertex, `Diverging` means it points away from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenDir {
    Converging,
    Diverging,
}

/// Orientation of the final edge (the pair left after all removals),
/// relative to its endpoints' label order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastEdgeDir {
    /// Directed from the smaller label to the larger.
    Ascending,
    /// Directed from the larger label to the smaller.
    Descending,
}

/// A Prüfer code: the token sequence, the pendant-replica list `L`, and
/// optional per-token annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruferCode {
    pub method: Method,
    pub scheme: Scheme,
    tokens: Vec<Label>,
    pendant_list: Vec<Label>,
    junction_marks: Option<Vec<bool>>,
    direction_marks: Option<Vec<Option<TokenDir>>>,
    last_edge: Option<LastEdgeDir>,
}

impl PruferCode {
    pub fn new(method: Method, scheme: Scheme, tokens: Vec<Label>, pendant_list: Vec<Label>) -> Self {
        let mut pendant_list = pendant_list;
        pendant_list.sort_unstable();
        PruferCode {
            method,
            scheme,
            tokens,
            pendant_list,
            junction_marks: None,
            direction_marks: None,
            last_edge: None,
        }
    }

    pub fn tokens(&self) -> &[Label] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The pendant list `L`: replica labels that are pendant in the tree and
    /// therefore absent from the tokens.
    pub fn pendant_list(&self) -> &[Label] {
        &self.pendant_list
    }

    pub fn junction_marks(&self) -> Option<&[bool]> {
        self.junction_marks.as_deref()
    }

    pub fn set_junction_marks(&mut self, marks: Vec<bool>) {
        assert_eq!(marks.len(), self.tokens.len());
        self.junction_marks = Some(marks);
    }

    pub fn direction_marks(&self) -> Option<&[Option<TokenDir>]> {
        self.direction_marks.as_deref()
    }

    pub fn set_direction_marks(&mut self, marks: Vec<Option<TokenDir>>, last: Option<LastEdgeDir>) {
        assert_eq!(marks.len(), self.tokens.len());
        self.direction_marks = Some(marks);
        self.last_edge = last;
    }

    pub fn last_edge_dir(&self) -> Option<LastEdgeDir> {
        self.last_edge
    }

    /// Tokens rendered space-separated, without annotations.
    pub fn token_string(&self) -> String {
        self.tokens
            .iter()
            .map(Label::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One encoding step: `pendant` was removed, `token` entered the code, and
/// together they name tree edge `tree_edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub pendant: Label,
    pub token: Label,
    pub tree_edge: u32,
}

/// Result of encoding a tree: the code plus the edge sequence it induces.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub code: PruferCode,
    pub removals: Vec<Removal>,
    /// The two vertices left standing, in label order, and their edge.
    pub last_pair: (Label, Label, u32),
}

/// Pendant selection order. The classical code uses ascending label order;
/// the path-centric scheme defers the tree's own leaves behind every
/// non-leaf and processes leaves in descending label order.
#[derive(Debug, Clone)]
pub enum PendantOrder {
    Ascending,
    /// `leaf[v]` flags vertices that are leaves of the full tree.
    LeafsDeferred { leaf: Vec<bool> },
}

impl PendantOrder {
    fn key(&self, v: u32, n: u32) -> (u8, u32) {
        match self {
            PendantOrder::Ascending => (0, v),
            PendantOrder::LeafsDeferred { leaf } => {
                if leaf[v as usize] {
                    (1, n - v)
                } else {
                    (0, v)
                }
            }
        }
    }
}

/// Pendant selection. The ascending order admits the classical linear-time
/// scheme: a pointer sweeps the vertices once, and a removal whose neighbor
/// turns pendant behind the pointer is chased immediately (at most one such
/// vertex can exist, and it is the order minimum). Deferred orders fall
/// back to a heap.
enum PendantPicker<'a> {
    Linear {
        ptr: usize,
        chased: Option<u32>,
    },
    Ordered {
        heap: BinaryHeap<Reverse<((u8, u32), u32)>>,
        order: &'a PendantOrder,
        n: u32,
    },
}

impl<'a> PendantPicker<'a> {
    fn new(order: &'a PendantOrder, degree: &[u32]) -> Self {
        match order {
            PendantOrder::Ascending => PendantPicker::Linear {
                ptr: 0,
                chased: None,
            },
            PendantOrder::LeafsDeferred { .. } => {
                let n = degree.len() as u32;
                let mut heap = BinaryHeap::new();
                for v in 0..n {
                    if degree[v as usize] == 1 {
                        heap.push(Reverse((order.key(v, n), v)));
                    }
                }
                PendantPicker::Ordered { heap, order, n }
            }
        }
    }

    fn next(&mut self, degree: &[u32]) -> Option<u32> {
        match self {
            PendantPicker::Linear { ptr, chased } => {
                if let Some(u) = chased.take() {
                    return Some(u);
                }
                while *ptr < degree.len() && degree[*ptr] != 1 {
                    *ptr += 1;
                }
                if *ptr < degree.len() {
                    let u = *ptr as u32;
                    *ptr += 1;
                    Some(u)
                } else {
                    None
                }
            }
            PendantPicker::Ordered { heap, .. } => heap.pop().map(|Reverse((_, v))| v),
        }
    }

    /// Called when `w`'s degree has just dropped to one.
    fn went_pendant(&mut self, w: u32) {
        match self {
            PendantPicker::Linear { ptr, chased } => {
                if (w as usize) < *ptr {
                    debug_assert!(chased.is_none());
                    *chased = Some(w);
                }
            }
            PendantPicker::Ordered { heap, order, n } => {
                heap.push(Reverse((order.key(w, *n), w)));
            }
        }
    }
}

/// Encodes a tree with the classical ascending pendant order.
pub fn encode_tree(tree: &GTree) -> Result<Encoding> {
    encode_with_order(tree, &PendantOrder::Ascending, Scheme::Raw)
}

/// Encodes a tree under an explicit pendant order.
pub fn encode_with_order(tree: &GTree, order: &PendantOrder, scheme: Scheme) -> Result<Encoding> {
    let n = tree.vertex_count();
    if n < 2 {
        return Err(Error::TreeTooSmall);
    }
    let n_u32 = n as u32;
    // Degree doubles as the liveness flag (zero = removed); the cursor
    // rides alongside so one record covers a vertex's hot state.
    let mut degree = tree.degrees();
    let mut cursor = vec![0u32; n];
    let mut picker = PendantPicker::new(order, &degree);

    let m = n - 2;
    let mut removals = Vec::with_capacity(m);
    let mut tokens = Vec::with_capacity(m);
    for position in 0..m {
        let u = picker
            .next(&degree)
            .ok_or(Error::PendantExhausted { position })?;
        // Find the one still-alive neighbor; consumed slots never revive,
        // so the cursors advance at most 2|E| times overall.
        let nbrs = tree.neighbors(u);
        let mut found = None;
        while (cursor[u as usize] as usize) < nbrs.len() {
            let (w, eid) = nbrs[cursor[u as usize] as usize];
            if degree[w as usize] > 0 {
                found = Some((w, eid));
                break;
            }
            cursor[u as usize] += 1;
        }
        let (w, eid) = found.ok_or(Error::PendantExhausted { position })?;
        degree[u as usize] = 0;
        degree[w as usize] -= 1;
        if degree[w as usize] == 1 {
            picker.went_pendant(w);
        }
        tokens.push(tree.label_of(w));
        removals.push(Removal {
            pendant: tree.label_of(u),
            token: tree.label_of(w),
            tree_edge: eid,
        });
    }

    let survivors: Vec<u32> = (0..n_u32).filter(|&v| degree[v as usize] > 0).collect();
    let [x, y] = survivors[..] else {
        return Err(Error::NoFinalPair);
    };
    let last_edge = tree
        .neighbors(x)
        .iter()
        .find(|&&(w, _)| w == y)
        .map(|&(_, eid)| eid)
        .ok_or(Error::NoFinalPair)?;

    let pendant_list: Vec<Label> = tree
        .pendant_labels()
        .into_iter()
        .filter(|l| l.is_replica())
        .collect();

    let code = PruferCode::new(tree.method(), scheme, tokens, pendant_list);
    Ok(Encoding {
        code,
        removals,
        last_pair: (tree.label_of(x), tree.label_of(y), last_edge),
    })
}

/// Recovers the vertex universe of a raw-alphabet code: `n = m + 2`, the
/// replica set is whatever replica labels appear in the tokens or in `L`,
/// and the originals are `1..=n1` with `n1 = n - |replicas|`.
pub fn infer_label_universe(code: &PruferCode) -> Result<(u32, Vec<Label>)> {
    let n = code.len() + 2;
    let mut replicas: BTreeSet<Label> = BTreeSet::new();
    for &t in code.tokens().iter().chain(code.pendant_list()) {
        if t.is_replica() {
            replicas.insert(t);
        }
    }
    let n2 = replicas.len();
    if n == 2 && n2 > 0 {
        return Err(Error::ReplicaInTrivialCode);
    }
    if n2 >= n {
        return Err(Error::ReplicaBaseOutOfRange {
            replica: *replicas.iter().next().unwrap(),
            n1: 0,
        });
    }
    let n1 = (n - n2) as u32;
    let mut per_base: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &r in &replicas {
        if r.base() > n1 {
            return Err(Error::ReplicaBaseOutOfRange { replica: r, n1 });
        }
        per_base.entry(r.base()).or_default().push(r.replica_index());
    }
    for (&base, indices) in &per_base {
        for (expect, &got) in (1..).zip(indices.iter()) {
            if got != expect {
                return Err(Error::ReplicaIndexGap {
                    base,
                    missing: expect,
                });
            }
        }
    }
    for &t in code.tokens() {
        if !t.is_replica() && t.base() > n1 {
            return Err(Error::EndpointOutOfRange { endpoint: t, n1 });
        }
    }
    Ok((n1, replicas.into_iter().collect()))
}

/// Result of decoding: the reconstructed tree plus the replayed edge
/// sequence (tree edge `k` corresponds to removal `k`; the final edge is the
/// last entry of `tree.edges()`).
#[derive(Debug, Clone)]
pub struct Decoded {
    pub tree: GTree,
    pub removals: Vec<(Label, Label)>,
    pub last_pair: (Label, Label),
}

/// Decodes a code back into the tree it encodes.
///
/// Degrees are initialized to occurrences-plus-one over the inferred
/// universe; each token then consumes the order-smallest pendant vertex, and
/// the two vertices left with degree one form the last edge. Direction marks
/// are replayed onto tree edges; stored junction marks are verified against
/// recomputation.
pub fn decode_code(code: &PruferCode) -> Result<Decoded> {
    let universe = decode_universe(code)?;
    let n = universe.len();
    let n_u32 = n as u32;

    let mut occurrences: BTreeMap<Label, u32> = BTreeMap::new();
    for &t in code.tokens() {
        *occurrences.entry(resolve_token(&universe, t)?).or_insert(0) += 1;
    }

    let order = match code.scheme {
        Scheme::Pcc => {
            let leaf: Vec<bool> = universe
                .iter()
                .map(|l| !occurrences.contains_key(l))
                .collect();
            PendantOrder::LeafsDeferred { leaf }
        }
        _ => PendantOrder::Ascending,
    };

    let index_of = |label: Label| universe.binary_search(&label).map(|i| i as u32);
    let mut degree: Vec<u32> = universe
        .iter()
        .map(|l| occurrences.get(l).copied().unwrap_or(0) + 1)
        .collect();
    let mut picker = PendantPicker::new(&order, &degree);

    let dir_marks = code.direction_marks();
    let mut edges = Vec::with_capacity(n - 1);
    let mut removals = Vec::with_capacity(code.len());
    for (position, &raw_token) in code.tokens().iter().enumerate() {
        let token = resolve_token(&universe, raw_token)?;
        let u = picker
            .next(&degree)
            .ok_or(Error::PendantExhausted { position })?;
        let w = index_of(token).map_err(|_| Error::PendantExhausted { position })?;
        let (pendant_label, token_label) = (universe[u as usize], universe[w as usize]);
        let oriented = dir_marks.and_then(|m| m[position]);
        let edge = match oriented {
            // A converging mark points the edge into the token's vertex.
            Some(TokenDir::Converging) => GEdge {
                u: pendant_label,
                v: token_label,
                oriented: true,
                source: None,
            },
            Some(TokenDir::Diverging) => GEdge {
                u: token_label,
                v: pendant_label,
                oriented: true,
                source: None,
            },
            None => GEdge::plain(pendant_label, token_label),
        };
        edges.push(edge);
        removals.push((pendant_label, token_label));
        degree[u as usize] = 0;
        degree[w as usize] -= 1;
        if degree[w as usize] == 1 {
            picker.went_pendant(w);
        }
    }

    let survivors: Vec<u32> = (0..n_u32).filter(|&v| degree[v as usize] == 1).collect();
    let [x, y] = survivors[..] else {
        return Err(Error::NoFinalPair);
    };
    let (lx, ly) = (universe[x as usize], universe[y as usize]);
    let last = match code.last_edge_dir() {
        Some(LastEdgeDir::Ascending) => GEdge {
            u: lx,
            v: ly,
            oriented: true,
            source: None,
        },
        Some(LastEdgeDir::Descending) => GEdge {
            u: ly,
            v: lx,
            oriented: true,
            source: None,
        },
        None => GEdge::plain(lx, ly),
    };
    edges.push(last);

    let tree = GTree::from_labels_and_edges(code.method, universe.clone(), edges)?;

    if let Some(stored) = code.junction_marks() {
        let recomputed = crate::labeling::junction_marks_for(code.tokens());
        if let Some(position) = (0..stored.len()).find(|&i| stored[i] != recomputed[i]) {
            return Err(Error::JunctionMarkMismatch { position });
        }
    }

    Ok(Decoded {
        tree,
        removals,
        last_pair: (lx, ly),
    })
}

/// Builds the sorted vertex universe for a code, scheme-aware.
fn decode_universe(code: &PruferCode) -> Result<Vec<Label>> {
    match code.scheme {
        Scheme::Lcc => decode_universe_lcc(code),
        _ => {
            let (n1, replicas) = infer_label_universe(code)?;
            let mut universe: Vec<Label> =
                (1..=n1).map(Label::original).collect();
            universe.extend(replicas);
            universe.sort_unstable();
            Ok(universe)
        }
    }
}

/// Leaf-centric codes relabel every vertex to a distinct integer `1..=n` and
/// reuse the superscript as a replica-group id, so the universe is the
/// integer range with group annotations gathered from the tokens and `L`.
fn decode_universe_lcc(code: &PruferCode) -> Result<Vec<Label>> {
    let n = (code.len() + 2) as u32;
    let mut group_of: BTreeMap<u32, u32> = BTreeMap::new();
    for &t in code.tokens().iter().chain(code.pendant_list()) {
        if t.base() > n {
            return Err(Error::EndpointOutOfRange {
                endpoint: t,
                n1: n,
            });
        }
        if t.is_replica() {
            let prev = group_of.insert(t.base(), t.replica_index());
            if let Some(prev) = prev {
                if prev != t.replica_index() {
                    return Err(Error::ReplicaIndexGap {
                        base: t.base(),
                        missing: prev,
                    });
                }
            }
        }
    }
    // The group id names its own smallest member; that vertex carries the
    // group id as its superscript even when pendant and absent from tokens.
    let group_ids: BTreeSet<u32> = group_of.values().copied().collect();
    for g in group_ids {
        if g > n {
            return Err(Error::ReplicaBaseOutOfRange {
                replica: Label::new(g.max(1), g),
                n1: n,
            });
        }
        group_of.entry(g).or_insert(g);
    }
    Ok((1..=n)
        .map(|i| Label::new(i, group_of.get(&i).copied().unwrap_or(0)))
        .collect())
}

/// Maps a parsed token onto its universe label. For the leaf-centric scheme
/// a plain integer token refers to the (possibly annotated) vertex with that
/// integer; for other schemes tokens must match exactly.
fn resolve_token(universe: &[Label], token: Label) -> Result<Label> {
    if let Ok(i) = universe.binary_search(&token) {
        return Ok(universe[i]);
    }
    // Leaf-centric universes are keyed by base integer.
    if let Ok(i) = universe.binary_search_by_key(&(token.base(), 0), |l| {
        (l.base(), 0)
    }) {
        let candidate = universe[i];
        if candidate.base() == token.base() && !token.is_replica() {
            return Ok(candidate);
        }
    }
    Err(Error::EndpointOutOfRange {
        endpoint: token,
        n1: universe.len() as u32,
    })
}

/// All token sequences of length `n - 2` over labels `1..=n`, wrapped as raw
/// codes. There are exactly `n^(n-2)` of them, one per labeled tree.
pub fn enumerate_codes(n: u32) -> Result<Vec<PruferCode>> {
    if !(2..=8).contains(&n) {
        return Err(Error::EnumerationOutOfRange(n));
    }
    let m = (n - 2) as usize;
    let total = (n as usize).pow(m as u32);
    let mut out = Vec::with_capacity(total);
    let mut odometer = vec![0u32; m];
    for _ in 0..total {
        let tokens: Vec<Label> = odometer.iter().map(|&d| Label::original(d + 1)).collect();
        out.push(PruferCode::new(Method::Plain, Scheme::Raw, tokens, Vec::new()));
        for slot in odometer.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}
