//! Implementation of the `prufer` command line tool: encode, decode,
//! round-trip verification, per-circuit statistics, and small-n
//! enumeration.

use prufer_codec::codefile;
use prufer_codec::edgelist;
use prufer_codec::graph::{graphs_equal, merge_replicas, Graph};
use prufer_codec::label::Label;
use prufer_codec::labeling::{
    encode_pcc, mark_directions, merge_lcc_groups, orient_ascending, relabel_dcc, relabel_lcc,
    RelabelMap,
};
use prufer_codec::netlist::{parse_bench, topo_label, DffPolicy};
use prufer_codec::order::{NameRanking, VertexRanking};
use prufer_codec::prufer::{decode_code, encode_tree, enumerate_codes, Encoding, Scheme};
use prufer_codec::scesor::{default_start, enhance_scesor_from};
use prufer_codec::stats::{EnhanceStats, StatsRecord};
use prufer_codec::tree::{GEdge, GTree, Method};
use prufer_codec::treepart::enhance_treepart;
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Command failures, split by exit code: input problems exit 1, violated
/// internal invariants exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<prufer_codec::Error> for CliError {
    fn from(e: prufer_codec::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Bench,
    EdgeList,
}

impl Format {
    /// `.bench` files hold netlists; anything else is an edge list.
    pub fn infer(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("bench") => Format::Bench,
            _ => Format::EdgeList,
        }
    }
}

/// Fully specified encode request.
#[derive(Debug, Clone)]
pub struct EncodeRequest {
    pub input: PathBuf,
    pub format: Option<Format>,
    pub method: Method,
    pub scheme: Scheme,
    pub dff: DffPolicy,
    pub start: Option<Label>,
    pub order: Option<PathBuf>,
}

struct LoadedInput {
    name: String,
    graph: Graph,
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_input(req: &EncodeRequest) -> CliResult<LoadedInput> {
    let format = req.format.unwrap_or_else(|| Format::infer(&req.input));
    let text = read_file(&req.input)?;
    let name = req
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("input")
        .to_string();
    let graph = match format {
        Format::Bench => {
            let ranking = match &req.order {
                Some(path) => Some(NameRanking::new(
                    read_file(path)?.lines().map(|l| l.trim().to_string()),
                )),
                None => None,
            };
            let circuit = parse_bench(&text, req.dff)?;
            topo_label(&circuit, ranking.as_ref())?.graph
        }
        Format::EdgeList => edgelist::parse(&text)?,
    };
    Ok(LoadedInput { name, graph })
}

fn label_ranking(req: &EncodeRequest) -> CliResult<Option<VertexRanking>> {
    let Some(path) = &req.order else {
        return Ok(None);
    };
    let mut labels = Vec::new();
    for line in read_file(path)?.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        labels.push(line.parse::<Label>().map_err(CliError::Input)?);
    }
    Ok(Some(VertexRanking::new(labels)))
}

/// Everything an encode run produces.
#[derive(Debug)]
pub struct EncodeOutcome {
    pub encoding: Encoding,
    pub stats: StatsRecord,
    /// Scheme relabeling (DCC/PCC on the graph, LCC on the tree), identity
    /// for the raw scheme.
    pub relabel: Option<RelabelMap>,
    pub tree: GTree,
    pub graph: Graph,
}

/// Runs the full encode pipeline: load, scheme relabeling, enhancement,
/// encoding, direction marks.
pub fn encode_pipeline(req: &EncodeRequest) -> CliResult<EncodeOutcome> {
    let loaded = load_input(req)?;
    let format = req.format.unwrap_or_else(|| Format::infer(&req.input));
    if matches!(req.scheme, Scheme::Dcc | Scheme::Pcc) && !loaded.graph.fully_directed() {
        return Err(CliError::Input(format!(
            "scheme {} requires a directed input graph",
            req.scheme
        )));
    }
    let ranking = match format {
        Format::EdgeList => label_ranking(req)?,
        Format::Bench => None, // consumed by topo_label as a name ranking
    };

    let began = Instant::now();
    let mut relabel = None;
    let base = match req.scheme {
        Scheme::Dcc | Scheme::Pcc => {
            let map = relabel_dcc(&loaded.graph, ranking.as_ref())?;
            let relabeled = map.apply_graph(&loaded.graph)?;
            relabel = Some(map);
            relabeled
        }
        _ => loaded.graph.clone(),
    };

    let (tree, enhance_stats) = match req.method {
        Method::TreePartition => {
            let e = enhance_treepart(&base)?;
            (e.tree, e.stats)
        }
        Method::Scesor => {
            let start = req.start.unwrap_or_else(|| default_start(&base));
            let e = enhance_scesor_from(&base, start)?;
            (e.tree, e.stats)
        }
        Method::Plain => {
            if base.edge_count() + 1 != base.vertex_count() as usize {
                return Err(prufer_codec::Error::NotATreeInput.into());
            }
            let edges: Vec<GEdge> = base
                .edges()
                .iter()
                .enumerate()
                .map(|(id, e)| GEdge {
                    u: e.a,
                    v: e.b,
                    oriented: e.oriented,
                    source: Some(id as u32),
                })
                .collect();
            let tree = GTree::from_parts(Method::Plain, edges)?;
            let stats = EnhanceStats {
                vertex_splits: 0,
                edge_swaps: 0,
                label_swaps: 0,
                max_be_class: 0,
                be_tree_count: 0,
                pendant_list_len: 0,
                vertex_classes: None,
                elapsed: began.elapsed(),
            };
            (tree, stats)
        }
    };

    let (tree, mut encoding) = match req.scheme {
        Scheme::Pcc => {
            let enc = encode_pcc(&tree)?;
            (tree, enc)
        }
        Scheme::Lcc => {
            let (map, relabeled, enc) = relabel_lcc(&tree, ranking.as_ref())?;
            relabel = Some(map);
            (relabeled, enc)
        }
        Scheme::Dcc => {
            let mut enc = encode_tree(&tree)?;
            enc.code.scheme = Scheme::Dcc;
            (tree, enc)
        }
        Scheme::Raw => {
            let enc = encode_tree(&tree)?;
            (tree, enc)
        }
    };

    // Raw and leaf-centric codes carry explicit direction marks; the
    // topological schemes encode directions in their labels.
    if matches!(req.scheme, Scheme::Raw | Scheme::Lcc) && base.has_directions() {
        mark_directions(&mut encoding, &tree, &base)?;
    }

    let elapsed = began.elapsed();
    let stats = StatsRecord::from_stats(
        loaded.name.clone(),
        loaded.graph.vertex_count() as u64,
        loaded.graph.edge_count() as u64,
        encoding.code.len() as u64,
        &enhance_stats,
        elapsed,
    );
    Ok(EncodeOutcome {
        encoding,
        stats,
        relabel,
        tree,
        graph: loaded.graph,
    })
}

/// Writes the code file (and optionally the relabeling table) and prints
/// the stats record.
pub fn run_encode(req: &EncodeRequest, output: &Path, map_output: Option<&Path>) -> CliResult<()> {
    let outcome = encode_pipeline(req)?;
    std::fs::write(output, codefile::serialize(&outcome.encoding.code))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", output.display())))?;
    if let Some(path) = map_output {
        let table = outcome
            .relabel
            .as_ref()
            .map(RelabelMap::to_table_string)
            .unwrap_or_default();
        std::fs::write(path, table)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    println!("{}", StatsRecord::table_header());
    println!("{}", outcome.stats.table_row());
    println!("{}", outcome.stats.to_json_line());
    Ok(())
}

/// Decodes a code file into a graph: reconstruct the tree per scheme, merge
/// replicas, restore marked directions, and write the edge list.
pub fn run_decode(input: &Path, output: &Path) -> CliResult<()> {
    let code = codefile::parse(&read_file(input)?)?;
    let graph = decode_to_graph(&code)?;
    std::fs::write(output, edgelist::serialize(&graph))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", output.display())))?;
    println!(
        "decoded {} tokens (method={}, scheme={}) into {} vertices, {} edges",
        code.len(),
        code.method,
        code.scheme,
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(())
}

pub fn decode_to_graph(code: &prufer_codec::PruferCode) -> CliResult<Graph> {
    let decoded = decode_code(code)?;
    let graph = match code.scheme {
        Scheme::Raw => merge_replicas(&decoded.tree)?,
        Scheme::Dcc | Scheme::Pcc => orient_ascending(&merge_replicas(&decoded.tree)?),
        Scheme::Lcc => merge_lcc_groups(&decoded.tree)?,
    };
    Ok(graph)
}

/// Encodes then decodes in-process and compares against the input.
pub fn run_roundtrip(req: &EncodeRequest) -> CliResult<()> {
    let outcome = encode_pipeline(req)?;

    let mut code = outcome.encoding.code.clone();
    if std::env::var_os("PRUFER_ROUNDTRIP_CORRUPT").is_some() {
        code = corrupt_code(&code);
    }

    // Through the bit-exact file format.
    let reparsed = codefile::parse(&codefile::serialize(&code))
        .map_err(|e| CliError::Internal(format!("decode stage: {e}")))?;
    let decoded =
        decode_code(&reparsed).map_err(|e| CliError::Internal(format!("decode stage: {e}")))?;

    let recovered = match code.scheme {
        Scheme::Raw => merge_replicas(&decoded.tree)
            .map_err(|e| CliError::Internal(format!("merge stage: {e}")))?,
        Scheme::Dcc | Scheme::Pcc => {
            let merged = merge_replicas(&decoded.tree)
                .map_err(|e| CliError::Internal(format!("merge stage: {e}")))?;
            let oriented = orient_ascending(&merged);
            let map = outcome.relabel.as_ref().expect("dcc/pcc set a relabeling");
            map.invert()
                .apply_graph(&oriented)
                .map_err(|e| CliError::Internal(format!("relabel stage: {e}")))?
        }
        Scheme::Lcc => {
            let map = outcome.relabel.as_ref().expect("lcc sets a relabeling");
            let back = map
                .invert()
                .apply_tree(&decoded.tree)
                .map_err(|e| CliError::Internal(format!("relabel stage: {e}")))?;
            merge_replicas(&back).map_err(|e| CliError::Internal(format!("merge stage: {e}")))?
        }
    };

    if !graphs_equal(&recovered, &outcome.graph) {
        println!("roundtrip: FAIL at compare stage");
        return Err(CliError::Internal(
            "decoded graph differs from input".to_string(),
        ));
    }
    println!("roundtrip: PASS");
    println!("{}", StatsRecord::table_header());
    println!("{}", outcome.stats.table_row());
    println!("{}", outcome.stats.to_json_line());
    Ok(())
}

fn corrupt_code(code: &prufer_codec::PruferCode) -> prufer_codec::PruferCode {
    let mut tokens = code.tokens().to_vec();
    if let Some(first) = tokens.first_mut() {
        *first = Label::original(first.base() + 1);
    }
    prufer_codec::PruferCode::new(
        code.method,
        code.scheme,
        tokens,
        code.pendant_list().to_vec(),
    )
}

/// One stats row per `.bench` file in the directory; failures are reported
/// inline and processing continues.
pub fn run_stats(dir: &Path, method: Method, dff: DffPolicy) -> CliResult<()> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("bench"))
        .collect();
    entries.sort();

    let mut records = Vec::new();
    println!("{}", StatsRecord::table_header());
    for path in &entries {
        let req = EncodeRequest {
            input: path.clone(),
            format: Some(Format::Bench),
            method,
            scheme: Scheme::Raw,
            dff,
            start: None,
            order: None,
        };
        match encode_pipeline(&req) {
            Ok(outcome) => {
                println!("{}", outcome.stats.table_row());
                records.push(outcome.stats);
            }
            Err(e) => {
                eprintln!("{}: {e}", path.display());
            }
        }
    }
    println!();
    for record in &records {
        println!("{}", record.to_json_line());
    }
    Ok(())
}

/// Decodes all `n^(n-2)` codes, re-encodes each, and reports the bijection
/// plus the induced partition into unlabeled shapes.
pub fn run_enumerate(n: u32) -> CliResult<()> {
    let codes = enumerate_codes(n)?;
    let mut shapes: BTreeMap<String, u64> = BTreeMap::new();
    let mut labeled = std::collections::BTreeSet::new();
    for code in &codes {
        let decoded = decode_code(code)
            .map_err(|e| CliError::Internal(format!("enumerated code failed to decode: {e}")))?;
        let mut edges: Vec<(Label, Label)> = decoded
            .tree
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (decoded.tree.label_of(e.u), decoded.tree.label_of(e.v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if !labeled.insert(edges) {
            return Err(CliError::Internal(
                "two codes decoded to the same labeled tree".to_string(),
            ));
        }
        let back = encode_tree(&decoded.tree)
            .map_err(|e| CliError::Internal(format!("re-encode failed: {e}")))?;
        if back.code.tokens() != code.tokens() {
            return Err(CliError::Internal(
                "re-encoding changed an enumerated code".to_string(),
            ));
        }
        *shapes.entry(shape_signature(&decoded.tree)).or_insert(0) += 1;
    }
    let mut sizes: Vec<u64> = shapes.values().copied().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    println!(
        "n={n}: {} codes, bijection verified, {} unlabeled shapes (class sizes: {})",
        codes.len(),
        shapes.len(),
        sizes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(())
}

/// Canonical form of the unlabeled shape: minimum rooted AHU string over
/// all roots. Only used at enumeration scale.
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
        .unwrap_or_default()
}
