//! `.bench` netlist parsing and topological labeling of circuit graphs.
//!
//! Input ports, output ports, logic gates, and memory cells become
//! vertices; fan-in connections become directed edges. Flip-flops follow a
//! policy: `Split` (the default) models each DFF as a pseudo-primary-input
//! vertex driving its fan-out plus a pseudo-primary-output vertex absorbing
//! its data input, which removes sequential feedback and guarantees a DAG;
//! `Single` keeps one vertex per DFF and is accepted only when the result
//! is already acyclic.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::label::Label;
use crate::labeling::RelabelMap;
use crate::order::NameRanking;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    And,
    Nand,
    Or,
    Nor,
    Not,
    Xor,
    Xnor,
    Buf,
}

impl GateKind {
    fn parse(word: &str) -> Option<GateKind> {
        match word.to_ascii_uppercase().as_str() {
            "AND" => Some(GateKind::And),
            "NAND" => Some(GateKind::Nand),
            "OR" => Some(GateKind::Or),
            "NOR" => Some(GateKind::Nor),
            "NOT" => Some(GateKind::Not),
            "XOR" => Some(GateKind::Xor),
            "XNOR" => Some(GateKind::Xnor),
            "BUF" | "BUFF" => Some(GateKind::Buf),
            _ => None,
        }
    }

    fn arity_ok(self, n: usize) -> bool {
        match self {
            GateKind::Not | GateKind::Buf => n == 1,
            _ => n >= 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// Primary input port.
    Pi,
    /// Primary output port.
    Po,
    Gate(GateKind),
    /// Flip-flop under the `Single` policy.
    Dff,
    /// Flip-flop output side under the `Split` policy.
    Ppi,
    /// Flip-flop data-input sink under the `Split` policy.
    Ppo,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VertexKind::Pi => "PI",
            VertexKind::Po => "PO",
            VertexKind::Gate(_) => "gate",
            VertexKind::Dff => "DFF",
            VertexKind::Ppi => "PPI",
            VertexKind::Ppo => "PPO",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct CircuitVertex {
    pub name: String,
    pub kind: VertexKind,
}

/// Directed circuit graph with named vertices; name-to-vertex is bijective.
#[derive(Debug, Clone)]
pub struct CircuitGraph {
    pub vertices: Vec<CircuitVertex>,
    /// Directed edges as (source, target) vertex indices.
    pub edges: Vec<(u32, u32)>,
}

impl CircuitGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DffPolicy {
    #[default]
    Split,
    Single,
}

impl DffPolicy {
    pub fn parse(s: &str) -> Option<DffPolicy> {
        match s {
            "split" => Some(DffPolicy::Split),
            "single" => Some(DffPolicy::Single),
            _ => None,
        }
    }
}

struct Builder {
    vertices: Vec<CircuitVertex>,
    by_name: HashMap<String, u32>,
}

impl Builder {
    fn add(&mut self, line: usize, name: &str, kind: VertexKind) -> Result<u32> {
        if self.by_name.contains_key(name) {
            return Err(parse_err(
                line,
                &format!("duplicate driver for signal `{name}`"),
            ));
        }
        let id = self.vertices.len() as u32;
        self.vertices.push(CircuitVertex {
            name: name.to_string(),
            kind,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }
}

/// Parses a `.bench` netlist: `INPUT(name)`, `OUTPUT(name)`,
/// `name = GATE(arg, ...)`, `#` comments. Output ports get their own
/// vertices (named `<signal>$po`) with one in-edge from the driving signal;
/// split flip-flops add a `<signal>$d` data sink.
pub fn parse_bench(text: &str, policy: DffPolicy) -> Result<CircuitGraph> {
    struct GateLine {
        line: usize,
        target: String,
        args: Vec<String>,
    }

    let mut builder = Builder {
        vertices: Vec::new(),
        by_name: HashMap::new(),
    };
    let mut outputs: Vec<(usize, String)> = Vec::new();
    let mut gate_lines: Vec<GateLine> = Vec::new();
    let mut dff_sinks: Vec<(usize, String, String)> = Vec::new(); // (line, data signal, sink name)

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = strip_keyword(content, "INPUT") {
            let name = parse_parenthesized(line, rest)?;
            builder.add(line, &name, VertexKind::Pi)?;
        } else if let Some(rest) = strip_keyword(content, "OUTPUT") {
            let name = parse_parenthesized(line, rest)?;
            outputs.push((line, name));
        } else if let Some((target, rhs)) = content.split_once('=') {
            let target = target.trim().to_string();
            if target.is_empty() {
                return Err(parse_err(line, "missing signal name before `=`"));
            }
            let (gate_word, args) = parse_call(line, rhs.trim())?;
            let Some(kind) = GateKind::parse(&gate_word) else {
                if gate_word.eq_ignore_ascii_case("DFF") {
                    if args.len() != 1 {
                        return Err(parse_err(line, "DFF takes exactly one input"));
                    }
                    match policy {
                        DffPolicy::Split => {
                            builder.add(line, &target, VertexKind::Ppi)?;
                            let sink = format!("{target}$d");
                            builder.add(line, &sink, VertexKind::Ppo)?;
                            dff_sinks.push((line, args[0].clone(), sink));
                        }
                        DffPolicy::Single => {
                            builder.add(line, &target, VertexKind::Dff)?;
                            dff_sinks.push((line, args[0].clone(), target.clone()));
                        }
                    }
                    continue;
                }
                return Err(parse_err(line, &format!("unknown gate keyword `{gate_word}`")));
            };
            if !kind.arity_ok(args.len()) {
                return Err(parse_err(
                    line,
                    &format!("gate `{gate_word}` given {} inputs", args.len()),
                ));
            }
            builder.add(line, &target, VertexKind::Gate(kind))?;
            gate_lines.push(GateLine { line, target, args });
        } else {
            return Err(parse_err(line, &format!("unrecognized statement `{content}`")));
        }
    }

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let resolve = |by_name: &HashMap<String, u32>, line: usize, name: &str| -> Result<u32> {
        by_name.get(name).copied().ok_or_else(|| {
            parse_err(line, &format!("signal `{name}` used but never declared"))
        })
    };
    for gate in &gate_lines {
        let target = builder.by_name[&gate.target];
        for arg in &gate.args {
            edges.push((resolve(&builder.by_name, gate.line, arg)?, target));
        }
    }
    for (line, data, sink) in &dff_sinks {
        let sink_id = builder.by_name[sink];
        edges.push((resolve(&builder.by_name, *line, data)?, sink_id));
    }
    for (line, name) in &outputs {
        let driver = resolve(&builder.by_name, *line, name)?;
        let port = builder.add(*line, &format!("{name}$po"), VertexKind::Po)?;
        edges.push((driver, port));
    }

    Ok(CircuitGraph {
        vertices: builder.vertices,
        edges,
    })
}

fn strip_keyword<'a>(content: &'a str, keyword: &str) -> Option<&'a str> {
    let head = content.get(..keyword.len())?;
    if head.eq_ignore_ascii_case(keyword) {
        let rest = &content[keyword.len()..];
        if rest.trim_start().starts_with('(') {
            return Some(rest);
        }
    }
    None
}

fn parse_parenthesized(line: usize, rest: &str) -> Result<String> {
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, "expected `(name)`"))?
        .trim();
    if inner.is_empty() || inner.contains(|c: char| c.is_whitespace() || c == ',') {
        return Err(parse_err(line, "expected a single signal name"));
    }
    Ok(inner.to_string())
}

fn parse_call(line: usize, rhs: &str) -> Result<(String, Vec<String>)> {
    let open = rhs
        .find('(')
        .ok_or_else(|| parse_err(line, "expected `GATE(args)`"))?;
    let close = rhs
        .rfind(')')
        .ok_or_else(|| parse_err(line, "missing closing parenthesis"))?;
    if close < open {
        return Err(parse_err(line, "malformed gate call"));
    }
    let gate = rhs[..open].trim().to_string();
    let args: Vec<String> = rhs[open + 1..close]
        .split(',')
        .map(|a| a.trim().to_string())
        .filter(|a| !a.is_empty())
        .collect();
    if args.is_empty() {
        return Err(parse_err(line, "gate call has no inputs"));
    }
    Ok((gate, args))
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Result of topological labeling: the relabeled graph plus the name-label
/// association.
#[derive(Debug, Clone)]
pub struct TopoLabeling {
    pub graph: Graph,
    /// Vertex index -> assigned label.
    pub labels: Vec<Label>,
    pub names: Vec<String>,
}

impl TopoLabeling {
    pub fn label_of_name(&self, name: &str) -> Option<Label> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.labels[i])
    }

    pub fn relabel_map(&self) -> RelabelMap {
        RelabelMap::from_pairs(
            self.labels
                .iter()
                .enumerate()
                .map(|(i, &l)| (Label::original(i as u32 + 1), l)),
        )
    }
}

/// Kahn-style layered topological labeling: every directed edge ascends in
/// the assigned labels. Within a layer, ties go to the external name
/// ranking when given, then to ascending source-name order.
pub fn topo_label(circuit: &CircuitGraph, ranking: Option<&NameRanking>) -> Result<TopoLabeling> {
    let n = circuit.vertex_count();
    let mut indegree = vec![0u32; n];
    let mut successors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(s, t) in &circuit.edges {
        indegree[t as usize] += 1;
        successors[s as usize].push(t);
    }

    let sort_key = |v: u32| {
        let name = &circuit.vertices[v as usize].name;
        (
            ranking.map(|r| r.rank(name)).unwrap_or(u64::MAX),
            name.clone(),
        )
    };
    let mut layer: Vec<u32> = (0..n as u32).filter(|&v| indegree[v as usize] == 0).collect();
    let mut labels = vec![Label::original(1); n];
    let mut assigned = 0usize;
    let mut next = 1u32;
    while !layer.is_empty() {
        layer.sort_by_key(|&v| sort_key(v));
        let mut following = Vec::new();
        for &v in &layer {
            labels[v as usize] = Label::original(next);
            next += 1;
            assigned += 1;
            for &t in &successors[v as usize] {
                indegree[t as usize] -= 1;
                if indegree[t as usize] == 0 {
                    following.push(t);
                }
            }
        }
        layer = following;
    }
    if assigned < n {
        return Err(Error::DirectedCycle {
            witness: cycle_names(circuit, &indegree),
        });
    }

    let edges: Vec<Edge> = circuit
        .edges
        .iter()
        .map(|&(s, t)| Edge::directed(labels[s as usize], labels[t as usize]))
        .collect();
    let graph = Graph::new(n as u32, edges)?;
    Ok(TopoLabeling {
        graph,
        labels,
        names: circuit.vertices.iter().map(|v| v.name.clone()).collect(),
    })
}

fn cycle_names(circuit: &CircuitGraph, indegree: &[u32]) -> Vec<Label> {
    // Witness the cycle by walking stuck predecessors; report positions as
    // 1-based vertex indices since no labels were assigned.
    let n = circuit.vertex_count();
    let stuck: Vec<bool> = indegree.iter().map(|&d| d > 0).collect();
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(s, t) in &circuit.edges {
        predecessors[t as usize].push(s);
    }
    let start = stuck.iter().position(|&s| s).unwrap() as u32;
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = vec![start];
    seen_at[start as usize] = 0;
    loop {
        let cur = *walk.last().unwrap();
        let prev = predecessors[cur as usize]
            .iter()
            .copied()
            .filter(|&p| stuck[p as usize])
            .min()
            .expect("stuck vertex has a stuck predecessor");
        if seen_at[prev as usize] != usize::MAX {
            let mut cycle: Vec<Label> = walk[seen_at[prev as usize]..]
                .iter()
                .map(|&v| Label::original(v + 1))
                .collect();
            cycle.reverse();
            cycle.push(cycle[0]);
            return cycle;
        }
        seen_at[prev as usize] = walk.len();
        walk.push(prev);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "\
# two gates
INPUT(a)
INPUT(b)
OUTPUT(y)
x = AND(a, b)
y = NOT(x)
";

    #[test]
    fn tiny_netlist_counts() {
        let c = parse_bench(TINY, DffPolicy::Split).unwrap();
        // a, b, x, y, y$po
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.edge_count(), 4);
    }

    #[test]
    fn input_to_output_passthrough() {
        let c = parse_bench("INPUT(a)\nOUTPUT(a)\n", DffPolicy::Split).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 1);
    }

    #[test]
    fn repeated_fanin_gives_parallel_edges() {
        let c = parse_bench("INPUT(a)\nx = AND(a, a)\n", DffPolicy::Split).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 2);
    }

    #[test]
    fn undeclared_signal_is_reported_with_line() {
        let err = parse_bench("INPUT(a)\nx = AND(a, ghost)\n", DffPolicy::Split).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn duplicate_driver_is_rejected() {
        let err = parse_bench("INPUT(a)\na = NOT(a)\n", DffPolicy::Split).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn unknown_gate_is_rejected() {
        let err = parse_bench("INPUT(a)\nx = FROB(a)\n", DffPolicy::Split).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn split_policy_breaks_feedback() {
        let seq = "\
INPUT(a)
OUTPUT(q)
q = DFF(g)
g = AND(a, q)
";
        let split = parse_bench(seq, DffPolicy::Split).unwrap();
        assert!(topo_label(&split, None).is_ok());

        let single = parse_bench(seq, DffPolicy::Single).unwrap();
        let err = topo_label(&single, None).unwrap_err();
        assert!(matches!(err, Error::DirectedCycle { .. }));
    }

    #[test]
    fn topo_labels_ascend_along_edges() {
        let c = parse_bench(TINY, DffPolicy::Split).unwrap();
        let t = topo_label(&c, None).unwrap();
        for e in t.graph.edges() {
            assert!(e.a < e.b);
        }
        assert_eq!(t.graph.vertex_count() as usize, c.vertex_count());
    }

    #[test]
    fn buffer_chain_is_labeled_in_order() {
        let text = "\
INPUT(i)
b1 = BUF(i)
b2 = BUF(b1)
b3 = BUF(b2)
";
        let c = parse_bench(text, DffPolicy::Split).unwrap();
        let t = topo_label(&c, None).unwrap();
        assert_eq!(t.label_of_name("i"), Some(Label::original(1)));
        assert_eq!(t.label_of_name("b3"), Some(Label::original(4)));
    }

    #[test]
    fn parsing_is_deterministic() {
        let a = parse_bench(TINY, DffPolicy::Split).unwrap();
        let b = parse_bench(TINY, DffPolicy::Split).unwrap();
        assert_eq!(a.edges, b.edges);
        let names_a: Vec<&str> = a.vertices.iter().map(|v| v.name.as_str()).collect();
        let names_b: Vec<&str> = b.vertices.iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names_a, names_b);
    }
}
