//! Per-circuit statistics emitted by the encoding pipeline.

use std::time::Duration;

/// Vertex-class counts of a SCESOR tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    /// Originals that were split at least once (s-vertices).
    pub split: u64,
    /// Originals that were never split (g-vertices).
    pub untouched: u64,
    /// Replicas (r-vertices).
    pub replicas: u64,
}

/// Counters filled by an enhancement run.
#[derive(Debug, Clone)]
pub struct EnhanceStats {
    pub vertex_splits: u64,
    pub edge_swaps: u64,
    pub label_swaps: u64,
    pub max_be_class: u32,
    pub be_tree_count: u32,
    pub pendant_list_len: u64,
    pub vertex_classes: Option<ClassCounts>,
    pub elapsed: Duration,
}

/// One row of the statistics table. `code_len = |E| - 1` and
/// `vertex_splits = |E| + 1 - |V|` hold on every row.
#[derive(Debug, Clone)]
pub struct StatsRecord {
    pub circuit: String,
    pub vertices: u64,
    pub edges: u64,
    pub code_len: u64,
    pub pendant_list_len: u64,
    pub max_be_class: u32,
    pub edge_swaps: u64,
    pub vertex_splits: u64,
    pub label_swaps: u64,
    pub encode_seconds: f64,
    pub vertex_classes: Option<ClassCounts>,
}

impl StatsRecord {
    pub fn from_stats(
        circuit: impl Into<String>,
        vertices: u64,
        edges: u64,
        code_len: u64,
        stats: &EnhanceStats,
        total_elapsed: Duration,
    ) -> Self {
        StatsRecord {
            circuit: circuit.into(),
            vertices,
            edges,
            code_len,
            pendant_list_len: stats.pendant_list_len,
            max_be_class: stats.max_be_class,
            edge_swaps: stats.edge_swaps,
            vertex_splits: stats.vertex_splits,
            label_swaps: stats.label_swaps,
            encode_seconds: total_elapsed.as_secs_f64(),
            vertex_classes: stats.vertex_classes,
        }
    }

    /// One self-describing record per line.
    pub fn to_json_line(&self) -> String {
        let mut line = format!(
            "{{\"circuit\":\"{}\",\"vertices\":{},\"edges\":{},\"code_len\":{},\"pendant_list\":{},\"max_be_class\":{},\"edge_swaps\":{},\"vertex_splits\":{},\"label_swaps\":{},\"encode_seconds\":{:.6}",
            self.circuit.replace('"', "\\\""),
            self.vertices,
            self.edges,
            self.code_len,
            self.pendant_list_len,
            self.max_be_class,
            self.edge_swaps,
            self.vertex_splits,
            self.label_swaps,
            self.encode_seconds,
        );
        if let Some(c) = self.vertex_classes {
            line.push_str(&format!(
                ",\"vertex_classes\":{{\"s\":{},\"g\":{},\"r\":{}}}",
                c.split, c.untouched, c.replicas
            ));
        }
        line.push('}');
        line
    }

    pub fn table_header() -> String {
        format!(
            "{:<16} {:>9} {:>9} {:>9} {:>5} {:>7} {:>7} {:>8} {:>8} {:>10}",
            "circuit", "|V|", "|E|", "code", "|L|", "maxcls", "swaps", "splits", "lswaps", "time(s)"
        )
    }

    pub fn table_row(&self) -> String {
        format!(
            "{:<16} {:>9} {:>9} {:>9} {:>5} {:>7} {:>7} {:>8} {:>8} {:>10.4}",
            self.circuit,
            self.vertices,
            self.edges,
            self.code_len,
            self.pendant_list_len,
            self.max_be_class,
            self.edge_swaps,
            self.vertex_splits,
            self.label_swaps,
            self.encode_seconds,
        )
    }
}
