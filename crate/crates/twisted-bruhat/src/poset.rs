//! Finite graded posets given by Hasse edges, with DOT and JSON-lines export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node<T> {
    pub item: T,
    pub label: String,
    pub grade: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
    pub label: String,
    /// Also a cover in the accompanying weak order.
    pub weak: bool,
}

#[derive(Clone, Debug)]
pub struct GradedPoset<T> {
    pub nodes: Vec<Node<T>>,
    pub edges: Vec<Edge>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Default for GradedPoset<T> {
    fn default() -> Self {
        GradedPoset { nodes: vec![], edges: vec![], index: HashMap::new() }
    }
}

impl<T: Clone + Eq + Hash> GradedPoset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Insert a node, or return the index of an existing one.
    pub fn add_node(&mut self, item: T, label: String, grade: i64) -> usize {
        if let Some(&i) = self.index.get(&item) {
            return i;
        }
        self.index.insert(item.clone(), self.nodes.len());
        self.nodes.push(Node { item, label, grade });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, lower: usize, upper: usize, label: String, weak: bool) {
        if !self.edges.iter().any(|e| e.lower == lower && e.upper == upper) {
            self.edges.push(Edge { lower, upper, label, weak });
        }
    }

    pub fn index_of(&self, item: &T) -> Option<usize> {
        self.index.get(item).copied()
    }

    pub fn contains(&self, item: &T) -> bool {
        self.index.contains_key(item)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Every edge raises the grade by exactly one.
    pub fn grading_ok(&self) -> bool {
        self.edges.iter().all(|e| self.nodes[e.upper].grade == self.nodes[e.lower].grade + 1)
    }

    /// Sort nodes by (grade, label) and edges by endpoints; makes output canonical.
    pub fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| {
            (self.nodes[a].grade, &self.nodes[a].label).cmp(&(self.nodes[b].grade, &self.nodes[b].label))
        });
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let nodes: Vec<Node<T>> = order.iter().map(|&i| self.nodes[i].clone()).collect();
        self.index = nodes.iter().enumerate().map(|(i, n)| (n.item.clone(), i)).collect();
        self.nodes = nodes;
        for e in &mut self.edges {
            e.lower = remap[e.lower];
            e.upper = remap[e.upper];
        }
        self.edges.sort();
    }

    /// `below[i][j]` iff node `i ≤ j` in the transitive closure.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let mut up: Vec<Vec<usize>> = vec![vec![]; n];
        for e in &self.edges {
            up[e.lower].push(e.upper);
        }
        let mut m = vec![vec![false; n]; n];
        for (s, row) in m.iter_mut().enumerate() {
            let mut stack = vec![s];
            row[s] = true;
            while let Some(v) = stack.pop() {
                for &u in &up[v] {
                    if !row[u] {
                        row[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        m
    }

    /// Node indices grouped by grade.
    pub fn ranks(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            out.entry(n.grade).or_default().push(i);
        }
        out
    }

    /// Black edges are weak covers, blue edges are strong-only covers.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=plaintext];");
        for (grade, ids) in self.ranks() {
            let _ = writeln!(s, "  subgraph \"rank_{grade}\" {{");
            let _ = writeln!(s, "    rank=same;");
            for i in ids {
                let n = &self.nodes[i];
                let _ = writeln!(s, "    n{i} [label=\"{}\", grade={}];", n.label, n.grade);
            }
            let _ = writeln!(s, "  }}");
        }
        for e in &self.edges {
            let color = if e.weak { "black" } else { "blue" };
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\", color={color}];", e.lower, e.upper, e.label);
        }
        s.push_str("}\n");
        s
    }

    /// One JSON record per line: nodes first, then edges.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let v = json!({"kind": "node", "id": i, "label": n.label, "grade": n.grade});
            s.push_str(&v.to_string());
            s.push('\n');
        }
        for e in &self.edges {
            let v = json!({"kind": "edge", "lower": e.lower, "upper": e.upper, "label": e.label, "weak": e.weak});
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }
}

/// Read back the output of [`GradedPoset::to_jsonl`], keyed by label.
pub fn parse_jsonl(text: &str) -> Result<GradedPoset<String>, Error> {
    let mut p = GradedPoset::new();
    let mut ids: HashMap<u64, usize> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let v: Value = serde_json::from_str(line).map_err(|e| bad(&format!("column {}: {e}", e.column())))?;
        match v["kind"].as_str() {
            Some("node") => {
                let id = v["id"].as_u64().ok_or_else(|| bad("missing id"))?;
                let label = v["label"].as_str().ok_or_else(|| bad("missing label"))?.to_string();
                let grade = v["grade"].as_i64().ok_or_else(|| bad("missing grade"))?;
                let idx = p.add_node(label.clone(), label, grade);
                ids.insert(id, idx);
            }
            Some("edge") => {
                let lo = v["lower"].as_u64().and_then(|i| ids.get(&i).copied()).ok_or_else(|| bad("bad lower"))?;
                let up = v["upper"].as_u64().and_then(|i| ids.get(&i).copied()).ok_or_else(|| bad("bad upper"))?;
                let label = v["label"].as_str().unwrap_or("").to_string();
                let weak = v["weak"].as_bool().ok_or_else(|| bad("missing weak"))?;
                p.add_edge(lo, up, label, weak);
            }
            _ => return Err(bad("unknown record kind")),
        }
    }
    Ok(p)
}

/// Read back the output of [`GradedPoset::to_dot`]; returns the graph name and the poset.
pub fn parse_dot(text: &str) -> Result<(String, GradedPoset<String>), Error> {
    let mut p = GradedPoset::new();
    let mut name = None;
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let col = raw.len() - raw.trim_start().len() + 1;
        let bad = |what: &str| Error::Parse(format!("line {}, column {col}: {what}", lineno + 1));
        if let Some(rest) = line.strip_prefix("digraph ") {
            let n = rest.strip_suffix('{').map(str::trim).and_then(|r| r.strip_prefix('"')).and_then(|r| r.strip_suffix('"'));
            name = Some(n.ok_or_else(|| bad("bad graph header"))?.to_string());
            continue;
        }
        if line.is_empty() || line == "}" || line.starts_with("rankdir") || line.starts_with("node ") || line.starts_with("subgraph") || line.starts_with("rank=") {
            continue;
        }
        let (head, attrs) = line.split_once(" [").ok_or_else(|| bad("expected attributes"))?;
        let attrs = attrs.strip_suffix("];").ok_or_else(|| bad("expected '];'"))?;
        let label = attr(attrs, "label").ok_or_else(|| bad("missing label"))?;
        let label = label.strip_prefix('"').and_then(|l| l.strip_suffix('"')).ok_or_else(|| bad("unquoted label"))?.to_string();
        if let Some((lo, up)) = head.split_once(" -> ") {
            let lo = *ids.get(lo).ok_or_else(|| bad("unknown lower node"))?;
            let up = *ids.get(up).ok_or_else(|| bad("unknown upper node"))?;
            let weak = match attr(attrs, "color") {
                Some("black") => true,
                Some("blue") => false,
                _ => return Err(bad("edge color must be black or blue")),
            };
            p.add_edge(lo, up, label, weak);
        } else {
            let grade = attr(attrs, "grade").and_then(|g| g.parse().ok()).ok_or_else(|| bad("missing grade"))?;
            let idx = p.add_node(label.clone(), label, grade);
            ids.insert(head.to_string(), idx);
        }
    }
    // Edges follow the order of the writer, which is already canonical.
    Ok((name.ok_or_else(|| Error::Parse("line 1, column 1: missing digraph header".into()))?, p))
}

fn attr<'a>(attrs: &'a str, key: &str) -> Option<&'a str> {
    // Labels are root names or words and contain no ", ".
    attrs.split(", ").find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}
