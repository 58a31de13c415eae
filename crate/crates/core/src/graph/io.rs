use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::tm::{MachineSpec, StateId, SymbolId};

use super::node::{CompNode, Edge};
use super::store::CompGraph;
use super::GraphError;

const BOTTOM: &str = "⊥";

/// State and symbol names used when printing or parsing graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naming {
    pub states: Vec<String>,
    pub symbols: Vec<String>,
}

impl Naming {
    pub fn from_spec(spec: &MachineSpec) -> Self {
        Naming {
            states: spec.states().to_vec(),
            symbols: spec.symbols().to_vec(),
        }
    }

    fn state(&self, q: StateId) -> &str {
        self.states.get(q.0 as usize).map_or("?", String::as_str)
    }

    fn symbol(&self, s: SymbolId) -> &str {
        self.symbols.get(s.0 as usize).map_or("?", String::as_str)
    }

    fn state_id(&self, name: &str) -> Result<StateId, GraphError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|k| StateId(k as u16))
            .ok_or_else(|| GraphError::Parse(format!("unknown state `{name}`")))
    }

    fn symbol_id(&self, name: &str) -> Result<SymbolId, GraphError> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|k| SymbolId(k as u16))
            .ok_or_else(|| GraphError::Parse(format!("unknown symbol `{name}`")))
    }

    /// `(i,t,q,σ,q⊥,σ⊥)`.
    pub fn node(&self, v: &CompNode) -> String {
        let (lq, ls) = match v.last {
            Some((q, s)) => (self.state(q), self.symbol(s)),
            None => (BOTTOM, BOTTOM),
        };
        format!(
            "({},{},{},{},{},{})",
            v.index,
            v.tier,
            self.state(v.state),
            self.symbol(v.symbol),
            lq,
            ls
        )
    }

    pub fn edge(&self, e: &Edge) -> String {
        format!("{} -> {}", self.node(&e.init), self.node(&e.term))
    }

    /// DOT label `i/t q,σ [q⊥,σ⊥]`.
    pub fn label(&self, v: &CompNode) -> String {
        let (lq, ls) = match v.last {
            Some((q, s)) => (self.state(q), self.symbol(s)),
            None => (BOTTOM, BOTTOM),
        };
        format!(
            "{}/{} {},{} [{},{}]",
            v.index,
            v.tier,
            self.state(v.state),
            self.symbol(v.symbol),
            lq,
            ls
        )
    }

    pub fn parse_node(&self, text: &str) -> Result<CompNode, GraphError> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GraphError::Parse(format!("node must be parenthesised: `{text}`")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(GraphError::Parse(format!("node needs 6 fields: `{text}`")));
        }
        let index: i32 = parts[0]
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad index `{}`", parts[0])))?;
        let tier: u32 = parts[1]
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad tier `{}`", parts[1])))?;
        let last = if parts[4] == BOTTOM && parts[5] == BOTTOM {
            None
        } else {
            Some((self.state_id(parts[4])?, self.symbol_id(parts[5])?))
        };
        CompNode::new(
            index,
            tier,
            self.state_id(parts[2])?,
            self.symbol_id(parts[3])?,
            last,
        )
    }

    pub fn parse_edge(&self, text: &str) -> Result<Edge, GraphError> {
        let (a, b) = text
            .split_once("->")
            .ok_or_else(|| GraphError::Parse(format!("edge needs `->`: `{text}`")))?;
        Edge::new(self.parse_node(a)?, self.parse_node(b)?)
    }

    /// Parses `;`-separated edges.
    pub fn parse_edge_set(&self, text: &str) -> Result<BTreeSet<Edge>, GraphError> {
        text.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.parse_edge(t))
            .collect()
    }

    /// Parses `;`-separated nodes.
    pub fn parse_node_set(&self, text: &str) -> Result<BTreeSet<CompNode>, GraphError> {
        text.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.parse_node(t))
            .collect()
    }
}

/// Edge-list dump: naming header, then one edge per line in canonical order.
pub fn to_edge_list(g: &CompGraph, naming: &Naming) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", naming.states.join(" "));
    let _ = writeln!(out, "symbols: {}", naming.symbols.join(" "));
    for e in g.edges() {
        let _ = writeln!(out, "{}", naming.edge(e));
    }
    out
}

/// Parses an edge-list dump written by [`to_edge_list`].
pub fn parse_edge_list(text: &str) -> Result<(CompGraph, Naming), GraphError> {
    let mut states = None;
    let mut symbols = None;
    let mut lines = Vec::new();
    for line in text.lines() {
        let line = match line.find("#!") {
            Some(k) => &line[..k],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("states:") {
            states = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("symbols:") {
            symbols = Some(rest.split_whitespace().map(str::to_string).collect());
        } else {
            lines.push(line);
        }
    }
    let naming = Naming {
        states: states.ok_or_else(|| GraphError::Parse("missing `states:` header".into()))?,
        symbols: symbols.ok_or_else(|| GraphError::Parse("missing `symbols:` header".into()))?,
    };
    let mut g = CompGraph::new();
    for line in lines {
        let e = naming.parse_edge(line)?;
        g.add_edge(e.init, e.term)?;
    }
    Ok((g, naming))
}

/// DOT export. Highlighted edges are drawn bold.
pub fn to_dot(g: &CompGraph, naming: &Naming, highlight: &BTreeSet<Edge>) -> String {
    let mut out = String::from("digraph footmarks {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    let ids: std::collections::BTreeMap<CompNode, usize> =
        g.nodes().enumerate().map(|(k, v)| (v, k)).collect();
    for (v, k) in &ids {
        let _ = writeln!(
            out,
            "  n{k} [label=\"{}\"];",
            naming.label(v).replace('"', "\\\"")
        );
    }
    for e in g.edges() {
        let style = if highlight.contains(e) {
            " [style=bold, color=red]"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{} -> n{}{style};", ids[&e.init], ids[&e.term]);
    }
    out.push_str("}\n");
    out
}
