use std::fmt::Write as _;

use serde::Serialize;

use super::{Skeleton, SlotPath};
use crate::algebra::TruncatedAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStyle {
    /// Edge inside the skeleton.
    Solid,
    /// Edge to a critical path.
    Dashed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub id: String,
    /// Name of the terminal vertex of the path.
    pub label: String,
    pub level: usize,
    pub slot: usize,
    pub critical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub arrow: String,
    pub style: EdgeStyle,
}

/// The layered, labelled graph of a skeleton: one node per path, one rank
/// per path length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayeredGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

fn node_id(sp: &SlotPath) -> String {
    let mut id = format!("s{}", sp.slot + 1);
    for a in sp.path.arrows() {
        let _ = write!(id, "_{}", a.index());
    }
    id
}

impl LayeredGraph {
    pub fn from_skeleton(alg: &TruncatedAlgebra, sigma: &Skeleton, with_critical: bool) -> Self {
        let quiver = alg.quiver();
        let critical = if with_critical { sigma.critical_paths(alg) } else { Vec::new() };

        let mut members: Vec<(&SlotPath, bool)> = sigma
            .paths()
            .iter()
            .map(|sp| (sp, false))
            .chain(critical.iter().map(|sp| (sp, true)))
            .collect();
        members.sort_by(|a, b| a.0.cmp(b.0));

        let mut nodes = Vec::with_capacity(members.len());
        let mut edges = Vec::new();
        for (sp, is_critical) in members {
            nodes.push(GraphNode {
                id: node_id(sp),
                label: quiver.vertex_name(sp.target()).to_string(),
                level: sp.len(),
                slot: sp.slot,
                critical: is_critical,
            });
            if let Some(&last) = sp.path.arrows().last() {
                let parent = SlotPath::new(sp.slot, sp.path.prefix(quiver, sp.len() - 1));
                edges.push(GraphEdge {
                    from: node_id(&parent),
                    to: node_id(sp),
                    arrow: quiver.arrow(last).label.clone(),
                    style: if is_critical { EdgeStyle::Dashed } else { EdgeStyle::Solid },
                });
            }
        }
        LayeredGraph { nodes, edges }
    }

    pub fn node(&self, id: &str) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Children of a node along solid edges, as `(arrow, child)` pairs.
    pub fn solid_children(&self, id: &str) -> Vec<(&str, &GraphNode)> {
        self.edges
            .iter()
            .filter(|e| e.from == id && e.style == EdgeStyle::Solid)
            .filter_map(|e| self.node(&e.to).map(|n| (e.arrow.as_str(), n)))
            .collect()
    }

    /// Graphviz source. Nodes of equal path length share a rank.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        out.push_str("  rankdir=TB;\n");
        out.push_str("  node [shape=plaintext];\n");
        out.push_str("  edge [arrowhead=none];\n");
        let depth = self.nodes.iter().map(|n| n.level).max().unwrap_or(0);
        for level in 0..=depth {
            let ids: Vec<String> = self
                .nodes
                .iter()
                .filter(|n| n.level == level)
                .map(|n| format!("\"{}\"", n.id))
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", n.id, escape(&n.label));
        }
        for e in &self.edges {
            let style = match e.style {
                EdgeStyle::Solid => "",
                EdgeStyle::Dashed => ", style=dashed",
            };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"{}];",
                e.from,
                e.to,
                escape(&e.arrow),
                style
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use crate::algebra::TruncatedAlgebra;
    use crate::modules::MonomialModule;
    use crate::quiver::{Quiver, VertexId};

    #[test]
    fn simple_module_is_single_node() {
        let q = Quiver::new(vec!["1", "2"], vec![("a", 0, 1)]).unwrap();
        let alg = TruncatedAlgebra::new("t", q, 1).unwrap();
        let g = MonomialModule::simple(&alg, VertexId(0)).layered_graph(&alg, false);
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
        let dot = g.to_dot("S1");
        assert!(dot.contains("\"s1\" [label=\"1\"]"));

        let with_critical = MonomialModule::simple(&alg, VertexId(0)).layered_graph(&alg, true);
        assert_eq!(with_critical.nodes.len(), 2);
        assert!(with_critical.to_dot("S1").contains("style=dashed"));
    }
}
