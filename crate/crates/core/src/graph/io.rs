use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Vertex and edge labels may be written as JSON strings or integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Str(String),
    Int(i64),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Str(s) => s,
            Label::Int(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct JsonEdge {
    id: Label,
    ends: [Label; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct JsonGraph {
    #[serde(default)]
    vertices: Option<Vec<Label>>,
    edges: Vec<JsonEdge>,
    #[serde(default)]
    multigraph: bool,
}

/// Graph ingestion and emission in the two supported file formats.
pub struct GraphFile;

impl GraphFile {
    /// `{"vertices":[...], "edges":[{"id":..., "ends":[u,v]}], "multigraph":bool}`.
    ///
    /// `vertices` may be omitted, in which case they are taken from the edges in
    /// order of first appearance. `force_multigraph` ORs into the file's flag.
    pub fn parse_json(text: &str, force_multigraph: bool) -> Result<Graph> {
        let g: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        let edges: Vec<(String, String, String)> = g
            .edges
            .into_iter()
            .map(|e| {
                let [a, b] = e.ends;
                (e.id.into_string(), a.into_string(), b.into_string())
            })
            .collect();
        let vertices = match g.vertices {
            Some(v) => v.into_iter().map(Label::into_string).collect(),
            None => first_appearance(&edges),
        };
        Graph::new(vertices, edges, g.multigraph || force_multigraph)
    }

    /// One `u v` pair per line; edges are labeled `e1, e2, …` in file order.
    /// Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str, multigraph: bool) -> Result<Graph> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = parts[..] else {
                return Err(Error::Parse(format!("line {}: expected two vertex labels, got {line:?}", lineno + 1)));
            };
            edges.push((format!("e{}", edges.len() + 1), a.to_string(), b.to_string()));
        }
        let vertices = first_appearance(&edges);
        Graph::new(vertices, edges, multigraph)
    }

    /// Chooses the format from the content: JSON if it starts with `{`.
    pub fn parse(text: &str, multigraph: bool) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text, multigraph)
        } else {
            Self::parse_edge_list(text, multigraph)
        }
    }

    pub fn to_json(g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "vertices": g.vertices(),
            "edges": g.edges().iter().map(|e| serde_json::json!({
                "id": e.label,
                "ends": [g.vertex_label(e.ends.0), g.vertex_label(e.ends.1)],
            })).collect::<Vec<_>>(),
            "multigraph": g.is_multigraph(),
        })
    }
}

fn first_appearance(edges: &[(String, String, String)]) -> Vec<String> {
    let mut seen = Vec::new();
    for (_, a, b) in edges {
        for v in [a, b] {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["v0","v1","v2","v3"],
            "edges":[{"id":"e1","ends":["v0","v1"]},{"id":"e2","ends":["v0","v2"]},{"id":"e3","ends":["v0","v3"]}]}"#;
        let g = GraphFile::parse_json(text, false).unwrap();
        assert_eq!(g.edge_count(), 3);
        let again = GraphFile::parse_json(&GraphFile::to_json(&g).to_string(), false).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn integer_labels_and_implicit_vertices() {
        let g = GraphFile::parse_json(r#"{"edges":[{"id":1,"ends":[1,2]},{"id":2,"ends":[2,3]}]}"#, false).unwrap();
        assert_eq!(g.vertices(), &["1", "2", "3"]);
        assert_eq!(g.edge_label(1), "2");
    }

    #[test]
    fn edge_list_labels_in_file_order() {
        let g = GraphFile::parse("# path\nv1 v2\n\nv2 v3\n", false).unwrap();
        assert_eq!(g.edge_label(0), "e1");
        assert_eq!(g.edge_label(1), "e2");
        assert_eq!(g.vertices(), &["v1", "v2", "v3"]);
        assert!(GraphFile::parse("a b c\n", false).is_err());
    }

    #[test]
    fn multigraph_flag_from_file_or_caller() {
        let text = r#"{"edges":[{"id":"a","ends":["v","w"]},{"id":"b","ends":["w","v"]}]}"#;
        assert!(GraphFile::parse_json(text, false).is_err());
        assert!(GraphFile::parse_json(text, true).is_ok());
        let flagged = r#"{"edges":[{"id":"a","ends":["v","w"]},{"id":"b","ends":["w","v"]}],"multigraph":true}"#;
        assert!(GraphFile::parse_json(flagged, false).unwrap().is_multigraph());
    }
}
