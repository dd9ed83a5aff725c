//! Line-oriented text format for plane trees.
//!
//! ```text
//! v0 black label=1 ccw=[e0,e2]
//! v2 white label=- ccw=[e0,e1]
//! e0 label=1 black=v0 white=v2
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Color, Edge, EdgeId, EdgeState, Origin, PlaneTree, Vertex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct TreeParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.vertex_ids() {
            let vx = self.vertex(v);
            let color = match vx.color {
                Color::Black => "black",
                Color::White => "white",
            };
            let label = vx.label.map_or("-".to_string(), |l| l.to_string());
            let rot: Vec<String> = vx.rotation.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{v} {color} label={label} ccw=[{}]", rot.join(","))?;
        }
        for e in self.edge_ids() {
            let ed = self.edge(e);
            writeln!(f, "{e} label={} black={} white={}", ed.label, ed.black, ed.white)?;
        }
        Ok(())
    }
}

fn id_of(s: &str, prefix: char, line: usize) -> Result<usize, TreeParseError> {
    s.strip_prefix(prefix)
        .and_then(|x| x.parse::<usize>().ok())
        .ok_or_else(|| TreeParseError { line, msg: format!("bad id {s:?}") })
}

fn field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, TreeParseError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| TreeParseError { line, msg: format!("expected {key}=") })
}

impl FromStr for PlaneTree {
    type Err = TreeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut verts: Vec<(usize, Vertex)> = Vec::new();
        let mut edges: Vec<(usize, Edge)> = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let mut toks = l.split_whitespace();
            let head = toks.next().unwrap_or_default();
            let err = |msg: &str| TreeParseError { line, msg: msg.to_string() };
            if head.starts_with('v') {
                let id = id_of(head, 'v', line)?;
                let color = match toks.next() {
                    Some("black") => Color::Black,
                    Some("white") => Color::White,
                    _ => return Err(err("expected black or white")),
                };
                let lab = field(toks.next(), "label", line)?;
                let label = if lab == "-" {
                    None
                } else {
                    Some(lab.parse::<usize>().map_err(|_| err("bad label"))?)
                };
                let ccw = field(toks.next(), "ccw", line)?;
                let inner = ccw
                    .strip_prefix('[')
                    .and_then(|x| x.strip_suffix(']'))
                    .ok_or_else(|| err("bad ccw list"))?;
                let rotation = if inner.is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(|x| id_of(x, 'e', line).map(EdgeId)).collect::<Result<_, _>>()?
                };
                verts.push((id, Vertex { color, label, rotation, origin: Origin::Organic, touched: false, alive: true }));
            } else if head.starts_with('e') {
                let id = id_of(head, 'e', line)?;
                let label = field(toks.next(), "label", line)?.parse::<usize>().map_err(|_| err("bad label"))?;
                let black = VertexId(id_of(field(toks.next(), "black", line)?, 'v', line)?);
                let white = VertexId(id_of(field(toks.next(), "white", line)?, 'v', line)?);
                edges.push((id, Edge { label, black, white, state: EdgeState::Solid, alive: true }));
            } else {
                return Err(err("expected a v or e record"));
            }
            if toks.next().is_some() {
                return Err(TreeParseError { line, msg: "trailing tokens".into() });
            }
        }
        if verts.is_empty() {
            return Err(TreeParseError { line: 0, msg: "empty tree".into() });
        }
        let dead_vertex = Vertex {
            color: Color::White,
            label: None,
            rotation: Vec::new(),
            origin: Origin::Organic,
            touched: false,
            alive: false,
        };
        let dead_edge = Edge { label: 0, black: VertexId(0), white: VertexId(0), state: EdgeState::Solid, alive: false };
        let nv = verts.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let ne = edges.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut t = PlaneTree::new();
        t.vertices = vec![dead_vertex; nv];
        t.edges = vec![dead_edge; ne];
        for (id, v) in verts {
            if t.vertices[id].alive {
                return Err(TreeParseError { line: 0, msg: format!("duplicate v{id}") });
            }
            t.vertices[id] = v;
        }
        for (id, e) in edges {
            if t.edges[id].alive {
                return Err(TreeParseError { line: 0, msg: format!("duplicate e{id}") });
            }
            if e.black.0 >= nv || e.white.0 >= nv {
                return Err(TreeParseError { line: 0, msg: format!("e{id} points to a missing vertex") });
            }
            t.edges[id] = e;
        }
        for v in 0..nv {
            if t.vertices[v].color == Color::Black && t.vertices[v].alive {
                if let Some(l) = t.vertices[v].label {
                    if t.black_by_label.len() <= l {
                        t.black_by_label.resize(l + 1, None);
                    }
                    t.black_by_label[l] = Some(VertexId(v));
                }
            }
        }
        t.check().map_err(|d| TreeParseError { line: 0, msg: d.to_string() })?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::MinimalFactorization;
    use crate::plane_tree::{build_t0, relabel_to_t1};

    #[test]
    fn text_round_trip_is_exact() {
        let f: MinimalFactorization = "k=10; (7,8,9,10)(1,2)(2,5,6,10)(2,3,4)".parse().unwrap();
        for t in [build_t0(&f), relabel_to_t1(&build_t0(&f))] {
            let s = t.to_string();
            let back: PlaneTree = s.parse().unwrap();
            assert_eq!(back.to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<PlaneTree>().is_err());
        assert!("v0 purple label=1 ccw=[]".parse::<PlaneTree>().is_err());
        assert!("v0 black label=1 ccw=[e0]\ne0 label=1 black=v0 white=v0".parse::<PlaneTree>().is_err());
    }
}
