//! Graphviz output.

use std::fmt::Write;

use super::{Color, EdgeState, Orientation, PlaneTree};

/// DOT text: black vertices filled, white hollow, edge labels printed, spine edges
/// drawn bold red. Edges are emitted vertex by vertex in counterclockwise order
/// with `ordering=out`, which keeps the rotation where the layout engine allows.
pub fn to_dot(t: &PlaneTree) -> String {
    let on_spine = if t.black_count() >= 1 && t.try_black(1).is_some() && t.try_black(t.black_count()).is_some() {
        Orientation::of(t).on_spine
    } else {
        vec![false; t.vertex_slots()]
    };
    let mut s = String::new();
    let _ = writeln!(s, "graph T {{");
    let _ = writeln!(s, "  ordering=out;");
    let _ = writeln!(s, "  node [shape=circle, width=0.3, fixedsize=true, fontsize=10];");
    for v in t.vertex_ids() {
        let vx = t.vertex(v);
        match vx.color {
            Color::Black => {
                let l = vx.label.map_or(String::new(), |l| l.to_string());
                let _ = writeln!(s, "  {v} [style=filled, fillcolor=black, fontcolor=white, label=\"{l}\"];");
            }
            Color::White => {
                let l = vx.label.map_or(String::new(), |l| l.to_string());
                let _ = writeln!(s, "  {v} [style=solid, label=\"{l}\"];");
            }
        }
    }
    let mut done = vec![false; t.edge_slots()];
    for v in t.vertex_ids() {
        for &e in t.rotation(v) {
            if done[e.0] {
                continue;
            }
            done[e.0] = true;
            let ed = t.edge(e);
            let mut attrs = format!("label=\"{}\"", ed.label);
            if on_spine[ed.black.0] && on_spine[ed.white.0] {
                attrs.push_str(", color=red, penwidth=2");
            }
            if ed.state == EdgeState::Dashed {
                attrs.push_str(", style=dashed");
            }
            let (a, b) = (v, t.other_end(e, v));
            let _ = writeln!(s, "  {a} -- {b} [{attrs}];");
        }
    }
    let _ = writeln!(s, "}}");
    s
}
