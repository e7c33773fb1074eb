//! Graphviz export: bases are ellipses, component cores boxes, the top core
//! a double octagon; cone arrows dashed, cross arrows dotted.

use std::fmt::Write;

use super::diagram::{Diagram, Leg, Role};

pub fn to_dot(d: &Diagram) -> String {
    let mut s = String::from("digraph cccd {\n  rankdir=BT;\n");
    for (i, n) in d.nodes().iter().enumerate() {
        let shape = match n.role() {
            Role::Base { .. } => "ellipse",
            Role::ComponentCore => "box",
            Role::TopCore => "doubleoctagon",
        };
        let _ = writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", n.id().replace('"', "'"));
    }
    for (i, e) in d.edges().iter().enumerate() {
        let style = match e.leg {
            Leg::Cocone => "solid",
            Leg::Cone => "dashed",
            Leg::Cross => "dotted",
        };
        let _ = writeln!(s, "  n{} -> n{} [label=\"e{i}\", style={style}];", e.src, e.dst);
    }
    s.push_str("}\n");
    s
}
