use std::fmt::Write;

use supertree::Tree;

/// Graphviz source with one node per vertex, numbered in preorder. d-ary
/// edges carry their slot type as label.
pub fn to_dot(t: &Tree) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=circle, label=\"\", width=0.2];\n");
    for v in 0..t.size() {
        let _ = writeln!(out, "  n{v};");
    }
    match t {
        Tree::Dary(t) => {
            for v in 0..t.size() {
                for (slot, c) in t.children(v) {
                    let _ = writeln!(out, "  n{v} -> n{c} [label=\"{slot}\"];");
                }
            }
        }
        Tree::Bracket(t) => {
            for v in 0..t.size() {
                for c in t.children(v) {
                    let _ = writeln!(out, "  n{v} -> n{c};");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
