//! Text renderings of a tree: indented ASCII and Graphviz DOT.

use std::fmt::Write;

use minmax_core::{MinMaxTree, NodeKind};

fn dot_style(kind: NodeKind) -> (&'static str, &'static str) {
    match kind {
        NodeKind::Leaf => ("ellipse", "leaf"),
        NodeKind::MinRoot => ("invtriangle", "min"),
        NodeKind::MaxRoot => ("triangle", "max"),
    }
}

/// DOT digraph with one node per position labelled `pos:entry` and one edge
/// per parent/child pair labelled `l` or `r`. Output depends only on the
/// tree.
pub fn export_dot(t: &MinMaxTree) -> String {
    let mut out = String::new();
    writeln!(out, "digraph minmax {{").unwrap();
    writeln!(out, "  // variant={} root={}", t.variant(), t.root()).unwrap();
    writeln!(out, "  node [fontname=\"monospace\"];").unwrap();
    for i in 1..=t.len() {
        let (shape, class) = dot_style(t.kind(i));
        writeln!(
            out,
            "  p{i} [label=\"{i}:{}\", shape={shape}, class=\"{class}\"];",
            t.entry(i)
        )
        .unwrap();
    }
    for i in 1..=t.len() {
        for (child, side) in [(t.left(i), "l"), (t.right(i), "r")] {
            if let Some(c) = child {
                writeln!(out, "  p{i} -> p{c} [label=\"{side}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// One node per line, root first, children left before right, indented two
/// spaces per level: `pos:entry [kind]`.
pub fn render_ascii(t: &MinMaxTree) -> String {
    let mut out = String::new();
    for i in t.preorder() {
        writeln!(
            out,
            "{:indent$}{i}:{} [{}]",
            "",
            t.entry(i),
            t.kind(i).label(),
            indent = 2 * t.depth(i)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use minmax_core::{build_minmax, parse_permutation};

    fn tree(s: &str) -> MinMaxTree {
        build_minmax(&parse_permutation(s).unwrap())
    }

    #[test]
    fn ascii_small() {
        assert_eq!(
            render_ascii(&tree("2 1 3")),
            "2:1 [Min]\n  1:2 [Leaf]\n  3:3 [Leaf]\n"
        );
        assert_eq!(render_ascii(&tree("1")), "1:1 [Leaf]\n");
    }

    #[test]
    fn ascii_figure1() {
        let text = render_ascii(&tree("3 6 7 1 5 2 10 4 9 8"));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "4:1 [Min]");
        assert!(lines.contains(&"    7:10 [Max]"));
    }

    #[test]
    fn dot_figure1() {
        let t = tree("3 6 7 1 5 2 10 4 9 8");
        let dot = export_dot(&t);
        assert_eq!(
            dot.matches("[label=\"").count() - dot.matches("->").count(),
            10
        );
        assert_eq!(dot.matches("->").count(), 9);
        assert!(dot.contains("p4 [label=\"4:1\", shape=invtriangle, class=\"min\"];"));
        assert!(dot.contains("p4 -> p1 [label=\"l\"];"));
        assert!(dot.contains("p4 -> p6 [label=\"r\"];"));
        assert!(dot.starts_with("digraph minmax {"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(dot, export_dot(&t));
    }

    #[test]
    fn dot_singleton() {
        let dot = export_dot(&tree("1"));
        assert!(dot.contains("p1 [label=\"1:1\", shape=ellipse, class=\"leaf\"];"));
        assert_eq!(dot.matches("->").count(), 0);
    }
}
