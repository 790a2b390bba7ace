//! Graphviz rendering of generator graphs.

use std::fmt::Write;

use stackoid_core::interchange::GraphRecord;

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One node per object (labelled by its name) and one edge per generator
/// edge (labelled by its word), in the order the record lists them.
pub fn render(graph: &GraphRecord) -> String {
    let mut out = String::from("digraph stackoid {\n");
    for o in &graph.objects {
        writeln!(out, "  n{} [label={}];", o.id, quote(&o.name)).unwrap();
    }
    for e in &graph.edges {
        writeln!(
            out,
            "  n{} -> n{} [label={}];",
            e.source,
            e.target,
            quote(&e.label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use stackoid_core::interchange::{EdgeRecord, ObjectRecord};

    #[test]
    fn empty_graph() {
        let g = GraphRecord {
            objects: vec![],
            edges: vec![],
        };
        assert_eq!(render(&g), "digraph stackoid {\n}\n");
    }

    #[test]
    fn labels_are_escaped() {
        let g = GraphRecord {
            objects: vec![ObjectRecord {
                id: 0,
                name: "say \"hi\"".into(),
            }],
            edges: vec![EdgeRecord {
                source: 0,
                label: "a\\b".into(),
                target: 0,
            }],
        };
        assert_eq!(
            render(&g),
            "digraph stackoid {\n  n0 [label=\"say \\\"hi\\\"\"];\n  n0 -> n0 [label=\"a\\\\b\"];\n}\n"
        );
    }
}
