use crate::cells::{CellKind, CellStructure};
use crate::multitable::MultiTable;
use crate::tworep::{RepDiagram, RepMatrices};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of the action preorder; edges carry their decorations when asked.
pub fn diagram_dot(r: &RepMatrices, d: &RepDiagram, decorated: bool) -> String {
    let t = r.table();
    let node = |c: usize| {
        let labels: Vec<&str> = d.classes[c].iter().map(|&i| r.label(i)).collect();
        quote(&format!("{{{}}}", labels.join(",")))
    };
    let mut out = String::from("digraph diagram {\n  rankdir=BT;\n");
    for c in 0..d.classes.len() {
        out.push_str(&format!("  {};\n", node(c)));
    }
    let mut edges = d.hasse.clone();
    edges.sort_unstable();
    for (a, b) in edges {
        if decorated {
            let mut gens = d.decorations.get(&(a, b)).cloned().unwrap_or_default();
            gens.sort_unstable();
            let names: Vec<&str> = gens.iter().map(|&g| t.name(g)).collect();
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                node(a),
                node(b),
                quote(&names.join(","))
            ));
        } else {
            out.push_str(&format!("  {} -> {};\n", node(a), node(b)));
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a cell order, smaller cells at the bottom.
pub fn cells_dot(t: &MultiTable, cs: &CellStructure) -> String {
    let kind = match cs.kind {
        CellKind::Left => "left",
        CellKind::Right => "right",
        CellKind::TwoSided => "two_sided",
    };
    let node = |c: usize| quote(&format!("{{{}}}", cs.cell_names(t, c).join(",")));
    let mut out = format!("digraph {kind}_cells {{\n  rankdir=BT;\n");
    for c in 0..cs.len() {
        out.push_str(&format!("  {};\n", node(c)));
    }
    let mut edges = cs.hasse.clone();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  {} -> {};\n", node(a), node(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cells::Cells;
    use crate::io::parse_table;
    use crate::tworep::principal_rep;

    #[test]
    fn single_class_has_no_edges() {
        let t = Arc::new(parse_table("objects: i\ngens: e:i->i, g:i->i\nid i = e\ng * g = e\n").unwrap());
        let r = principal_rep(t.clone(), 0);
        let d = r.diagram();
        let dot = diagram_dot(&r, &d, true);
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches(';').count(), 2);
        let cells = Cells::compute(&t);
        assert!(!cells_dot(&t, &cells.two_sided).contains("->"));
    }
}
