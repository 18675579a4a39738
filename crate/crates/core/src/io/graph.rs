use super::{is_identifier, lines, words, ParseError};
use crate::builders::{BipartiteEdge, BipartiteSpec, CartanData};

/// Parses `parts: v1 v2 | w1 w2` followed by `edge v w eta=k` lines.
pub fn parse_graph(text: &str) -> Result<BipartiteSpec, ParseError> {
    let mut spec: Option<BipartiteSpec> = None;
    for line in lines(text) {
        if let Some(rest) = line.keyed("parts") {
            if spec.is_some() {
                return Err(line.syntax(line.text, "duplicate `parts:` line"));
            }
            let (left, right) = rest
                .split_once('|')
                .ok_or_else(|| line.syntax(rest, "expected `sources | sinks`"))?;
            let mut all: Vec<&str> = Vec::new();
            for w in words(left).chain(words(right)) {
                if !is_identifier(w) {
                    return Err(line.syntax(w, format!("invalid vertex name `{w}`")));
                }
                if all.contains(&w) {
                    return Err(line.semantic(format!("duplicate vertex `{w}`")));
                }
                all.push(w);
            }
            spec = Some(BipartiteSpec {
                sources: words(left).map(str::to_string).collect(),
                sinks: words(right).map(str::to_string).collect(),
                edges: Vec::new(),
            });
            continue;
        }
        let s = spec
            .as_mut()
            .ok_or_else(|| line.syntax(line.text, "expected `parts:` first"))?;
        let Some(rest) = line.text.strip_prefix("edge ") else {
            return Err(line.syntax(line.text, "unrecognised line"));
        };
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let [v, w, eta] = toks.as_slice() else {
            return Err(line.syntax(rest, "expected `edge <source> <sink> eta=<k>`"));
        };
        let eta_val = eta
            .strip_prefix("eta=")
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| *k >= 1)
            .ok_or_else(|| line.syntax(eta, "expected `eta=<positive integer>`"))?;
        let source = s
            .sources
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| line.semantic(format!("`{v}` is not a source vertex")))?;
        let sink = s
            .sinks
            .iter()
            .position(|x| x == w)
            .ok_or_else(|| line.semantic(format!("`{w}` is not a sink vertex")))?;
        if s.edges.iter().any(|e| e.source == source && e.sink == sink) {
            return Err(line.semantic(format!("duplicate edge {v} {w}")));
        }
        s.edges.push(BipartiteEdge {
            source,
            sink,
            eta: eta_val,
        });
    }
    spec.ok_or_else(|| ParseError::Missing("no `parts:` line".into()))
}

pub fn print_graph(g: &BipartiteSpec) -> String {
    let mut out = format!("parts: {} | {}\n", g.sources.join(" "), g.sinks.join(" "));
    for e in &g.edges {
        out.push_str(&format!(
            "edge {} {} eta={}\n",
            g.sources[e.source], g.sinks[e.sink], e.eta
        ));
    }
    out
}

/// Parses Cartan data: an optional `selfinjective: yes|no` line, then the rows
/// of the square matrix `dims[t][u] = dim e_t A e_u`.
pub fn parse_dims(text: &str) -> Result<CartanData, ParseError> {
    let mut selfinjective = false;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut first_row_line = 0;
    for line in lines(text) {
        if let Some(rest) = line.keyed("selfinjective") {
            selfinjective = match rest {
                "yes" | "true" => true,
                "no" | "false" => false,
                _ => return Err(line.syntax(rest, "expected `yes` or `no`")),
            };
            continue;
        }
        let mut row = Vec::new();
        for w in words(line.text) {
            row.push(w.parse::<u64>().map_err(|_| line.syntax(w, "expected a non-negative integer"))?);
        }
        if rows.is_empty() {
            first_row_line = line.number;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Missing("no matrix rows".into()));
    }
    CartanData::new(rows, selfinjective).map_err(|e| ParseError::Semantic {
        line: first_row_line,
        message: e.to_string(),
    })
}

pub fn print_dims(c: &CartanData) -> String {
    let mut out = format!("selfinjective: {}\n", if c.selfinjective { "yes" } else { "no" });
    for row in &c.dims {
        out.push_str(&row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "parts: v1 v2 | w1\nedge v1 w1 eta=1\nedge v2 w1 eta=1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(print_graph(&g), text);
    }

    #[test]
    fn graph_errors() {
        assert!(parse_graph("parts: v | w\nedge w v eta=1\n").is_err());
        assert!(parse_graph("parts: v | w\nedge v w eta=0\n").is_err());
        assert!(parse_graph("parts: v | v\n").is_err());
    }

    #[test]
    fn dims_round_trip() {
        let c = parse_dims("selfinjective: yes\n2 1\n1 2\n").unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(parse_dims(&print_dims(&c)).unwrap(), c);
    }

    #[test]
    fn dims_must_be_square_with_positive_diagonal() {
        assert!(parse_dims("1 2\n").is_err());
        assert!(parse_dims("0\n").is_err());
    }
}
