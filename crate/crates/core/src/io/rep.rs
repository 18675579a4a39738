use std::sync::Arc;

use super::{is_identifier, lines, words, ParseError};
use crate::multitable::MultiTable;
use crate::tworep::{BasisLabel, IMatrix, RepMatrices};

/// Parses a representation file, resolving its `table:` line through `resolve`.
///
/// Format: `table: <path or bundled name>`, one `basis <object>: labels` line per
/// object, and `mat <gen> = [[..],..]` lines. Identity matrices may be omitted;
/// every other omitted generator acts by zero.
pub fn parse_rep_with(
    text: &str,
    resolve: impl Fn(&str) -> Result<Arc<MultiTable>, String>,
) -> Result<RepMatrices, ParseError> {
    let mut table: Option<Arc<MultiTable>> = None;
    let mut basis: Vec<BasisLabel> = Vec::new();
    let mut basis_seen = false;
    let mut mats: Vec<(usize, usize, IMatrix)> = Vec::new();
    for line in lines(text) {
        if let Some(rest) = line.keyed("table") {
            if table.is_some() {
                return Err(line.syntax(line.text, "duplicate `table:` line"));
            }
            table = Some(resolve(rest).map_err(|e| line.semantic(e))?);
            continue;
        }
        let t = table
            .as_ref()
            .ok_or_else(|| line.syntax(line.text, "expected `table:` first"))?;
        if let Some(rest) = line.text.strip_prefix("basis ") {
            basis_seen = true;
            let (obj, labels) = rest
                .split_once(':')
                .ok_or_else(|| line.syntax(rest, "expected `basis <object>: labels`"))?;
            let obj = obj.trim();
            let o = t
                .objects()
                .iter()
                .position(|x| x == obj)
                .ok_or_else(|| line.semantic(format!("unknown object `{obj}`")))?;
            if !mats.is_empty() {
                return Err(line.syntax(line.text, "basis lines must precede matrices"));
            }
            for w in words(labels) {
                if !is_identifier(w) {
                    return Err(line.syntax(w, format!("invalid label `{w}`")));
                }
                if basis.iter().any(|b| b.name == w) {
                    return Err(line.semantic(format!("duplicate label `{w}`")));
                }
                basis.push(BasisLabel {
                    name: w.to_string(),
                    object: o,
                });
            }
        } else if let Some(rest) = line.text.strip_prefix("mat ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| line.syntax(rest, "expected `mat <gen> = [[...]]`"))?;
            let name = name.trim();
            let g = t.gen_index(name).map_err(|e| line.semantic(e))?;
            if mats.iter().any(|(_, h, _)| *h == g) {
                return Err(line.semantic(format!("duplicate matrix for `{name}`")));
            }
            let body = body.trim();
            let rows: Vec<Vec<u64>> = serde_json::from_str(body).map_err(|e| ParseError::Syntax {
                line: line.number,
                col: line.col_of(body) + e.column().saturating_sub(1),
                message: format!("bad matrix: {e}"),
            })?;
            let n = basis.len();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(line.semantic(format!("matrix for `{name}` must be {n}x{n}")));
            }
            mats.push((line.number, g, IMatrix::from_rows(&rows)));
        } else {
            return Err(line.syntax(line.text, "unrecognised line"));
        }
    }
    let table = table.ok_or_else(|| ParseError::Missing("no `table:` line".into()))?;
    if !basis_seen {
        return Err(ParseError::Missing("no `basis` line".into()));
    }
    let mut r = RepMatrices::new(table, basis);
    for (line, g, m) in mats {
        r.set_mat(g, m).map_err(|e| ParseError::Semantic {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(r)
}

/// Parses a representation over an already loaded table; any `table:` value is accepted.
pub fn parse_rep(text: &str, table: Arc<MultiTable>) -> Result<RepMatrices, ParseError> {
    parse_rep_with(text, |_| Ok(table.clone()))
}

/// Canonical form; identity matrices equal to the identity are omitted, as are zero matrices.
pub fn print_rep(r: &RepMatrices, table_ref: &str) -> String {
    let t = r.table();
    let mut out = format!("table: {table_ref}\n");
    for (o, obj) in t.objects().iter().enumerate() {
        let labels: Vec<&str> = r
            .basis()
            .iter()
            .filter(|b| b.object == o)
            .map(|b| b.name.as_str())
            .collect();
        if !labels.is_empty() {
            out.push_str(&format!("basis {obj}: {}\n", labels.join(", ")));
        }
    }
    if r.basis().is_empty() {
        out.push_str(&format!("basis {}:\n", t.objects()[0]));
    }
    let blank = RepMatrices::new(t.clone(), r.basis().to_vec());
    for g in 0..t.len() {
        if r.mat(g) != blank.mat(g) {
            out.push_str(&format!("mat {} = {}\n", t.name(g), r.mat(g).to_text()));
        }
    }
    out
}
