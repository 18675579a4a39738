use super::{format_lincomb, is_identifier, lines, parse_lincomb, words, Line, ParseError};
use crate::findim::FinDimAlgebra;
use crate::linalg::SparseRow;
use crate::scalar::{Field, Scalar};

fn vector(line: &Line<'_>, s: &str, field: &Field, names: &[String]) -> Result<Vec<Scalar>, ParseError> {
    let mut v = vec![field.zero(); names.len()];
    for (name, c) in parse_lincomb(line, s, field)? {
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| line.semantic(format!("unknown basis element `{name}`")))?;
        v[i] = &v[i] + &c;
    }
    Ok(v)
}

/// Parses the algebra format: `field:`, `dim:`, `basis:`, `unit:`, optional `idem:`
/// lines and products `b_i * b_j = <combination>`. Omitted products are zero; when
/// the unit is a single basis element its products are implied.
pub fn parse_algebra(text: &str) -> Result<FinDimAlgebra, ParseError> {
    let mut field: Option<Field> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut names: Vec<String> = Vec::new();
    let mut unit: Option<Vec<Scalar>> = None;
    let mut idem: Vec<Vec<Scalar>> = Vec::new();
    let mut products: Vec<Vec<Option<SparseRow>>> = Vec::new();
    for line in lines(text) {
        if let Some(rest) = line.keyed("field") {
            if field.is_some() {
                return Err(line.syntax(line.text, "duplicate `field:` line"));
            }
            field = Some(Field::parse_decl(rest).map_err(|e| line.syntax(rest, e))?);
            continue;
        }
        let f = field
            .clone()
            .ok_or_else(|| line.syntax(line.text, "expected `field:` first"))?;
        if let Some(rest) = line.keyed("dim") {
            let d = rest.parse::<usize>().map_err(|_| line.syntax(rest, "expected a dimension"))?;
            dim = Some((d, line.number));
        } else if let Some(rest) = line.keyed("basis") {
            if !names.is_empty() {
                return Err(line.syntax(line.text, "duplicate `basis:` line"));
            }
            for w in words(rest) {
                if !is_identifier(w) {
                    return Err(line.syntax(w, format!("invalid basis name `{w}`")));
                }
                if names.iter().any(|n| n == w) {
                    return Err(line.semantic(format!("duplicate basis name `{w}`")));
                }
                names.push(w.to_string());
            }
            products = vec![vec![None; names.len()]; names.len()];
        } else if let Some(rest) = line.keyed("unit") {
            unit = Some(vector(&line, rest, &f, &names)?);
        } else if let Some(rest) = line.keyed("idem") {
            idem.push(vector(&line, rest, &f, &names)?);
        } else if let Some((lhs, rhs)) = line.text.split_once('=') {
            let (a, b) = lhs
                .split_once('*')
                .ok_or_else(|| line.syntax(lhs, "expected `a * b = ...`"))?;
            let find = |n: &str| {
                names
                    .iter()
                    .position(|x| x == n.trim())
                    .ok_or_else(|| line.semantic(format!("unknown basis element `{}`", n.trim())))
            };
            let (i, j) = (find(a)?, find(b)?);
            if products[i][j].is_some() {
                return Err(line.semantic(format!("duplicate product line for `{} * {}`", names[i], names[j])));
            }
            let v = vector(&line, rhs, &f, &names)?;
            products[i][j] = Some(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        } else {
            return Err(line.syntax(line.text, "unrecognised line"));
        }
    }
    let field = field.ok_or_else(|| ParseError::Missing("no `field:` line".into()))?;
    if names.is_empty() {
        return Err(ParseError::Missing("no `basis:` line".into()));
    }
    if let Some((d, line)) = dim {
        if d != names.len() {
            return Err(ParseError::Semantic {
                line,
                message: format!("dim is {d} but the basis has {} elements", names.len()),
            });
        }
    }
    let unit = unit.ok_or_else(|| ParseError::Missing("no `unit:` line".into()))?;
    let single = {
        let nz: Vec<usize> = (0..unit.len()).filter(|&i| !unit[i].is_zero()).collect();
        (nz.len() == 1 && unit[nz[0]].is_one()).then(|| nz[0])
    };
    let d = names.len();
    let mut rows = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            rows[i][j] = match (&products[i][j], single) {
                (Some(p), _) => p.clone(),
                (None, Some(u)) if i == u => vec![(j, field.one())],
                (None, Some(u)) if j == u => vec![(i, field.one())],
                _ => Vec::new(),
            };
        }
    }
    Ok(FinDimAlgebra::new(&field, names, rows, unit).with_idempotents(idem))
}

/// Canonical form listing every nonzero product, including unit rows.
pub fn print_algebra(a: &FinDimAlgebra) -> String {
    let names = a.names();
    let spec = a.field().to_string();
    let mut out = format!("field: {spec}\ndim: {}\nbasis: {}\n", a.dim(), names.join(", "));
    out.push_str(&format!("unit: {}\n", format_lincomb(names, a.unit())));
    for e in a.idempotents() {
        out.push_str(&format!("idem: {}\n", format_lincomb(names, e)));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.product_of_basis(i, j);
            if p.is_empty() {
                continue;
            }
            let mut v = vec![a.field().zero(); a.dim()];
            for (k, c) in p {
                v[*k] = c.clone();
            }
            out.push_str(&format!("{} * {} = {}\n", names[i], names[j], format_lincomb(names, &v)));
        }
    }
    out
}
