use std::collections::HashSet;

use super::{is_identifier, lines, words, Line, ParseError};
use crate::multitable::{MultiTable, Multiset};

fn parse_multiset(line: &Line<'_>, s: &str, t: &MultiTable) -> Result<Multiset, ParseError> {
    let s = s.trim();
    let mut out = Multiset::new();
    if s == "0" {
        return Ok(out);
    }
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(line.syntax(s, "empty summand"));
        }
        let mut parts = term.split_whitespace();
        let first = parts.next().unwrap_or_default();
        let (count, name) = match first.parse::<u64>() {
            Ok(c) => (c, parts.next().ok_or_else(|| line.syntax(term, "expected a generator after the multiplicity"))?),
            Err(_) => (1, first),
        };
        if parts.next().is_some() {
            return Err(line.syntax(term, "expected `[multiplicity] generator`"));
        }
        let g = t.gen_index(name).map_err(|e| line.semantic(e))?;
        *out.entry(g).or_default() += count;
    }
    Ok(out)
}

/// Parses the table format: `objects:`, `gens: name:src->tgt, ...`, `id obj = gen`,
/// optional `star: a<->b, ...`, and product lines `f * g = 2 h + k`. Omitted unit
/// rows are filled in.
pub fn parse_table(text: &str) -> Result<MultiTable, ParseError> {
    let mut table: Option<MultiTable> = None;
    let mut gens_seen = false;
    let mut star_pairs: Option<(Line<'_>, Vec<(usize, usize)>)> = None;
    let mut seen_products = HashSet::new();
    for line in lines(text) {
        if let Some(rest) = line.keyed("objects") {
            if table.is_some() {
                return Err(line.syntax(line.text, "duplicate `objects:` line"));
            }
            let objs: Vec<String> = words(rest).map(str::to_string).collect();
            if objs.is_empty() {
                return Err(line.syntax(rest, "expected at least one object"));
            }
            if let Some(bad) = words(rest).find(|w| !is_identifier(w)) {
                return Err(line.syntax(bad, format!("invalid object name `{bad}`")));
            }
            table = Some(MultiTable::new(objs));
            continue;
        }
        let t = table
            .as_mut()
            .ok_or_else(|| line.syntax(line.text, "expected `objects:` first"))?;
        if let Some(rest) = line.keyed("gens") {
            if gens_seen {
                return Err(line.syntax(line.text, "duplicate `gens:` line"));
            }
            gens_seen = true;
            for entry in rest.split(',') {
                let entry = entry.trim();
                let (name, ty) = entry
                    .split_once(':')
                    .ok_or_else(|| line.syntax(entry, "expected `name:source->target`"))?;
                let (src, tgt) = ty
                    .split_once("->")
                    .ok_or_else(|| line.syntax(entry, "expected `source->target`"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(line.syntax(name, format!("invalid generator name `{name}`")));
                }
                t.add_gen(name, src.trim(), tgt.trim()).map_err(|e| line.semantic(e))?;
            }
        } else if let Some(rest) = line.text.strip_prefix("id ") {
            let (obj, gen) = rest
                .split_once('=')
                .ok_or_else(|| line.syntax(rest, "expected `id object = generator`"))?;
            t.set_identity(obj.trim(), gen.trim()).map_err(|e| line.semantic(e))?;
        } else if let Some(rest) = line.keyed("star") {
            let mut pairs = Vec::new();
            for entry in rest.split(',') {
                let entry = entry.trim();
                let (a, b) = entry
                    .split_once("<->")
                    .ok_or_else(|| line.syntax(entry, "expected `a<->b`"))?;
                let a = t.gen_index(a.trim()).map_err(|e| line.semantic(e))?;
                let b = t.gen_index(b.trim()).map_err(|e| line.semantic(e))?;
                pairs.push((a, b));
            }
            star_pairs = Some((line, pairs));
        } else if let Some((lhs, rhs)) = line.text.split_once('=') {
            let (f, g) = lhs
                .split_once('*')
                .ok_or_else(|| line.syntax(lhs, "expected `f * g = ...`"))?;
            let (f, g) = (f.trim(), g.trim());
            let fi = t.gen_index(f).map_err(|e| line.semantic(e))?;
            let gi = t.gen_index(g).map_err(|e| line.semantic(e))?;
            if !seen_products.insert((fi, gi)) {
                return Err(line.semantic(format!("duplicate product line for `{f} * {g}`")));
            }
            let value = parse_multiset(&line, rhs, t)?;
            t.set_product(fi, gi, value).map_err(|e| line.semantic(e))?;
        } else {
            return Err(line.syntax(line.text, "unrecognised line"));
        }
    }
    let mut t = table.ok_or_else(|| ParseError::Missing("no `objects:` line".into()))?;
    if !gens_seen {
        return Err(ParseError::Missing("no `gens:` line".into()));
    }
    if let Some((line, pairs)) = star_pairs {
        t.set_star(&pairs).map_err(|e| line.semantic(e))?;
    }
    t.fill_unit_rows();
    Ok(t)
}

fn is_unit_row(t: &MultiTable, f: usize, g: usize) -> bool {
    let m = t.product(f, g);
    (t.is_identity(f) && *m == Multiset::from([(g, 1)])) || (t.is_identity(g) && *m == Multiset::from([(f, 1)]))
}

/// Canonical text form; unit rows are omitted and everything follows generator order.
pub fn print_table(t: &MultiTable) -> String {
    let mut out = String::new();
    out.push_str(&format!("objects: {}\n", t.objects().join(" ")));
    let gens: Vec<String> = t
        .gens()
        .iter()
        .map(|g| format!("{}:{}->{}", g.name, t.objects()[g.source], t.objects()[g.target]))
        .collect();
    out.push_str(&format!("gens: {}\n", gens.join(", ")));
    for (o, name) in t.objects().iter().enumerate() {
        if let Some(id) = t.identity_of(o) {
            out.push_str(&format!("id {name} = {}\n", t.name(id)));
        }
    }
    if let Some(star) = t.star() {
        let pairs: Vec<String> = (0..t.len())
            .filter(|&g| g <= star[g])
            .map(|g| format!("{}<->{}", t.name(g), t.name(star[g])))
            .collect();
        out.push_str(&format!("star: {}\n", pairs.join(", ")));
    }
    out.push('\n');
    for f in 0..t.len() {
        for g in 0..t.len() {
            if !t.composable(f, g) || !t.has_product(f, g) || is_unit_row(t, f, g) {
                continue;
            }
            out.push_str(&format!(
                "{} * {} = {}\n",
                t.name(f),
                t.name(g),
                t.format_multiset(t.product(f, g))
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "objects: i\ngens: e:i->i, g:i->i\nid i = e\ng * g = e\n";

    #[test]
    fn parses_and_fills_units() {
        let t = parse_table(Z2).unwrap();
        assert!(t.validate().is_empty());
        assert_eq!(t.compose_names("e", "g").unwrap().get("g"), Some(&1));
    }

    #[test]
    fn round_trip_is_identity_on_canonical_form() {
        let t = parse_table(Z2).unwrap();
        let printed = print_table(&t);
        assert_eq!(print_table(&parse_table(&printed).unwrap()), printed);
        assert_eq!(parse_table(&printed).unwrap(), t);
    }

    #[test]
    fn multiplicities() {
        let t = parse_table("objects: i\ngens: e:i->i, s:i->i, u:i->i\nid i = e\ns * s = 2 s + u\n").unwrap();
        let m = t.compose_names("s", "s").unwrap();
        assert_eq!(m.get("s"), Some(&2));
        assert_eq!(m.get("u"), Some(&1));
    }

    #[test]
    fn rejects_duplicate_products() {
        let err = parse_table("objects: i\ngens: e:i->i, g:i->i\nid i = e\ng * g = e\ng * g = g\n").unwrap_err();
        assert_eq!(err.line(), Some(5));
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn unknown_generator_is_semantic() {
        let err = parse_table("objects: i\ngens: e:i->i\nid i = e\ne * h = e\n").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { line: 4, .. }));
    }

    #[test]
    fn syntax_error_has_column() {
        let err = parse_table("objects: i\ngens: e:i->i\nid i = e\ne * e = 2 e e\n").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert_eq!(line, 4);
                assert_eq!(col, 9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
