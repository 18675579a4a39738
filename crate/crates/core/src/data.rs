//! Bundled data files, available by file name with or without extension.

use std::sync::Arc;

use crate::builders::{BipartiteSpec, CartanData};
use crate::findim::FinDimAlgebra;
use crate::io::{self, ParseError};
use crate::multitable::MultiTable;
use crate::tworep::RepMatrices;

pub const FILES: &[(&str, &str)] = &[
    ("a2-soergel.tbl", include_str!("../data/a2-soergel.tbl")),
    ("b2-soergel.tbl", include_str!("../data/b2-soergel.tbl")),
    ("i2-5-soergel.tbl", include_str!("../data/i2-5-soergel.tbl")),
    ("a2-hidden.rep", include_str!("../data/a2-hidden.rep")),
    ("coinvariant-a2.alg", include_str!("../data/coinvariant-a2.alg")),
    ("kx2.alg", include_str!("../data/kx2.alg")),
    ("zigzag2.alg", include_str!("../data/zigzag2.alg")),
    ("zigzag3.alg", include_str!("../data/zigzag3.alg")),
    ("kx2.dims", include_str!("../data/kx2.dims")),
    ("zigzag2.dims", include_str!("../data/zigzag2.dims")),
    ("bipartite5.graph", include_str!("../data/bipartite5.graph")),
];

/// Text of a bundled file.
pub fn text(name: &str) -> Option<&'static str> {
    let name = name.rsplit('/').next().unwrap_or(name);
    FILES
        .iter()
        .find(|(f, _)| *f == name || f.split('.').next() == Some(name))
        .map(|(_, t)| *t)
}

fn must(name: &str) -> &'static str {
    text(name).unwrap_or_else(|| panic!("bundled file {name} is missing"))
}

pub fn table(name: &str) -> Result<Arc<MultiTable>, ParseError> {
    let t = text(name).ok_or_else(|| ParseError::Missing(format!("no bundled table `{name}`")))?;
    io::parse_table(t).map(Arc::new)
}

fn bundled(name: &str) -> Arc<MultiTable> {
    Arc::new(io::parse_table(must(name)).expect("bundled table parses"))
}

pub fn a2_table() -> Arc<MultiTable> {
    bundled("a2-soergel.tbl")
}

pub fn b2_table() -> Arc<MultiTable> {
    bundled("b2-soergel.tbl")
}

pub fn i2_5_table() -> Arc<MultiTable> {
    bundled("i2-5-soergel.tbl")
}

pub fn a2_hidden_rep() -> RepMatrices {
    io::parse_rep_with(must("a2-hidden.rep"), |n| table(n).map_err(|e| e.to_string())).expect("bundled rep parses")
}

pub fn algebra(name: &str) -> Arc<FinDimAlgebra> {
    Arc::new(io::parse_algebra(must(name)).expect("bundled algebra parses"))
}

pub fn coinvariant() -> Arc<FinDimAlgebra> {
    algebra("coinvariant-a2.alg")
}

pub fn dims(name: &str) -> CartanData {
    io::parse_dims(must(name)).expect("bundled dims parse")
}

pub fn bipartite5() -> BipartiteSpec {
    io::parse_graph(must("bipartite5.graph")).expect("bundled graph parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses() {
        for (name, _) in FILES {
            match name.rsplit('.').next().unwrap() {
                "tbl" => assert!(table(name).unwrap().validate().is_empty(), "{name}"),
                "alg" => assert!(algebra(name).validate().is_empty(), "{name}"),
                "dims" => {
                    dims(name);
                }
                "graph" => {
                    bipartite5();
                }
                "rep" => assert!(a2_hidden_rep().validate().is_empty()),
                other => panic!("unexpected extension {other}"),
            }
        }
    }

    #[test]
    fn lookup_without_extension() {
        assert_eq!(text("a2-soergel"), text("a2-soergel.tbl"));
        assert_eq!(text("some/dir/kx2.alg"), text("kx2.alg"));
        assert!(text("missing").is_none());
    }
}
