//! The `.facets` text format.
//!
//! ```text
//! # comment
//! n 4
//! 0 1 2
//! 0 1 3
//! ```
//!
//! Lines starting with `#` are comments. The first other line declares the
//! vertex count; each following nonempty line is a facet. When some label is
//! `>= n` the distinct labels are remapped, in increasing order, onto `0..n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub fn parse_facets(text: &str, require_pure: bool) -> Result<SimplicialComplex> {
    let mut n: Option<usize> = None;
    let mut raw: Vec<(usize, Vec<u64>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let mut parts = line.split_whitespace();
                let (Some("n"), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(Error::Parse { line: line_no, msg: "expected header `n <integer>`".into() });
                };
                let v: usize = v
                    .parse()
                    .map_err(|_| Error::Parse { line: line_no, msg: format!("bad vertex count `{v}`") })?;
                if v == 0 {
                    return Err(Error::Parse { line: line_no, msg: "vertex count must be positive".into() });
                }
                n = Some(v);
            }
            Some(_) => {
                let ids = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<u64>()
                            .map_err(|_| Error::Parse { line: line_no, msg: format!("bad vertex id `{tok}`") })
                    })
                    .collect::<Result<Vec<_>>>()?;
                raw.push((line_no, ids));
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing header `n <integer>`".into() })?;

    let needs_remap = raw.iter().flat_map(|(_, f)| f).any(|&v| v >= n as u64);
    let labels: Vec<u64> = if needs_remap {
        let distinct: BTreeSet<u64> = raw.iter().flat_map(|(_, f)| f.iter().copied()).collect();
        if distinct.len() > n {
            let worst = *distinct.iter().next_back().unwrap();
            return Err(Error::BadVertexId { vertex: worst.min(u32::MAX as u64) as Vertex, n });
        }
        distinct.into_iter().collect()
    } else {
        Vec::new()
    };
    let relabel = |v: u64| -> Vertex {
        if needs_remap {
            labels.binary_search(&v).expect("label collected") as Vertex
        } else {
            v as Vertex
        }
    };

    let mut facets = Vec::with_capacity(raw.len());
    for (line_no, ids) in raw {
        let f = Face::new(ids.into_iter().map(relabel)).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
        facets.push(f);
    }
    SimplicialComplex::from_facets(n, facets, require_pure)
}

/// Serializes facets in canonical sorted order.
pub fn write_facets(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", k.n_vertices()).unwrap();
    for f in k.facets() {
        let line: Vec<String> = f.vertices().iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn read_facets_file(path: impl AsRef<Path>, require_pure: bool) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path)?;
    parse_facets(&text, require_pure)
}

pub fn write_facets_file(path: impl AsRef<Path>, k: &SimplicialComplex) -> Result<()> {
    std::fs::write(path, write_facets(k))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_header() {
        let k = parse_facets("# a triangle\n\nn 3\n2 1 0\n", true).unwrap();
        assert_eq!(k.facets().len(), 1);
        assert_eq!(write_facets(&k), "n 3\n0 1 2\n");
    }

    #[test]
    fn remaps_sparse_labels() {
        let k = parse_facets("n 4\n10 20 30\n10 20 40\n", true).unwrap();
        assert_eq!(write_facets(&k), "n 4\n0 1 2\n0 1 3\n");
    }

    #[test]
    fn too_many_labels() {
        assert!(matches!(parse_facets("n 3\n5 6 7 8\n", false), Err(Error::BadVertexId { .. })));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_facets("0 1 2\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_facets("# only\n", false), Err(Error::Parse { .. })));
        assert!(matches!(parse_facets("n 3\n0 x\n", false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facets("n 3\n0 0 1\n", false), Err(Error::Parse { line: 2, .. })));
    }
}
