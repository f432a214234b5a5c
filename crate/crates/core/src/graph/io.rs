use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::StaticGraph;
use crate::{Error, Result, Vertex};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraphFormat {
    /// `n m` header, then one line of sorted neighbour labels per vertex.
    #[default]
    Canonical,
    /// METIS adjacency format: like canonical, `%` comments, optional
    /// format flag `0` in the header.
    Metis,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Self::Canonical),
            "metis" => Ok(Self::Metis),
            other => Err(Error::InvalidArgument(format!("unknown graph format `{other}`"))),
        }
    }
}

/// Reads a graph and rejects disconnected inputs.
pub fn load(path: impl AsRef<Path>, format: GraphFormat) -> Result<StaticGraph> {
    let file = std::fs::File::open(path)?;
    let g = read(file, format)?;
    g.ensure_connected()?;
    Ok(g)
}

/// Parses a simple undirected graph; connectivity is not checked.
pub fn read(reader: impl Read, format: GraphFormat) -> Result<StaticGraph> {
    let mut lines = BufReader::new(reader)
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)))
        .filter(|r| match (r, format) {
            (Ok((_, l)), GraphFormat::Metis) => !l.trim_start().starts_with('%'),
            _ => true,
        });

    let (hline, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "missing header".into() })??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse = |s: &str, line| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse { line, msg: format!("`{s}`: {e}") })
    };
    let (n, m) = match (format, fields.as_slice()) {
        (_, [n, m]) => (parse(n, hline)?, parse(m, hline)?),
        (GraphFormat::Metis, [n, m, fmt]) => {
            if parse(fmt, hline)? != 0 {
                return Err(Error::Parse { line: hline, msg: "weighted METIS graphs are not supported".into() });
            }
            (parse(n, hline)?, parse(m, hline)?)
        }
        _ => return Err(Error::Parse { line: hline, msg: "expected `n m` header".into() }),
    };

    let mut edges = Vec::with_capacity(m);
    let mut back = Vec::with_capacity(m);
    for u in 1..=n {
        let (line, text) = match lines.next() {
            Some(r) => r?,
            None => return Err(Error::Parse { line: hline + u, msg: format!("missing adjacency line for vertex {u}") }),
        };
        for tok in text.split_whitespace() {
            let v = parse(tok, line)?;
            if v == 0 || v > n {
                return Err(Error::Parse { line, msg: format!("neighbour {v} outside 1..={n}") });
            }
            if v == u {
                return Err(Error::SelfLoop(u as Vertex));
            }
            if u < v {
                edges.push((u as Vertex, v as Vertex));
            } else {
                back.push((v as Vertex, u as Vertex));
            }
        }
    }
    for r in lines {
        let (line, text) = r?;
        if !text.trim().is_empty() {
            return Err(Error::Parse { line, msg: "trailing content after adjacency lines".into() });
        }
    }
    let g = StaticGraph::from_edges(n, &edges)?;
    back.sort_unstable();
    if !back.iter().copied().eq(g.edges()) {
        return Err(Error::Parse { line: hline, msg: "adjacency lists are not symmetric".into() });
    }
    if g.m() != m {
        return Err(Error::Parse { line: hline, msg: format!("header says {m} edges, found {}", g.m()) });
    }
    Ok(g)
}

/// Canonical text form.
pub fn to_canonical(g: &StaticGraph) -> String {
    let mut s = String::with_capacity(8 * (g.n() + 2 * g.m()));
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for u in g.vertices() {
        let mut first = true;
        for &v in g.neighbors(u) {
            if !first {
                s.push(' ');
            }
            first = false;
            let _ = write!(s, "{v}");
        }
        s.push('\n');
    }
    s
}

pub fn write(g: &StaticGraph, mut out: impl Write) -> Result<()> {
    out.write_all(to_canonical(g).as_bytes())?;
    Ok(())
}

pub fn save(g: &StaticGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_canonical(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn cycle_round_trip() {
        let text = "4 4\n2 4\n1 3\n2 4\n1 3\n";
        let g = read(text.as_bytes(), GraphFormat::Canonical).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert_eq!(to_canonical(&g), text);
    }

    #[test]
    fn path_p2() {
        let g = read("2 1\n2\n1\n".as_bytes(), GraphFormat::Canonical).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn metis_comments() {
        let g = read("% c\n3 2 0\n2\n1 3\n% mid\n2\n".as_bytes(), GraphFormat::Metis).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(read("2 1\n2\n\n".as_bytes(), GraphFormat::Canonical), Err(Error::Parse { .. })));
        assert!(matches!(read("2 1\n1\n\n".as_bytes(), GraphFormat::Canonical), Err(Error::SelfLoop(1))));
        assert!(matches!(read("2 x\n".as_bytes(), GraphFormat::Canonical), Err(Error::Parse { line: 1, .. })));
        assert!(read("3 1\n2\n1\n".as_bytes(), GraphFormat::Canonical).is_err());
    }

    #[test]
    fn load_rejects_disconnected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.txt");
        std::fs::write(&p, "4 2\n2\n1\n4\n3\n").unwrap();
        assert!(matches!(load(&p, GraphFormat::Canonical), Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn grid_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("grid.txt");
        save(&generate::grid(64, 64), &p).unwrap();
        let g = load(&p, GraphFormat::Canonical).unwrap();
        assert_eq!((g.n(), g.m()), (4096, 8064));
    }
}
