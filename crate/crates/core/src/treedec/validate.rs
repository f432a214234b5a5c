use std::fmt;
use std::io::{BufRead, BufReader, Read};

use super::TreeDecomposition;
use crate::graph::StaticGraph;
use crate::{Error, Result, Vertex};

/// First violated condition of a tree decomposition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The bags do not form a single tree.
    NotATree { components: usize },
    /// A bag names a vertex outside `1..=n`.
    UnknownVertex { bag: usize, vertex: Vertex },
    /// Condition 1: no bag holds the vertex.
    UncoveredVertex(Vertex),
    /// Condition 2: no bag holds both endpoints.
    UncoveredEdge(Vertex, Vertex),
    /// Condition 3: two bags holding the vertex are not joined through bags holding it.
    Disconnected { vertex: Vertex, bags: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree { components } => write!(f, "bags form {components} trees, expected one"),
            Violation::UnknownVertex { bag, vertex } => write!(f, "bag {} holds unknown vertex {vertex}", bag + 1),
            Violation::UncoveredVertex(v) => write!(f, "condition 1: vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "condition 2: edge {u}-{v} is in no bag"),
            Violation::Disconnected { vertex, bags } => write!(
                f,
                "condition 3: bags {} and {} hold vertex {vertex} but are not connected through it",
                bags.0 + 1,
                bags.1 + 1
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub bags: usize,
    pub width: usize,
}

/// Checks the three tree-decomposition conditions exhaustively.
pub fn validate(g: &StaticGraph, td: &TreeDecomposition) -> std::result::Result<ValidationReport, Violation> {
    let n = g.n();
    let k = td.bags.len();
    let roots = td.parent.iter().filter(|p| p.is_none()).count();
    if k > 0 && roots != 1 {
        return Err(Violation::NotATree { components: roots });
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v == 0 || v as usize > n {
                return Err(Violation::UnknownVertex { bag: b, vertex: v });
            }
            holders[v as usize].push(b);
        }
    }
    if let Some(v) = g.vertices().find(|&v| holders[v as usize].is_empty()) {
        return Err(Violation::UncoveredVertex(v));
    }
    let sorted: Vec<Vec<Vertex>> = td
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    for (u, v) in g.edges() {
        let (x, y) = if holders[u as usize].len() <= holders[v as usize].len() { (u, v) } else { (v, u) };
        if !holders[x as usize].iter().any(|&b| sorted[b].binary_search(&y).is_ok()) {
            return Err(Violation::UncoveredEdge(u, v));
        }
    }
    // In a tree, the bags holding v are connected iff they span |holders| − 1 tree edges.
    let mut spanned = vec![0usize; n + 1];
    for (p, c) in td.edges() {
        for &v in &sorted[c] {
            if sorted[p].binary_search(&v).is_ok() {
                spanned[v as usize] += 1;
            }
        }
    }
    for v in g.vertices() {
        let hs = &holders[v as usize];
        if spanned[v as usize] + 1 != hs.len() {
            return Err(Violation::Disconnected {
                vertex: v,
                bags: split_witness(td, &sorted, v, hs),
            });
        }
    }
    Ok(ValidationReport { bags: k, width: td.width() })
}

/// Two bags holding `v` in different parts of the subforest of bags holding `v`.
fn split_witness(td: &TreeDecomposition, sorted: &[Vec<Vertex>], v: Vertex, holders: &[usize]) -> (usize, usize) {
    let top = |mut b: usize| {
        while let Some(p) = td.parent[b] {
            if sorted[p].binary_search(&v).is_err() {
                break;
            }
            b = p;
        }
        b
    };
    let first = top(holders[0]);
    let other = holders.iter().copied().find(|&b| top(b) != first).unwrap_or(holders[0]);
    (holders[0], other)
}

/// Parses PACE `.td` text; the tree is rooted at bag 1.
pub fn read_pace(reader: impl Read) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut edges = 0usize;
    let parse = |tok: &str, line: usize| -> Result<usize> {
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("expected a number, got {tok:?}"),
        })
    };
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("s") => {
                if toks.len() != 5 || toks[1] != "td" || header.is_some() {
                    return Err(Error::Parse { line: line_no, msg: "bad solution line".into() });
                }
                let k = parse(toks[2], line_no)?;
                let n = parse(toks[4], line_no)?;
                header = Some((k, n));
                bags = vec![None; k];
                adj = vec![Vec::new(); k];
            }
            Some("b") => {
                let Some((k, _)) = header else {
                    return Err(Error::Parse { line: line_no, msg: "bag before header".into() });
                };
                let id = parse(toks.get(1).copied().unwrap_or(""), line_no)?;
                if id == 0 || id > k || bags[id - 1].is_some() {
                    return Err(Error::Parse { line: line_no, msg: format!("bad bag id {id}") });
                }
                let mut bag = toks[2..].iter().map(|t| parse(t, line_no).map(|v| v as Vertex)).collect::<Result<Vec<_>>>()?;
                bag.sort_unstable();
                bag.dedup();
                bags[id - 1] = Some(bag);
            }
            Some(_) => {
                let Some((k, _)) = header else {
                    return Err(Error::Parse { line: line_no, msg: "edge before header".into() });
                };
                if toks.len() != 2 {
                    return Err(Error::Parse { line: line_no, msg: "expected a tree edge".into() });
                }
                let (a, b) = (parse(toks[0], line_no)?, parse(toks[1], line_no)?);
                if a == 0 || b == 0 || a > k || b > k || a == b {
                    return Err(Error::Parse { line: line_no, msg: format!("bad tree edge {a} {b}") });
                }
                adj[a - 1].push(b - 1);
                adj[b - 1].push(a - 1);
                edges += 1;
            }
        }
    }
    let (k, n) = header.ok_or_else(|| Error::Parse { line: 0, msg: "missing solution line".into() })?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<Vec<_>>>()?;
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    let mut reached_edges = 0;
    for root in 0..k {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some(a);
                    reached_edges += 1;
                    stack.push(b);
                }
            }
        }
    }
    if reached_edges != edges {
        return Err(Error::Parse { line: 0, msg: "tree edges contain a cycle".into() });
    }
    Ok(TreeDecomposition { n, bags, parent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn chain(bags: Vec<Vec<Vertex>>) -> TreeDecomposition {
        let parent = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
        TreeDecomposition { n: 0, bags, parent }
    }

    #[test]
    fn single_bag_is_valid() {
        let g = generate::grid(3, 3);
        let td = chain(vec![(1..=9).collect()]);
        assert_eq!(validate(&g, &td), Ok(ValidationReport { bags: 1, width: 8 }));
    }

    #[test]
    fn each_condition_reports_its_witness() {
        let g = generate::path(4);
        let missing = chain(vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(validate(&g, &missing), Err(Violation::UncoveredVertex(4)));
        let edge = chain(vec![vec![1, 2], vec![2, 3], vec![4]]);
        assert_eq!(validate(&g, &edge), Err(Violation::UncoveredEdge(3, 4)));
        let split = chain(vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![2]]);
        assert_eq!(validate(&g, &split), Err(Violation::Disconnected { vertex: 2, bags: (0, 3) }));
        let mut forest = chain(vec![vec![1, 2], vec![3, 4], vec![2, 3]]);
        forest.parent[1] = None;
        assert_eq!(validate(&g, &forest), Err(Violation::NotATree { components: 2 }));
    }

    #[test]
    fn pace_reader_rejects_malformed_input() {
        assert!(read_pace("b 1 2\n".as_bytes()).is_err());
        assert!(read_pace("s td 2 2 3\nb 1 1 2\n".as_bytes()).is_err());
        assert!(read_pace("s td 3 2 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 3\n3 1\n".as_bytes()).is_err());
        let td = read_pace("c ok\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n".as_bytes()).unwrap();
        assert_eq!(td.parent, vec![None, Some(0)]);
        assert_eq!(validate(&generate::path(3), &td).map(|r| r.width), Ok(1));
    }
}
