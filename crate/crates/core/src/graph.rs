//! The skew-line graph G(X) and the dense bit-vector sets used by the
//! clique engines. Vertices are line indices in table order; edges join
//! skew (non-meeting) lines.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::geometry::{lines_meet, LineTable};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("empty input")]
    EmptyInput,
    #[error("vertex {0} out of range for graph of order {1}")]
    VertexOutOfRange(usize, usize),
    #[error("malformed DIMACS input: {0}")]
    BadDimacs(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Dense bit set over the vertex range 0..n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let bits = n.saturating_sub(lo).min(64);
            *w = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        let mut s = Self::empty(n);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u16> {
        self.iter().map(|v| v as u16).collect()
    }

    pub fn and(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn and_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// self with the members of `other` removed.
    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// |self AND other| without allocating.
    #[inline]
    pub fn and_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// Undirected simple graph with dense bit-vector adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl SkewGraph {
    pub fn empty(n: usize) -> Self {
        SkewGraph { n, adj: vec![VertexSet::empty(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> u64 {
        self.adj.iter().map(|row| row.count() as u64).sum::<u64>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count() as usize);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// DIMACS export: `p edge n m` then one `e u v` per edge, 1-based,
    /// lexicographically sorted.
    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn write_dimacs<W: Write>(&self, mut w: W) -> Result<(), GraphError> {
        w.write_all(self.to_dimacs().as_bytes())?;
        Ok(())
    }

    pub fn from_dimacs<R: BufRead>(r: R) -> Result<Self, GraphError> {
        let mut graph: Option<SkewGraph> = None;
        let mut declared_edges = 0u64;
        let mut seen_edges = 0u64;
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("p") => {
                    if parts.next() != Some("edge") {
                        return Err(GraphError::BadDimacs("expected 'p edge n m'".into()));
                    }
                    let n: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| GraphError::BadDimacs("bad vertex count".into()))?;
                    declared_edges = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| GraphError::BadDimacs("bad edge count".into()))?;
                    graph = Some(SkewGraph::empty(n));
                }
                Some("e") => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| GraphError::BadDimacs("edge before problem line".into()))?;
                    let u: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| GraphError::BadDimacs("bad edge endpoint".into()))?;
                    let v: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| GraphError::BadDimacs("bad edge endpoint".into()))?;
                    if u == 0 || v == 0 || u == v {
                        return Err(GraphError::BadDimacs(format!("bad edge {u} {v}")));
                    }
                    g.add_edge(u - 1, v - 1)?;
                    seen_edges += 1;
                }
                _ => return Err(GraphError::BadDimacs(format!("unrecognized line: {line}"))),
            }
        }
        let g = graph.ok_or_else(|| GraphError::BadDimacs("missing problem line".into()))?;
        if seen_edges != declared_edges {
            return Err(GraphError::BadDimacs(format!(
                "declared {declared_edges} edges, found {seen_edges}"
            )));
        }
        Ok(g)
    }
}

/// Builds G(X): vertex order equals line index order, edges join skew pairs.
pub fn build_skew_graph(table: &LineTable) -> SkewGraph {
    let n = table.len();
    let f = table.field();
    let mut g = SkewGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let meet = lines_meet(f, table.line(u), table.line(v)).expect("distinct table lines");
            if !meet {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
    }
    g
}

/// Complement graph: edge (u,v) iff u != v and (u,v) is not an edge.
pub fn complement(g: &SkewGraph) -> SkewGraph {
    let n = g.n;
    let mut c = SkewGraph::empty(n);
    let full = VertexSet::full(n);
    for v in 0..n {
        let mut row = full.minus(&g.adj[v]);
        row.remove(v);
        c.adj[v] = row;
    }
    c
}

/// Intersection of the neighborhoods of `vs`, minus `vs` itself.
pub fn common_neighbors(g: &SkewGraph, vs: &[usize]) -> Result<VertexSet, GraphError> {
    let (&first, rest) = vs.split_first().ok_or(GraphError::EmptyInput)?;
    if first >= g.n {
        return Err(GraphError::VertexOutOfRange(first, g.n));
    }
    let mut acc = g.adj[first].clone();
    for &v in rest {
        if v >= g.n {
            return Err(GraphError::VertexOutOfRange(v, g.n));
        }
        acc.and_assign(&g.adj[v]);
    }
    for &v in vs {
        acc.remove(v);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::geometry::enumerate_lines;

    fn graph(q: u64) -> (LineTable, SkewGraph) {
        let f = match q {
            2 => build_field(2, 1).unwrap(),
            3 => build_field(3, 1).unwrap(),
            4 => build_field(2, 2).unwrap(),
            _ => panic!(),
        };
        let t = enumerate_lines(f).unwrap();
        let g = build_skew_graph(&t);
        (t, g)
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.count(), 3);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        s.remove(0);
        assert_eq!(s.first(), Some(64));
        assert!(!s.contains(0));
        let full = VertexSet::full(130);
        assert_eq!(full.count(), 130);
        assert!(s.is_subset(&full));
        assert_eq!(full.minus(&full).count(), 0);
    }

    #[test]
    fn skew_graph_is_q4_regular() {
        // Degree q^4 = n - 1 - q(q^2+1): a line meets q^3 + q others.
        for q in [2u64, 3, 4] {
            let (t, g) = graph(q);
            assert_eq!(g.n() as u64, t.len() as u64);
            let expected = g.n() as u64 - 1 - q * (q * q + 1);
            assert_eq!(expected, q * q * q * q);
            for v in 0..g.n() {
                assert_eq!(g.degree(v) as u64, expected, "vertex {v} at q={q}");
            }
            assert_eq!(g.edge_count(), g.n() as u64 * q * q * q * q / 2);
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        let (_, g) = graph(2);
        for u in 0..g.n() {
            assert!(!g.are_adjacent(u, u));
            for v in 0..g.n() {
                assert_eq!(g.are_adjacent(u, v), g.are_adjacent(v, u));
            }
        }
    }

    #[test]
    fn complement_properties() {
        let (_, g) = graph(2);
        let c = complement(&g);
        assert_eq!(complement(&c), g);
        for v in 0..c.n() {
            assert_eq!(c.degree(v), 10); // q(q^2+1) at q=2
        }
        let empty = SkewGraph::empty(5);
        let kn = complement(&empty);
        for v in 0..5 {
            assert_eq!(kn.degree(v), 4);
        }
    }

    #[test]
    fn common_neighbors_examples() {
        let (t, g) = graph(2);
        assert_eq!(common_neighbors(&g, &[3]).unwrap(), *g.neighbors(3));
        // The initial triple of the search; its common neighborhood is the
        // P set of the first call. Cross-check against a direct filter.
        let p = common_neighbors(&g, &[0, 4, 8]).unwrap();
        let f = t.field();
        let direct: Vec<usize> = (0..t.len())
            .filter(|&v| {
                [0usize, 4, 8].iter().all(|&r| {
                    v != r && !lines_meet(f, t.line(v), t.line(r)).unwrap()
                })
            })
            .collect();
        assert_eq!(p.iter().collect::<Vec<_>>(), direct);
        // 27 - 3 - (3*10 - 3*5 + 3): inclusion-exclusion over the lines
        // meeting at least one of the triple.
        assert_eq!(p.count(), 6);
        // All vertices at once: irreflexivity makes this empty.
        let all: Vec<usize> = (0..g.n()).collect();
        assert!(common_neighbors(&g, &all).unwrap().is_empty());
        assert!(matches!(common_neighbors(&g, &[]), Err(GraphError::EmptyInput)));
    }

    #[test]
    fn dimacs_round_trip() {
        let (_, g) = graph(2);
        let text = g.to_dimacs();
        let parsed = SkewGraph::from_dimacs(text.as_bytes()).unwrap();
        assert_eq!(parsed, g);
        assert!(text.starts_with("p edge 27 216\n"));
    }

    #[test]
    fn dimacs_rejects_malformed_input() {
        assert!(SkewGraph::from_dimacs("e 1 2\n".as_bytes()).is_err());
        assert!(SkewGraph::from_dimacs("p edge 3 1\ne 1 1\n".as_bytes()).is_err());
        assert!(SkewGraph::from_dimacs("p edge 3 2\ne 1 2\n".as_bytes()).is_err());
    }
}
