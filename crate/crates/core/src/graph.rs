//! Simple undirected graphs, oriented edges and the graph6 format.
//!
//! Vertices are addressed by 0-based indices in the Rust API. Every text
//! format (rotation codes, canonical strings, permutations) prints them
//! 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order. Vertex labels fit in a byte internally.
pub const MAX_ORDER: usize = 255;

/// An oriented edge. Ids come in pairs `2k, 2k + 1` so the inverse is `id ^ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn inverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Index of the undirected edge this dart belongs to.
    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }
}

/// A labeled simple graph with sorted adjacency lists.
///
/// Edge `k` is the `k`-th pair `(u, v)`, `u < v`, in lexicographic order.
/// Its dart `2k` runs from `u` to `v` and dart `2k + 1` from `v` to `u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    /// `adj_darts[v][i]` is the dart from `v` to `adjacency[v][i]`.
    adj_darts: Vec<Vec<Dart>>,
}

impl Graph {
    /// Builds a graph from an edge list over vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::Domain(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!(
                    "edge ({}, {}) references a vertex outside 1..{n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {}", u + 1)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("repeated edge at vertex {}", v + 1)));
            }
        }
        Ok(Self::from_sorted_adjacency(adjacency))
    }

    /// Builds a graph from adjacency lists, checking symmetry and simplicity.
    pub fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Result<Graph> {
        let n = adjacency.len();
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(Error::Domain(format!(
                        "neighbor {} of vertex {} is out of range",
                        v + 1,
                        u + 1
                    )));
                }
                if !adjacency[v].contains(&u) {
                    return Err(Error::Domain(format!(
                        "adjacency is not symmetric between {} and {}",
                        u + 1,
                        v + 1
                    )));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Graph {
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        let mut adj_darts: Vec<Vec<Dart>> = adjacency
            .iter()
            .map(|l| Vec::with_capacity(l.len()))
            .collect();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                let k = edges.binary_search(&(a, b)).expect("edge present");
                let dart = if u < v { 2 * k } else { 2 * k + 1 };
                adj_darts[u].push(Dart(dart as u32));
            }
        }
        Graph {
            adjacency,
            edges,
            adj_darts,
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Smallest neighbor of `v`, if any.
    #[inline]
    pub fn min_neighbor(&self, v: usize) -> Option<usize> {
        self.adjacency[v].first().copied()
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        let (u, v) = self.edges[d.edge()];
        if d.0 & 1 == 0 {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.inverse())
    }

    /// The dart from `u` to `v`, if they are adjacent.
    pub fn dart(&self, u: usize, v: usize) -> Option<Dart> {
        let i = self.adjacency.get(u)?.binary_search(&v).ok()?;
        Some(self.adj_darts[u][i])
    }

    /// Darts with tail `v`, in ascending order of head.
    pub fn darts_at(&self, v: usize) -> &[Dart] {
        &self.adj_darts[v]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &w in &self.adjacency[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// The graph with vertex `v` renamed to `new_label[v]`.
    pub fn relabeled(&self, new_label: &[usize]) -> Graph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (new_label[u], new_label[v]))
            .collect();
        Graph::from_edges(self.order(), &edges).expect("relabeling preserves simplicity")
    }

    /// Parses one graph6 record (without trailing newline).
    pub fn from_graph6(line: &str) -> Result<Graph> {
        parse_graph6(line.as_bytes())
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; ", self.order())?;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, ")")
    }
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

/// Decodes a graph6 record. An optional `>>graph6<<` header is skipped.
pub fn parse_graph6(line: &[u8]) -> Result<Graph> {
    let mut bytes = line;
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    let mut pos = 0;
    if bytes.starts_with(GRAPH6_HEADER) {
        pos = GRAPH6_HEADER.len();
    }
    if pos >= bytes.len() {
        return Err(Error::parse(pos, "empty graph6 record"));
    }
    for (i, &b) in bytes.iter().enumerate().skip(pos) {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                i,
                format!("byte 0x{b:02x} is not a graph6 character"),
            ));
        }
    }

    let n;
    if bytes[pos] != 126 {
        n = (bytes[pos] - 63) as usize;
        pos += 1;
    } else {
        if bytes.len() < pos + 4 {
            return Err(Error::parse(pos, "truncated order field"));
        }
        if bytes[pos + 1] == 126 {
            return Err(Error::parse(
                pos + 1,
                "orders above 258047 are not supported",
            ));
        }
        n = bytes[pos + 1..pos + 4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        pos += 4;
    }
    if n > MAX_ORDER {
        return Err(Error::parse(
            pos.saturating_sub(1),
            format!("order {n} exceeds the supported maximum {MAX_ORDER}"),
        ));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != needed {
        return Err(Error::parse(
            pos + body.len().min(needed),
            format!(
                "expected {needed} adjacency bytes for order {n}, found {}",
                body.len()
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let byte = body[k / 6] - 63;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if byte & pad_mask != 0 {
            return Err(Error::parse(pos + k / 6, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encodes a graph as a graph6 record (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
