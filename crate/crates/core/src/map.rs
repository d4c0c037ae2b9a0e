//! Rotation systems over a fixed graph: faces, genus, mirror images and the
//! rotation-code text format.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Dart, Graph};

/// Read access to a rotation system, by vertex and neighbor.
///
/// Implemented by complete maps and by the search state of the embedder, so
/// string and canonicity routines run on either without copying.
pub trait RotationView {
    fn graph(&self) -> &Graph;

    /// The neighbor that follows `w` around `v` (`forward`), or precedes it.
    fn turn(&self, v: usize, w: usize, forward: bool) -> usize;
}

/// A graph together with a successor permutation on its darts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Map {
    graph: Arc<Graph>,
    succ: Vec<u32>,
    pred: Vec<u32>,
}

/// The faces of a map as cyclic dart sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<Dart>>,
}

impl FaceSet {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face lengths in ascending order.
    pub fn length_profile(&self) -> Vec<usize> {
        let mut lens: Vec<_> = self.faces.iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }
}

impl Map {
    /// Wraps a successor permutation, checking the rotation-system invariants.
    pub fn new(graph: Arc<Graph>, succ: Vec<u32>) -> Result<Map> {
        let darts = graph.dart_count();
        if succ.len() != darts {
            return Err(Error::Domain(format!(
                "successor table has {} entries, graph has {darts} darts",
                succ.len()
            )));
        }
        let mut pred = vec![u32::MAX; darts];
        for (d, &s) in succ.iter().enumerate() {
            if s as usize >= darts || pred[s as usize] != u32::MAX {
                return Err(Error::Domain("successor is not a permutation".into()));
            }
            if graph.tail(Dart(s)) != graph.tail(Dart(d as u32)) {
                return Err(Error::Domain(format!(
                    "successor of dart {d} leaves vertex {}",
                    graph.tail(Dart(d as u32)) + 1
                )));
            }
            pred[s as usize] = d as u32;
        }
        for v in 0..graph.order() {
            let Some(&start) = graph.darts_at(v).first() else {
                continue;
            };
            let mut len = 0;
            let mut d = start.0;
            loop {
                len += 1;
                d = succ[d as usize];
                if d == start.0 || len > graph.degree(v) {
                    break;
                }
            }
            if len != graph.degree(v) {
                return Err(Error::Domain(format!(
                    "rotation at vertex {} is not a single cycle",
                    v + 1
                )));
            }
        }
        Ok(Map { graph, succ, pred })
    }

    /// Builds a map from one cyclic neighbor order per vertex.
    pub fn from_rotations(graph: Arc<Graph>, rotations: &[Vec<usize>]) -> Result<Map> {
        if rotations.len() != graph.order() {
            return Err(Error::Domain(format!(
                "{} rotations given for {} vertices",
                rotations.len(),
                graph.order()
            )));
        }
        let mut succ = vec![u32::MAX; graph.dart_count()];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.len() != graph.degree(v) {
                return Err(Error::Domain(format!(
                    "rotation at vertex {} has {} entries, degree is {}",
                    v + 1,
                    rot.len(),
                    graph.degree(v)
                )));
            }
            for (i, &w) in rot.iter().enumerate() {
                let next = rot[(i + 1) % rot.len()];
                let (Some(a), Some(b)) = (graph.dart(v, w), graph.dart(v, next)) else {
                    return Err(Error::Domain(format!(
                        "rotation at vertex {} names a non-neighbor",
                        v + 1
                    )));
                };
                if succ[a.index()] != u32::MAX {
                    return Err(Error::Domain(format!(
                        "rotation at vertex {} repeats neighbor {}",
                        v + 1,
                        w + 1
                    )));
                }
                succ[a.index()] = b.0;
            }
        }
        Map::new(graph, succ)
    }

    /// Assembles a map from trusted, already validated tables.
    pub(crate) fn from_parts_unchecked(graph: Arc<Graph>, succ: Vec<u32>) -> Map {
        let mut pred = vec![0; succ.len()];
        for (d, &s) in succ.iter().enumerate() {
            pred[s as usize] = d as u32;
        }
        Map { graph, succ, pred }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn succ_table(&self) -> &[u32] {
        &self.succ
    }

    #[inline]
    pub fn succ(&self, d: Dart) -> Dart {
        Dart(self.succ[d.index()])
    }

    #[inline]
    pub fn pred(&self, d: Dart) -> Dart {
        Dart(self.pred[d.index()])
    }

    /// Cyclic neighbor order at `v`, starting at the smallest neighbor.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let Some(&start) = self.graph.darts_at(v).first() else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity(self.graph.degree(v));
        let mut d = start;
        loop {
            out.push(self.graph.head(d));
            d = self.succ(d);
            if d == start {
                break;
            }
        }
        out
    }

    /// The dart following `e` along its face: `succ(inverse(e))`.
    pub fn face_successor(&self, e: Dart) -> Result<Dart> {
        if e.index() >= self.succ.len() {
            return Err(Error::Domain(format!(
                "dart id {} out of range for {} darts",
                e.0,
                self.succ.len()
            )));
        }
        Ok(self.succ(e.inverse()))
    }

    /// All faces, each starting at its smallest dart, in order of that dart.
    pub fn trace_faces(&self) -> FaceSet {
        let darts = self.succ.len();
        let mut seen = vec![false; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start as u32;
            while !seen[d as usize] {
                seen[d as usize] = true;
                face.push(Dart(d));
                d = self.succ[(d ^ 1) as usize];
            }
            faces.push(face);
        }
        FaceSet { faces }
    }

    pub fn face_count(&self) -> usize {
        let darts = self.succ.len();
        let mut seen = vec![false; darts];
        let mut count = 0;
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start as u32;
            while !seen[d as usize] {
                seen[d as usize] = true;
                d = self.succ[(d ^ 1) as usize];
            }
        }
        count
    }

    /// Genus of the surface the map lives on: `1 - (n - m + F) / 2`.
    pub fn genus(&self) -> Result<usize> {
        if !self.graph.is_connected() {
            return Err(Error::Domain(
                "genus is defined for connected maps only".into(),
            ));
        }
        let n = self.graph.order() as i64;
        let m = self.graph.size() as i64;
        // a lone vertex bounds one face
        let f = if m == 0 { 1 } else { self.face_count() as i64 };
        let chi = n - m + f;
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::Invariant(format!(
                "Euler characteristic {chi} does not give an integral non-negative genus"
            )));
        }
        Ok((1 - chi / 2) as usize)
    }

    /// The map with every rotation reversed.
    pub fn mirror(&self) -> Map {
        Map {
            graph: Arc::clone(&self.graph),
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }

    /// Rotation-code record: `n`, then `v: w1 .. wd` per vertex, starting at the
    /// smallest neighbor, 1-based, newline-terminated lines.
    pub fn to_rotation_code(&self) -> String {
        let mut out = String::new();
        self.write_rotation_code(&mut out);
        out
    }

    pub fn write_rotation_code(&self, out: &mut String) {
        let n = self.graph.order();
        writeln!(out, "{n}").unwrap();
        for v in 0..n {
            write!(out, "{}:", v + 1).unwrap();
            for w in self.rotation(v) {
                write!(out, " {}", w + 1).unwrap();
            }
            out.push('\n');
        }
    }

    /// Inverse of [`Map::to_rotation_code`]. The graph is read off the record.
    pub fn from_rotation_code(text: &str) -> Result<Map> {
        let mut offset = 0;
        let mut lines = Vec::new();
        for line in text.split_inclusive('\n') {
            let body = line.trim_end_matches(['\n', '\r']);
            if !body.trim().is_empty() {
                lines.push((offset, body));
            }
            offset += line.len();
        }
        let Some(&(first_off, first)) = lines.first() else {
            return Err(Error::parse(0, "empty rotation-code record"));
        };
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(first_off, "expected vertex count"))?;
        if lines.len() != n + 1 {
            return Err(Error::parse(
                offset,
                format!("expected {n} vertex lines, found {}", lines.len() - 1),
            ));
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, &(off, line)) in lines[1..].iter().enumerate() {
            let (label, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(off, "missing ':' after vertex label"))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| Error::parse(off, "bad vertex label"))?;
            if label != v + 1 {
                return Err(Error::parse(
                    off,
                    format!("expected vertex {} but found {label}", v + 1),
                ));
            }
            let mut rot = Vec::new();
            for tok in rest.split_whitespace() {
                let w: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(off, format!("bad neighbor '{tok}'")))?;
                if w == 0 || w > n {
                    return Err(Error::parse(off, format!("neighbor {w} out of range")));
                }
                rot.push(w - 1);
            }
            rotations.push(rot);
        }
        let adjacency: Vec<Vec<usize>> = rotations.clone();
        let graph = Graph::from_adjacency(adjacency)?;
        Map::from_rotations(Arc::new(graph), &rotations)
    }
}

impl std::fmt::Debug for Map {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Map(")?;
        for v in 0..self.graph.order() {
            if v > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}:", v + 1)?;
            for w in self.rotation(v) {
                write!(f, " {}", w + 1)?;
            }
        }
        write!(f, ")")
    }
}

impl RotationView for Map {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    fn turn(&self, v: usize, w: usize, forward: bool) -> usize {
        let d = self.graph.dart(v, w).expect("turn on an edge of the map");
        let next = if forward { self.succ(d) } else { self.pred(d) };
        self.graph.head(next)
    }
}

/// Number of rotation systems up to mirror image: `1/2 * prod (deg(v) - 1)!`.
pub fn total_embedding_count(g: &Graph) -> Result<BigUint> {
    if g.max_degree() < 3 {
        return Err(Error::Domain(
            "the embedding-count formula needs a vertex of degree at least 3".into(),
        ));
    }
    let mut total = BigUint::from(1u32);
    for v in 0..g.order() {
        for k in 2..g.degree(v) {
            total *= k as u32;
        }
    }
    Ok(total / 2u32)
}

/// `prod (deg(v) - 1)!` as a float, for cap checks.
pub fn rotation_space_size(g: &Graph) -> f64 {
    (0..g.order())
        .map(|v| (2..g.degree(v)).map(|k| k as f64).product::<f64>())
        .product()
}
