//! Canonical strings of maps over a fixed graph and the canonicity tests built
//! on them.
//!
//! For a map `M` the block of vertex `v` lists the neighbors of `v` in
//! rotation order, starting at the smallest one. Concatenating the blocks of
//! `0..n` in forward and in reverse rotation gives two strings; `S(M)` is the
//! smaller. The canonical string of the isomorphism class is the minimum of
//! `S(phi(M))` over the automorphisms `phi` of the graph, and `M` is the
//! canonical representative iff `S(M)` attains it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::automorphism::AutomorphismGroup;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{Map, RotationView};

/// Orientation used to read rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    #[inline]
    pub fn is_forward(self) -> bool {
        matches!(self, Direction::Forward)
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

/// A sequence of 1-based vertex labels, `deg(v)` symbols per vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalString(Vec<u8>);

impl CanonicalString {
    /// Builds from 0-based symbols.
    pub(crate) fn from_zero_based(symbols: &[u8]) -> CanonicalString {
        CanonicalString(symbols.iter().map(|&s| s + 1).collect())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space-separated labels.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// A map of the class the string describes: block `v` is read as the
    /// rotation at `v`.
    pub fn to_map(&self, graph: Arc<Graph>) -> Result<Map> {
        if self.0.len() != graph.dart_count() {
            return Err(Error::Domain(format!(
                "string has {} symbols, graph has {} darts",
                self.0.len(),
                graph.dart_count()
            )));
        }
        let mut rotations = Vec::with_capacity(graph.order());
        let mut at = 0;
        for v in 0..graph.order() {
            let d = graph.degree(v);
            rotations.push(self.0[at..at + d].iter().map(|&s| s as usize - 1).collect());
            at += d;
        }
        Map::from_rotations(graph, &rotations)
    }
}

impl fmt::Display for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalString({self})")
    }
}

impl std::str::FromStr for CanonicalString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let x: u8 = tok
                .parse()
                .map_err(|_| Error::parse(0, format!("bad symbol '{tok}'")))?;
            if x == 0 {
                return Err(Error::parse(0, "labels are 1-based"));
            }
            out.push(x);
        }
        Ok(CanonicalString(out))
    }
}

/// Neighbors of `v` in rotation order from its smallest neighbor (0-based).
pub fn vertex_string<V: RotationView>(m: &V, v: usize, direction: Direction) -> Result<Vec<usize>> {
    let g = m.graph();
    if v >= g.order() {
        return Err(Error::Domain(format!("vertex {} out of range", v + 1)));
    }
    let Some(first) = g.min_neighbor(v) else {
        return Err(Error::Domain(format!("vertex {} is isolated", v + 1)));
    };
    let mut out = Vec::with_capacity(g.degree(v));
    let mut w = first;
    out.push(w);
    for _ in 1..g.degree(v) {
        w = m.turn(v, w, direction.is_forward());
        out.push(w);
    }
    Ok(out)
}

/// `S(M)`: the smaller of the forward and reverse block strings.
pub fn string_s<V: RotationView>(m: &V) -> CanonicalString {
    let cz = Canonizer::new(m.graph());
    let mut buf = Vec::new();
    let dir = cz.own_direction(m);
    cz.write_identity(m, dir, &mut buf);
    CanonicalString::from_zero_based(&buf)
}

/// The forward (`S_p`) or reverse (`S_r`) block string of `M`.
pub fn directed_string<V: RotationView>(m: &V, direction: Direction) -> CanonicalString {
    let cz = Canonizer::new(m.graph());
    let mut buf = Vec::new();
    cz.write_identity(m, direction, &mut buf);
    CanonicalString::from_zero_based(&buf)
}

/// Minimum of `S(phi(M))` over the group.
pub fn canonical_string<V: RotationView>(m: &V, group: &AutomorphismGroup) -> CanonicalString {
    let mut cz = Canonizer::new(m.graph());
    cz.canonical_string(m, group)
}

/// Whether `S(M)` equals the canonical string of its class.
pub fn is_canonical<V: RotationView>(m: &V, group: &AutomorphismGroup) -> bool {
    let mut cz = Canonizer::new(m.graph());
    cz.is_canonical(m, group)
}

/// Precomputed block layout plus scratch space for string comparisons.
///
/// Candidate strings are generated lazily, block by block, and dropped at
/// the first symbol that differs from the reference.
#[derive(Clone, Debug)]
pub struct Canonizer {
    min_neighbor: Vec<u8>,
    degree: Vec<u8>,
    length: usize,
    reference: Vec<u8>,
    scratch: Vec<u8>,
    table: Vec<u8>,
}

/// Copy of a rotation system indexed by vertex pair, for the candidate loops.
struct Dense<'a> {
    graph: &'a Graph,
    n: usize,
    table: &'a [u8],
}

impl RotationView for Dense<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    #[inline]
    fn turn(&self, v: usize, w: usize, forward: bool) -> usize {
        self.table[((v * self.n + w) << 1) | !forward as usize] as usize
    }
}

impl Canonizer {
    pub fn new(g: &Graph) -> Canonizer {
        let n = g.order();
        Canonizer {
            min_neighbor: (0..n)
                .map(|v| g.min_neighbor(v).unwrap_or(0) as u8)
                .collect(),
            degree: (0..n).map(|v| g.degree(v) as u8).collect(),
            length: g.dart_count(),
            reference: Vec::with_capacity(g.dart_count()),
            scratch: Vec::with_capacity(g.dart_count()),
            table: vec![0; 2 * n * n],
        }
    }

    /// Direction giving the smaller string for the identity.
    pub fn own_direction<V: RotationView>(&self, m: &V) -> Direction {
        for v in 0..self.degree.len() {
            let d = self.degree[v] as usize;
            if d < 3 {
                continue;
            }
            // the two directions first differ at the second symbol of the
            // first vertex with degree >= 3
            let first = self.min_neighbor[v] as usize;
            let f = m.turn(v, first, true);
            let r = m.turn(v, first, false);
            return if f <= r {
                Direction::Forward
            } else {
                Direction::Reverse
            };
        }
        Direction::Forward
    }

    pub(crate) fn write_identity<V: RotationView>(&self, m: &V, dir: Direction, out: &mut Vec<u8>) {
        out.clear();
        for v in 0..self.degree.len() {
            let d = self.degree[v] as usize;
            if d == 0 {
                continue;
            }
            let mut w = self.min_neighbor[v] as usize;
            out.push(w as u8);
            for _ in 1..d {
                w = m.turn(v, w, dir.is_forward());
                out.push(w as u8);
            }
        }
    }

    /// Block `k` of `phi(M)` read in `dir`, appended to `out`.
    #[inline]
    fn push_block<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
        k: usize,
        dir: Direction,
        out: &mut Vec<u8>,
    ) {
        let d = self.degree[k] as usize;
        if d == 0 {
            return;
        }
        let u = inv[k] as usize;
        let mut w = inv[self.min_neighbor[k] as usize] as usize;
        out.push(fwd[w]);
        for _ in 1..d {
            w = m.turn(u, w, dir.is_forward());
            out.push(fwd[w]);
        }
    }

    /// Compares block `k` of `phi(M)` in `dir` with `reference[offset..]`.
    #[inline]
    fn compare_block<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
        k: usize,
        dir: Direction,
        reference: &[u8],
    ) -> Ordering {
        let d = self.degree[k] as usize;
        if d == 0 {
            return Ordering::Equal;
        }
        let u = inv[k] as usize;
        let mut w = inv[self.min_neighbor[k] as usize] as usize;
        // the first symbol is always the smallest neighbor of k
        for r in reference.iter().take(d).skip(1) {
            w = m.turn(u, w, dir.is_forward());
            match fwd[w].cmp(r) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison of the `dir` string of `phi(M)` with `reference`.
    fn compare_candidate<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
        dir: Direction,
        reference: &[u8],
    ) -> Ordering {
        let mut offset = 0;
        for k in 0..self.degree.len() {
            let d = self.degree[k] as usize;
            match self.compare_block(m, fwd, inv, k, dir, &reference[offset..]) {
                Ordering::Equal => offset += d,
                other => return other,
            }
        }
        Ordering::Equal
    }

    fn write_candidate<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
        dir: Direction,
        out: &mut Vec<u8>,
    ) {
        out.clear();
        for k in 0..self.degree.len() {
            self.push_block(m, fwd, inv, k, dir, out);
        }
    }

    /// Canonicity test with lazy comparisons; stops at the first smaller image.
    pub fn is_canonical<V: RotationView>(&mut self, m: &V, group: &AutomorphismGroup) -> bool {
        let own = self.own_direction(m);
        let mut reference = std::mem::take(&mut self.reference);
        self.write_identity(m, own, &mut reference);
        let mut canonical = true;
        'outer: for i in 1..group.order() {
            let fwd = group.forward(i);
            let inv = group.inverse(i);
            for dir in [Direction::Forward, Direction::Reverse] {
                if self.compare_candidate(m, fwd, inv, dir, &reference) == Ordering::Less {
                    canonical = false;
                    break 'outer;
                }
            }
        }
        self.reference = reference;
        canonical
    }

    /// Minimum of `S(phi(M))` over the group, as 0-based symbols in `out`.
    pub(crate) fn canonical_into<V: RotationView>(
        &mut self,
        m: &V,
        group: &AutomorphismGroup,
        out: &mut Vec<u8>,
    ) {
        let own = self.own_direction(m);
        self.write_identity(m, own, out);
        if group.order() == 1 {
            return;
        }
        let g = m.graph();
        let n = g.order();
        let mut table = std::mem::take(&mut self.table);
        for v in 0..n {
            for &w in g.neighbors(v) {
                table[(v * n + w) << 1] = m.turn(v, w, true) as u8;
                table[((v * n + w) << 1) | 1] = m.turn(v, w, false) as u8;
            }
        }
        let dense = Dense {
            graph: g,
            n,
            table: &table,
        };
        let mut scratch = std::mem::take(&mut self.scratch);
        for i in 1..group.order() {
            let fwd = group.forward(i);
            let inv = group.inverse(i);
            for dir in [Direction::Forward, Direction::Reverse] {
                if self.compare_candidate(&dense, fwd, inv, dir, out) == Ordering::Less {
                    self.write_candidate(&dense, fwd, inv, dir, &mut scratch);
                    std::mem::swap(out, &mut scratch);
                }
            }
        }
        self.scratch = scratch;
        self.table = table;
    }

    pub fn canonical_string<V: RotationView>(
        &mut self,
        m: &V,
        group: &AutomorphismGroup,
    ) -> CanonicalString {
        let mut out = Vec::with_capacity(self.length);
        self.canonical_into(m, group, &mut out);
        CanonicalString::from_zero_based(&out)
    }

    /// Blocks of `phi(M)` and `M` through block `k` exist once these vertices
    /// have their full rotation.
    pub(crate) fn block_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.degree.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &d in &self.degree {
            acc += d as usize;
            offsets.push(acc);
        }
        offsets
    }
}

/// Outcome of prefix comparisons for one automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Prefixes agree so far.
    Live,
    /// The image's prefix is larger; the automorphism is irrelevant below this node.
    Dominated,
    /// The image's prefix is smaller; no completion is canonical.
    Refuting,
}

/// Progress of the prefix comparison between `S(M)` and `S(phi(M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixStatus {
    /// Index of `phi` in its group.
    pub automorphism: usize,
    /// Number of leading symbols already verified equal.
    pub compared_length: usize,
    /// Number of leading blocks already verified equal.
    pub compared_blocks: usize,
    pub verdict: Verdict,
    /// Direction giving the smaller string for `phi(M)`, once known.
    pub direction: Option<Direction>,
}

impl PrefixStatus {
    pub fn new(automorphism: usize) -> PrefixStatus {
        PrefixStatus {
            automorphism,
            compared_length: 0,
            compared_blocks: 0,
            verdict: Verdict::Live,
            direction: None,
        }
    }
}

/// A rotation system under construction: only vertices reported complete
/// have their final rotation.
pub trait PartialRotationView: RotationView {
    fn is_complete(&self, v: usize) -> bool;
}

/// Extends the comparison of `S(phi(M))` with `S(M)` as far as complete
/// vertices allow.
///
/// Block `k` of `M` needs vertex `k` complete; block `k` of `phi(M)` needs
/// `phi^-1(k)` complete. The direction of both strings is settled by block 0,
/// so vertex 0 must be complete and have degree at least 3.
pub fn prefix_compare<V: PartialRotationView>(
    partial: &V,
    group: &AutomorphismGroup,
    status: &PrefixStatus,
) -> Result<PrefixStatus> {
    let g = partial.graph();
    if g.order() == 0 || !partial.is_complete(0) || g.degree(0) < 3 {
        return Err(Error::Contract(
            "prefix comparison needs vertex 1 complete with degree at least 3".into(),
        ));
    }
    if status.automorphism >= group.order() {
        return Err(Error::Contract("automorphism index out of range".into()));
    }
    let mut next = status.clone();
    if next.verdict != Verdict::Live {
        return Ok(next);
    }
    let cz = Canonizer::new(g);
    let offsets = cz.block_offsets();
    let own = cz.own_direction_partial(partial);
    let fwd = group.forward(status.automorphism);
    let inv = group.inverse(status.automorphism);
    let dir = match next.direction {
        Some(d) => d,
        None => {
            if !partial.is_complete(inv[0] as usize) {
                return Ok(next);
            }
            let d = cz.image_direction(partial, fwd, inv);
            next.direction = Some(d);
            d
        }
    };
    let mut reference = Vec::new();
    let mut k = next.compared_blocks;
    while k < g.order() && partial.is_complete(k) && partial.is_complete(inv[k] as usize) {
        reference.clear();
        cz.push_identity_block(partial, k, own, &mut reference);
        match cz.compare_block(partial, fwd, inv, k, dir, &reference) {
            Ordering::Equal => {
                k += 1;
                next.compared_blocks = k;
                next.compared_length = offsets[k];
            }
            Ordering::Less => {
                next.verdict = Verdict::Refuting;
                break;
            }
            Ordering::Greater => {
                next.verdict = Verdict::Dominated;
                break;
            }
        }
    }
    Ok(next)
}

impl Canonizer {
    /// Direction of `M` decided at vertex 0 alone.
    #[inline]
    pub(crate) fn own_direction_partial<V: RotationView>(&self, m: &V) -> Direction {
        let first = self.min_neighbor[0] as usize;
        if m.turn(0, first, true) <= m.turn(0, first, false) {
            Direction::Forward
        } else {
            Direction::Reverse
        }
    }

    /// Direction giving the smaller block 0 of `phi(M)`.
    #[inline]
    pub(crate) fn image_direction<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
    ) -> Direction {
        let u = inv[0] as usize;
        let w = inv[self.min_neighbor[0] as usize] as usize;
        if fwd[m.turn(u, w, true)] <= fwd[m.turn(u, w, false)] {
            Direction::Forward
        } else {
            Direction::Reverse
        }
    }

    #[inline]
    pub(crate) fn push_identity_block<V: RotationView>(
        &self,
        m: &V,
        k: usize,
        dir: Direction,
        out: &mut Vec<u8>,
    ) {
        let d = self.degree[k] as usize;
        if d == 0 {
            return;
        }
        let mut w = self.min_neighbor[k] as usize;
        out.push(w as u8);
        for _ in 1..d {
            w = m.turn(k, w, dir.is_forward());
            out.push(w as u8);
        }
    }

    /// Compares block `k` of `phi(M)` (in `image_dir`) with block `k` of `M`
    /// (in `own_dir`) without materialising either.
    #[inline]
    pub(crate) fn compare_blocks_direct<V: RotationView>(
        &self,
        m: &V,
        fwd: &[u8],
        inv: &[u8],
        k: usize,
        image_dir: Direction,
        own_dir: Direction,
    ) -> Ordering {
        let d = self.degree[k] as usize;
        if d < 2 {
            return Ordering::Equal;
        }
        let u = inv[k] as usize;
        let mut w = inv[self.min_neighbor[k] as usize] as usize;
        let mut x = self.min_neighbor[k] as usize;
        for _ in 1..d {
            w = m.turn(u, w, image_dir.is_forward());
            x = m.turn(k, x, own_dir.is_forward());
            match (fwd[w] as usize).cmp(&x) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }
}

/// Isomorphism code of a connected map that needs no automorphism group.
///
/// A map is rigid: fixing one dart and an orientation determines a unique
/// breadth-first labeling. The code is the smallest string over the starts
/// (dart, orientation) of least rank, each vertex contributing its degree
/// and then its neighbors' labels in rotation order from the vertex it was
/// reached by. The rank of a start (face length, steps until the face walk
/// revisits the tail, length of the face across the edge) is preserved by
/// isomorphisms, so two maps over the same graph get equal codes iff some
/// automorphism of the graph, possibly with mirroring, carries one onto
/// the other.
#[derive(Clone, Debug)]
pub(crate) struct MapCode {
    n: usize,
    length: usize,
    label: Vec<u8>,
    entry: Vec<u8>,
    queue: Vec<u8>,
    queued: usize,
    /// rotation successor (even index) and predecessor (odd) of `w` at `v`,
    /// at `(v * n + w) * 2`
    table: Vec<u8>,
    /// face length and revisit gap per dart and orientation, indexed like `table`
    face: Vec<u32>,
    gap: Vec<u32>,
    last: Vec<u32>,
    walk: Vec<(u32, u8)>,
    starts: Vec<(u8, u8, u8)>,
    scratch: Vec<u8>,
}

const UNLABELED: u8 = u8::MAX;

impl MapCode {
    pub(crate) fn new(g: &Graph) -> MapCode {
        let n = g.order();
        MapCode {
            n,
            length: n + g.dart_count(),
            label: vec![UNLABELED; n],
            entry: vec![0; n],
            queue: vec![0; n],
            queued: 0,
            table: vec![0; 2 * n * n],
            face: vec![0; 2 * n * n],
            gap: vec![0; 2 * n * n],
            last: vec![0; n],
            walk: Vec::with_capacity(g.dart_count()),
            starts: Vec::with_capacity(2 * g.dart_count()),
            scratch: vec![0; n + g.dart_count()],
        }
    }

    /// Code of `m`, which must be connected with at least one edge.
    pub(crate) fn code_into<V: RotationView>(&mut self, m: &V, out: &mut Vec<u8>) {
        let g = m.graph();
        let n = self.n;
        for v in 0..n {
            for &w in g.neighbors(v) {
                self.table[(v * n + w) << 1] = m.turn(v, w, true) as u8;
                self.table[((v * n + w) << 1) | 1] = m.turn(v, w, false) as u8;
            }
        }
        self.face.fill(0);
        for v in 0..n {
            for &w in g.neighbors(v) {
                for back in [0, 1] {
                    if self.face[((v * n + w) << 1) | back] == 0 {
                        self.trace_face(v, w, back);
                    }
                }
            }
        }
        self.starts.clear();
        let mut least = u64::MAX;
        for v in 0..n {
            for &w in g.neighbors(v) {
                for back in [0, 1] {
                    let i = ((v * n + w) << 1) | back;
                    let rank = (u64::from(self.face[i]) << 32)
                        | (u64::from(self.gap[i]) << 16)
                        | u64::from(self.face[((w * n + v) << 1) | back]);
                    if rank < least {
                        least = rank;
                        self.starts.clear();
                    }
                    if rank == least {
                        self.starts.push((v as u8, w as u8, back as u8));
                    }
                }
            }
        }
        out.clear();
        out.resize(self.length, 0);
        let mut scratch = std::mem::take(&mut self.scratch);
        let starts = std::mem::take(&mut self.starts);
        for (k, &(v, w, back)) in starts.iter().enumerate() {
            if self.trace(
                g,
                v as usize,
                w as usize,
                back as usize,
                k == 0,
                out,
                &mut scratch,
            ) {
                std::mem::swap(out, &mut scratch);
            }
        }
        self.starts = starts;
        self.scratch = scratch;
    }

    /// Walks the face of dart `(v, w)`, recording its length and the gaps.
    fn trace_face(&mut self, v: usize, w: usize, back: usize) {
        let n = self.n;
        self.walk.clear();
        let (mut x, mut y) = (v, w);
        loop {
            self.walk
                .push(((((x * n + y) << 1) | back) as u32, x as u8));
            let z = self.table[((y * n + x) << 1) | back] as usize;
            (x, y) = (y, z);
            if x == v && y == w {
                break;
            }
        }
        let len = self.walk.len() as u32;
        for (pos, &(_, x)) in self.walk.iter().enumerate().rev() {
            self.last[x as usize] = pos as u32 + len;
        }
        for (pos, &(i, x)) in self.walk.iter().enumerate().rev() {
            let pos = pos as u32;
            self.face[i as usize] = len;
            self.gap[i as usize] = self.last[x as usize] - pos;
            self.last[x as usize] = pos;
        }
    }

    /// Writes the code from dart `(v, w)` into `buf`; true if it is smaller
    /// than `best` or `first` is set. Stops early once it is larger.
    #[allow(clippy::too_many_arguments)]
    fn trace(
        &mut self,
        g: &Graph,
        v: usize,
        w: usize,
        back: usize,
        first: bool,
        best: &[u8],
        buf: &mut [u8],
    ) -> bool {
        let n = self.n;
        let table = &self.table[..];
        let label = &mut self.label[..];
        let entry = &mut self.entry[..];
        let queue = &mut self.queue[..];
        for &x in &queue[..self.queued] {
            label[x as usize] = UNLABELED;
        }
        let mut less = first;
        let mut k = 0;
        label[v] = 0;
        entry[v] = w as u8;
        queue[0] = v as u8;
        let mut queued = 1;
        let mut head = 0;
        let mut result = true;
        'walk: while head < queued {
            let x = queue[head] as usize;
            head += 1;
            let d = g.degree(x);
            let row = &table[(x * n) << 1..(x * n + n) << 1];
            let mut y = entry[x] as usize;
            for i in 0..=d {
                let symbol = if i == 0 {
                    d as u8
                } else {
                    if label[y] == UNLABELED {
                        label[y] = queued as u8;
                        entry[y] = x as u8;
                        queue[queued] = y as u8;
                        queued += 1;
                    }
                    let s = label[y];
                    y = row[(y << 1) | back] as usize;
                    s
                };
                if !less {
                    match symbol.cmp(&best[k]) {
                        Ordering::Greater => {
                            result = false;
                            break 'walk;
                        }
                        Ordering::Less => less = true,
                        Ordering::Equal => {}
                    }
                }
                buf[k] = symbol;
                k += 1;
            }
        }
        self.queued = queued;
        result && less
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{apply_automorphism, compute_automorphism_group};

    fn k4_planar() -> Map {
        Map::from_rotations(
            Arc::new(Graph::complete(4)),
            &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
        )
        .unwrap()
    }

    fn k3() -> Map {
        Map::from_rotations(
            Arc::new(Graph::complete(3)),
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
        )
        .unwrap()
    }

    fn cs(text: &str) -> CanonicalString {
        text.parse().unwrap()
    }

    #[test]
    fn vertex_strings() {
        let m = k4_planar();
        assert_eq!(
            vertex_string(&m, 1, Direction::Forward).unwrap(),
            vec![0, 3, 2]
        );
        assert_eq!(
            vertex_string(&m, 1, Direction::Reverse).unwrap(),
            vec![0, 2, 3]
        );
        let t = k3();
        assert_eq!(
            vertex_string(&t, 0, Direction::Forward).unwrap(),
            vec![1, 2]
        );
        assert_eq!(
            vertex_string(&t, 0, Direction::Reverse).unwrap(),
            vec![1, 2]
        );
    }

    #[test]
    fn isolated_vertex_has_no_string() {
        let g = Arc::new(Graph::from_edges(1, &[]).unwrap());
        let m = Map::from_rotations(g, &[vec![]]).unwrap();
        assert!(vertex_string(&m, 0, Direction::Forward).is_err());
    }

    #[test]
    fn strings_of_small_maps() {
        let m = k4_planar();
        assert_eq!(string_s(&m), cs("2 3 4 1 4 3 1 2 4 1 3 2"));
        assert_eq!(
            directed_string(&m, Direction::Reverse),
            cs("2 4 3 1 3 4 1 4 2 1 2 3")
        );
        assert_eq!(string_s(&k3()), cs("2 3 1 3 1 2"));
        assert_eq!(string_s(&m.mirror()), string_s(&m));
    }

    #[test]
    fn k4_planar_is_canonical() {
        let m = k4_planar();
        let grp = compute_automorphism_group(m.graph()).unwrap();
        assert_eq!(canonical_string(&m, &grp), string_s(&m));
        assert!(is_canonical(&m, &grp));
        // all 24 images share the string
        for phi in grp.elements() {
            let img = apply_automorphism(&m, &phi).unwrap();
            assert_eq!(string_s(&img), string_s(&m));
        }
    }

    #[test]
    fn trivial_group_is_always_canonical() {
        let m = k4_planar();
        let grp = AutomorphismGroup::trivial(4);
        assert_eq!(canonical_string(&m, &grp), string_s(&m));
        assert!(is_canonical(&m, &grp));
    }

    #[test]
    fn canonical_string_is_class_invariant() {
        // a genus-1 map of K4
        let m = Map::from_rotations(
            Arc::new(Graph::complete(4)),
            &[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(m.genus().unwrap(), 1);
        let grp = compute_automorphism_group(m.graph()).unwrap();
        let c = canonical_string(&m, &grp);
        let mut canonical_images = 0;
        for phi in grp.elements() {
            let img = apply_automorphism(&m, &phi).unwrap();
            assert_eq!(canonical_string(&img, &grp), c);
            assert!(string_s(&img) >= c);
            if is_canonical(&img, &grp) {
                canonical_images += 1;
                assert_eq!(string_s(&img), c);
            }
        }
        assert!(canonical_images > 0);
    }

    #[test]
    fn parse_and_print() {
        let c = cs("2 3 4");
        assert_eq!(c.to_text(), "2 3 4");
        assert!("0 1".parse::<CanonicalString>().is_err());
    }
}
