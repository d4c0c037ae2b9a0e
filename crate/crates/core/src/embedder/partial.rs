use std::sync::Arc;

use crate::canonical::PartialRotationView;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{Map, RotationView};

use super::plan::InsertionPlan;
use super::SearchTarget;

/// Marker for "no dart": the endpoint has no edges yet.
pub const NO_DART: u16 = u16::MAX;

/// Where a new edge goes: after which dart at its tail and at its head.
///
/// Darts are numbered by plan iteration: edge `i` of the plan owns darts
/// `2i` (leaving its tail) and `2i + 1` (leaving its head).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotPair {
    pub after_tail: u16,
    pub after_head: u16,
}

#[derive(Clone, Copy, Debug)]
struct Undo {
    faces: u32,
    support: u32,
    complete_prefix: u32,
}

/// A map restricted to a prefix of an insertion plan.
///
/// Rotations are doubly linked dart cycles; the face count is maintained
/// across insertions (an edge joining two corners of one face splits it, an
/// edge joining two faces merges them, a pendant edge leaves the count).
pub struct PartialMap<'g> {
    graph: &'g Graph,
    plan: &'g InsertionPlan,
    pub(crate) n: usize,
    pub(crate) m: usize,
    pub(crate) tail: Vec<u8>,
    pub(crate) next: Vec<u16>,
    pub(crate) prev: Vec<u16>,
    pub(crate) first: Vec<u16>,
    pub(crate) pdeg: Vec<u8>,
    pub(crate) deg: Vec<u8>,
    dart_of: Vec<u16>,
    pub(crate) inserted: usize,
    pub(crate) support: usize,
    pub(crate) faces: usize,
    pub(crate) complete_prefix: usize,
    history: Vec<Undo>,
    stamp: Vec<u32>,
    epoch: u32,
    mirror_fix: bool,
}

impl<'g> PartialMap<'g> {
    /// An empty partial map following `plan`.
    pub fn new(graph: &'g Graph, plan: &'g InsertionPlan) -> PartialMap<'g> {
        let n = graph.order();
        let m = plan.len();
        let mut tail = vec![0u8; 2 * m];
        let mut dart_of = vec![NO_DART; n * n];
        for (i, &(u, v)) in plan.edges().iter().enumerate() {
            tail[2 * i] = u as u8;
            tail[2 * i + 1] = v as u8;
            dart_of[u * n + v] = (2 * i) as u16;
            dart_of[v * n + u] = (2 * i + 1) as u16;
        }
        PartialMap {
            graph,
            plan,
            n,
            m,
            tail,
            next: vec![NO_DART; 2 * m],
            prev: vec![NO_DART; 2 * m],
            first: vec![NO_DART; n],
            pdeg: vec![0; n],
            deg: (0..n).map(|v| graph.degree(v) as u8).collect(),
            dart_of,
            inserted: 0,
            support: 0,
            faces: 0,
            complete_prefix: 0,
            history: Vec::with_capacity(m),
            stamp: vec![0; 2 * m],
            epoch: 0,
            mirror_fix: graph.degree(0) >= 3 && m >= 3,
        }
    }

    pub fn plan(&self) -> &InsertionPlan {
        self.plan
    }

    /// Number of plan edges inserted so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_complete_map(&self) -> bool {
        self.inserted == self.m
    }

    /// Vertices touched by inserted edges.
    pub fn support_size(&self) -> usize {
        self.support
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    /// Edges still to be inserted whose endpoints will both be present at
    /// insertion time: `remaining - (n - support)`.
    pub fn closing_remaining(&self) -> usize {
        if self.inserted == 0 {
            // the first edge brings in two vertices
            return self.m + 1 - self.n;
        }
        (self.m - self.inserted) - (self.n - self.support)
    }

    #[inline]
    pub fn is_vertex_complete(&self, v: usize) -> bool {
        self.pdeg[v] == self.deg[v]
    }

    /// Whether the last insertion gave one of its endpoints its full degree.
    #[inline]
    pub(crate) fn last_insert_completed_vertex(&self) -> bool {
        let Some(k) = self.inserted.checked_sub(1) else {
            return false;
        };
        let u = self.tail[2 * k] as usize;
        let v = self.tail[2 * k + 1] as usize;
        self.is_vertex_complete(u) || self.is_vertex_complete(v)
    }

    /// Genus of the inserted subgraph with its partial rotation.
    pub fn partial_genus(&self) -> usize {
        if self.inserted == 0 {
            return 0;
        }
        let chi = self.support as i64 - self.inserted as i64 + self.faces as i64;
        debug_assert!(chi % 2 == 0 && chi <= 2);
        (1 - chi / 2) as usize
    }

    /// Whether the subtree below this state cannot reach `target`.
    pub fn prune(&self, target: SearchTarget) -> bool {
        match target.face_count(self.n, self.m) {
            Some(f) => prune_faces(self.faces.max(1), self.closing_remaining(), f),
            None => true,
        }
    }

    #[inline]
    pub(crate) fn head_of(&self, d: u16) -> usize {
        self.tail[(d ^ 1) as usize] as usize
    }

    /// Darts at `v` in rotation order, starting at its first inserted dart.
    pub(crate) fn darts_around(&self, v: usize, out: &mut Vec<u16>) {
        out.clear();
        let start = self.first[v];
        if start == NO_DART {
            out.push(NO_DART);
            return;
        }
        let mut d = start;
        loop {
            out.push(d);
            d = self.next[d as usize];
            if d == start {
                break;
            }
        }
    }

    /// Slots offered for the tail of the next edge (mirror fixing included).
    pub(crate) fn tail_slots(&self, out: &mut Vec<u16>) {
        if self.mirror_fix && self.inserted == 2 {
            // root already holds darts 0 and 2; only one of the two cyclic
            // orders of its first three edges is generated
            out.clear();
            out.push(2);
            return;
        }
        let (u, _) = self.plan.edges()[self.inserted];
        self.darts_around(u, out);
    }

    pub(crate) fn head_slots(&self, out: &mut Vec<u16>) {
        let (_, v) = self.plan.edges()[self.inserted];
        self.darts_around(v, out);
    }

    /// All slot pairs for the next plan edge.
    pub fn insertion_slots(&self) -> Result<Vec<SlotPair>> {
        if self.inserted == self.m {
            return Err(Error::Contract(
                "every plan edge is already inserted".into(),
            ));
        }
        let mut tails = Vec::new();
        let mut heads = Vec::new();
        self.tail_slots(&mut tails);
        self.head_slots(&mut heads);
        let mut out = Vec::with_capacity(tails.len() * heads.len());
        for &a in &tails {
            for &b in &heads {
                out.push(SlotPair {
                    after_tail: a,
                    after_head: b,
                });
            }
        }
        Ok(out)
    }

    /// Marks the face through the corner after dart `x` (at its tail) and
    /// returns the stamp to test other corners against.
    pub(crate) fn stamp_corner_face(&mut self, x: u16) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let start = x ^ 1;
        let mut e = start;
        loop {
            self.stamp[e as usize] = self.epoch;
            e = self.next[(e ^ 1) as usize];
            if e == start {
                break;
            }
        }
        self.epoch
    }

    /// Whether the corner after dart `z` lies on the face stamped with `epoch`.
    #[inline]
    pub(crate) fn corner_stamped(&self, z: u16, epoch: u32) -> bool {
        self.stamp[(z ^ 1) as usize] == epoch
    }

    /// Face count after inserting the next edge at `slot`.
    pub fn faces_after(&mut self, slot: SlotPair) -> usize {
        if self.inserted == 0 {
            return 1;
        }
        if slot.after_tail == NO_DART || slot.after_head == NO_DART {
            return self.faces;
        }
        let epoch = self.stamp_corner_face(slot.after_tail);
        if self.corner_stamped(slot.after_head, epoch) {
            self.faces + 1
        } else {
            self.faces - 1
        }
    }

    /// Inserts the next plan edge, validating the slot.
    pub fn insert(&mut self, slot: SlotPair) -> Result<()> {
        let slots = self.insertion_slots()?;
        if !slots.contains(&slot) {
            return Err(Error::Contract(format!(
                "slot {slot:?} is not offered for plan edge {}",
                self.inserted
            )));
        }
        let faces = self.faces_after(slot);
        self.insert_raw(slot, faces);
        Ok(())
    }

    /// Inserts the next plan edge with a precomputed face count.
    #[inline]
    pub(crate) fn insert_raw(&mut self, slot: SlotPair, faces: usize) {
        let k = self.inserted;
        let a = (2 * k) as u16;
        let b = a ^ 1;
        self.history.push(Undo {
            faces: self.faces as u32,
            support: self.support as u32,
            complete_prefix: self.complete_prefix as u32,
        });
        let u = self.tail[a as usize] as usize;
        let v = self.tail[b as usize] as usize;
        self.link(u, a, slot.after_tail);
        self.link(v, b, slot.after_head);
        self.faces = faces;
        self.inserted = k + 1;
        while self.complete_prefix < self.n
            && self.pdeg[self.complete_prefix] == self.deg[self.complete_prefix]
        {
            self.complete_prefix += 1;
        }
    }

    #[inline]
    fn link(&mut self, v: usize, d: u16, after: u16) {
        if after == NO_DART {
            self.next[d as usize] = d;
            self.prev[d as usize] = d;
            self.first[v] = d;
            self.support += 1;
        } else {
            let nx = self.next[after as usize];
            self.next[after as usize] = d;
            self.prev[d as usize] = after;
            self.next[d as usize] = nx;
            self.prev[nx as usize] = d;
        }
        self.pdeg[v] += 1;
    }

    #[inline]
    fn unlink(&mut self, v: usize, d: u16) {
        self.pdeg[v] -= 1;
        if self.pdeg[v] == 0 {
            self.first[v] = NO_DART;
        } else {
            let p = self.prev[d as usize];
            let nx = self.next[d as usize];
            self.next[p as usize] = nx;
            self.prev[nx as usize] = p;
            if self.first[v] == d {
                self.first[v] = nx;
            }
        }
    }

    /// Removes the most recently inserted edge.
    pub fn remove(&mut self) -> Result<()> {
        if self.inserted == 0 {
            return Err(Error::Contract("nothing to remove".into()));
        }
        self.remove_raw();
        Ok(())
    }

    #[inline]
    pub(crate) fn remove_raw(&mut self) {
        let k = self.inserted - 1;
        let a = (2 * k) as u16;
        let b = a ^ 1;
        let u = self.tail[a as usize] as usize;
        let v = self.tail[b as usize] as usize;
        self.unlink(v, b);
        self.unlink(u, a);
        let undo = self.history.pop().expect("history matches insertions");
        self.faces = undo.faces as usize;
        self.support = undo.support as usize;
        self.complete_prefix = undo.complete_prefix as usize;
        self.inserted = k;
    }

    /// Copies the current rotation system out as a [`Map`] over `graph`.
    ///
    /// Only meaningful once every plan edge is inserted.
    pub fn to_map(&self, graph: Arc<Graph>) -> Result<Map> {
        if !self.is_complete_map() {
            return Err(Error::Contract("partial map is not complete".into()));
        }
        let mut rotations = Vec::with_capacity(self.n);
        let mut darts = Vec::new();
        for v in 0..self.n {
            if self.first[v] == NO_DART {
                rotations.push(Vec::new());
                continue;
            }
            self.darts_around(v, &mut darts);
            rotations.push(darts.iter().map(|&d| self.head_of(d)).collect());
        }
        Map::from_rotations(graph, &rotations)
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }
}

impl RotationView for PartialMap<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    #[inline]
    fn turn(&self, v: usize, w: usize, forward: bool) -> usize {
        let d = self.dart_of[v * self.n + w];
        let e = if forward {
            self.next[d as usize]
        } else {
            self.prev[d as usize]
        };
        self.tail[(e ^ 1) as usize] as usize
    }
}

impl PartialRotationView for PartialMap<'_> {
    #[inline]
    fn is_complete(&self, v: usize) -> bool {
        self.pdeg[v] == self.deg[v]
    }
}

/// Face-window bound: each remaining closing edge changes the face count by
/// exactly one, so `target_faces` is reachable from `faces` with `closing`
/// such edges iff the gap is at most `closing` and has its parity.
#[inline]
pub fn prune_faces(faces: usize, closing: usize, target_faces: usize) -> bool {
    let gap = faces.abs_diff(target_faces);
    gap > closing || (closing - gap) % 2 == 1
}

/// The same bound in genus terms: a closing edge raises the genus by 0 or 1.
#[inline]
pub fn prune_genus(partial_genus: usize, closing: usize, target_genus: usize) -> bool {
    partial_genus > target_genus || partial_genus + closing < target_genus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::plan::{build_plan, Strategy};

    #[test]
    fn slot_counts() {
        let g = Graph::complete(4);
        let plan = build_plan(&g, Strategy::LabelOrder).unwrap();
        let mut pm = PartialMap::new(&g, &plan);
        let s = pm.insertion_slots().unwrap();
        assert_eq!(s.len(), 1);
        pm.insert(s[0]).unwrap();
        let s = pm.insertion_slots().unwrap();
        assert_eq!(s.len(), 1);
        pm.insert(s[0]).unwrap();
        // root's third edge: one cyclic order only
        let s = pm.insertion_slots().unwrap();
        assert_eq!(s.len(), 1);
        pm.insert(s[0]).unwrap();
        assert_eq!(pm.partial_genus(), 0);
        assert_eq!(pm.face_count(), 1);
        // edge 2-3: both endpoints have degree 1
        assert_eq!(pm.insertion_slots().unwrap().len(), 1);
    }

    #[test]
    fn three_by_two_slots() {
        // vertex 1 (0-based 0) with degree 3 and a neighbor with degree 2
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (0, 4)])
            .unwrap();
        let plan = build_plan(&g, Strategy::LabelOrder).unwrap();
        assert_eq!(plan.edges()[3], (0, 4));
        let mut pm = PartialMap::new(&g, &plan);
        for _ in 0..3 {
            let s = pm.insertion_slots().unwrap()[0];
            pm.insert(s).unwrap();
        }
        // (0,4): root has degree 3, vertex 4 is new
        assert_eq!(pm.insertion_slots().unwrap().len(), 3);
        let s = pm.insertion_slots().unwrap()[0];
        pm.insert(s).unwrap();
        // (1,4): degrees 1 and 1
        let s = pm.insertion_slots().unwrap()[0];
        pm.insert(s).unwrap();
        // (2,4): 1 and 2 slots
        assert_eq!(pm.insertion_slots().unwrap().len(), 2);
        let s = pm.insertion_slots().unwrap()[1];
        pm.insert(s).unwrap();
        // (3,4): 1 and 3
        assert_eq!(pm.insertion_slots().unwrap().len(), 3);
    }

    #[test]
    fn insert_remove_restores_state() {
        let g = Graph::complete(5);
        let plan = build_plan(&g, Strategy::BranchingMinimizing).unwrap();
        let mut pm = PartialMap::new(&g, &plan);
        let mut faces = Vec::new();
        while !pm.is_complete_map() {
            let slots = pm.insertion_slots().unwrap();
            faces.push(pm.face_count());
            pm.insert(*slots.last().unwrap()).unwrap();
        }
        let map = pm.to_map(Arc::new(g.clone())).unwrap();
        assert_eq!(map.face_count(), pm.face_count());
        while pm.inserted() > 0 {
            pm.remove().unwrap();
            assert_eq!(pm.face_count(), faces[pm.inserted()]);
        }
        assert!(pm.remove().is_err());
    }

    #[test]
    fn bogus_slot_is_rejected() {
        let g = Graph::complete(4);
        let plan = build_plan(&g, Strategy::LabelOrder).unwrap();
        let mut pm = PartialMap::new(&g, &plan);
        let bad = SlotPair {
            after_tail: 5,
            after_head: 5,
        };
        assert!(matches!(pm.insert(bad), Err(Error::Contract(_))));
    }

    #[test]
    fn prune_examples() {
        assert!(prune_genus(2, 5, 1));
        assert!(prune_genus(0, 1, 2));
        assert!(prune_faces(3, 1, 1));
        assert!(!prune_faces(3, 2, 1));
        assert!(prune_faces(2, 2, 1));
    }

    #[test]
    fn face_and_genus_windows_agree() {
        // with n, m fixed: faces f <-> genus g via f = m - n + 2 - 2g
        let (n, m) = (6i64, 15i64);
        for support in 1..=n {
            for inserted in (support - 1)..=m {
                for faces in 1..=inserted.max(1) {
                    let chi = support - inserted + faces;
                    if chi % 2 != 0 || chi > 2 {
                        continue;
                    }
                    let pg = (1 - chi / 2) as usize;
                    let closing = (m - inserted) - (n - support);
                    if closing < 0 {
                        continue;
                    }
                    for tg in 0..=5usize {
                        let tf = m - n + 2 - 2 * tg as i64;
                        if tf < 1 {
                            continue;
                        }
                        assert_eq!(
                            prune_faces(faces as usize, closing as usize, tf as usize),
                            prune_genus(pg, closing as usize, tg),
                        );
                    }
                }
            }
        }
    }
}
