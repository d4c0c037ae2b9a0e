use std::cmp::Ordering;
use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::automorphism::AutomorphismGroup;
use crate::canonical::{Canonizer, Direction, MapCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::partial::{prune_faces, PartialMap, SlotPair, NO_DART};
use super::plan::InsertionPlan;
use super::EnumerationStats;

/// Mode-specific isomorphism rejection, called around every insertion.
pub(crate) trait Rejector {
    /// Called right after an insertion; `false` cuts the subtree.
    fn on_insert(&mut self, pm: &PartialMap) -> bool;
    /// Undoes `on_insert`; called once per `on_insert`, before the removal.
    fn on_remove(&mut self);
    /// Decides whether a completed map meeting the target is emitted.
    fn accept(&mut self, pm: &PartialMap) -> Result<bool>;
}

/// Canonicity test of each completed map.
pub(crate) struct FinalCheck<'a> {
    pub canonizer: Canonizer,
    pub group: &'a AutomorphismGroup,
}

impl Rejector for FinalCheck<'_> {
    fn on_insert(&mut self, _: &PartialMap) -> bool {
        true
    }

    fn on_remove(&mut self) {}

    fn accept(&mut self, pm: &PartialMap) -> Result<bool> {
        Ok(self.group.order() == 1 || self.canonizer.is_canonical(pm, self.group))
    }
}

/// Per-graph set of the classes already emitted, keyed by map code.
pub(crate) struct ListCheck<'a> {
    pub code: MapCode,
    pub group: &'a AutomorphismGroup,
    pub seen: HashSet<Box<[u8]>>,
    pub cap: usize,
    pub buffer: Vec<u8>,
}

impl Rejector for ListCheck<'_> {
    fn on_insert(&mut self, _: &PartialMap) -> bool {
        true
    }

    fn on_remove(&mut self) {}

    fn accept(&mut self, pm: &PartialMap) -> Result<bool> {
        if self.group.order() == 1 {
            return Ok(true);
        }
        self.code.code_into(pm, &mut self.buffer);
        if self.seen.contains(self.buffer.as_slice()) {
            return Ok(false);
        }
        if self.seen.len() >= self.cap {
            return Err(Error::resource("emitted-class list size", self.cap as u64));
        }
        self.seen.insert(self.buffer.as_slice().into());
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug)]
struct Live {
    element: u32,
    blocks: u16,
    /// 0 unknown, 1 forward, 2 reverse
    direction: u8,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    start: u32,
    end: u32,
    arena_len: u32,
}

/// Prefix comparisons against every automorphism still undecided.
///
/// Live automorphisms are kept per search depth in one arena; a depth that
/// completes no vertex shares its parent's range.
pub(crate) struct IncrementalCheck<'a> {
    canonizer: Canonizer,
    group: &'a AutomorphismGroup,
    arena: Vec<Live>,
    frames: Vec<Frame>,
    n: usize,
}

impl<'a> IncrementalCheck<'a> {
    pub fn new(g: &Graph, group: &'a AutomorphismGroup) -> IncrementalCheck<'a> {
        let arena: Vec<Live> = (1..group.order())
            .map(|i| Live {
                element: i as u32,
                blocks: 0,
                direction: 0,
            })
            .collect();
        let root = Frame {
            start: 0,
            end: arena.len() as u32,
            arena_len: arena.len() as u32,
        };
        IncrementalCheck {
            canonizer: Canonizer::new(g),
            group,
            arena,
            frames: vec![root],
            n: g.order(),
        }
    }

    /// Advances one automorphism; `Some(Less)` refutes, `Some(Greater)` dominates.
    fn advance(&self, pm: &PartialMap, own: Direction, entry: &mut Live) -> Option<Ordering> {
        let fwd = self.group.forward(entry.element as usize);
        let inv = self.group.inverse(entry.element as usize);
        if entry.direction == 0 {
            if !pm.is_vertex_complete(inv[0] as usize) {
                return None;
            }
            entry.direction = match self.canonizer.image_direction(pm, fwd, inv) {
                Direction::Forward => 1,
                Direction::Reverse => 2,
            };
        }
        let dir = if entry.direction == 1 {
            Direction::Forward
        } else {
            Direction::Reverse
        };
        let mut k = entry.blocks as usize;
        while k < self.n && pm.is_vertex_complete(k) && pm.is_vertex_complete(inv[k] as usize) {
            match self
                .canonizer
                .compare_blocks_direct(pm, fwd, inv, k, dir, own)
            {
                Ordering::Equal => k += 1,
                other => return Some(other),
            }
        }
        entry.blocks = k as u16;
        None
    }
}

impl Rejector for IncrementalCheck<'_> {
    fn on_insert(&mut self, pm: &PartialMap) -> bool {
        let top = *self.frames.last().expect("root frame");
        let arena_len = self.arena.len() as u32;
        if top.start == top.end || !pm.last_insert_completed_vertex() || !pm.is_vertex_complete(0) {
            self.frames.push(Frame { arena_len, ..top });
            return true;
        }
        let own = self.canonizer.own_direction_partial(pm);
        let start = self.arena.len();
        let mut refuted = false;
        for i in top.start as usize..top.end as usize {
            let mut entry = self.arena[i];
            match self.advance(pm, own, &mut entry) {
                None => self.arena.push(entry),
                Some(Ordering::Greater) => {}
                Some(_) => {
                    refuted = true;
                    break;
                }
            }
        }
        self.frames.push(Frame {
            start: start as u32,
            end: self.arena.len() as u32,
            arena_len,
        });
        !refuted
    }

    fn on_remove(&mut self) {
        let frame = self.frames.pop().expect("frame per insertion");
        self.arena.truncate(frame.arena_len as usize);
    }

    fn accept(&mut self, _: &PartialMap) -> Result<bool> {
        // every vertex is complete at a leaf, so the last on_insert already
        // compared all surviving automorphisms in full
        Ok(true)
    }
}

/// Depth-first search over the plan, shared by all modes.
pub(crate) struct Search<'s, 'g, R: Rejector> {
    pub pm: PartialMap<'g>,
    pub target_faces: usize,
    pub rejector: R,
    pub stats: &'s mut EnumerationStats,
    pub error: Option<Error>,
}

impl<'g, R: Rejector> Search<'_, 'g, R> {
    pub fn run(&mut self, sink: &mut dyn FnMut(&PartialMap<'g>) -> ControlFlow<()>) {
        let _ = self.descend(sink);
    }

    fn descend(
        &mut self,
        sink: &mut dyn FnMut(&PartialMap<'g>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let pm = &mut self.pm;
        if pm.is_complete_map() {
            debug_assert_eq!(pm.face_count(), self.target_faces);
            return match self.rejector.accept(pm) {
                Ok(true) => {
                    self.stats.maps_emitted += 1;
                    sink(pm)
                }
                Ok(false) => ControlFlow::Continue(()),
                Err(e) => {
                    self.error = Some(e);
                    ControlFlow::Break(())
                }
            };
        }
        let mut tails = Vec::new();
        let mut heads = Vec::new();
        pm.tail_slots(&mut tails);
        pm.head_slots(&mut heads);
        let first = pm.inserted() == 0;
        // closing edges left after this insertion
        let closing = if tails[0] != NO_DART && heads[0] != NO_DART {
            pm.closing_remaining() - 1
        } else {
            pm.closing_remaining()
        };
        let mut same_face = vec![false; heads.len()];
        for &x in &tails {
            let closing_edge = x != NO_DART && heads[0] != NO_DART;
            if closing_edge {
                let epoch = self.pm.stamp_corner_face(x);
                for (flag, &z) in same_face.iter_mut().zip(&heads) {
                    *flag = self.pm.corner_stamped(z, epoch);
                }
            }
            for (j, &z) in heads.iter().enumerate() {
                let pm = &mut self.pm;
                let faces = if first {
                    1
                } else if !closing_edge {
                    pm.face_count()
                } else if same_face[j] {
                    pm.face_count() + 1
                } else {
                    pm.face_count() - 1
                };
                if prune_faces(faces, closing, self.target_faces) {
                    continue;
                }
                let before = pm.partial_genus();
                pm.insert_raw(
                    SlotPair {
                        after_tail: x,
                        after_head: z,
                    },
                    faces,
                );
                debug_assert!(pm.partial_genus() >= before && pm.partial_genus() <= before + 1);
                self.stats.nodes_visited += 1;
                let flow = if self.rejector.on_insert(&self.pm) {
                    self.descend(sink)
                } else {
                    ControlFlow::Continue(())
                };
                self.rejector.on_remove();
                self.pm.remove_raw();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Runs the search for one graph and mode, reporting completed maps to `sink`.
pub(crate) fn search_with<'g, R: Rejector>(
    g: &'g Graph,
    plan: &'g InsertionPlan,
    target_faces: usize,
    rejector: R,
    stats: &mut EnumerationStats,
    sink: &mut dyn FnMut(&PartialMap<'g>) -> ControlFlow<()>,
) -> Result<()> {
    let mut search = Search {
        pm: PartialMap::new(g, plan),
        target_faces,
        rejector,
        stats,
        error: None,
    };
    search.run(sink);
    match search.error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
