//! Isomorph-free enumeration of the maps of one graph with a prescribed
//! genus or face count.

mod oracle;
mod partial;
mod plan;
mod search;

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::automorphism::{
    compute_automorphism_group_capped, relabel_for_generation, transport_map, AutomorphismGroup,
    Permutation, DEFAULT_GROUP_CAP,
};
use crate::canonical::{Canonizer, MapCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{Map, RotationView};

pub use oracle::{exhaustive_classes, exhaustive_oracle, MapClass, DEFAULT_ORACLE_CAP};
pub use partial::{prune_faces, prune_genus, PartialMap, SlotPair, NO_DART};
pub use plan::{build_plan, InsertionPlan, Strategy};

use search::{search_with, FinalCheck, IncrementalCheck, ListCheck};

/// The genus or the face count a generated map must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchTarget {
    Genus(usize),
    Faces(usize),
}

impl SearchTarget {
    /// The face count a map on `n` vertices and `m` edges needs to meet the
    /// target, or `None` when no connected map can.
    pub fn face_count(self, n: usize, m: usize) -> Option<usize> {
        // F = m - n + 2 - 2g, and 1 <= F <= m - n + 2
        let top = (m + 2).checked_sub(n)?;
        match self {
            SearchTarget::Faces(f) => (f >= 1 && f <= top && (top - f) % 2 == 0).then_some(f),
            SearchTarget::Genus(g) => top.checked_sub(2 * g).filter(|&f| f >= 1),
        }
    }

    /// Whether a complete connected map meets the target.
    pub fn is_met_by(self, map: &Map) -> Result<bool> {
        Ok(match self {
            SearchTarget::Genus(g) => map.genus()? == g,
            SearchTarget::Faces(f) => map.face_count() == f,
        })
    }
}

/// How isomorphic copies are rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Canonicity test of every completed map.
    #[default]
    Final,
    /// Prefix comparisons while the map is built.
    Incremental,
    /// Codes of emitted classes kept in a set.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EnumerationStats {
    pub maps_emitted: u64,
    pub nodes_visited: u64,
    pub embeddable: bool,
}

/// Default bound on the number of strings held by list mode.
pub const DEFAULT_LIST_CAP: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub mode: Mode,
    pub list_cap: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            mode: Mode::Final,
            list_cap: DEFAULT_LIST_CAP,
        }
    }
}

impl From<Mode> for EnumerateOptions {
    fn from(mode: Mode) -> Self {
        EnumerateOptions {
            mode,
            ..EnumerateOptions::default()
        }
    }
}

/// A map handed to the sink of [`enumerate`]: either the live search state
/// or, for graphs without a vertex of degree 3, the unique map.
pub enum Found<'a, 'g> {
    Search(&'a PartialMap<'g>),
    Unique(&'a Map),
}

impl Found<'_, '_> {
    /// An owned copy of the map over `graph` (the graph passed to `enumerate`).
    pub fn to_map(&self, graph: &Arc<Graph>) -> Result<Map> {
        match self {
            Found::Search(pm) => pm.to_map(Arc::clone(graph)),
            Found::Unique(m) => Ok((*m).clone()),
        }
    }
}

impl RotationView for Found<'_, '_> {
    fn graph(&self) -> &Graph {
        match self {
            Found::Search(pm) => pm.graph(),
            Found::Unique(m) => m.graph(),
        }
    }

    #[inline]
    fn turn(&self, v: usize, w: usize, forward: bool) -> usize {
        match self {
            Found::Search(pm) => pm.turn(v, w, forward),
            Found::Unique(m) => m.turn(v, w, forward),
        }
    }
}

/// The unique map of a connected graph with maximum degree at most 2.
pub fn degenerate_map(g: &Arc<Graph>) -> Result<Map> {
    if g.max_degree() > 2 {
        return Err(Error::Domain(
            "graph has a vertex of degree at least 3".into(),
        ));
    }
    let rotations: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect();
    Map::from_rotations(Arc::clone(g), &rotations)
}

fn check_group(g: &Graph, group: &AutomorphismGroup) -> Result<()> {
    if group.degree() != g.order() {
        return Err(Error::Contract(format!(
            "group acts on {} points, graph has {} vertices",
            group.degree(),
            g.order()
        )));
    }
    for i in 0..group.order() {
        let fwd = group.forward(i);
        let ok = g
            .edges()
            .iter()
            .all(|&(u, v)| g.has_edge(fwd[u] as usize, fwd[v] as usize));
        if !ok {
            return Err(Error::Contract(format!(
                "group element {i} is not an automorphism of the graph"
            )));
        }
    }
    Ok(())
}

/// Enumerates one representative per isomorphism class of maps of `g`
/// (mirror images identified) meeting `target`.
///
/// `g` must be connected, and when some vertex has degree at least 3,
/// vertex 0 must be one (see [`relabel_for_generation`]). `group` must be the full automorphism
/// group of `g`. Maps reach `sink` in depth-first discovery order; returning
/// `Break` stops the search early.
pub fn enumerate(
    g: &Arc<Graph>,
    group: &AutomorphismGroup,
    target: SearchTarget,
    options: EnumerateOptions,
    sink: &mut dyn FnMut(&Found) -> ControlFlow<()>,
) -> Result<EnumerationStats> {
    check_group(g, group)?;
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Domain("graph is empty or not connected".into()));
    }
    let mut stats = EnumerationStats::default();
    let Some(target_faces) = target.face_count(g.order(), g.size()) else {
        return Ok(stats);
    };
    if g.max_degree() <= 2 {
        let map = degenerate_map(g)?;
        // a single vertex bounds one face
        let faces = if g.size() == 0 { 1 } else { map.face_count() };
        if faces == target_faces {
            stats.maps_emitted = 1;
            stats.embeddable = true;
            let _ = sink(&Found::Unique(&map));
        }
        return Ok(stats);
    }
    if g.degree(0) < 3 {
        return Err(Error::Contract(
            "vertex 1 must have degree at least 3 (relabel first)".into(),
        ));
    }
    let strategy = match options.mode {
        Mode::Incremental => Strategy::LabelOrder,
        _ => Strategy::BranchingMinimizing,
    };
    let plan = build_plan(g, strategy)?;
    let graph: &Graph = g;
    let mut forward = |pm: &PartialMap| sink(&Found::Search(pm));
    match options.mode {
        Mode::Final => {
            let rejector = FinalCheck {
                canonizer: Canonizer::new(graph),
                group,
            };
            search_with(
                graph,
                &plan,
                target_faces,
                rejector,
                &mut stats,
                &mut forward,
            )?;
        }
        Mode::Incremental => {
            let rejector = IncrementalCheck::new(graph, group);
            search_with(
                graph,
                &plan,
                target_faces,
                rejector,
                &mut stats,
                &mut forward,
            )?;
        }
        Mode::List => {
            let rejector = ListCheck {
                code: MapCode::new(graph),
                group,
                seen: Default::default(),
                cap: options.list_cap,
                buffer: Vec::with_capacity(graph.dart_count()),
            };
            search_with(
                graph,
                &plan,
                target_faces,
                rejector,
                &mut stats,
                &mut forward,
            )?;
        }
    }
    stats.embeddable = stats.maps_emitted > 0;
    Ok(stats)
}

/// The result of [`enumerate_maps`]: maps over the caller's graph.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub maps: Vec<Map>,
    pub stats: EnumerationStats,
    pub group_order: usize,
}

/// Relabels, computes the group and enumerates, returning the maps over the
/// original vertex labels.
pub fn enumerate_maps(
    g: &Graph,
    target: SearchTarget,
    options: EnumerateOptions,
) -> Result<Enumeration> {
    let (relabeled, old_to_new) = relabel_for_generation(g);
    let relabeled = Arc::new(relabeled);
    let group = compute_automorphism_group_capped(&relabeled, DEFAULT_GROUP_CAP)?;
    let original = Arc::new(g.clone());
    let new_to_old: Permutation = old_to_new.inverse();
    let mut maps = Vec::new();
    let mut failure = None;
    let stats = enumerate(
        &relabeled,
        &group,
        target,
        options,
        &mut |found| match found
            .to_map(&relabeled)
            .and_then(|m| transport_map(&m, &new_to_old, &original))
        {
            Ok(m) => {
                maps.push(m);
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Enumeration {
        maps,
        stats,
        group_order: group.order(),
    })
}
