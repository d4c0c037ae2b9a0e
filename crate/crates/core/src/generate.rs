//! Generation of all connected graphs of a small order under degree and
//! bipartiteness constraints, one per isomorphism class.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order [`graph_key`] handles.
pub const MAX_KEY_ORDER: usize = 16;

/// Constraints on the generated class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassFilter {
    pub n: usize,
    pub regular: Option<usize>,
    /// Required degree multiset (any order).
    pub degree_sequence: Option<Vec<usize>>,
    pub bipartite: bool,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
}

impl ClassFilter {
    pub fn order(n: usize) -> ClassFilter {
        ClassFilter {
            n,
            ..ClassFilter::default()
        }
    }

    pub fn regular(n: usize, r: usize) -> ClassFilter {
        ClassFilter {
            n,
            regular: Some(r),
            ..ClassFilter::default()
        }
    }

    pub fn bipartite(mut self) -> ClassFilter {
        self.bipartite = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(seq) = &self.degree_sequence {
            if seq.len() != self.n {
                return Err(Error::Domain(format!(
                    "degree sequence has {} entries for order {}",
                    seq.len(),
                    self.n
                )));
            }
            if seq.iter().sum::<usize>() % 2 == 1 {
                return Err(Error::Domain("degree sequence has an odd sum".into()));
            }
        }
        if let Some(r) = self.regular {
            if r * self.n % 2 == 1 {
                return Err(Error::Domain(format!(
                    "no {r}-regular graph has {} vertices",
                    self.n
                )));
            }
        }
        if let (Some(lo), Some(hi)) = (self.min_degree, self.max_degree) {
            if lo > hi {
                return Err(Error::Domain(
                    "minimum degree exceeds maximum degree".into(),
                ));
            }
        }
        Ok(())
    }

    /// Upper bound on every degree implied by the constraints.
    fn degree_cap(&self) -> usize {
        let mut cap = self.n.saturating_sub(1);
        if let Some(r) = self.regular {
            cap = cap.min(r);
        }
        if let Some(seq) = &self.degree_sequence {
            cap = cap.min(seq.iter().copied().max().unwrap_or(0));
        }
        if let Some(hi) = self.max_degree {
            cap = cap.min(hi);
        }
        if self.bipartite {
            cap = cap.min(self.n / 2);
        }
        cap
    }

    /// Lower bound on every degree of the final graph.
    fn degree_floor(&self) -> usize {
        let mut floor = usize::from(self.n > 1);
        if let Some(r) = self.regular {
            floor = floor.max(r);
        }
        if let Some(seq) = &self.degree_sequence {
            floor = floor.max(seq.iter().copied().min().unwrap_or(0));
        }
        if let Some(lo) = self.min_degree {
            floor = floor.max(lo);
        }
        floor
    }
}

/// Orders accepted by [`generate_connected_class`], by degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationLimits {
    /// Any constraints.
    pub general: usize,
    /// Degrees at most 4.
    pub degree_four: usize,
    /// Degrees at most 5.
    pub degree_five: usize,
}

impl Default for GenerationLimits {
    fn default() -> Self {
        GenerationLimits {
            general: 10,
            degree_four: 14,
            degree_five: 12,
        }
    }
}

impl GenerationLimits {
    fn bound(&self, filter: &ClassFilter) -> usize {
        let cap = filter.degree_cap();
        let bound = if cap <= 4 {
            self.degree_four
        } else if cap == 5 {
            self.degree_five
        } else {
            self.general
        };
        bound.max(self.general).min(MAX_KEY_ORDER)
    }
}

/// Isomorphism-invariant key: the smallest upper-triangle adjacency bit
/// string over the leaves of a refinement search.
///
/// Bits are taken column by column (`(0,1), (0,2), (1,2), (0,3), ...`) with
/// the first bit most significant, so a prefix of the string depends only on
/// the first vertices of an ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphKey(pub u128);

fn masks(g: &Graph) -> Vec<u16> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect()
}

fn key_bits(adj: &[u16], order: &[u8], upto: usize) -> u128 {
    let mut bits = 0u128;
    for j in 1..upto {
        let row = adj[order[j] as usize];
        for &i in &order[..j] {
            bits = bits << 1 | u128::from(row >> i & 1);
        }
    }
    bits
}

/// Splits cells until every cell has a uniform neighbor count into every cell.
fn refine(adj: &[u16], cells: &mut Vec<Vec<u8>>) {
    let mut i = 0;
    while i < cells.len() {
        let mask = cells[i].iter().fold(0u16, |m, &v| m | 1 << v);
        let mut split = false;
        let mut next = Vec::with_capacity(cells.len() + 1);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u32, u8)> = cell
                .iter()
                .map(|&v| ((adj[v as usize] & mask).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|&(_, v)| v).collect());
                    start = k;
                }
            }
            split |= keyed[0].0 != keyed[keyed.len() - 1].0;
        }
        *cells = next;
        i = if split { 0 } else { i + 1 };
    }
}

struct KeySearch<'a> {
    adj: &'a [u16],
    n: usize,
    best: Option<(u128, Vec<u8>)>,
}

impl KeySearch<'_> {
    fn visit(&mut self, mut cells: Vec<Vec<u8>>) {
        refine(self.adj, &mut cells);
        let fixed = cells.iter().take_while(|c| c.len() == 1).count();
        if let Some((best, _)) = &self.best {
            // compare the part of the string fixed by the leading singletons
            let order: Vec<u8> = cells[..fixed].iter().map(|c| c[0]).collect();
            let prefix = key_bits(self.adj, &order, fixed);
            let shift = (self.n * (self.n - 1) - fixed * fixed.saturating_sub(1)) / 2;
            let best_prefix = if shift >= 128 { 0 } else { best >> shift };
            if prefix > best_prefix {
                return;
            }
        }
        if fixed == cells.len() {
            let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
            let bits = key_bits(self.adj, &order, self.n);
            if self.best.as_ref().is_none_or(|(b, _)| bits < *b) {
                self.best = Some((bits, order));
            }
            return;
        }
        // individualize each vertex of the first smallest non-singleton cell
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .expect("non-singleton cell");
        for &v in &cells[target].clone() {
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.visit(child);
        }
    }
}

fn key_and_order(adj: &[u16]) -> (GraphKey, Vec<u8>) {
    let n = adj.len();
    if n == 0 {
        return (GraphKey(0), Vec::new());
    }
    // start from the degree partition, lower degrees first
    let mut by_degree: Vec<(u32, u8)> = (0..n).map(|v| (adj[v].count_ones(), v as u8)).collect();
    by_degree.sort_unstable();
    let mut cells: Vec<Vec<u8>> = Vec::new();
    for (i, &(d, v)) in by_degree.iter().enumerate() {
        if i == 0 || by_degree[i - 1].0 != d {
            cells.push(Vec::new());
        }
        cells.last_mut().expect("cell").push(v);
    }
    let mut search = KeySearch { adj, n, best: None };
    search.visit(cells);
    let (bits, order) = search.best.expect("at least one leaf");
    (GraphKey(bits), order)
}

/// The key of `g`; equal keys mean isomorphic graphs.
pub fn graph_key(g: &Graph) -> Result<GraphKey> {
    if g.order() > MAX_KEY_ORDER {
        return Err(Error::resource(
            "graph order for isomorphism keys",
            MAX_KEY_ORDER as u64,
        ));
    }
    Ok(key_and_order(&masks(g)).0)
}

/// `g` relabeled along the ordering that realizes its key.
pub fn canonical_form(g: &Graph) -> Result<(GraphKey, Graph)> {
    if g.order() > MAX_KEY_ORDER {
        return Err(Error::resource(
            "graph order for isomorphism keys",
            MAX_KEY_ORDER as u64,
        ));
    }
    let (key, order) = key_and_order(&masks(g));
    let mut new_label = vec![0; g.order()];
    for (pos, &v) in order.iter().enumerate() {
        new_label[v as usize] = pos;
    }
    Ok((key, g.relabeled(&new_label)))
}

/// Whether `g` is connected and satisfies every constraint of `filter`.
pub fn check_filter(g: &Graph, filter: &ClassFilter) -> bool {
    if g.order() != filter.n || !g.is_connected() {
        return false;
    }
    let degrees = g.degrees();
    if let Some(r) = filter.regular {
        if degrees.iter().any(|&d| d != r) {
            return false;
        }
    }
    if let Some(seq) = &filter.degree_sequence {
        let mut want = seq.clone();
        let mut have = degrees.clone();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return false;
        }
    }
    if filter.min_degree.is_some_and(|lo| g.min_degree() < lo) {
        return false;
    }
    if filter.max_degree.is_some_and(|hi| g.max_degree() > hi) {
        return false;
    }
    !filter.bipartite || g.bipartition().is_some()
}

fn graph_from_masks(adj: &[u16]) -> Graph {
    let n = adj.len();
    let mut edges = Vec::new();
    for (u, &row) in adj.iter().enumerate() {
        for v in u + 1..n {
            if row >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("masks describe a simple graph")
}

/// Whether a connected graph on `adj.len()` vertices can still grow into a
/// member of the class with `remaining` more vertices.
fn extendable(
    adj: &[u16],
    remaining: usize,
    filter: &ClassFilter,
    cap: usize,
    floor: usize,
) -> bool {
    let mut total_deficit = 0;
    for &row in adj {
        let d = row.count_ones() as usize;
        let deficit = floor.saturating_sub(d);
        if deficit > remaining {
            return false;
        }
        total_deficit += deficit;
    }
    if total_deficit > remaining * cap {
        return false;
    }
    if let Some(r) = filter.regular {
        // the new vertices take the deficit on edges to old vertices and
        // pair up their remaining degree among themselves
        let inner = (r * remaining).checked_sub(total_deficit);
        match inner {
            Some(inner) if inner % 2 == 0 && inner <= remaining * remaining.saturating_sub(1) => {}
            _ => return false,
        }
    }
    if let Some(seq) = &filter.degree_sequence {
        let mut have: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
        let mut want = seq.clone();
        have.sort_unstable_by(|a, b| b.cmp(a));
        want.sort_unstable_by(|a, b| b.cmp(a));
        // the k-th largest present degree needs a target at least as large
        if have.iter().zip(&want).any(|(&d, &w)| w < d) {
            return false;
        }
    }
    true
}

/// Every connected graph of the class, one per isomorphism class, in
/// ascending key order and relabeled to their key ordering.
pub fn generate_connected_class(filter: &ClassFilter) -> Result<Vec<Graph>> {
    generate_with_limits(filter, &GenerationLimits::default())
}

pub fn generate_with_limits(filter: &ClassFilter, limits: &GenerationLimits) -> Result<Vec<Graph>> {
    filter.validate()?;
    let n = filter.n;
    let bound = limits.bound(filter);
    if n > bound {
        return Err(Error::Resource {
            what: format!(
                "built-in generation of order {n} (supply the graphs as graph6 instead); order"
            ),
            cap: bound as u64,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let cap = filter.degree_cap();
    let floor = filter.degree_floor();
    // connected graphs on k vertices; every connected graph loses a
    // non-cut vertex and stays connected, so connected prefixes suffice
    let mut level: Vec<Vec<u16>> = vec![vec![0]];
    for k in 1..n {
        let remaining = n - k - 1;
        let mut next: HashMap<GraphKey, Vec<u16>> = HashMap::new();
        for adj in &level {
            let sides = if filter.bipartite {
                graph_from_masks(adj).bipartition()
            } else {
                None
            };
            let eligible: Vec<usize> = (0..k)
                .filter(|&v| (adj[v].count_ones() as usize) < cap)
                .collect();
            let mut chosen = Vec::with_capacity(cap);
            let mut visit = |set: &[usize]| {
                if let Some(side) = &sides {
                    if set.iter().any(|&v| side[v] != side[set[0]]) {
                        return;
                    }
                }
                let mut grown = adj.clone();
                let mut row = 0u16;
                for &v in set {
                    grown[v] |= 1 << k;
                    row |= 1 << v;
                }
                grown.push(row);
                if !extendable(&grown, remaining, filter, cap, floor) {
                    return;
                }
                let (key, order) = key_and_order(&grown);
                next.entry(key)
                    .or_insert_with(|| relabel_masks(&grown, &order));
            };
            subsets(&eligible, cap.max(1), 0, &mut chosen, &mut visit);
        }
        level = next.into_values().collect();
    }
    let mut out: Vec<(GraphKey, Graph)> = level
        .into_iter()
        .map(|adj| {
            let g = graph_from_masks(&adj);
            let (key, _) = key_and_order(&adj);
            (key, g)
        })
        .filter(|(_, g)| check_filter(g, filter))
        .collect();
    out.sort_by_key(|(key, _)| *key);
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

fn relabel_masks(adj: &[u16], order: &[u8]) -> Vec<u16> {
    let n = adj.len();
    let mut pos = vec![0u8; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v as usize] = p as u8;
    }
    let mut out = vec![0u16; n];
    for v in 0..n {
        for w in 0..n {
            if adj[v] >> w & 1 == 1 {
                out[pos[v] as usize] |= 1 << pos[w];
            }
        }
    }
    out
}

/// Calls `visit` on every nonempty subset of `items` with at most `max` elements.
fn subsets(
    items: &[usize],
    max: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    for i in from..items.len() {
        chosen.push(items[i]);
        visit(chosen);
        if chosen.len() < max {
            subsets(items, max, i + 1, chosen, visit);
        }
        chosen.pop();
    }
}
