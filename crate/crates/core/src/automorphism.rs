//! Graph automorphism groups, generation-friendly relabeling and the action of
//! automorphisms on maps.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Dart, Graph};
use crate::map::Map;

/// Default cap on the number of stored group elements.
pub const DEFAULT_GROUP_CAP: u64 = 10_000_000;

/// A bijection on `0..n`; `images[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Domain("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[7, 8]]` on `n = 8`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || x > n || y == 0 || y > n {
                    return Err(Error::Domain(format!("label outside 1..{n} in cycle")));
                }
                images[x - 1] = y - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        Permutation {
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Whether the permutation maps edges of `g` onto edges.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.images.len() == g.order()
            && g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(self.images[u], self.images[v]))
    }
}

impl fmt::Debug for Permutation {
    /// Cycle notation with 1-based labels; fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for s in 0..n {
            if seen[s] || self.images[s] == s {
                continue;
            }
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Every automorphism of a graph, stored as flat image tables.
///
/// Element 0 is the identity. Forward and inverse tables are kept side by
/// side because canonicity tests need both.
#[derive(Clone)]
pub struct AutomorphismGroup {
    n: usize,
    forward: Vec<u8>,
    inverse: Vec<u8>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.forward.len().checked_div(self.n).unwrap_or(1)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Image table of element `i`.
    #[inline]
    pub fn forward(&self, i: usize) -> &[u8] {
        &self.forward[i * self.n..(i + 1) * self.n]
    }

    /// Inverse image table of element `i`.
    #[inline]
    pub fn inverse(&self, i: usize) -> &[u8] {
        &self.inverse[i * self.n..(i + 1) * self.n]
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation {
            images: self.forward(i).iter().map(|&x| x as usize).collect(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        (0..self.order()).any(|i| {
            self.forward(i)
                .iter()
                .zip(p.images())
                .all(|(&a, &b)| a as usize == b)
        })
    }

    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> AutomorphismGroup {
        let id: Vec<u8> = (0..n as u8).collect();
        AutomorphismGroup {
            n,
            forward: id.clone(),
            inverse: id,
        }
    }

    fn from_elements(n: usize, mut elements: Vec<Vec<u8>>) -> AutomorphismGroup {
        elements.sort();
        let mut forward = Vec::with_capacity(elements.len() * n);
        let mut inverse = vec![0u8; elements.len() * n];
        for (i, e) in elements.iter().enumerate() {
            forward.extend_from_slice(e);
            for (v, &x) in e.iter().enumerate() {
                inverse[i * n + x as usize] = v as u8;
            }
        }
        AutomorphismGroup {
            n,
            forward,
            inverse,
        }
    }
}

impl fmt::Debug for AutomorphismGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutomorphismGroup")
            .field("degree", &self.n)
            .field("order", &self.order())
            .finish()
    }
}

/// Vertex invariant used for pruning: degree, then sorted neighbor degrees.
fn vertex_invariants(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// All automorphisms of `g`, by backtracking over vertex images.
pub fn compute_automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    compute_automorphism_group_capped(g, DEFAULT_GROUP_CAP)
}

/// As [`compute_automorphism_group`] with an explicit cap on the group order.
pub fn compute_automorphism_group_capped(g: &Graph, cap: u64) -> Result<AutomorphismGroup> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    let inv = vertex_invariants(g);

    // Search order: breadth-first per component, so every vertex after a
    // component root has an already-mapped neighbor.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &v in &order {
        candidates.push((0..n).filter(|&w| inv[w] == inv[v]).collect());
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found: Vec<Vec<u8>> = Vec::new();
    let mut overflow = false;
    extend(
        g,
        &order,
        &candidates,
        0,
        &mut image,
        &mut used,
        &mut found,
        cap,
        &mut overflow,
    );
    if overflow {
        return Err(Error::resource("automorphism group order", cap));
    }
    Ok(AutomorphismGroup::from_elements(n, found))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
    found: &mut Vec<Vec<u8>>,
    cap: u64,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    if depth == order.len() {
        if found.len() as u64 >= cap {
            *overflow = true;
            return;
        }
        found.push(image.iter().map(|&x| x as u8).collect());
        return;
    }
    let v = order[depth];
    'cand: for &w in &candidates[depth] {
        if used[w] {
            continue;
        }
        for &u in &order[..depth] {
            if g.has_edge(u, v) != g.has_edge(image[u], w) {
                continue 'cand;
            }
        }
        image[v] = w;
        used[w] = true;
        extend(
            g,
            order,
            candidates,
            depth + 1,
            image,
            used,
            found,
            cap,
            overflow,
        );
        used[w] = false;
        image[v] = usize::MAX;
        if *overflow {
            return;
        }
    }
}

/// Relabels `g` so that vertex 0 has degree at least 3 (when some vertex
/// does) and the remaining labels follow ascending degree, ties by original
/// label. Returns the relabeled graph and the map old label -> new label.
pub fn relabel_for_generation(g: &Graph) -> (Graph, Permutation) {
    let n = g.order();
    let mut rest: Vec<usize> = (0..n).collect();
    let mut sequence = Vec::with_capacity(n);
    if let Some(root) = (0..n)
        .filter(|&v| g.degree(v) >= 3)
        .min_by_key(|&v| (g.degree(v), v))
    {
        sequence.push(root);
        rest.retain(|&v| v != root);
    }
    rest.sort_by_key(|&v| (g.degree(v), v));
    sequence.extend(rest);
    let mut new_label = vec![0; n];
    for (new, &old) in sequence.iter().enumerate() {
        new_label[old] = new;
    }
    (g.relabeled(&new_label), Permutation { images: new_label })
}

/// The image map `phi(M)` with successor `phi ∘ s ∘ phi^-1` on darts.
pub fn apply_automorphism(m: &Map, phi: &Permutation) -> Result<Map> {
    let g = m.graph();
    if !phi.is_automorphism_of(g) {
        return Err(Error::Domain(format!(
            "{phi:?} is not an automorphism of the underlying graph"
        )));
    }
    let inv = phi.inverse();
    Ok(apply_with_tables(m, phi.images(), inv.images()))
}

/// Carries `m` over to `target` along the relabeling `phi`: vertex `v` of
/// `m`'s graph becomes `phi(v)`. `target` must be the relabeled graph.
pub fn transport_map(m: &Map, phi: &Permutation, target: &Arc<Graph>) -> Result<Map> {
    let g = m.graph();
    if phi.len() != g.order() || target.order() != g.order() || target.size() != g.size() {
        return Err(Error::Domain("relabeling does not match the graphs".into()));
    }
    let fwd = phi.images();
    if !g
        .edges()
        .iter()
        .all(|&(u, v)| target.has_edge(fwd[u], fwd[v]))
    {
        return Err(Error::Domain("target is not the relabeled graph".into()));
    }
    let inv = phi.inverse();
    let inv = inv.images();
    let mut succ = vec![0u32; target.dart_count()];
    for (e, slot) in succ.iter_mut().enumerate() {
        let d = Dart(e as u32);
        let pre = g
            .dart(inv[target.tail(d)], inv[target.head(d)])
            .expect("edge preimage");
        let s = m.succ(pre);
        *slot = target
            .dart(fwd[g.tail(s)], fwd[g.head(s)])
            .expect("edge image")
            .0;
    }
    Ok(Map::from_parts_unchecked(Arc::clone(target), succ))
}

fn apply_with_tables(m: &Map, fwd: &[usize], inv: &[usize]) -> Map {
    let g = m.graph();
    let map_dart = |d: Dart, table: &[usize]| -> Dart {
        g.dart(table[g.tail(d)], table[g.head(d)])
            .expect("automorphism maps darts to darts")
    };
    let mut succ = vec![0u32; g.dart_count()];
    for (e, slot) in succ.iter_mut().enumerate() {
        let pre = map_dart(Dart(e as u32), inv);
        *slot = map_dart(m.succ(pre), fwd).0;
    }
    Map::from_parts_unchecked(Arc::clone(m.graph_arc()), succ)
}
