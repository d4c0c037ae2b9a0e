//! Brute-force reference: every rotation system of a graph, grouped into
//! isomorphism classes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::automorphism::{compute_automorphism_group, AutomorphismGroup};
use crate::canonical::{CanonicalString, Canonizer};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{rotation_space_size, Map};

use super::SearchTarget;

/// Default bound on the number of rotation systems visited.
pub const DEFAULT_ORACLE_CAP: u64 = 100_000_000;

const TABLE_CAP: u64 = 1 << 27;

/// One isomorphism class of maps (mirror images identified).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClass {
    pub canonical: CanonicalString,
    pub faces: usize,
    pub genus: usize,
    /// Labeled rotation systems in the class, mirrors included.
    pub size: u64,
}

struct RotationIndex {
    degree: Vec<usize>,
    radix: Vec<u64>,
    /// `pos[x * n + w]`: index of `w` in the sorted neighbor list of `x`.
    pos: Vec<u8>,
    factorial: Vec<u64>,
    n: usize,
}

impl RotationIndex {
    fn new(g: &Graph) -> RotationIndex {
        let n = g.order();
        let maxd = g.max_degree().max(1);
        let mut factorial = vec![1u64; maxd + 1];
        for k in 1..=maxd {
            factorial[k] = factorial[k - 1] * k as u64;
        }
        let mut pos = vec![u8::MAX; n * n];
        let mut radix = Vec::with_capacity(n);
        let mut acc = 1u64;
        for x in 0..n {
            for (i, &w) in g.neighbors(x).iter().enumerate() {
                pos[x * n + w] = i as u8;
            }
            radix.push(acc);
            acc = acc.saturating_mul(factorial[g.degree(x).saturating_sub(1)]);
        }
        RotationIndex {
            degree: g.degrees(),
            radix,
            pos,
            factorial,
            n,
        }
    }

    /// Lehmer rank of a rotation at `x` given as neighbor positions, starting at 0.
    #[inline]
    fn rank(&self, positions: &[u8]) -> u64 {
        let d = positions.len();
        let mut r = 0u64;
        for i in 1..d {
            let smaller = positions[i + 1..]
                .iter()
                .filter(|&&p| p < positions[i])
                .count() as u64;
            r += smaller * self.factorial[d - 1 - i];
        }
        r
    }

    /// Rotation at every vertex for `index`, as neighbor positions starting at 0.
    fn decode(&self, mut index: u64, out: &mut [Vec<u8>]) {
        for (x, rot) in out.iter_mut().enumerate().take(self.n) {
            let f = self.factorial[self.degree[x].saturating_sub(1)];
            self.decode_vertex(x, index % f, rot);
            index /= f;
        }
    }

    fn decode_vertex(&self, x: usize, mut r: u64, rot: &mut Vec<u8>) {
        let d = self.degree[x];
        rot.clear();
        if d == 0 {
            return;
        }
        let mut pool: Vec<u8> = (1..d as u8).collect();
        rot.push(0);
        for i in 1..d {
            let w = self.factorial[d - 1 - i];
            let k = (r / w) as usize;
            r %= w;
            rot.push(pool.remove(k));
        }
    }
}

/// Every isomorphism class of maps of a connected graph.
///
/// Visits all `prod (deg(v) - 1)!` rotation systems; each unvisited one
/// starts a class whose orbit under the group (and mirroring) is marked.
pub fn exhaustive_classes(g: &Graph, group: &AutomorphismGroup, cap: u64) -> Result<Vec<MapClass>> {
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Domain("graph is empty or not connected".into()));
    }
    if group.degree() != g.order() {
        return Err(Error::Contract("group does not act on the graph".into()));
    }
    let space = rotation_space_size(g);
    if space > cap as f64 {
        return Err(Error::resource(
            format!("rotation-system space of {space:.0}"),
            cap,
        ));
    }
    let total = space as u64;
    let n = g.order();
    let index = RotationIndex::new(g);
    let graph = Arc::new(g.clone());
    let mut canonizer = Canonizer::new(g);
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut rot: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut scratch: Vec<u8> = Vec::new();
    let mut classes = Vec::new();

    // image_rank[((e * 2 + mirror) * n + u) * width + r]: rank at fwd(u) of the
    // image of rotation rank r at u
    let width = (0..n)
        .map(|v| index.factorial[index.degree[v].saturating_sub(1)])
        .max()
        .unwrap_or(1) as usize;
    let entries = group.order() as u64 * 2 * (n * width) as u64;
    if entries > TABLE_CAP {
        return Err(Error::resource("automorphism image table", TABLE_CAP));
    }
    let mut image_rank = vec![0u64; entries as usize];
    let mut single = vec![Vec::new(); n];
    for e in 0..group.order() {
        let fwd = group.forward(e);
        for (mirror, flip) in [false, true].into_iter().enumerate() {
            for u in 0..n {
                let d = index.degree[u];
                if d == 0 {
                    continue;
                }
                let x = fwd[u] as usize;
                for r in 0..index.factorial[d - 1] {
                    index.decode_vertex(u, r, &mut single[u]);
                    scratch.clear();
                    for i in 0..d {
                        let j = if flip { (d - i) % d } else { i };
                        let w = g.neighbors(u)[single[u][j] as usize];
                        scratch.push(index.pos[x * n + fwd[w] as usize]);
                    }
                    let zero = scratch.iter().position(|&p| p == 0).expect("min neighbor");
                    scratch.rotate_left(zero);
                    image_rank[((e * 2 + mirror) * n + u) * width + r as usize] =
                        index.rank(&scratch) * index.radix[x];
                }
            }
        }
    }
    let mut digits = vec![0usize; n];

    for start in 0..total {
        if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        index.decode(start, &mut rot);
        let mut rest = start;
        for (u, digit) in digits.iter_mut().enumerate() {
            let f = index.factorial[index.degree[u].saturating_sub(1)];
            *digit = (rest % f) as usize;
            rest /= f;
        }
        let mut size = 0u64;
        for row in image_rank.chunks_exact(n * width) {
            let mut image = 0u64;
            for (u, &digit) in digits.iter().enumerate() {
                image += row[u * width + digit];
            }
            let (word, bit) = ((image / 64) as usize, image % 64);
            if visited[word] >> bit & 1 == 0 {
                visited[word] |= 1 << bit;
                size += 1;
            }
        }
        let rotations: Vec<Vec<usize>> = (0..n)
            .map(|v| rot[v].iter().map(|&p| g.neighbors(v)[p as usize]).collect())
            .collect();
        let map = Map::from_rotations(Arc::clone(&graph), &rotations)?;
        let faces = if g.size() == 0 { 1 } else { map.face_count() };
        let chi = n as i64 - g.size() as i64 + faces as i64;
        classes.push(MapClass {
            canonical: canonizer.canonical_string(&map, group),
            faces,
            genus: (1 - chi / 2) as usize,
            size,
        });
    }
    Ok(classes)
}

/// Canonical strings of all classes of `g` meeting `target`.
pub fn exhaustive_oracle(
    g: &Graph,
    target: SearchTarget,
    cap: u64,
) -> Result<BTreeSet<CanonicalString>> {
    let group = compute_automorphism_group(g)?;
    let classes = exhaustive_classes(g, &group, cap)?;
    Ok(classes
        .into_iter()
        .filter(|c| match target {
            SearchTarget::Genus(genus) => c.genus == genus,
            SearchTarget::Faces(f) => c.faces == f,
        })
        .map(|c| c.canonical)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn k4_classes() {
        let g = Graph::complete(4);
        let group = compute_automorphism_group(&g).unwrap();
        let classes = exhaustive_classes(&g, &group, DEFAULT_ORACLE_CAP).unwrap();
        let genus1 = classes.iter().filter(|c| c.genus == 1).count();
        assert_eq!(genus1, 2);
        assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), 16);
    }

    #[test]
    fn cycle_has_one_map() {
        let set = exhaustive_oracle(&Graph::cycle(5), SearchTarget::Genus(0), 10).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn k33_genus_one() {
        let set =
            exhaustive_oracle(&catalog::k33(), SearchTarget::Genus(1), DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let err = exhaustive_oracle(&Graph::complete(6), SearchTarget::Genus(1), 1000).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn map_code_separates_classes() {
        use crate::automorphism::apply_automorphism;
        use crate::canonical::MapCode;
        use std::collections::HashSet;

        for g in [Graph::complete(5), catalog::k33(), catalog::prism()] {
            let group = compute_automorphism_group(&g).unwrap();
            let graph = Arc::new(g.clone());
            let mut code = MapCode::new(&g);
            let mut seen = HashSet::new();
            for class in exhaustive_classes(&g, &group, DEFAULT_ORACLE_CAP).unwrap() {
                let map = class.canonical.to_map(Arc::clone(&graph)).unwrap();
                let mut own = Vec::new();
                code.code_into(&map, &mut own);
                assert!(seen.insert(own.clone()));
                for phi in group.elements() {
                    let image = apply_automorphism(&map, &phi).unwrap();
                    for m in [image.mirror(), image] {
                        let mut other = Vec::new();
                        code.code_into(&m, &mut other);
                        assert_eq!(other, own);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_inverts_decode() {
        let g = Graph::complete(5);
        let index = RotationIndex::new(&g);
        let mut rot = vec![Vec::new(); 5];
        for i in [0u64, 1, 5, 77, 6 * 6 * 6 * 6 * 6 - 1] {
            index.decode(i, &mut rot);
            let back: u64 = (0..5).map(|x| index.rank(&rot[x]) * index.radix[x]).sum();
            assert_eq!(back, i);
        }
    }
}
