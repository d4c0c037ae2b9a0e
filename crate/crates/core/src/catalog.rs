//! A few named graphs used in examples and tests.

use crate::graph::Graph;

fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(n, &edges).expect("catalog graphs are simple")
}

/// An 8-vertex graph whose only nontrivial automorphism swaps vertices 7 and 8.
pub fn figure_one() -> Graph {
    from_one_based(
        8,
        &[
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 4),
            (2, 6),
            (2, 7),
            (2, 8),
            (3, 5),
            (3, 6),
            (3, 7),
            (3, 8),
            (4, 5),
            (4, 6),
            (4, 7),
            (4, 8),
            (5, 7),
            (5, 8),
            (6, 7),
            (6, 8),
            (7, 8),
        ],
    )
}

/// The complete bipartite graph K_{3,3}.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for u in 1..=3 {
        for v in 4..=6 {
            edges.push((u, v));
        }
    }
    from_one_based(6, &edges)
}

/// The triangular prism.
pub fn prism() -> Graph {
    from_one_based(
        6,
        &[
            (1, 2),
            (2, 3),
            (3, 1),
            (4, 5),
            (5, 6),
            (6, 4),
            (1, 4),
            (2, 5),
            (3, 6),
        ],
    )
}

/// The star with `leaves` leaves; the center is vertex 1.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (2..=leaves + 1).map(|v| (1, v)).collect();
    from_one_based(leaves + 1, &edges)
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i + 1, (i + 1) % 5 + 1));
        edges.push((i + 1, i + 6));
        edges.push((i + 6, (i + 2) % 5 + 6));
    }
    from_one_based(10, &edges)
}
