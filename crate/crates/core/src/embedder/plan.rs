use crate::error::{Error, Result};
use crate::graph::Graph;

/// How the insertion order is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Greedy: next edge has the fewest insertion slots.
    BranchingMinimizing,
    /// Complete vertices in ascending label order; needed for prefix tests.
    LabelOrder,
}

/// The order in which edges join the partial embedding.
///
/// `edges[i] = (tail, head)` is inserted at iteration `i`; `tail` is already
/// in the support when the edge is inserted (for `i > 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionPlan {
    edges: Vec<(usize, usize)>,
    /// Iteration of each graph edge, indexed like [`Graph::edges`].
    iteration: Vec<usize>,
    strategy: Strategy,
}

impl InsertionPlan {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// `t(e)` for the undirected edge `{u, v}`.
    pub fn iteration_of(&self, g: &Graph, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let k = g.edges().binary_search(&(a, b)).ok()?;
        Some(self.iteration[k])
    }
}

struct Builder {
    in_support: Vec<bool>,
    pdeg: Vec<usize>,
    used: Vec<bool>,
    edges: Vec<(usize, usize)>,
    iteration: Vec<usize>,
}

impl Builder {
    fn take(&mut self, k: usize, tail: usize, head: usize) {
        self.used[k] = true;
        self.iteration[k] = self.edges.len();
        self.edges.push((tail, head));
        self.in_support[tail] = true;
        self.in_support[head] = true;
        self.pdeg[tail] += 1;
        self.pdeg[head] += 1;
    }
}

/// Builds the insertion plan for a connected graph whose vertex 0 has degree >= 3.
pub fn build_plan(g: &Graph, strategy: Strategy) -> Result<InsertionPlan> {
    if g.max_degree() < 3 {
        return Err(Error::Domain(
            "insertion plans need a vertex of degree at least 3; paths and cycles embed uniquely"
                .into(),
        ));
    }
    if g.degree(0) < 3 {
        return Err(Error::Contract(
            "vertex 1 must have degree at least 3 (relabel first)".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Domain("graph is not connected".into()));
    }
    let n = g.order();
    let m = g.size();
    let mut st = Builder {
        in_support: vec![false; n],
        pdeg: vec![0; n],
        used: vec![false; m],
        edges: Vec::with_capacity(m),
        iteration: vec![usize::MAX; m],
    };

    for &w in &g.neighbors(0)[..3] {
        let k = g.edges().binary_search(&(0, w)).expect("root edge");
        st.take(k, 0, w);
    }

    while st.edges.len() < m {
        let mut best: Option<(usize, usize)> = None; // (score, edge index)
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            if st.used[k] || !(st.in_support[u] || st.in_support[v]) {
                continue;
            }
            let score = match strategy {
                Strategy::BranchingMinimizing => st.pdeg[u].max(1) * st.pdeg[v].max(1),
                Strategy::LabelOrder => 0,
            };
            // edges are scanned in lexicographic order, so the first minimum wins ties
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, k));
                if strategy == Strategy::LabelOrder {
                    break;
                }
            }
        }
        let (_, k) = best.expect("connected graph always has an eligible edge");
        let (u, v) = g.edges()[k];
        let (tail, head) = if st.in_support[u] { (u, v) } else { (v, u) };
        st.take(k, tail, head);
    }

    let Builder {
        edges, iteration, ..
    } = st;
    Ok(InsertionPlan {
        edges,
        iteration,
        strategy,
    })
}
