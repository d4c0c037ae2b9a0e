//! Batch driver behind the command-line tool: reads or generates graphs,
//! enumerates their maps and accumulates the summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc};

use crate::automorphism::{
    compute_automorphism_group_capped, relabel_for_generation, DEFAULT_GROUP_CAP,
};
use crate::embedder::{
    enumerate, exhaustive_classes, EnumerateOptions, Mode, SearchTarget, DEFAULT_LIST_CAP,
    DEFAULT_ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::generate::{generate_connected_class, ClassFilter};
use crate::graph::{parse_graph6, Graph};
use crate::map::RotationView;

/// Duplicate rejection used for a run; `Exhaustive` is the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RunMode {
    #[default]
    Final,
    Incremental,
    List,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    /// graph6 file, one graph per line; `-` reads standard input.
    Graph6(PathBuf),
    /// Graphs already in memory.
    Graphs(Vec<Graph>),
    Generated(ClassFilter),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub target: SearchTarget,
    pub mode: RunMode,
    pub input: InputSource,
    pub count_only: bool,
    pub limit: Option<u64>,
    pub workers: usize,
    pub aut_cap: u64,
    pub list_cap: usize,
    pub oracle_cap: u64,
}

impl RunConfig {
    pub fn new(target: SearchTarget, input: InputSource) -> RunConfig {
        RunConfig {
            target,
            mode: RunMode::Final,
            input,
            count_only: false,
            limit: None,
            workers: 1,
            aut_cap: DEFAULT_GROUP_CAP,
            list_cap: DEFAULT_LIST_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Totals over the graphs of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub graphs_read: u64,
    pub graphs_embeddable: u64,
    pub maps_total: u64,
    pub max_per_graph: u64,
    pub nodes_visited: u64,
}

/// `num / den` in tenths, rounded half up.
fn tenths(num: u64, den: u64) -> u64 {
    if den == 0 {
        return 0;
    }
    ((num as u128 * 20 + den as u128) / (2 * den as u128)) as u64
}

fn show_tenths(t: u64) -> String {
    format!("{}.{}", t / 10, t % 10)
}

impl RunSummary {
    pub fn add(&mut self, outcome: &GraphOutcome) {
        self.graphs_read += 1;
        self.graphs_embeddable += u64::from(outcome.maps > 0);
        self.maps_total += outcome.maps;
        self.max_per_graph = self.max_per_graph.max(outcome.maps);
        self.nodes_visited += outcome.nodes_visited;
    }

    /// Average maps per graph read, in tenths.
    pub fn avg_tenths(&self) -> u64 {
        tenths(self.maps_total, self.graphs_read)
    }

    /// Percentage of embeddable graphs, in tenths.
    pub fn pct_tenths(&self) -> u64 {
        tenths(self.graphs_embeddable * 100, self.graphs_read)
    }

    /// `graphs_read, graphs_embeddable, pct_embeddable, maps_total, avg_per_graph, max_per_graph`.
    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.graphs_read,
            self.graphs_embeddable,
            show_tenths(self.pct_tenths()),
            self.maps_total,
            show_tenths(self.avg_tenths()),
            self.max_per_graph
        )
    }

    pub fn stats_block(&self) -> String {
        format!(
            "graphs read:        {}\n\
             graphs embeddable:  {} ({}%)\n\
             maps:               {}\n\
             average per graph:  {}\n\
             maximum per graph:  {}\n\
             search nodes:       {}\n",
            self.graphs_read,
            self.graphs_embeddable,
            show_tenths(self.pct_tenths()),
            self.maps_total,
            show_tenths(self.avg_tenths()),
            self.max_per_graph,
            self.nodes_visited
        )
    }
}

/// What one graph contributed: its map count and, unless counting only, the
/// rotation-code records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphOutcome {
    pub maps: u64,
    pub nodes_visited: u64,
    pub records: String,
}

/// Writes one rotation-code record of `view` (over the relabeled graph) in
/// the original labels; `old_to_new[x]` is the internal label of vertex `x`.
fn write_record<V: RotationView>(
    view: &V,
    old_to_new: &[usize],
    new_to_old: &[usize],
    out: &mut String,
) {
    let g = view.graph();
    let n = g.order();
    writeln!(out, "{n}").unwrap();
    let mut rotation = Vec::new();
    for (x, &v) in old_to_new.iter().enumerate() {
        write!(out, "{}:", x + 1).unwrap();
        rotation.clear();
        if let Some(start) = g.min_neighbor(v) {
            let mut w = start;
            loop {
                rotation.push(new_to_old[w]);
                w = view.turn(v, w, true);
                if w == start {
                    break;
                }
            }
            let first = (0..rotation.len())
                .min_by_key(|&i| rotation[i])
                .expect("nonempty rotation");
            rotation.rotate_left(first);
        }
        for &w in &rotation {
            write!(out, " {}", w + 1).unwrap();
        }
        out.push('\n');
    }
    out.push('\n');
}

/// Enumerates the maps of one graph. At most `limit` maps are produced.
pub fn process_graph(g: &Graph, config: &RunConfig, limit: Option<u64>) -> Result<GraphOutcome> {
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Domain(
            "input graph is empty or not connected".into(),
        ));
    }
    let (relabeled, old_to_new) = relabel_for_generation(g);
    let relabeled = Arc::new(relabeled);
    let old_to_new = old_to_new.images().to_vec();
    let mut new_to_old = vec![0; old_to_new.len()];
    for (old, &new) in old_to_new.iter().enumerate() {
        new_to_old[new] = old;
    }
    let group = compute_automorphism_group_capped(&relabeled, config.aut_cap)?;
    let mut outcome = GraphOutcome::default();
    let limit = limit.unwrap_or(u64::MAX);
    if limit == 0 {
        return Ok(outcome);
    }

    let mode = match config.mode {
        RunMode::Final => Mode::Final,
        RunMode::Incremental => Mode::Incremental,
        RunMode::List => Mode::List,
        RunMode::Exhaustive => {
            let mut classes: Vec<_> = exhaustive_classes(&relabeled, &group, config.oracle_cap)?
                .into_iter()
                .filter(|c| match config.target {
                    SearchTarget::Genus(genus) => c.genus == genus,
                    SearchTarget::Faces(f) => c.faces == f,
                })
                .collect();
            classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
            for class in classes.iter().take(limit.min(usize::MAX as u64) as usize) {
                outcome.maps += 1;
                if !config.count_only {
                    let map = class.canonical.to_map(Arc::clone(&relabeled))?;
                    write_record(&map, &old_to_new, &new_to_old, &mut outcome.records);
                }
            }
            return Ok(outcome);
        }
    };
    let options = EnumerateOptions {
        mode,
        list_cap: config.list_cap,
    };
    let count_only = config.count_only;
    let mut maps = 0u64;
    let mut records = String::new();
    let stats = enumerate(&relabeled, &group, config.target, options, &mut |found| {
        maps += 1;
        if !count_only {
            write_record(found, &old_to_new, &new_to_old, &mut records);
        }
        if maps >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    outcome.maps = maps;
    outcome.records = records;
    outcome.nodes_visited = stats.nodes_visited;
    Ok(outcome)
}

/// Reads every graph of a graph6 stream; errors carry the 1-based line number.
pub fn read_graph6<R: Read>(reader: R) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (i, line) in BufReader::new(reader).split(b'\n').enumerate() {
        let line = line?;
        let trimmed = line.strip_suffix(b"\r").unwrap_or(&line);
        if trimmed.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let g = parse_graph6(trimmed).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset,
                message: format!("line {}: {message}", i + 1),
            },
            Error::Domain(message) => Error::Domain(format!("line {}: {message}", i + 1)),
            other => other,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// The input graphs of a run, in order.
pub fn load_input(source: &InputSource) -> Result<Vec<Graph>> {
    match source {
        InputSource::Graph6(path) if path.as_os_str() == "-" => {
            read_graph6(std::io::stdin().lock())
        }
        InputSource::Graph6(path) => read_graph6(std::fs::File::open(path)?),
        InputSource::Graphs(graphs) => Ok(graphs.clone()),
        InputSource::Generated(filter) => generate_connected_class(filter),
    }
}

/// Concatenates per-graph results in input order, applying the global limit.
///
/// Results may arrive in any order; each is released once all earlier
/// graphs have been released. Stops at the first error or once the limit
/// is reached, truncating at a record boundary.
pub fn merge_outputs<I>(
    results: I,
    limit: Option<u64>,
    sink: &mut dyn FnMut(&str) -> Result<()>,
) -> Result<RunSummary>
where
    I: IntoIterator<Item = (usize, Result<GraphOutcome>)>,
{
    let mut summary = RunSummary::default();
    let mut pending: BTreeMap<usize, Result<GraphOutcome>> = BTreeMap::new();
    let mut next = 0;
    let mut left = limit.unwrap_or(u64::MAX);
    for (index, result) in results {
        pending.insert(index, result);
        while let Some(result) = pending.remove(&next) {
            next += 1;
            let mut outcome = result?;
            if outcome.maps > left {
                truncate_records(&mut outcome.records, left);
                outcome.maps = left;
            }
            left -= outcome.maps;
            summary.add(&outcome);
            sink(&outcome.records)?;
            if left == 0 {
                return Ok(summary);
            }
        }
    }
    Ok(summary)
}

fn truncate_records(records: &mut String, keep: u64) {
    if keep == 0 {
        records.clear();
        return;
    }
    let mut seen = 0;
    let mut cut = records.len();
    for (i, _) in records.match_indices("\n\n") {
        seen += 1;
        if seen == keep {
            cut = i + 2;
            break;
        }
    }
    records.truncate(cut);
}

/// Runs a whole batch, passing output text to `sink` in input order.
pub fn run(config: &RunConfig, sink: &mut dyn FnMut(&str) -> Result<()>) -> Result<RunSummary> {
    if config.limit == Some(0) {
        return Err(Error::Domain("limit must be at least 1".into()));
    }
    let graphs = load_input(&config.input)?;
    run_graphs(&graphs, config, sink)
}

pub fn run_graphs(
    graphs: &[Graph],
    config: &RunConfig,
    sink: &mut dyn FnMut(&str) -> Result<()>,
) -> Result<RunSummary> {
    let workers = config.workers.max(1).min(graphs.len().max(1));
    if workers == 1 {
        // sequential: the limit shrinks as maps are emitted
        let mut left = config.limit;
        let results = graphs.iter().enumerate().map_while(|(i, g)| {
            if left == Some(0) {
                return None;
            }
            let result = process_graph(g, config, left);
            if let (Some(l), Ok(o)) = (left.as_mut(), &result) {
                *l -= o.maps.min(*l);
            }
            Some((i, result))
        });
        return merge_outputs(results, config.limit, sink);
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= graphs.len() {
                    break;
                }
                let result = process_graph(&graphs[i], config, config.limit);
                if tx.send((i, result)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let summary = merge_outputs(rx.iter(), config.limit, sink);
        // remaining workers notice the closed channel after their current graph
        next.store(graphs.len(), Ordering::Relaxed);
        summary
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(tenths(437, 19), 230);
        assert_eq!(tenths(1800, 19), 947);
        assert_eq!(tenths(1, 20), 1);
        assert_eq!(tenths(1, 40), 0);
        assert_eq!(tenths(3, 40), 1);
        assert_eq!(tenths(5, 0), 0);
    }

    #[test]
    fn truncation_keeps_whole_records() {
        let mut r = "1\n1:\n\n1\n1:\n\n1\n1:\n\n".to_string();
        truncate_records(&mut r, 2);
        assert_eq!(r, "1\n1:\n\n1\n1:\n\n");
    }

    #[test]
    fn merge_restores_input_order() {
        let out = |maps: u64, text: &str| GraphOutcome {
            maps,
            nodes_visited: 0,
            records: text.to_string(),
        };
        let results = vec![
            (2, Ok(out(1, "c\n\n"))),
            (0, Ok(out(1, "a\n\n"))),
            (1, Ok(out(0, ""))),
        ];
        let mut text = String::new();
        let summary = merge_outputs(results, None, &mut |s| {
            text.push_str(s);
            Ok(())
        })
        .unwrap();
        assert_eq!(text, "a\n\nc\n\n");
        assert_eq!(summary.graphs_read, 3);
        assert_eq!(summary.graphs_embeddable, 2);
        assert_eq!(summary.tsv_line(), "3\t2\t66.7\t2\t0.7\t1");
    }
}
