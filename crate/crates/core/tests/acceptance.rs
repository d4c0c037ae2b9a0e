//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Run a subset with `cargo test -p mapgen --test acceptance -- 3 7`.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use mapgen::catalog;
use mapgen::embedder::{enumerate, exhaustive_classes};
use mapgen::generate::{generate_connected_class, graph_key, ClassFilter};
use mapgen::run::{run, run_graphs, InputSource, RunConfig, RunMode, RunSummary};
use mapgen::{
    canonical_string, compute_automorphism_group, enumerate_maps, relabel_for_generation,
    CanonicalString, Graph, Mode, SearchTarget,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Check);

/// K6 has 24^6 rotation systems, above the default oracle cap.
const K6_ORACLE_CAP: u64 = 300_000_000;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn summary(input: InputSource, target: SearchTarget, mode: RunMode) -> Result<RunSummary, String> {
    let mut config = RunConfig::new(target, input);
    config.count_only = true;
    config.mode = mode;
    run(&config, &mut |_| Ok(())).map_err(|e| e.to_string())
}

fn class_counts(filter: ClassFilter, target: SearchTarget, mode: RunMode) -> Result<u64, String> {
    Ok(summary(InputSource::Generated(filter), target, mode)?.maps_total)
}

fn graph_count(g: &Graph, target: SearchTarget, mode: Mode) -> Result<u64, String> {
    enumerate_maps(g, target, mode.into())
        .map(|e| e.maps.len() as u64)
        .map_err(|e| e.to_string())
}

/// Expected counts per genus, starting at `first`.
fn genus_row(filter: &ClassFilter, first: usize, want: &[u64], mode: RunMode) -> Check {
    for (i, &w) in want.iter().enumerate() {
        let genus = first + i;
        let got = class_counts(filter.clone(), SearchTarget::Genus(genus), mode)?;
        expect(&format!("{filter:?} genus {genus}"), got, w)?;
    }
    Ok(())
}

fn k6_oracle() -> Check {
    let k6 = Graph::complete(6);
    for (genus, want) in [(1, 4), (2, 492), (3, 17_482), (4, 87_274)] {
        let got = graph_count(&k6, SearchTarget::Genus(genus), Mode::Final)?;
        expect(&format!("K6 genus {genus}"), got, want)?;
    }
    Ok(())
}

fn figure_one() -> Check {
    let g = catalog::figure_one();
    expect(
        "genus 1",
        graph_count(&g, SearchTarget::Genus(1), Mode::Final)?,
        49,
    )?;
    expect(
        "genus 2",
        graph_count(&g, SearchTarget::Genus(2), Mode::Final)?,
        611_031,
    )
}

fn cubic() -> Check {
    let mode = RunMode::Final;
    genus_row(&ClassFilter::regular(4, 3), 1, &[2], mode)?;
    genus_row(&ClassFilter::regular(6, 3), 1, &[7, 3], mode)?;
    genus_row(&ClassFilter::regular(8, 3), 1, &[37, 71], mode)?;
    genus_row(&ClassFilter::regular(10, 3), 1, &[232, 1_234, 437], mode)?;
    let s = summary(
        InputSource::Generated(ClassFilter::regular(10, 3)),
        SearchTarget::Genus(3),
        mode,
    )?;
    expect(
        "|V|=10 genus 3 (read, embeddable, avg tenths, max)",
        (
            s.graphs_read,
            s.graphs_embeddable,
            s.avg_tenths(),
            s.max_per_graph,
        ),
        (19, 18, 230, 72),
    )?;
    genus_row(
        &ClassFilter::regular(12, 3),
        1,
        &[1_742, 20_087, 30_096],
        mode,
    )
}

fn quartic() -> Check {
    let mode = RunMode::Final;
    genus_row(&ClassFilter::regular(5, 4), 1, &[6, 31, 13], mode)?;
    genus_row(&ClassFilter::regular(6, 4), 1, &[17, 206, 371], mode)?;
    genus_row(
        &ClassFilter::regular(7, 4),
        1,
        &[38, 1_415, 8_778, 3_231],
        mode,
    )?;
    genus_row(
        &ClassFilter::regular(8, 4),
        1,
        &[130, 10_386, 150_539, 246_373],
        mode,
    )
}

fn cubic_bipartite() -> Check {
    let mode = RunMode::Final;
    genus_row(&ClassFilter::regular(6, 3).bipartite(), 1, &[2, 1], mode)?;
    genus_row(&ClassFilter::regular(8, 3).bipartite(), 1, &[5, 8], mode)?;
    genus_row(
        &ClassFilter::regular(10, 3).bipartite(),
        1,
        &[8, 39, 20],
        mode,
    )
}

fn all_maps() -> Check {
    // K6 dominates |V|=6; the prefix test mode is much faster there
    let mode = RunMode::Incremental;
    genus_row(&ClassFilter::order(4), 0, &[6, 3], mode)?;
    genus_row(&ClassFilter::order(5), 0, &[25, 70, 81, 13], mode)?;
    genus_row(
        &ClassFilter::order(6),
        0,
        &[179, 2_656, 26_167, 125_370, 181_067],
        mode,
    )?;
    genus_row(&ClassFilter::order(7), 0, &[2_014, 126_466], mode)
}

fn one_face() -> Check {
    let one = SearchTarget::Faces(1);
    let rows = [
        (ClassFilter::regular(6, 3), 3, RunMode::Final),
        (ClassFilter::regular(10, 3), 437, RunMode::Final),
        (ClassFilter::regular(5, 4), 13, RunMode::Final),
        (ClassFilter::regular(7, 4), 3_231, RunMode::Final),
        (ClassFilter::order(3), 1, RunMode::Final),
        (ClassFilter::order(4), 3, RunMode::Final),
        (ClassFilter::order(5), 33, RunMode::Final),
        (ClassFilter::order(6), 47_953, RunMode::Incremental),
    ];
    for (filter, want, mode) in rows {
        expect(
            &format!("{filter:?} one face"),
            class_counts(filter, one, mode)?,
            want,
        )?;
    }
    let genus3 = class_counts(
        ClassFilter::regular(10, 3),
        SearchTarget::Genus(3),
        RunMode::Final,
    )?;
    let faces1 = class_counts(ClassFilter::regular(10, 3), one, RunMode::Final)?;
    expect("cubic |V|=10: one face vs genus 3", faces1, genus3)
}

fn six_regular() -> Check {
    let k7 = ClassFilter::regular(7, 6);
    genus_row(&k7, 1, &[1, 363], RunMode::Incremental)
}

/// Canonical strings of the maps one mode emits; duplicates are an error.
fn mode_strings(
    g: &Arc<Graph>,
    group: &mapgen::AutomorphismGroup,
    target: SearchTarget,
    mode: Mode,
) -> Result<BTreeSet<CanonicalString>, String> {
    let mut set = BTreeSet::new();
    let mut duplicate = None;
    enumerate(g, group, target, mode.into(), &mut |found| {
        let s = canonical_string(found, group);
        if !set.insert(s.clone()) {
            duplicate = Some(s);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    match duplicate {
        Some(s) => Err(format!("{mode:?} emitted {s} twice")),
        None => Ok(set),
    }
}

fn mode_equivalence() -> Check {
    let mut runs = 0;
    for n in 1..=6 {
        let graphs = generate_connected_class(&ClassFilter::order(n)).map_err(|e| e.to_string())?;
        for g in graphs {
            let (relabeled, _) = relabel_for_generation(&g);
            let rg = Arc::new(relabeled);
            let group = compute_automorphism_group(&rg).map_err(|e| e.to_string())?;
            let classes =
                exhaustive_classes(&rg, &group, K6_ORACLE_CAP).map_err(|e| e.to_string())?;
            let m = rg.size();
            let top = m + 2 - n;
            let targets = (0..=top / 2)
                .map(SearchTarget::Genus)
                .chain((1..=top).map(SearchTarget::Faces))
                .filter(|t| t.face_count(n, m).is_some());
            for target in targets {
                let oracle: BTreeSet<CanonicalString> = classes
                    .iter()
                    .filter(|c| match target {
                        SearchTarget::Genus(x) => c.genus == x,
                        SearchTarget::Faces(f) => c.faces == f,
                    })
                    .map(|c| c.canonical.clone())
                    .collect();
                for mode in [Mode::Final, Mode::Incremental, Mode::List] {
                    let got = mode_strings(&rg, &group, target, mode)?;
                    if got != oracle {
                        return Err(format!(
                            "{} {target:?} {mode:?}: {} maps, oracle {}",
                            rg.to_graph6(),
                            got.len(),
                            oracle.len()
                        ));
                    }
                    runs += 1;
                }
            }
        }
    }
    println!("  {runs} mode runs agree with the oracle");
    Ok(())
}

/// `prod (deg - 1)! / 2`, computed here rather than taken from the library.
fn half_product(g: &Graph) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    (0..g.order())
        .map(|v| fact(g.degree(v).saturating_sub(1)))
        .product::<u128>()
        / 2
}

fn random_rigid_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(6..=8);
        let p = rng.gen_range(0.3..0.55);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let Ok(g) = Graph::from_edges(n, &edges) else {
            continue;
        };
        if !g.is_connected() || g.max_degree() < 3 || half_product(&g) > 2_000_000 {
            continue;
        }
        if compute_automorphism_group(&g).map(|a| a.order()).ok() != Some(1) {
            continue;
        }
        if seen.insert(graph_key(&g).expect("small graph")) {
            out.push(g);
        }
    }
    out
}

fn exact_cover() -> Check {
    let graphs = random_rigid_graphs(20, 0x6d61_7073);
    for g in &graphs {
        let top = g.size() + 2 - g.order();
        let mut total = 0u128;
        for genus in 0..=top / 2 {
            total += graph_count(g, SearchTarget::Genus(genus), Mode::Final)? as u128;
        }
        expect(
            &format!("{} maps over all genera", g.to_graph6()),
            total,
            half_product(g),
        )?;
    }
    Ok(())
}

fn parity() -> Check {
    expect(
        "K4 one face",
        graph_count(&Graph::complete(4), SearchTarget::Faces(1), Mode::Final)?,
        0,
    )?;
    let mut graphs = Vec::new();
    for n in 3..=5 {
        graphs.extend(generate_connected_class(&ClassFilter::order(n)).map_err(|e| e.to_string())?);
    }
    graphs.push(catalog::petersen());
    for g in &graphs {
        let (n, m) = (g.order(), g.size());
        for f in (1..=m + 3).filter(|f| (f + m + n) % 2 == 1) {
            for mode in [Mode::Final, Mode::Incremental, Mode::List] {
                let got = graph_count(g, SearchTarget::Faces(f), mode)?;
                expect(&format!("{} faces {f} {mode:?}", g.to_graph6()), got, 0)?;
            }
        }
    }
    let config = RunConfig::new(SearchTarget::Faces(2), InputSource::Graphs(Vec::new()));
    let s =
        run_graphs(&[Graph::complete(5)], &config, &mut |_| Ok(())).map_err(|e| e.to_string())?;
    expect("K5 faces 2 via the driver", s.maps_total, 0)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "K6 counts per genus", k6_oracle),
        (2, "figure-one graph genus 1 and 2", figure_one),
        (3, "cubic maps", cubic),
        (4, "quartic maps", quartic),
        (5, "cubic bipartite maps", cubic_bipartite),
        (6, "all maps by order", all_maps),
        (7, "one-face maps", one_face),
        (8, "6-regular maps", six_regular),
        (9, "mode equivalence n <= 6", mode_equivalence),
        (10, "exact cover on rigid graphs", exact_cover),
        (11, "face parity", parity),
    ];
    let wanted: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, check) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {id:>2} PASS  {name} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
