//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p permpat-core --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use permpat_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MATCH_BUDGET: u64 = 100_000_000;
const EXAMPLE_GRAPH_PI: [usize; 28] = [
    6, 5, 4, 10, 3, 2, 1, 13, 12, 11, 17, 24, 9, 8, 7, 20, 19, 18, 25, 16, 15, 14, 28, 27, 26, 23,
    22, 21,
];

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Duration,
    check: Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Corpus shared by the two encoding suites: 200 graphs, n <= 10, p = 1/2.
fn encoding_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e);
    (0..200)
        .map(|_| {
            let n = rng.random_range(1..=10);
            common::random_graph(&mut rng, n, 0.5)
        })
        .collect()
}

fn golden_encoding() -> Result<String, String> {
    let (pi, _) = encode(&common::example_graph(), 3).map_err(|e| e.to_string())?;
    ensure(pi.values() == EXAMPLE_GRAPH_PI, || format!("got {pi}"))?;
    Ok("π_3(G) matches all 28 entries".into())
}

fn encoding_bijection() -> Result<String, String> {
    let mut checked = 0;
    for g in encoding_corpus() {
        for z in 1..=8 {
            let (pi, _) = encode(&g, z).map_err(|e| e.to_string())?;
            let expected = 2 * z * g.vertex_count() + g.edge_count();
            ensure(pi.len() == expected, || format!("{g:?} z={z}: length {}", pi.len()))?;
            ensure(make_permutation(pi.values()).is_ok(), || {
                format!("{g:?} z={z}: not a bijection")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} encodings are bijections of length 2zn+|E|"))
}

fn rectangle_adjacency() -> Result<String, String> {
    let mut pairs = 0;
    for g in encoding_corpus() {
        for z in 1..=8 {
            let (pi, layout) = encode(&g, z).map_err(|e| e.to_string())?;
            let ordering = layout.ordering();
            for u in g.vertices() {
                for v in g.vertices() {
                    let values = layout.incoming_values(v);
                    let count = layout
                        .block(u)
                        .filter(|&p| values.contains(&pi.value(p)))
                        .count();
                    ensure(count <= 1, || format!("{g:?} z={z}: ({u},{v}) holds {count}"))?;
                    if ordering.rank(u) < ordering.rank(v) {
                        ensure(edge_indicator(&pi, &layout, u, v) == g.has_edge(u, v), || {
                            format!("{g:?} z={z}: indicator wrong for ({u},{v})")
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, no rectangle with 2+ entries"))
}

fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).unwrap())
}

fn matcher_oracle_equivalence() -> Result<String, String> {
    let patterns: Vec<Permutation> = (1..=4).flat_map(all_permutations).collect();
    let texts: Vec<Permutation> = (0..=8).flat_map(all_permutations).collect();
    let mut checked = 0u64;
    for sigma in &patterns {
        let matcher = Matcher::new(sigma).map_err(|e| e.to_string())?;
        for pi in &texts {
            let r = matcher.find(pi, None).map_err(|e| e.to_string())?;
            let oracle = contains_pattern_oracle(sigma, pi).map_err(|e| e.to_string())?;
            let count = count_occurrences(sigma, pi).map_err(|e| e.to_string())?;
            ensure(r.found == oracle, || format!("σ={sigma} π={pi}: matcher {}", r.found))?;
            ensure(r.found == (count > 0), || format!("σ={sigma} π={pi}: count {count}"))?;
            if let Some(c) = &r.certificate {
                ensure(is_certificate(sigma, pi, c).unwrap_or(false), || {
                    format!("σ={sigma} π={pi}: bad certificate {c}")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (σ, π) pairs ({} patterns × {} texts)",
        patterns.len(),
        texts.len()
    ))
}

fn forward_direction() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    for _ in 0..100 {
        let g = common::random_graph_without_isolated(&mut rng, 8);
        let omega = (1..=g.vertex_count())
            .take_while(|&l| has_clique(&g, l).unwrap().is_some())
            .last()
            .unwrap();
        let l = rng.random_range(1..=omega);
        let clique = has_clique(&g, l).unwrap().unwrap();
        let inst = reduce_clique(&CliqueInstance::new(l, g.clone())).map_err(|e| e.to_string())?;
        ensure(inst.z == 4 * connected_components(&g).largest + 4, || "z".into())?;
        let phi = certificate_from_clique(&g, inst.z, &clique).map_err(|e| e.to_string())?;
        ensure(is_certificate(&inst.sigma, &inst.pi, &phi).unwrap_or(false), || {
            format!("{g:?}: certificate for {clique:?} rejected")
        })?;
    }
    Ok("100 constructed certificates accepted".into())
}

/// Reduced-scale check used when the matcher cannot finish a full-scale
/// instance: every graph on three vertices without isolated vertices, every
/// `l <= 3`, plus the forward-direction suite.
fn exhaustive_fallback() -> Result<String, String> {
    let mut checked = 0;
    for g in common::all_graphs(3) {
        if g.isolated_vertices().next().is_some() {
            continue;
        }
        for l in 1..=3 {
            let inst = reduce_clique(&CliqueInstance::new(l, g.clone())).map_err(|e| e.to_string())?;
            let r = contains_pattern(&inst.sigma, &inst.pi, None).map_err(|e| e.to_string())?;
            ensure(r.found == has_clique(&g, l).unwrap().is_some(), || {
                format!("{g:?} l={l}: disagreement")
            })?;
            checked += 1;
        }
    }
    forward_direction()?;
    Ok(format!("{checked} instances at n′ = 3 plus criterion 5"))
}

enum Verdict {
    Decided(MatchResult),
    Exhausted(u64),
}

fn timed_match(inst: &ComposedInstance, limit: Duration) -> Result<Verdict, String> {
    let start = Instant::now();
    let r = contains_pattern(&inst.sigma, &inst.pi, Some(MATCH_BUDGET));
    let elapsed = start.elapsed();
    ensure(elapsed <= limit, || format!("match took {elapsed:?}"))?;
    match r {
        Ok(r) => Ok(Verdict::Decided(r)),
        Err(MatchError::BudgetExhausted { nodes }) => Ok(Verdict::Exhausted(nodes)),
        Err(e) => Err(e.to_string()),
    }
}

fn reduction_end_to_end() -> Result<String, String> {
    let limit = Duration::from_secs(120);
    let mut notes = Vec::new();
    let mut fallback = false;

    let g = common::example_graph();
    let yes = reduce_clique(&CliqueInstance::new(3, g.clone())).map_err(|e| e.to_string())?;
    ensure(
        (yes.z, yes.sigma.len(), yes.pi.len()) == (20, 123, 164),
        || "YES instance has the wrong shape".into(),
    )?;
    match timed_match(&yes, limit)? {
        Verdict::Decided(r) => {
            let phi = r.certificate.ok_or("YES instance reported as NO")?;
            let clique = extract_clique(&yes, &phi).map_err(|e| e.to_string())?;
            ensure(clique.len() == 3 && g.is_clique(&clique), || {
                format!("extracted {clique:?}")
            })?;
            ensure(has_clique(&g, 3).unwrap().is_some(), || "oracle".into())?;
            notes.push(format!("YES: {clique:?} in {} nodes", r.nodes_explored));
        }
        Verdict::Exhausted(nodes) => {
            fallback = true;
            notes.push(format!("YES: budget exhausted after {nodes} nodes"));
        }
    }

    let p4 = Graph::path(4);
    let no = reduce_clique(&CliqueInstance::new(3, p4)).map_err(|e| e.to_string())?;
    ensure(
        (no.z, no.sigma.len(), no.pi.len()) == (20, 123, 163),
        || "NO instance has the wrong shape".into(),
    )?;
    match timed_match(&no, limit)? {
        Verdict::Decided(r) => {
            ensure(!r.found, || "P_4 reported to contain a triangle".into())?;
            notes.push(format!("NO: refuted in {} nodes", r.nodes_explored));
        }
        Verdict::Exhausted(nodes) => {
            fallback = true;
            notes.push(format!("NO: budget exhausted after {nodes} nodes"));
        }
    }

    if fallback {
        let detail = exhaustive_fallback()?;
        notes.push(format!("FALLBACK used: {detail}"));
    }
    Ok(notes.join("; "))
}

fn cross_composition() -> Result<String, String> {
    let limit = Duration::from_secs(120);
    let mut notes = Vec::new();
    let mut fallback = false;

    let yes_inputs = [Graph::path(4), common::example_graph(), Graph::cycle(4)];
    let yes = compose(
        &yes_inputs
            .iter()
            .map(|g| CliqueInstance::new(3, g.clone()))
            .collect::<Vec<_>>(),
    )
    .map_err(|e| e.to_string())?;
    match timed_match(&yes, limit)? {
        Verdict::Decided(r) => {
            let phi = r.certificate.ok_or("composed YES instance reported as NO")?;
            let clique = extract_clique(&yes, &phi).map_err(|e| e.to_string())?;
            let range = &yes.input_ranges[1];
            let ranks: Vec<usize> = clique
                .iter()
                .map(|&v| yes.layout_text.ordering().rank(v))
                .collect();
            ensure(ranks.iter().all(|k| range.contains(k)), || {
                format!("clique ranks {ranks:?} outside {range:?}")
            })?;
            notes.push(format!("YES: ranks {ranks:?} ⊆ {range:?}"));
        }
        Verdict::Exhausted(nodes) => {
            fallback = true;
            notes.push(format!("YES: budget exhausted after {nodes} nodes"));
        }
    }

    let no_inputs = [Graph::path(4), Graph::cycle(4), Graph::star(3)];
    for g in &no_inputs {
        ensure(has_clique(g, 3).unwrap().is_none(), || format!("{g:?} has a triangle"))?;
    }
    let no = compose(
        &no_inputs
            .iter()
            .map(|g| CliqueInstance::new(3, g.clone()))
            .collect::<Vec<_>>(),
    )
    .map_err(|e| e.to_string())?;
    match timed_match(&no, limit)? {
        Verdict::Decided(r) => {
            ensure(!r.found, || "triangle-free composition reported YES".into())?;
            notes.push(format!("NO: refuted in {} nodes", r.nodes_explored));
        }
        Verdict::Exhausted(nodes) => {
            fallback = true;
            notes.push(format!("NO: budget exhausted after {nodes} nodes"));
        }
    }

    let mut sizes = Vec::new();
    for t in [1, 2, 4, 8] {
        let inst = compose(&vec![CliqueInstance::new(3, Graph::path(4)); t])
            .map_err(|e| e.to_string())?;
        sizes.push(inst.sigma.len());
    }
    ensure(sizes == [123; 4], || format!("|σ| per t: {sizes:?}"))?;
    notes.push("|σ| = 123 for t ∈ {1,2,4,8}".into());

    if fallback {
        let detail = exhaustive_fallback()?;
        notes.push(format!("FALLBACK used: {detail}"));
    }
    Ok(notes.join("; "))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn catalan_cross_check() -> Result<String, String> {
    let sigma = make_permutation(&[2, 3, 1]).unwrap();
    let mut counts = Vec::new();
    for n in 1..=8u64 {
        let count = avoiders_count(&sigma, n as usize).map_err(|e| e.to_string())?;
        let catalan = binomial(2 * n, n) / (n + 1);
        ensure(count == catalan, || format!("n={n}: {count} vs C_n = {catalan}"))?;
        counts.push(count);
    }
    Ok(format!("{counts:?}"))
}

fn direct_sum_law() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd5);
    for _ in 0..50 {
        let (n1, n2) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let g1 = common::random_graph(&mut rng, n1, 0.5);
        let g2 = common::random_graph(&mut rng, n2, 0.5);
        let z = rng.random_range(1..=8);
        let (union, _) = Graph::disjoint_union(&[g1.clone(), g2.clone()]);
        let (whole, _) = encode(&union, z).map_err(|e| e.to_string())?;
        let (a, _) = encode(&g1, z).map_err(|e| e.to_string())?;
        let (b, _) = encode(&g2, z).map_err(|e| e.to_string())?;
        ensure(whole == direct_sum(&a, &b), || format!("{g1:?} + {g2:?}, z={z}"))?;
    }
    Ok("50 random pairs".into())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: "1", title: "golden encoding of the example graph", limit: secs(1), check: golden_encoding },
        Criterion { id: "2", title: "encoding is a permutation", limit: secs(10), check: encoding_bijection },
        Criterion { id: "3", title: "rectangles encode adjacency", limit: secs(10), check: rectangle_adjacency },
        Criterion { id: "4", title: "matcher/oracle equivalence", limit: secs(60), check: matcher_oracle_equivalence },
        Criterion { id: "5", title: "clique yields a certificate", limit: secs(30), check: forward_direction },
        Criterion { id: "6", title: "reduction end to end (z = 20)", limit: secs(240), check: reduction_end_to_end },
        Criterion { id: "7", title: "cross-composition OR-semantics", limit: secs(240), check: cross_composition },
        Criterion { id: "8", title: "231-avoiders are Catalan", limit: secs(30), check: catalan_cross_check },
        Criterion { id: "9", title: "direct-sum law", limit: secs(10), check: direct_sum_law },
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            })
            .and_then(|detail| {
                let elapsed = start.elapsed();
                if elapsed > c.limit {
                    Err(format!("took {elapsed:.2?}, limit {:?}", c.limit))
                } else {
                    Ok(detail)
                }
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "[PASS] criterion {}: {} ({elapsed:.2?}): {detail}",
                c.id, c.title
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "[FAIL] criterion {}: {} ({elapsed:.2?}): {why}",
                    c.id, c.title
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
