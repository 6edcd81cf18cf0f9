use anyhow::{bail, Result};
use permpat_core::{
    certificate_from_clique, contains_pattern, extract_clique, has_clique, is_certificate,
    reduce_clique, strip_isolated, CliqueInstance, Graph, MatchError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::Outcome;

const EXHAUSTIVE_MAX_N: usize = 5;

pub struct Settings {
    pub max_n: usize,
    pub l: usize,
    pub samples: usize,
    pub seed: u64,
    pub budget: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
    Exhausted,
}

/// Outcome of checking one graph; `problem` is set on any disagreement.
struct Check {
    verdict: Verdict,
    problem: Option<String>,
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(0.5))
        .collect();
    Graph::new(n, edges).expect("generated pairs are simple")
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges).expect("generated pairs are simple")
    })
}

fn instances(settings: &Settings) -> Vec<Graph> {
    if settings.exhaustive {
        return (1..=settings.max_n)
            .flat_map(all_graphs)
            .filter(|g| g.isolated_vertices().next().is_none())
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut graphs = Vec::with_capacity(settings.samples);
    while graphs.len() < settings.samples {
        let n = rng.random_range(2..=settings.max_n);
        let g = strip_isolated(&random_graph(&mut rng, n));
        if g.vertex_count() > 0 {
            graphs.push(g);
        }
    }
    graphs
}

fn check(g: &Graph, l: usize, budget: u64) -> Result<Check> {
    let inst = reduce_clique(&CliqueInstance::new(l, g.clone()))?;
    let expected = has_clique(g, l)?;
    let mut problems = Vec::new();

    if let Some(clique) = &expected {
        let phi = certificate_from_clique(g, inst.z, clique)?;
        if !is_certificate(&inst.sigma, &inst.pi, &phi)? {
            problems.push(format!("clique {clique:?} gives no certificate"));
        }
    }

    let verdict = match contains_pattern(&inst.sigma, &inst.pi, Some(budget)) {
        Err(MatchError::BudgetExhausted { .. }) => Verdict::Exhausted,
        Err(e) => return Err(e.into()),
        Ok(r) => {
            if r.found != expected.is_some() {
                problems.push(format!(
                    "matcher says {}, oracle says {}",
                    r.found,
                    expected.is_some()
                ));
            }
            if let Some(phi) = r.certificate {
                match extract_clique(&inst, &phi) {
                    Ok(c) if c.len() == l && g.is_clique(&c) => {}
                    Ok(c) => problems.push(format!("extracted {c:?} is not an {l}-clique")),
                    Err(e) => problems.push(format!("extraction failed: {e}")),
                }
            }
            if r.found {
                Verdict::Yes
            } else {
                Verdict::No
            }
        }
    };
    Ok(Check {
        verdict,
        problem: (!problems.is_empty()).then(|| problems.join("; ")),
    })
}

pub fn verify_lemma(settings: &Settings) -> Result<Outcome> {
    if settings.l == 0 {
        bail!("--l must be at least 1");
    }
    if settings.max_n < 2 {
        bail!("--max-n must be at least 2");
    }
    if settings.exhaustive && settings.max_n > EXHAUSTIVE_MAX_N {
        bail!("--exhaustive needs --max-n <= {EXHAUSTIVE_MAX_N}");
    }
    let graphs = instances(settings);
    let checks = graphs
        .par_iter()
        .map(|g| check(g, settings.l, settings.budget))
        .collect::<Result<Vec<_>>>()?;

    let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
    let mut disagreements = 0;
    for (g, c) in graphs.iter().zip(&checks) {
        if let Some(problem) = &c.problem {
            disagreements += 1;
            let edges: Vec<_> = g.edges().collect();
            eprintln!("disagreement on n={} edges={edges:?}: {problem}", g.vertex_count());
        }
    }
    println!(
        "instances={} yes={} no={} exhausted={} disagreements={}",
        checks.len(),
        count(Verdict::Yes),
        count(Verdict::No),
        count(Verdict::Exhausted),
        disagreements
    );
    Ok(if disagreements == 0 {
        Outcome::Yes
    } else {
        Outcome::No
    })
}
