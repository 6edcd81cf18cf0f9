use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use permpat_core::{
    avoiders_count, compose as compose_instances, contains_pattern, encode as encode_graph,
    extract_clique, reduce_clique, strip_isolated, Certificate, CliqueInstance, ComposedInstance,
    Graph, MatchError, MatchResult, Permutation,
};

use crate::Outcome;

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse()
        .with_context(|| format!("malformed graph file {}", path.display()))
}

fn read_permutation(path: &Path) -> Result<Permutation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse()
        .with_context(|| format!("malformed permutation file {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn layout_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".layout");
    PathBuf::from(name)
}

pub fn encode(graph: &Path, z: usize, out: Option<&Path>) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let (pi, layout) = encode_graph(&g, z)?;
    match out {
        Some(out) => {
            write(out, &pi.to_text())?;
            write(&layout_path(out), &layout.to_text())?;
            println!("length={}", pi.len());
        }
        None => {
            print!("{}", pi.to_text());
            eprintln!("length={}", pi.len());
        }
    }
    Ok(Outcome::Yes)
}

/// Maps a matcher answer onto an outcome, reporting exhaustion on stderr.
fn settle(result: Result<MatchResult, MatchError>) -> Result<Option<MatchResult>> {
    match result {
        Ok(r) => Ok(Some(r)),
        Err(MatchError::BudgetExhausted { nodes }) => {
            eprintln!("budget exhausted after {nodes} nodes; no answer");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn match_files(pattern: &Path, text: &Path, certificate: bool, budget: u64) -> Result<Outcome> {
    let sigma = read_permutation(pattern)?;
    let pi = read_permutation(text)?;
    let Some(r) = settle(contains_pattern(&sigma, &pi, Some(budget)))? else {
        return Ok(Outcome::BudgetExhausted);
    };
    eprintln!("nodes={}", r.nodes_explored);
    match r.certificate {
        Some(phi) => {
            println!("YES");
            if certificate {
                println!("{phi}");
            }
            Ok(Outcome::Yes)
        }
        None => {
            println!("NO");
            Ok(Outcome::No)
        }
    }
}

fn report(inst: &ComposedInstance) {
    println!(
        "z={} sigma_len={} pi_len={} t={}",
        inst.z,
        inst.sigma.len(),
        inst.pi.len(),
        inst.inputs()
    );
}

pub fn reduce(graph: &Path, l: usize, out: &Path, strip: bool) -> Result<Outcome> {
    let mut g = read_graph(graph)?;
    if strip {
        g = strip_isolated(&g);
    }
    let inst = reduce_clique(&CliqueInstance::new(l, g))
        .context("graph must have no isolated vertices (try --strip-isolated) and l >= 1")?;
    inst.write_dir(out)?;
    report(&inst);
    Ok(Outcome::Yes)
}

pub fn compose(l: usize, graphs: &[PathBuf], out: &Path) -> Result<Outcome> {
    let instances = graphs
        .iter()
        .map(|p| read_graph(p).map(|g| CliqueInstance::new(l, g)))
        .collect::<Result<Vec<_>>>()?;
    let inst = compose_instances(&instances).context(
        "inputs must share l and vertex count, and contain no isolated vertices",
    )?;
    inst.write_dir(out)?;
    report(&inst);
    Ok(Outcome::Yes)
}

pub fn extract(instance: &Path, certificate: Option<&Path>, budget: u64) -> Result<Outcome> {
    let inst = ComposedInstance::read_dir(instance)
        .with_context(|| format!("reading instance {}", instance.display()))?;
    let phi = match certificate {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            text.parse::<Certificate>()
                .with_context(|| format!("malformed certificate {}", path.display()))?
        }
        None => {
            let Some(r) = settle(contains_pattern(&inst.sigma, &inst.pi, Some(budget)))? else {
                return Ok(Outcome::BudgetExhausted);
            };
            match r.certificate {
                Some(phi) => phi,
                None => {
                    println!("NO");
                    return Ok(Outcome::No);
                }
            }
        }
    };
    let clique = extract_clique(&inst, &phi)?;
    let labels: Vec<String> = clique.iter().map(ToString::to_string).collect();
    println!("clique {}", labels.join(" "));
    let ranks: Vec<usize> = clique
        .iter()
        .map(|&v| inst.layout_text.ordering().rank(v))
        .collect();
    if let Some(i) = inst.input_of_rank(ranks[0]) {
        if ranks.iter().all(|&k| inst.input_of_rank(k) == Some(i)) {
            // each input keeps a contiguous label block in the union
            let offset = inst.input_ranges[i - 1].start() - 1;
            let local: Vec<String> = clique.iter().map(|&v| (v - offset).to_string()).collect();
            println!("input {i} vertices {}", local.join(" "));
        }
    }
    Ok(Outcome::Yes)
}

pub fn count_avoiders(pattern: &str, n: usize) -> Result<Outcome> {
    let sigma: Permutation = pattern.parse().context("malformed --pattern")?;
    if sigma.is_empty() {
        bail!("--pattern must contain at least one entry");
    }
    println!("{}", avoiders_count(&sigma, n)?);
    Ok(Outcome::Yes)
}
