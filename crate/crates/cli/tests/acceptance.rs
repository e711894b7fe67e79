//! The acceptance gate: eight criteria, one test and one printed verdict line
//! each. Run with `--nocapture` to see the lines as they pass.

use std::collections::BTreeMap;
use std::process::Command;

use trobust_cli::checks::oracle_equivalence;
use trobust_cli::generate::{generate, sweep_instance, GenParams, SweepBounds};
use trobust_cli::instance::Instance;

use trobust_core::graph::{enumerate_matchings, BipartiteGraph, WeightMap};
use trobust_core::matroid::{
    check_axioms, enumerate_bases, greedy_equivalence_check, BruteForceUnion, TabulatedOracle,
};
use trobust_core::robust::{check_witness, construct_witness, verify_exchange};
use trobust_core::tau::{prior_bound, verify_theorem};
use trobust_core::transversal::{optimal_base_lifted, LiftedGraph, TransversalOracle};
use trobust_core::Error as CoreError;

const SWEEP_SIZE: u64 = 500;

fn verdict(number: usize, name: &str, pass: bool, detail: &str) {
    let word = if pass { "pass" } else { "FAIL" };
    println!("acceptance {number} ({name}): {word} [{detail}]");
    assert!(pass, "acceptance {number} ({name}) failed: {detail}");
}

fn sweep() -> Vec<(String, Instance)> {
    let bounds = SweepBounds::default();
    (0..SWEEP_SIZE)
        .map(|seed| (format!("sweep-{seed}"), sweep_instance(seed, &bounds)))
        .collect()
}

/// Every complete bipartite shape up to 4 × 3, at k ∈ {1,2,3}, under three
/// weight patterns: strictly descending, all tied, and zero-spiked.
fn complete_instances() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for left in 1..=4usize {
        for right in 1..=3usize {
            for k in 1..=3usize {
                let patterns: [Vec<u64>; 3] = [
                    (0..left).map(|u| (left - u) as u64).collect(),
                    vec![1; left],
                    (0..left).map(|u| if u % 2 == 0 { 0 } else { 2 }).collect(),
                ];
                for (p, weights) in patterns.into_iter().enumerate() {
                    let graph = BipartiteGraph::complete(left, right);
                    let inst =
                        Instance::new(graph, WeightMap::new(weights), k).unwrap();
                    out.push((format!("complete-{left}x{right}-k{k}-w{p}"), inst));
                }
            }
        }
    }
    out
}

fn star() -> Instance {
    Instance::parse("left 3\nright 1\nk 2\nweights 3 2 1\nedge 0 0\nedge 1 0\nedge 2 0\n")
        .unwrap()
}

#[test]
fn acceptance_1_main_theorem_sweep() {
    let mut instances = sweep();
    instances.extend(complete_instances());
    let total = instances.len();
    let mut witness_checks = 0usize;
    let mut failures = Vec::new();
    for (id, inst) in &instances {
        match verify_theorem(&inst.graph, &inst.weights, inst.k) {
            Ok(report) => {
                witness_checks += report.witness_checks;
                if !report.theorem_pass {
                    failures.push(format!("{id}: {:?}", report.violations));
                }
            }
            Err(e) => failures.push(format!("{id}: {e}")),
        }
    }
    verdict(
        1,
        "main-theorem sweep",
        failures.is_empty(),
        &format!(
            "{total} instances, {witness_checks} witnesses constructed and checked, {} failures{}",
            failures.len(),
            failures.first().map_or_else(String::new, |f| format!("; first: {f}")),
        ),
    );
}

#[test]
fn acceptance_2_tau_bounds() {
    let mut instances = sweep();
    instances.extend(complete_instances());
    let mut violations = Vec::new();
    let mut attained = 0usize;
    for (id, inst) in &instances {
        let report = verify_theorem(&inst.graph, &inst.weights, inst.k).unwrap();
        let Some(tau) = report.tau else {
            violations.push(format!("{id}: no threshold within k"));
            continue;
        };
        if tau > inst.k || tau > prior_bound(inst.k, report.rank) {
            violations.push(format!("{id}: tau = {tau} breaks a bound"));
        }
        if tau == inst.k {
            attained += 1;
        }
    }

    let pinned = star();
    let pinned_tau = verify_theorem(&pinned.graph, &pinned.weights, pinned.k).unwrap().tau;
    if pinned_tau != Some(2) {
        violations.push(format!("star regression: tau = {pinned_tau:?}, expected Some(2)"));
    }
    verdict(
        2,
        "tau bounds",
        violations.is_empty() && attained > 0,
        &format!(
            "0 bound violations expected, got {}; tau = k attained {attained} times; star tau = {pinned_tau:?}",
            violations.len(),
        ),
    );
}

#[test]
fn acceptance_3_oracle_equivalence() {
    let mut instances: Vec<(String, Instance)> = sweep()
        .into_iter()
        .filter(|(_, inst)| inst.graph.left_count() <= 8 && inst.k <= 3)
        .collect();
    for left in [7usize, 8] {
        for (i, edge_prob) in [0.25, 0.5, 0.9].into_iter().enumerate() {
            for k in 1..=3usize {
                let inst = generate(&GenParams {
                    seed: 1000 + (left * 10 + k) as u64,
                    left,
                    right: 4,
                    edge_prob,
                    wmax: 3,
                    k,
                })
                .unwrap();
                instances.push((format!("wide-{left}-k{k}-p{i}"), inst));
            }
        }
    }
    let total = instances.len();
    let mut disagreements = Vec::new();
    for (id, inst) in &instances {
        if !oracle_equivalence(&inst.graph, &inst.weights, inst.k, false).unwrap() {
            disagreements.push(id.clone());
        }
    }
    verdict(
        3,
        "oracle equivalence",
        disagreements.is_empty(),
        &format!(
            "{total} instances (left side up to 8) compared on every subset, {} disagreements",
            disagreements.len(),
        ),
    );
}

#[test]
fn acceptance_4_max_weight_matching_realization() {
    let mut instances = sweep();
    instances.extend(complete_instances());
    let mut covered = 0usize;
    let mut mismatches = Vec::new();
    for (id, inst) in &instances {
        if inst.k * inst.graph.edges().len() > 20 {
            continue;
        }
        covered += 1;
        let lifted = LiftedGraph::new(&inst.graph, &inst.weights, inst.k).unwrap();
        let (_, n) = optimal_base_lifted(&inst.graph, &inst.weights, inst.k).unwrap();
        let best = enumerate_matchings(lifted.graph())
            .unwrap()
            .iter()
            .map(|m| lifted.matching_weight(m))
            .max()
            .unwrap();
        if lifted.matching_weight(&n) != best {
            mismatches.push(id.clone());
        }
    }
    verdict(
        4,
        "max-weight matching realization",
        covered > 0 && mismatches.is_empty(),
        &format!("{covered} instances with k·|E| ≤ 20, {} mismatches", mismatches.len()),
    );
}

#[test]
fn acceptance_5_greedy_equivalence() {
    let mut instances: Vec<(String, Instance)> = sweep()
        .into_iter()
        .filter(|(_, inst)| inst.graph.left_count() <= 6)
        .collect();
    instances.extend(complete_instances());
    let tied = instances
        .iter()
        .filter(|(_, inst)| {
            let w = inst.weights.as_slice();
            w.iter().any(|a| w.iter().filter(|b| *b == a).count() > 1)
        })
        .count();
    let total = instances.len();
    let mut failures = Vec::new();
    for (id, inst) in &instances {
        let oracle = TransversalOracle::new(&inst.graph).unwrap();
        if !greedy_equivalence_check(&oracle, &inst.weights, inst.k).unwrap() {
            failures.push(id.clone());
        }
    }
    verdict(
        5,
        "greedy equivalence",
        tied > 0 && failures.is_empty(),
        &format!("{total} instances ({tied} with tied weights), {} failures", failures.len()),
    );
}

#[test]
fn acceptance_6_lemma_replays_hold() {
    let mut instances = sweep();
    instances.extend(complete_instances());
    let mut lemma_failures = Vec::new();
    let mut exchanges = 0usize;
    for (id, inst) in &instances {
        let g = &inst.graph;
        let w = &inst.weights;
        let tab = TabulatedOracle::build(&TransversalOracle::new(g).unwrap()).unwrap();
        let lifted = LiftedGraph::new(g, w, inst.k).unwrap();
        let (x, _) = lifted.optimal_base().unwrap();
        for b in enumerate_bases(&tab).unwrap() {
            let c = match construct_witness(g, w, inst.k, x, b) {
                Ok(c) => c,
                Err(CoreError::Lemma(m)) => {
                    lemma_failures.push(format!("{id}: {m}"));
                    continue;
                }
                Err(e) => panic!("{id}: unexpected {e}"),
            };
            if !check_witness(&tab, w, inst.k, x, b, c.witness()).unwrap() {
                lemma_failures.push(format!("{id}: constructed witness rejected"));
            }
            let outside = b.minus(x);
            let mut choices: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
            for u in outside.iter() {
                let group = c.groups().group(c.paths().sink(u).unwrap());
                choices = choices
                    .into_iter()
                    .flat_map(|base| {
                        group.iter().map(move |v| {
                            let mut next = base.clone();
                            next.insert(u, v);
                            next
                        })
                    })
                    .collect();
            }
            for choice in &choices {
                exchanges += 1;
                if let Err(e) = verify_exchange(&c, choice) {
                    lemma_failures.push(format!("{id}: exchange replay: {e}"));
                }
            }
        }
    }
    verdict(
        6,
        "lemma replays",
        lemma_failures.is_empty(),
        &format!(
            "{} instances, {exchanges} exchange walks replayed, {} lemma failures{}",
            instances.len(),
            lemma_failures.len(),
            lemma_failures.first().map_or_else(String::new, |f| format!("; first: {f}")),
        ),
    );
}

#[test]
fn acceptance_7_axiom_suite() {
    let mut instances: Vec<(String, Instance)> = sweep()
        .into_iter()
        .filter(|(_, inst)| inst.graph.left_count() <= 8)
        .collect();
    instances.extend(complete_instances());
    let total = instances.len();
    let mut failures = Vec::new();
    for (id, inst) in &instances {
        let t = TransversalOracle::new(&inst.graph).unwrap();
        if !check_axioms(&t).unwrap() {
            failures.push(format!("{id}: transversal"));
        }
        let lifted = LiftedGraph::new(&inst.graph, &inst.weights, inst.k).unwrap();
        if !check_axioms(&lifted.oracle()).unwrap() {
            failures.push(format!("{id}: lifted union"));
        }
        let union = BruteForceUnion::new(&t, inst.k).unwrap();
        if !check_axioms(&union).unwrap() {
            failures.push(format!("{id}: partition union"));
        }
    }
    verdict(
        7,
        "axiom suite",
        failures.is_empty(),
        &format!("{total} instances, 3 oracles each, {} axiom failures", failures.len()),
    );
}

#[test]
fn acceptance_8_byte_identical_reruns() {
    let bin = env!("CARGO_BIN_EXE_trobust");
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    let run = |args: &[&str]| {
        let out = Command::new(bin)
            .args(args)
            .current_dir(root)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let read = |name: &str| std::fs::read(root.join(name)).expect("output file exists");

    let mut mismatches = Vec::new();
    let mut compared = 0usize;
    let mut rerun = |label: &str, args: &[&str], outputs: &[&str]| {
        let first_stdout = run(args);
        let first: Vec<Vec<u8>> = outputs.iter().map(|n| read(n)).collect();
        let second_stdout = run(args);
        compared += outputs.len() + 1;
        if second_stdout != first_stdout {
            mismatches.push(format!("{label}: stdout"));
        }
        for (name, bytes) in outputs.iter().zip(&first) {
            if read(name) != *bytes {
                mismatches.push(format!("{label}: {name}"));
            }
        }
    };

    rerun(
        "gen",
        &["gen", "--seed", "11", "--left", "5", "--right", "3", "--edge-prob", "0.6", "--k", "2", "--out", "inst.ti"],
        &["inst.ti"],
    );
    rerun(
        "verify",
        &["verify", "inst.ti", "--sweep", "30", "--seed", "5", "--jobs", "3", "--csv", "report.csv", "--json", "report.json"],
        &["report.csv", "report.json"],
    );
    std::fs::write(root.join("star.ti"), star().to_text()).unwrap();
    rerun(
        "witness",
        &["witness", "star.ti", "--base", "2", "--dot", "render"],
        &["render/exchange.dot", "render/lifted.dot"],
    );
    rerun("tau", &["tau", "inst.ti", "--lmax", "3"], &[]);

    verdict(
        8,
        "byte-identical reruns",
        mismatches.is_empty(),
        &format!("{compared} outputs compared across reruns, {} mismatches", mismatches.len()),
    );
}
