use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use trobust_cli::checks::{run_checks, ResultRecord};
use trobust_cli::generate::{generate, sweep_instance, GenParams, SweepBounds};
use trobust_cli::instance::Instance;
use trobust_cli::{render, report, Error, Result};
use trobust_core::guard;
use trobust_core::matroid::rank;
use trobust_core::robust::construct_witness;
use trobust_core::tau::{level_table, prior_bound};
use trobust_core::transversal::{LiftedGraph, TransversalOracle};
use trobust_core::Subset;

#[derive(Parser)]
#[command(
    name = "trobust",
    version,
    about = "Robust subsets of transversal matroids: generation, verification, inspection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded pseudo-random instance file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Largest weight; weights are drawn uniformly from 0..=wmax.
        #[arg(long, default_value_t = 3)]
        wmax: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check over instance files and/or a seeded sweep.
    Verify {
        /// Instance files; checked before any sweep instances.
        files: Vec<PathBuf>,
        /// Append this many generated sweep instances.
        #[arg(long)]
        sweep: Option<u64>,
        /// First sweep seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; results stay in instance order.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the CSV report here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Construct and print the robust witness for one base.
    Witness {
        file: PathBuf,
        /// Comma-separated left indices, e.g. `0,2`; `-` for the empty base.
        #[arg(long)]
        base: String,
        /// Directory for DOT renderings (exchange digraph and lifted graph).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Report the robustness threshold with a per-level table.
    Tau {
        file: PathBuf,
        /// Deepest union level to inspect; defaults to the instance's k.
        #[arg(long)]
        lmax: Option<usize>,
    },
}

fn main() -> ExitCode {
    if std::env::var("ROBUST_GUARD_OVERRIDE").is_ok_and(|v| v == "1") {
        guard::set_override(true);
    }
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { seed, left, right, edge_prob, wmax, k, out } => {
            let inst = generate(&GenParams { seed, left, right, edge_prob, wmax, k })?;
            match out {
                Some(path) => {
                    inst.write_file(&path)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", inst.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { files, sweep, seed, jobs, csv, json, inject_fault } => {
            cmd_verify(&files, sweep, seed, jobs, csv, json, inject_fault)
        }
        Command::Witness { file, base, dot } => cmd_witness(&file, &base, dot),
        Command::Tau { file, lmax } => cmd_tau(&file, lmax),
    }
}

fn cmd_verify(
    files: &[PathBuf],
    sweep: Option<u64>,
    seed: u64,
    jobs: usize,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
    inject_fault: bool,
) -> Result<ExitCode> {
    let mut instances: Vec<(String, Instance)> = Vec::new();
    for path in files {
        let id = path
            .file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        instances.push((id, Instance::parse_file(path)?));
    }
    let bounds = SweepBounds::default();
    for s in seed..seed + sweep.unwrap_or(0) {
        instances.push((format!("sweep-{s}"), sweep_instance(s, &bounds)));
    }

    let records = run_all(&instances, jobs, inject_fault)?;
    for r in &records {
        println!("{}", r.summary());
    }
    let failures = records.iter().filter(|r| r.failed()).count();
    println!("{} instance(s), {} failure(s)", records.len(), failures);

    if let Some(path) = csv {
        fs::write(&path, report::to_csv(&records)).map_err(|e| Error::Io(path.clone(), e))?;
    }
    if let Some(path) = json {
        fs::write(&path, report::to_json(&records)).map_err(|e| Error::Io(path.clone(), e))?;
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_all(
    instances: &[(String, Instance)],
    jobs: usize,
    inject_fault: bool,
) -> Result<Vec<ResultRecord>> {
    if jobs <= 1 || instances.len() <= 1 {
        return instances
            .iter()
            .map(|(id, inst)| run_checks(id, inst, inject_fault))
            .collect();
    }
    let next = AtomicUsize::new(0);
    let slots = Mutex::new(Vec::with_capacity(instances.len()));
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((id, inst)) = instances.get(i) else { break };
                let record = run_checks(id, inst, inject_fault);
                slots.lock().expect("worker panicked").push((i, record));
            });
        }
    });
    let mut tagged = slots.into_inner().expect("worker panicked");
    tagged.sort_by_key(|&(i, _)| i);
    tagged.into_iter().map(|(_, r)| r).collect()
}

fn parse_base(spec: &str, n: usize) -> Result<Subset> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "-" {
        return Ok(Subset::EMPTY);
    }
    let mut s = Subset::EMPTY;
    for token in spec.split(',') {
        let token = token.trim();
        let e: usize = token
            .parse()
            .map_err(|_| Error::Usage(format!("bad base element `{token}`")))?;
        if e >= n {
            return Err(Error::Usage(format!(
                "base element {e} is outside 0..{n}"
            )));
        }
        if s.contains(e) {
            return Err(Error::Usage(format!("base element {e} repeats")));
        }
        s = s.with(e);
    }
    Ok(s)
}

fn cmd_witness(file: &Path, base: &str, dot: Option<PathBuf>) -> Result<ExitCode> {
    let inst = Instance::parse_file(file)?;
    let b = parse_base(base, inst.graph.left_count())?;
    let lifted = LiftedGraph::new(&inst.graph, &inst.weights, inst.k)?;
    let (x, _) = lifted.optimal_base()?;
    let c = construct_witness(&inst.graph, &inst.weights, inst.k, x, b)?;
    print!("{}", render::witness_text(&c));
    if let Some(dir) = dot {
        fs::create_dir_all(&dir).map_err(|e| Error::Io(dir.clone(), e))?;
        for (name, text) in
            [("exchange.dot", render::digraph_dot(&c)), ("lifted.dot", render::lifted_dot(&c))]
        {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| Error::Io(path.clone(), e))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tau(file: &Path, lmax: Option<usize>) -> Result<ExitCode> {
    let inst = Instance::parse_file(file)?;
    let k = inst.k;
    let lmax = lmax.unwrap_or(k);
    let rk = rank(&TransversalOracle::new(&inst.graph)?);
    let levels = level_table(&inst.graph, &inst.weights, k, lmax)?;
    let tau = levels.iter().find(|d| d.robust_bases == d.optimal_bases).map(|d| d.level);

    println!("k          {k}");
    println!("rank       {rk}");
    println!("bound_k    {k}");
    println!("bound_hs22 {}", prior_bound(k, rk));
    match tau {
        Some(t) => println!("tau        {t}"),
        None => println!("tau        > {lmax}"),
    }
    println!("level  optimal_bases  robust_bases");
    for d in &levels {
        println!("{:<5}  {:<13}  {}", d.level, d.optimal_bases, d.robust_bases);
    }

    if lmax < k {
        println!("search capped at {lmax} < k; no verdict on the bound");
        return Ok(ExitCode::SUCCESS);
    }
    match tau {
        Some(t) if t <= k => {
            println!("threshold within the proven bound");
            Ok(ExitCode::SUCCESS)
        }
        Some(t) => {
            println!("FALSIFICATION CANDIDATE: tau = {t} exceeds k = {k}");
            Ok(ExitCode::from(1))
        }
        None => {
            println!("FALSIFICATION CANDIDATE: no level <= {lmax} has every optimal base robust");
            Ok(ExitCode::from(1))
        }
    }
}
