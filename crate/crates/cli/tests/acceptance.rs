//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use dioswarm::oracle::{enumerate_solutions, DEFAULT_BUDGET};
use dioswarm::rng::SwarmRng;
use dioswarm::telemetry::{sweep, SweepVariable};
use dioswarm::{parse_equation, run, DiophantineEquation, Fitness, SignConvention, SwarmConfig, SwarmState, Term};

/// Equations with two variables and degree 2..15, with the reported solution.
const VARYING_DEGREE: [(u32, u128, [u64; 2]); 14] = [
    (2, 625, [24, 7]),
    (3, 1008, [2, 10]),
    (4, 1921, [6, 5]),
    (5, 19932, [5, 7]),
    (6, 47385, [6, 3]),
    (7, 4799353, [9, 4]),
    (8, 16777472, [2, 8]),
    (9, 1000019683, [3, 10]),
    (10, 1356217073, [7, 8]),
    (11, 411625181, [6, 5]),
    (12, 244144721, [5, 2]),
    (13, 1222297448, [3, 5]),
    (14, 268451840, [2, 4]),
    (15, 1088090731, [4, 3]),
];

/// Sums of 2..12 squares, with the reported solution (row 3's has the wrong arity).
const VARYING_VARIABLES: [(usize, u128, &[u64]); 11] = [
    (2, 149, &[7, 10]),
    (3, 244, &[6, 12, 8]),
    (4, 295, &[2, 11, 11]),
    (5, 325, &[14, 10, 4, 2, 3]),
    (6, 420, &[3, 16, 7, 9, 3, 4]),
    (7, 450, &[12, 6, 6, 7, 4, 5, 12]),
    (8, 590, &[7, 9, 7, 12, 13, 8, 5, 3]),
    (9, 720, &[9, 12, 11, 16, 2, 5, 2, 2, 9]),
    (10, 956, &[12, 4, 14, 8, 13, 3, 11, 13, 8, 2]),
    (11, 1502, &[23, 7, 5, 18, 14, 10, 9, 6, 7, 8, 7]),
    (12, 3842, &[26, 4, 14, 3, 16, 14, 43, 17, 11, 11, 8, 7]),
];

const SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
const POPULATION: usize = 40;
const MAX_GENERATIONS: u64 = 50_000;
const MIN_SUCCESSES: usize = 8;
const RUN_TIME_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(120);
const MIN_PARTICLE_STEPS: u64 = 100_000;
const MAX_INVERSIONS: usize = 1;

fn squares_text(n: usize, target: u128) -> String {
    let terms: Vec<String> = (1..=n).map(|i| format!("x{i}^2")).collect();
    format!("{} = {target}", terms.join(" + "))
}

fn degree_text(p: u32, target: u128) -> String {
    format!("x1^{p} + x2^{p} = {target}")
}

struct CliRun {
    stdout: String,
    code: Option<i32>,
    elapsed: Duration,
}

fn dioswarm(args: &[&str]) -> CliRun {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_dioswarm"))
        .args(args)
        .output()
        .expect("binary runs");
    CliRun {
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        code: out.status.code(),
        elapsed: start.elapsed(),
    }
}

fn printed_solutions(text: &str) -> Vec<Vec<u64>> {
    text.lines()
        .filter(|l| l.starts_with("solution "))
        .map(|l| {
            let inner = &l[l.find('(').unwrap() + 1..l.find(')').unwrap()];
            inner.split(", ").map(|d| d.parse().unwrap()).collect()
        })
        .collect()
}

/// Runs `solve` over seeds 1..=10 and counts seeds whose first printed
/// solution re-verifies under exact arithmetic.
fn solve_success(text: &str) -> Result<(usize, Duration), String> {
    let eq = parse_equation(text).map_err(|e| e.to_string())?;
    let mut successes = 0;
    let mut slowest = Duration::ZERO;
    for seed in SEEDS {
        let seed = seed.to_string();
        let pop = POPULATION.to_string();
        let gens = MAX_GENERATIONS.to_string();
        let run = dioswarm(&["solve", text, "--pop", &pop, "--max-gen", &gens, "--seed", &seed]);
        slowest = slowest.max(run.elapsed);
        if run.elapsed >= RUN_TIME_LIMIT {
            return Err(format!("{text} seed {seed} took {:?}", run.elapsed));
        }
        let found = printed_solutions(&run.stdout);
        let verified = !found.is_empty() && found.iter().all(|s| eq.fitness(s) == Ok(0));
        if verified && run.code == Some(0) {
            successes += 1;
        }
    }
    Ok((successes, slowest))
}

fn criterion_1() -> Result<String, String> {
    let mut worst = usize::MAX;
    let mut slowest = Duration::ZERO;
    for (p, n, _) in VARYING_DEGREE {
        let text = degree_text(p, n);
        let (ok, t) = solve_success(&text)?;
        if ok < MIN_SUCCESSES {
            return Err(format!("{text}: {ok}/10 seeds solved"));
        }
        worst = worst.min(ok);
        slowest = slowest.max(t);
    }
    Ok(format!("14 equations, worst {worst}/10 seeds, slowest run {slowest:?}"))
}

fn criterion_2() -> Result<String, String> {
    let mut rows = Vec::new();
    for (row, (n, target, printed)) in VARYING_VARIABLES.iter().enumerate() {
        let eq = DiophantineEquation::uniform(*n, 2, *target).unwrap();
        if eq.is_solution(printed).unwrap_or(false) {
            rows.push(row + 1);
            let (ok, _) = solve_success(&squares_text(*n, *target))?;
            if ok < MIN_SUCCESSES {
                return Err(format!("row {} ({n} variables): {ok}/10", row + 1));
            }
        }
    }
    for required in [1, 2, 4] {
        if !rows.contains(&required) {
            return Err(format!("row {required} did not verify"));
        }
    }
    Ok(format!("rows {rows:?} each solved on >= {MIN_SUCCESSES}/10 seeds"))
}

fn criterion_3() -> Result<String, String> {
    let mut instances: Vec<DiophantineEquation> = VARYING_DEGREE
        .iter()
        .map(|&(p, n, _)| DiophantineEquation::uniform(2, p, n).unwrap())
        .collect();
    instances.extend(
        VARYING_VARIABLES
            .iter()
            .map(|&(n, t, _)| DiophantineEquation::uniform(n, 2, t).unwrap()),
    );
    let mut checked = 0;
    let mut reported = 0;
    for eq in instances {
        let space = (eq.particle_range() as u128).checked_pow(eq.arity() as u32);
        if space.is_none_or(|s| s > 1_000_000) {
            continue;
        }
        let truth = enumerate_solutions(&eq, DEFAULT_BUDGET);
        if !truth.exhausted {
            return Err(format!("oracle did not exhaust {eq}"));
        }
        let quota = truth.solutions.len().clamp(1, 8);
        for seed in SEEDS {
            let cfg = SwarmConfig::default().with_seed(seed).with_max_solutions(quota);
            for s in run(&eq, &cfg).map_err(|e| e.to_string())?.solutions {
                reported += 1;
                if truth.solutions.binary_search(&s).is_err() {
                    return Err(format!("{eq}: {s:?} not in oracle set"));
                }
            }
        }
        checked += 1;
    }
    if checked < VARYING_DEGREE.len() {
        return Err(format!("only {checked} instances qualified"));
    }
    Ok(format!(
        "{checked} instances, {reported} reported solutions, 0 violations"
    ))
}

fn criterion_4() -> Result<String, String> {
    let run = dioswarm(&["oracle", "x1^2+x2^2=625", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).map_err(|e| e.to_string())?;
    let got: Vec<Vec<u64>> = serde_json::from_value(v["solutions"].clone()).map_err(|e| e.to_string())?;
    let expected = vec![vec![7, 24], vec![15, 20], vec![20, 15], vec![24, 7]];
    if got != expected || v["exhausted"] != true || run.code != Some(0) {
        return Err(format!("got {got:?}, exhausted {}", v["exhausted"]));
    }
    Ok("exactly {(7,24),(15,20),(20,15),(24,7)}, exhausted".into())
}

fn random_equation(rng: &mut SwarmRng) -> DiophantineEquation {
    loop {
        let n = rng.uniform_inclusive(1, 6) as usize;
        let target = rng.uniform_inclusive(1, 1_000_000_000) as u128;
        let terms = (0..n)
            .map(|_| Term::new(rng.uniform_inclusive(1, 20), rng.uniform_inclusive(1, 6) as u32))
            .collect();
        if let Ok(eq) = DiophantineEquation::new(terms, target) {
            return eq;
        }
    }
}

/// Drives random swarms for at least `MIN_PARTICLE_STEPS` particle-steps,
/// checking feasibility, the velocity bound, pbest and gbest monotonicity.
fn invariant_sweep(sign: SignConvention, meta_seed: u64) -> Result<String, String> {
    let mut meta = SwarmRng::seed_from(meta_seed);
    let mut steps = 0u64;
    let mut equations = 0;
    while steps < MIN_PARTICLE_STEPS {
        let eq = random_equation(&mut meta);
        let cfg = SwarmConfig::default()
            .with_population(meta.uniform_inclusive(2, 40) as usize)
            .with_seed(meta.next_u64())
            .with_sign(sign)
            .with_max_solutions(usize::MAX);
        let mut state = SwarmState::new(&eq, &cfg).map_err(|e| e.to_string())?;
        state.check_invariants().map_err(|e| format!("{eq}: {e}"))?;
        for _ in 0..100 {
            let pbest: Vec<Fitness> = state.particles().iter().map(|p| p.pbest_fitness).collect();
            let gbest = state.gbest_fitness();
            let rec = state.step_generation().map_err(|e| e.to_string())?;
            steps += state.particles().len() as u64;
            state.check_invariants().map_err(|e| format!("{eq}: {e}"))?;
            if rec.harvests == 0 {
                if state.particles().iter().zip(&pbest).any(|(p, &b)| p.pbest_fitness > b) {
                    return Err(format!("{eq}: pbest increased without a harvest"));
                }
                if state.gbest_fitness() > gbest {
                    return Err(format!("{eq}: gbest increased without a harvest"));
                }
            }
        }
        equations += 1;
    }
    Ok(format!("{steps} particle-steps over {equations} random equations"))
}

fn criterion_5() -> Result<String, String> {
    invariant_sweep(SignConvention::Standard, 5)
}

fn criterion_6() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let trace = dir.path().join("trace.csv");
    let sweep_out = dir.path().join("sweep.csv");
    let trace_arg = trace.to_str().unwrap().to_string();
    let sweep_arg = sweep_out.to_str().unwrap().to_string();
    let solve_625: Vec<&str> = vec![
        "solve",
        "x1^2+x2^2=625",
        "--pop",
        "40",
        "--max-gen",
        "50000",
        "--max-solutions",
        "4",
        "--seed",
        "7",
        "--trace",
        &trace_arg,
    ];
    let solve_4500 = vec!["solve", "x1^2+x2^2=4500", "--max-solutions", "3", "--trace", &trace_arg];
    let solve_json = vec![
        "solve",
        "2*x1^2 + 6*x2^3 + x3^2 = 1825",
        "--seed",
        "3",
        "--json",
        "--trace",
        &trace_arg,
    ];
    let solve_paper = vec![
        "solve",
        "x1^2+x2^2=3",
        "--max-gen",
        "100",
        "--sign",
        "paper",
        "--trace",
        &trace_arg,
    ];
    let oracle = vec!["oracle", "x1^3+x2^3=1008"];
    let sweep_file = vec![
        "sweep",
        "x1^2+x2^2=2600",
        "--var",
        "pop",
        "--values",
        "10:100:10",
        "--seeds",
        "30",
        "--out",
        &sweep_arg,
    ];
    let sweep_stdout = vec!["sweep", "x1^2+x2^2=2600", "--values", "40", "--seeds", "1"];
    let invocations = [
        solve_625,
        solve_4500,
        solve_json,
        solve_paper,
        oracle,
        sweep_file,
        sweep_stdout,
    ];
    for args in &invocations {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let _ = std::fs::remove_file(&trace);
            let _ = std::fs::remove_file(&sweep_out);
            let run = dioswarm(args);
            let files = (std::fs::read(&trace).ok(), std::fs::read(&sweep_out).ok());
            outputs.push((run.stdout, run.code, files));
        }
        if outputs[0] != outputs[1] {
            return Err(format!("outputs differ for {args:?}"));
        }
    }
    Ok(format!(
        "{} invocations byte-identical across two executions",
        invocations.len()
    ))
}

fn criterion_7() -> Result<String, String> {
    let eq = DiophantineEquation::uniform(2, 2, 2600).unwrap();
    let start = Instant::now();
    let report = sweep(
        &eq,
        &SwarmConfig::default().with_seed(1),
        SweepVariable::PopulationSize,
        &[10, 50],
        30,
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (small, large) = (&report.cells[0], &report.cells[1]);
    if elapsed >= SWEEP_TIME_LIMIT {
        return Err(format!("sweep took {elapsed:?}"));
    }
    if small.mean_generations.partial_cmp(&large.mean_generations) != Some(std::cmp::Ordering::Greater) {
        return Err(format!(
            "mean at pop 10 = {}, at pop 50 = {}",
            small.mean_generations, large.mean_generations
        ));
    }
    Ok(format!(
        "mean generations pop 10 = {:.2} > pop 50 = {:.2} ({elapsed:?})",
        small.mean_generations, large.mean_generations
    ))
}

fn criterion_8() -> Result<String, String> {
    let base = SwarmConfig::default()
        .with_population(POPULATION)
        .with_max_generations(MAX_GENERATIONS);

    let mut rates = Vec::new();
    for &(p, n, _) in &VARYING_DEGREE[..9] {
        let eq = DiophantineEquation::uniform(2, p, n).unwrap();
        let report = sweep(
            &eq,
            &base.clone().with_seed(*SEEDS.start()),
            SweepVariable::PopulationSize,
            &[POPULATION as u64],
            SEEDS.count(),
        )
        .map_err(|e| e.to_string())?;
        rates.push(report.cells[0].success_rate());
    }
    if let Some((i, r)) = rates.iter().enumerate().find(|(_, &r)| r < rates[0]) {
        return Err(format!(
            "success rate at degree {} is {r}, below degree 2's {}",
            i + 2,
            rates[0]
        ));
    }

    let mut means = Vec::new();
    for &(n, target, _) in &VARYING_VARIABLES[..8] {
        let eq = DiophantineEquation::uniform(n, 2, target).unwrap();
        let report = sweep(
            &eq,
            &base.clone().with_seed(1),
            SweepVariable::PopulationSize,
            &[POPULATION as u64],
            30,
        )
        .map_err(|e| e.to_string())?;
        means.push(report.cells[0].mean_generations);
    }
    let inversions = means.windows(2).filter(|w| w[1] < w[0]).count();
    let shown: Vec<String> = means.iter().map(|m| format!("{m:.2}")).collect();
    if inversions > MAX_INVERSIONS {
        return Err(format!("{inversions} inversions in means {shown:?}"));
    }
    Ok(format!(
        "degree 2..10 success rates {rates:?}; mean generations for n = 2..9: {shown:?} ({inversions} inversion)"
    ))
}

fn criterion_9() -> Result<String, String> {
    let detail = invariant_sweep(SignConvention::PaperLiteral, 9)?;
    let mut completed = 0;
    for (p, n, _) in VARYING_DEGREE {
        let eq = DiophantineEquation::uniform(2, p, n).unwrap();
        let cfg = SwarmConfig::default()
            .with_sign(SignConvention::PaperLiteral)
            .with_seed(1)
            .with_max_generations(2_000);
        let result = run(&eq, &cfg).map_err(|e| e.to_string())?;
        if result.solutions.iter().any(|s| eq.fitness(s) != Ok(0)) {
            return Err(format!("{eq}: invalid solution"));
        }
        completed += 1;
    }
    Ok(format!("{detail}; {completed} varying-degree runs completed"))
}

type Criterion = (u32, &'static str, fn() -> Result<String, String>);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "varying-degree equations solved on >= 8/10 seeds", criterion_1),
        (2, "varying-variable equations solved on >= 8/10 seeds", criterion_2),
        (3, "solver solutions lie in the oracle set", criterion_3),
        (4, "oracle ground truth for x1^2+x2^2=625", criterion_4),
        (5, "invariants over >= 1e5 particle-steps", criterion_5),
        (6, "byte-identical repeated invocations", criterion_6),
        (7, "population 10 slower than population 50", criterion_7),
        (8, "degree insensitivity, variable sensitivity", criterion_8),
        (9, "reversed-sign mode completes with invariants", criterion_9),
    ];
    let mut failures = BTreeSet::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {id}: {name} -- {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                println!("FAIL criterion {id}: {name} -- {why}");
                failures.insert(id);
            }
        }
    }
    if !failures.is_empty() {
        println!("{} criteria failed: {failures:?}", failures.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
