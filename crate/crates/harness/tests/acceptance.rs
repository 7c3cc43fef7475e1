//! Acceptance gate. Each test prints one `PASS`/`FAIL` line and then asserts.
//! Run with `--nocapture` to see the lines.

use std::path::Path;
use std::process::Command;

use rand::Rng;
use softfusion::ga::{crossover_at, mutate, mutation_count, roulette_select, Chromosome};
use softfusion::seeding::rng_from_seed;
use softfusion::*;
use softfusion_harness::roc::run_roc;
use softfusion_harness::validate::run_validation;
use softfusion_harness::ExperimentConfig;

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id} [{name}]: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} [{name}] failed: {detail}");
}

#[test]
fn c1_gaussian_model_matches_monte_carlo() {
    let mut cfg = ExperimentConfig::default();
    cfg.scenario.users = 6;
    cfg.validate.trials = 100_000;
    assert_eq!(cfg.scenario.sample_count().unwrap(), 300);
    let mut worst = 0.0_f64;
    for scheme in [Scheme::Ndc, Scheme::Egc] {
        cfg.validate.scheme = scheme;
        let rows = run_validation(&cfg).unwrap();
        assert_eq!(rows.len(), 5);
        worst = rows.iter().map(|r| r.max_error()).fold(worst, f64::max);
    }
    report(
        1,
        "oracle equivalence",
        worst <= 0.01,
        &format!("max |analytic - empirical| = {worst:.5}, tol 0.01"),
    );
}

#[test]
fn c2_pd_pf_round_trip() {
    // Triples whose Pd rounds to exactly 1.0 have no inverse and are redrawn.
    let mut rng = rng_from_seed(2024);
    let (mut worst, mut done, mut saturated) = (0.0_f64, 0, 0);
    let mut k = 0u64;
    while done < 1000 {
        k += 1;
        let users = rng.random_range(1..=18);
        let lo = rng.random_range(-25.0..-10.0);
        let spec = ScenarioSpec::default()
            .with_users(users)
            .with_snr_db(lo, rng.random_range(lo..=-10.0));
        let st = statistics(&generate_scenario::<f64>(&spec, k).unwrap());
        let raw: Vec<f64> = (0..users).map(|_| rng.random_range(0.0..1.0)).collect();
        let Ok(w) = normalize(&raw) else { continue };
        let pf = rng.random_range(0.01..0.99);
        let pd = pd_given_pf(&w, &st, pf).unwrap();
        if pd >= 1.0 {
            saturated += 1;
            continue;
        }
        let back = pf_given_pd(&w, &st, pd).unwrap();
        worst = worst.max((back - pf).abs());
        done += 1;
    }
    report(
        2,
        "round trip",
        worst <= 1e-9,
        &format!("max |pf' - pf| = {worst:.3e} over 1000 triples ({saturated} saturated redrawn), tol 1e-9"),
    );
}

#[test]
fn c3_two_user_ga_matches_grid_search() {
    let spec = ScenarioSpec::default()
        .with_users(2)
        .with_snr_db(-20.0, -10.0);
    let pf = 0.25;
    let steps = (std::f64::consts::FRAC_PI_2 / 1e-4).ceil() as usize;
    let mut worst = 0.0_f64;
    for seed in 0..20u64 {
        let st = statistics(&generate_scenario::<f64>(&spec, seed).unwrap());
        let grid = (0..=steps)
            .map(|k| {
                let phi = (k as f64 * 1e-4).min(std::f64::consts::FRAC_PI_2);
                pd_given_pf_raw(&[phi.cos(), phi.sin()], &st, pf).unwrap()
            })
            .fold(0.0, f64::max);
        let cfg = GaConfig {
            users: 2,
            pf_target: pf,
            seed: 500 + seed,
            ..GaConfig::default()
        };
        let run = run_bga(&st, &cfg).unwrap();
        worst = worst.max((grid - run.best_fitness).abs());
    }
    report(
        3,
        "M=2 brute force",
        worst <= 1e-3,
        &format!("max |grid - GA| = {worst:.3e} over 20 scenarios, tol 1e-3"),
    );
}

#[test]
fn c4_scheme_ordering() {
    let cfg = ExperimentConfig {
        scenario: ScenarioSpec::default()
            .with_users(6)
            .with_snr_db(-20.0, -10.0),
        realizations: 1000,
        pf_grid: vec![0.1, 0.25, 0.5],
        schemes: vec![
            Scheme::Bga,
            Scheme::Ndc,
            Scheme::Mdc,
            Scheme::Mrc,
            Scheme::Egc,
            Scheme::OrRule,
        ],
        ..Default::default()
    };
    let curves = run_roc(&cfg).unwrap();
    let pd = |s: Scheme, pf: f64| {
        curves
            .iter()
            .find(|c| c.scheme == s)
            .unwrap()
            .pd_at(pf)
            .unwrap()
    };

    let chain = [
        Scheme::Bga,
        Scheme::Ndc,
        Scheme::Mrc,
        Scheme::Egc,
        Scheme::OrRule,
    ];
    let mut ok = true;
    let mut min_gap = f64::INFINITY;
    let mut mdc_gap = f64::INFINITY;
    for &pf in &cfg.pf_grid {
        let row: Vec<String> = chain
            .iter()
            .map(|&s| format!("{}={:.4}", s, pd(s, pf)))
            .collect();
        println!(
            "  pf={pf}: {} MDC={:.4}",
            row.join(" "),
            pd(Scheme::Mdc, pf)
        );
        for w in chain.windows(2) {
            let gap = pd(w[0], pf) - pd(w[1], pf);
            min_gap = min_gap.min(gap);
            ok &= gap >= -0.005;
        }
        mdc_gap = mdc_gap.min(pd(Scheme::Ndc, pf) - pd(Scheme::Mdc, pf));
    }
    let mdc_ok = mdc_gap >= -0.01;
    report(
        4,
        "scheme ordering",
        ok && mdc_ok,
        &format!("min adjacent gap {min_gap:.5} (tol -0.005), min NDC-MDC {mdc_gap:.5} (tol -0.01), R=1000"),
    );
}

#[test]
fn c5_convergence_at_reference_config() {
    let cfg = ExperimentConfig::default();
    let s = softfusion_harness::roc::realization_scenario(&cfg, 0).unwrap();
    assert_eq!(s.users(), 18);
    let st = statistics(&s);
    let mut finals = Vec::new();
    let mut monotone = true;
    for seed in 0..10u64 {
        let ga = GaConfig {
            seed,
            ..GaConfig::default()
        };
        assert_eq!(
            (ga.pops, ga.nbits, ga.users, ga.generations),
            (50, 10, 18, 200)
        );
        let run = run_bga(&st, &ga).unwrap();
        assert_eq!(run.trace.len(), 200);
        monotone &= run.trace.windows(2).all(|w| w[1].best >= w[0].best);
        finals.push(run.trace.last().unwrap().best);
    }
    let min = finals.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = finals.iter().cloned().fold(0.0, f64::max);
    report(
        5,
        "convergence",
        monotone && min >= 0.95 && max >= 0.99,
        &format!("non-decreasing={monotone}, final best min {min:.5} (>= 0.95), max {max:.5} (>= 0.99 on one of 10 seeds)"),
    );
}

fn bits8(x: u8) -> Chromosome {
    Chromosome::new((0..8).rev().map(|k| (x >> k) & 1 == 1).collect())
}

#[test]
fn c6_ga_properties() {
    // Elitism: population best never drops, on 100 random configurations.
    let mut rng = rng_from_seed(6);
    let (mut elitism, mut runs) = (true, 0);
    for k in 0.. {
        if runs == 100 {
            break;
        }
        let users = rng.random_range(2..=8);
        let spec = ScenarioSpec::default().with_users(users);
        let st = statistics(&generate_scenario::<f64>(&spec, 1000 + k).unwrap());
        let pops = 2 * rng.random_range(2..=15);
        let reproduction = [0.5, 0.6, 0.7, 0.8, 0.9][rng.random_range(0..5)];
        let ga = GaConfig {
            users,
            pops,
            nbits: rng.random_range(2..=10),
            crossover_rate: rng.random_range(0.5..1.0),
            mutation_rate: rng.random_range(0.0..0.5),
            reproduction,
            generations: 30,
            pf_target: rng.random_range(0.05..0.9),
            seed: k,
        };
        if ga.validate().is_err() || ga.elite_count() == 0 {
            continue;
        }
        let run = run_bga(&st, &ga).unwrap();
        elitism &= run.trace.windows(2).all(|w| w[1].best >= w[0].best);
        runs += 1;
    }

    // Crossover: every 8-bit parent pair and every cut-point pair.
    let mut xor = true;
    for a in 0..=255u8 {
        for b in 0..=255u8 {
            let (ma, pa) = (bits8(a), bits8(b));
            for p1 in 0..=8 {
                for p2 in p1..=8 {
                    let (c1, c2) = crossover_at(&ma, &pa, p1, p2);
                    xor &= (0..8).all(|i| {
                        c1.bits[i] ^ c2.bits[i] == ma.bits[i] ^ pa.bits[i]
                            && (c1.bits[i] | c2.bits[i]) == (ma.bits[i] | pa.bits[i])
                    });
                }
            }
        }
    }

    // Mutation: Hamming distance equals the scheduled flip count, elites untouched.
    let mut flips = true;
    for (pops, len, rate, elites) in [
        (50, 180, 0.01, 5),
        (20, 40, 0.1, 2),
        (10, 8, 0.3, 1),
        (30, 60, 0.05, 3),
    ] {
        let mut pop: Vec<Chromosome> = (0..pops)
            .map(|_| Chromosome::new((0..len).map(|_| rng.random_bool(0.5)).collect()))
            .collect();
        let before = pop.clone();
        let n = mutate(&mut pop, elites, rate, &mut rng);
        let hamming: usize = before
            .iter()
            .zip(&pop)
            .map(|(a, b)| a.bits.iter().zip(&b.bits).filter(|(x, y)| x != y).count())
            .sum();
        flips &= n == mutation_count(rate, pops, len)
            && hamming == n
            && before[..elites] == pop[..elites];
    }

    // Roulette: frequencies proportional to fitness.
    let fitness = [0.1_f64, 0.2, 0.3, 0.4];
    let draws = 100_000;
    let picks = roulette_select(&fitness, draws, &mut rng);
    let mut roulette_err = 0.0_f64;
    for (k, f) in fitness.iter().enumerate() {
        let freq = picks.iter().filter(|&&i| i == k).count() as f64 / draws as f64;
        roulette_err = roulette_err.max((freq - f / fitness.iter().sum::<f64>()).abs());
    }

    report(
        6,
        "GA properties",
        elitism && xor && flips && roulette_err <= 0.01,
        &format!("elitism={elitism} ({runs} runs) xor={xor} flips={flips} roulette max err {roulette_err:.4} (tol 0.01)"),
    );
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_softfusion"))
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn c7_cli_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{
  "scenario": {"users": 4},
  "realizations": 4,
  "pf_grid": [0.1, 0.25, 0.5],
  "ga": {"generations": 15, "pops": 20},
  "sweep": {"repetitions": 2, "nbits": [4, 8], "pops": [10, 20], "crossover_rate": [0.5, 0.9],
            "mutation_rate": [0.01, 0.2], "reproduction": [0.5, 0.9]},
  "validate": {"trials": 2000}
}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let (cfg, out_s) = (config.to_str().unwrap(), out.to_str().unwrap());

    let cases: [(&str, &[&str], &[&str]); 6] = [
        ("scenario", &[], &["scenario.json"]),
        ("roc", &[], &["roc.csv", "roc.meta.json"]),
        ("roc", &["--fast"], &["roc.csv", "roc.meta.json"]),
        ("converge", &[], &["converge.csv", "converge.meta.json"]),
        ("sweep", &[], &["sweep.csv", "sweep.meta.json"]),
        ("validate", &[], &["validate.csv", "validate.meta.json"]),
    ];
    let mut mismatches = Vec::new();
    for (cmd, extra, files) in cases {
        let mut args = vec![cmd, "--config", cfg, "--seed", "42", "--out", out_s];
        args.extend_from_slice(extra);
        let stdout1 = run_cli(&args);
        let first: Vec<Vec<u8>> = files.iter().map(|f| read(&out.join(f))).collect();
        let stdout2 = run_cli(&args);
        let second: Vec<Vec<u8>> = files.iter().map(|f| read(&out.join(f))).collect();
        if stdout1 != stdout2 || first != second {
            mismatches.push(cmd);
        }
    }
    let header = String::from_utf8(read(&out.join("roc.csv"))).unwrap();
    assert!(header.starts_with("scheme,pf,pd_mean,pd_stderr,realizations\n"));
    report(
        7,
        "determinism",
        mismatches.is_empty(),
        &format!("6 subcommand invocations rerun, mismatches: {mismatches:?}"),
    );
}
