//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use penalty::parallel;
use penalty_core::consent::{probabilities_deterred, probabilities_partially_deterred, probabilities_undeterred};
use penalty_core::oracles::{
    grid_argmax, quadrature_pareto_probabilities, quadrature_welfare, verify_report, CheckStatus, McConfig,
    VerifyOptions,
};
use penalty_core::{
    bayes_equilibrium, consent_analysis_pi, consent_optimal_penalty, critical_weight, expected_welfare_man,
    expected_welfare_woman, man_welfare, pareto_probabilities, thresholds, welfare_optimal_penalty,
    welfare_optimal_penalty_pi, woman_optimal_penalty, woman_optimal_penalty_pi, woman_welfare, Agent,
    ConsentObjective, FormulaVariant, LinearConsent, ModelParams, Penalty, Regime, Sig,
};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

fn p0() -> ModelParams {
    ModelParams::new(1.0, 2.0, 0.3, 0.5, 1.0)
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Valid parameter sets with `α ∈ (0, 1]`.
fn random_params(count: usize, seed: u64) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g = 0.01 + 5.0 * unit(&mut rng);
            let k = 0.05 + 8.0 * unit(&mut rng);
            let m = (0.02 + 0.96 * unit(&mut rng)) / (1.0 + k);
            let mu = 0.05 + 0.9 * unit(&mut rng);
            let alpha = 1.0 - 0.99 * unit(&mut rng);
            ModelParams::new(g, k, m, mu, alpha)
        })
        .collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Collects failure messages for one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }
}

fn complete_points(p: &ModelParams) -> [f64; 7] {
    let t = thresholds(p);
    let w = woman_optimal_penalty(p).value();
    [0.0, t.lambda_pc / 2.0, t.lambda_pc, 0.5 * (t.lambda_pc + t.lambda_pi), t.lambda_pi, w, 2.0 * w]
}

fn private_points(p: &ModelParams) -> [f64; 7] {
    let bar = bayes_equilibrium(p, Penalty::ZERO).deterrence_penalty;
    [0.0, 0.25 * bar, 0.5 * bar, 0.75 * bar, 0.999 * bar, bar, 2.0 * bar]
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::default();
    let mut compared = 0;
    for p in random_params(100, SEED) {
        for l in complete_points(&p) {
            let pen = Penalty::new(l);
            let q = quadrature_welfare(&p, pen, Agent::Woman, Regime::Complete);
            o.check(close(woman_welfare(&p, pen), q, 1e-9), || format!("woman complete {p:?} λ={l}"));
            let q = quadrature_welfare(&p, pen, Agent::Man, Regime::Complete);
            o.check(close(man_welfare(&p, pen), q, 1e-9), || format!("man complete {p:?} λ={l}"));
        }
        for l in private_points(&p) {
            let pen = Penalty::new(l);
            let q = quadrature_welfare(&p, pen, Agent::Woman, Regime::Private);
            o.check(close(expected_welfare_woman(&p, pen), q, 1e-9), || format!("woman private {p:?} λ={l}"));
            let q = quadrature_welfare(&p, pen, Agent::Man, Regime::Private);
            o.check(close(expected_welfare_man(&p, pen), q, 1e-9), || format!("man private {p:?} λ={l}"));
        }
        compared += 28;
    }
    o.note(format!("{compared} quadrature comparisons at 1e-9"));

    let p = p0();
    let cfg = McConfig::new(1_000_000, 42).with_batches(8);
    let mut spots = Vec::new();
    for l in [0.0, 1.4, 2.0, 20.0 / 9.0, 4.0] {
        spots.push((Regime::Complete, Agent::Woman, l, woman_welfare(&p, Penalty::new(l))));
        spots.push((Regime::Complete, Agent::Man, l, man_welfare(&p, Penalty::new(l))));
    }
    for l in [0.0, 0.25, 0.5, 0.75, 1.2] {
        spots.push((Regime::Private, Agent::Woman, l, expected_welfare_woman(&p, Penalty::new(l))));
        spots.push((Regime::Private, Agent::Man, l, expected_welfare_man(&p, Penalty::new(l))));
    }
    let mut worst: f64 = 0.0;
    for &(regime, agent, l, closed) in &spots {
        let est = parallel::mc_welfare(&p, Penalty::new(l), agent, regime, &cfg);
        if est.std_error > 0.0 {
            worst = worst.max((est.mean - closed).abs() / est.std_error);
        }
        o.check(est.contains(closed, 3.0), || format!("MC {regime:?} {agent:?} λ={l}: {est:?} vs {closed}"));
    }
    o.note(format!("{} Monte Carlo spots (n=1e6, seed 42), worst |z| = {:.2}", spots.len(), worst));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::default();
    let names = [
        "threshold/lambda_pc",
        "threshold/lambda_pi",
        "threshold/woman_optimal",
        "threshold/lambda_bar",
        "threshold/accept_type",
        "threshold/breakeven_type",
    ];
    let mut sets = random_params(20, SEED + 2);
    sets.insert(0, p0());
    for p in &sets {
        let report = verify_report(p, &VerifyOptions::default());
        for name in names {
            match report.find(name) {
                Some(r) => o.check(
                    r.status == CheckStatus::Pass && (r.actual - r.expected).abs() <= 1e-6,
                    || format!("{name} {p:?}: {r:?}"),
                ),
                None => o.check(false, || format!("{name} missing")),
            }
        }
    }
    let p = p0();
    let t = thresholds(&p);
    let eq = bayes_equilibrium(&p, Penalty::ZERO);
    let values = [
        ("lambda_pc", t.lambda_pc, 1.111111),
        ("lambda_pi", t.lambda_pi, 1.666667),
        ("woman_optimal", woman_optimal_penalty(&p).value(), 2.222222),
        ("lambda_bar", eq.deterrence_penalty, 0.9),
        ("accept_type", eq.accept_threshold, 0.45),
        ("breakeven_type", eq.breakeven_threshold, 0.3),
    ];
    for (name, got, want) in values {
        o.check((got - want).abs() <= 1e-6, || format!("P0 {name}: {got} vs {want}"));
    }
    o.note(format!(
        "P0: {}",
        values.iter().map(|(n, v, _)| format!("{n}={}", Sig(*v))).collect::<Vec<_>>().join(", ")
    ));
    o
}

fn social_quadrature(p: &ModelParams, l: f64, regime: Regime) -> f64 {
    let pen = Penalty::new(l);
    p.man_weight * quadrature_welfare(p, pen, Agent::Man, regime)
        + (1.0 - p.man_weight) * quadrature_welfare(p, pen, Agent::Woman, regime)
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::default();
    let p = p0();
    let opt = welfare_optimal_penalty(&p);
    o.check(opt.penalty.value() == 0.0, || format!("G=1 optimum {:?}", opt.penalty));
    let grid = grid_argmax(|l| social_quadrature(&p, l, Regime::Complete), 0.0, 5.0, 1e-3);
    o.check(grid.arg == 0.0 && (grid.value - 0.2475).abs() < 1e-12, || format!("grid {grid:?}"));
    o.note(format!("G=1: optimum 0, grid max Π({}) = {}", grid.arg, Sig(grid.value)));

    let low = p.with_gratification(0.01);
    let opt = welfare_optimal_penalty(&low);
    let t = thresholds(&low);
    let hi = woman_optimal_penalty(&low).value();
    let l = opt.penalty.value();
    o.check(l > 0.0 && l >= t.lambda_pc && l <= hi, || format!("G=0.01 optimum {l}"));
    let grid = grid_argmax(|x| social_quadrature(&low, x, Regime::Complete), 0.0, 0.05, 1e-6);
    o.check((grid.arg - l).abs() <= 1e-6, || format!("G=0.01 grid {grid:?} vs {l}"));
    o.note(format!("G=0.01: optimum {} in [{}, {}]", Sig(l), Sig(t.lambda_pc), Sig(hi)));

    for k in [0.1, 1.0, 2.0, 10.0] {
        let q = ModelParams::new(1.0, k, 0.5 / (1.0 + k), 0.5, 1.0);
        for v in [FormulaVariant::AsPrinted, FormulaVariant::Rederived] {
            let mu = critical_weight(&q, v);
            o.check(mu > 0.0 && mu < 0.5, || format!("critical weight k={k} {v:?} = {mu}"));
        }
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::default();
    for p in random_params(100, SEED + 4) {
        let t = thresholds(&p);
        for alpha in [p.alpha, 1.0, 0.5, 0.01] {
            match consent_optimal_penalty(&p, alpha) {
                Ok(opt) => o.check(opt.penalty.value() >= t.lambda_pi && t.lambda_pi > 0.0, || {
                    format!("{p:?} α={alpha}: {} < {}", opt.penalty.value(), t.lambda_pi)
                }),
                Err(e) => o.check(false, || format!("{p:?} α={alpha}: {e}")),
            }
        }
        let at_one = consent_optimal_penalty(&p, 1.0).unwrap().penalty.value();
        let woman = woman_optimal_penalty(&p).value();
        o.check(close(at_one, woman, 1e-12), || format!("identity {p:?}: {at_one} vs {woman}"));
    }
    let p = p0();
    for alpha in [1.0, 0.5] {
        let objective = LinearConsent::new(alpha);
        let curve = |l: f64| objective.evaluate(&quadrature_pareto_probabilities(&p, Penalty::new(l), Regime::Complete));
        let grid = grid_argmax(curve, 0.0, 10.0, 1e-3);
        let closed = consent_optimal_penalty(&p, alpha).unwrap().penalty.value();
        o.check((grid.arg - closed).abs() <= 1e-3, || format!("α={alpha}: grid {} vs {closed}", grid.arg));
        o.note(format!("P0 α={alpha}: closed form {} vs grid {}", Sig(closed), Sig(grid.arg)));
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::default();
    let base = ModelParams::new(1.0, 9.0, 0.09, 0.5, 1.0);
    o.note(format!("{:>6} {:>14} {:>14} {:>18} {:>10}", "G", "woman_optimal", "welfare_opt", "consent_min", "(1+k)GM"));
    for g in [0.01, 0.1, 1.0, 10.0] {
        let p = base.with_gratification(g);
        let woman = woman_optimal_penalty_pi(&p).value();
        let welfare = welfare_optimal_penalty_pi(&p).penalty.value();
        let consent = consent_analysis_pi(&p, Penalty::ZERO, &LinearConsent::new(p.alpha))
            .map(|a| a.min_optimal_penalty.value())
            .unwrap_or(f64::NAN);
        let target = (1.0 + p.reward) * g * p.max_man_type;
        o.check(woman == 0.0, || format!("G={g}: woman-optimal {woman}"));
        o.check(welfare == 0.0, || format!("G={g}: welfare-optimal {welfare}"));
        o.check(consent == target, || format!("G={g}: consent minimum {consent} vs {target}"));

        // grid oracles over the expected-welfare curves
        let bar = bayes_equilibrium(&p, Penalty::ZERO).deterrence_penalty;
        let w = grid_argmax(|l| quadrature_welfare(&p, Penalty::new(l), Agent::Woman, Regime::Private), 0.0, 2.0 * bar, bar / 500.0);
        let s = grid_argmax(|l| social_quadrature(&p, l, Regime::Private), 0.0, 2.0 * bar, bar / 500.0);
        o.check(w.arg == 0.0 && s.arg == 0.0, || format!("G={g}: grid argmaxes {} {}", w.arg, s.arg));
        o.note(format!("{:>6} {:>14} {:>14} {:>18} {:>10}", g, woman, welfare, Sig(consent).to_string(), Sig(target).to_string()));
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::default();
    for p in random_params(100, SEED + 6) {
        let t = thresholds(&p);
        let pairs = [
            (probabilities_undeterred(&p), probabilities_partially_deterred(&p, t.lambda_pc)),
            (probabilities_partially_deterred(&p, t.lambda_pi), probabilities_deterred(&p, t.lambda_pi)),
        ];
        for (a, b) in pairs {
            o.check(
                (a.improving - b.improving).abs() <= 1e-9 && (a.conflicting - b.conflicting).abs() <= 1e-9,
                || format!("discontinuity {p:?}: {a:?} vs {b:?}"),
            );
        }
    }
    let p = p0();
    let cfg = McConfig::new(1_000_000, 42).with_batches(8);
    for (l, want) in [(1.0, (0.3, 0.15)), (1.4, (0.3, 0.130839)), (2.0, (0.291667, 0.069444))] {
        let c = pareto_probabilities(&p, Penalty::new(l));
        let mc = parallel::mc_pareto_probabilities(&p, Penalty::new(l), Regime::Complete, &cfg);
        let (e, s) = (mc.estimate, mc.std_error);
        o.check((e.improving - c.improving).abs() <= 3.0 * s.improving, || format!("λ={l} φ_PI MC {e:?}"));
        o.check((e.conflicting - c.conflicting).abs() <= 3.0 * s.conflicting, || format!("λ={l} φ_PC MC {e:?}"));
        o.check(
            (c.improving - want.0).abs() <= 1e-6 && (c.conflicting - want.1).abs() <= 1e-6,
            || format!("λ={l}: closed form {c:?} vs {want:?}"),
        );
        o.note(format!(
            "λ={l}: closed ({}, {}), MC ({}, {})",
            Sig(c.improving),
            Sig(c.conflicting),
            Sig(e.improving),
            Sig(e.conflicting)
        ));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::default();
    let report = verify_report(&p0(), &VerifyOptions::default());
    let flagged = [
        ("optimum/woman_welfare_value/as_printed", 0.05625, 0.07125),
        ("critical_gratification/as_printed", 0.075, 0.175),
        ("critical_weight/as_printed", 1.0 / 13.0, 28.0 / 172.0),
    ];
    for (name, expected, actual) in flagged {
        match report.find(name) {
            Some(r) => {
                o.check(r.status == CheckStatus::KnownDiscrepancy, || format!("{name} not flagged: {r:?}"));
                o.check(
                    (r.expected - expected).abs() < 1e-6 && (r.actual - actual).abs() < 1e-9,
                    || format!("{name}: {r:?}"),
                );
                o.note(format!("{name}: {} vs {} (delta {})", Sig(r.actual), Sig(r.expected), Sig(r.delta())));
            }
            None => o.check(false, || format!("{name} missing")),
        }
    }
    let delta = report.find("optimum/woman_welfare_value/as_printed").map(|r| r.delta()).unwrap_or(f64::NAN);
    let (k, m) = (2.0, 0.3);
    let predicted = m * m / 6.0 * k * k * k * k / ((2.0 + k) * (2.0 + k));
    o.check((delta - predicted).abs() < 1e-12 && (delta - 0.015).abs() < 1e-12, || format!("delta {delta}"));
    for name in ["optimum/woman_welfare_value/rederived", "critical_gratification/rederived", "critical_weight/rederived"] {
        o.check(report.find(name).is_some_and(|r| r.status == CheckStatus::Pass), || format!("{name} not passing"));
    }
    o.check(report.passed(), || format!("unexpected failures: {:?}", report.failures().collect::<Vec<_>>()));
    o
}

fn run_cli(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_penalty")).args(args).output().map(|o| o.status.success()).unwrap_or(false)
}

fn dir_bytes(dir: &Path, files: &[&str]) -> Vec<Vec<u8>> {
    files.iter().map(|f| fs::read(dir.join(f)).unwrap_or_default()).collect()
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::default();
    let tmp = tempfile::TempDir::new().expect("temp dir");
    let config = tmp.path().join("p0.json");
    fs::write(
        &config,
        r#"{"G": 1, "k": 2, "M": 0.3, "mu": 0.5, "alpha": 1, "regime": "complete",
            "lambda_grid": {"min": 0, "max": 5, "step": 0.01}, "monte_carlo": {"n": 200000, "seed": 42, "batches": 4}}"#,
    )
    .expect("write config");
    let cfg = config.to_str().unwrap();
    let files = ["welfare.csv", "consent.csv", "verify.json", "verify.txt"];
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let out = out.to_str().unwrap();
        o.check(run_cli(&["curves", "--config", cfg, "--out", out]), || format!("curves run {run} failed"));
        o.check(run_cli(&["verify", "--config", cfg, "--out", out]), || format!("verify run {run} failed"));
        outputs.push(dir_bytes(Path::new(out), &files));
    }
    for (i, f) in files.iter().enumerate() {
        o.check(!outputs[0][i].is_empty() && outputs[0][i] == outputs[1][i], || format!("{f} differs between runs"));
    }

    let p = p0();
    let base = McConfig::new(1_000_000, 42);
    let reference = parallel::mc_welfare(&p, Penalty::new(2.0), Agent::Woman, Regime::Complete, &base);
    let serial = penalty_core::oracles::mc_welfare(&p, Penalty::new(2.0), Agent::Woman, Regime::Complete, &base);
    o.check(reference == serial, || "threaded and serial estimates differ".into());
    for batches in [2, 3, 8, 16] {
        let est = parallel::mc_welfare(&p, Penalty::new(2.0), Agent::Woman, Regime::Complete, &base.with_batches(batches));
        o.check(est.mean.to_bits() == reference.mean.to_bits(), || format!("batches={batches} mean differs"));
        let probs = parallel::mc_pareto_probabilities(&p, Penalty::new(1.4), Regime::Complete, &base.with_batches(batches));
        let probs_ref = parallel::mc_pareto_probabilities(&p, Penalty::new(1.4), Regime::Complete, &base);
        o.check(probs == probs_ref, || format!("batches={batches} probabilities differ"));
    }
    o.note(format!("{} files byte-identical across runs; batches 1/2/3/8/16 agree bit for bit", files.len()));
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed-form/oracle equivalence", criterion_1),
        ("threshold reproduction", criterion_2),
        ("zero welfare-optimal penalty at high gratification", criterion_3),
        ("consent-optimal penalty", criterion_4),
        ("private-information contrast", criterion_5),
        ("category probabilities", criterion_6),
        ("inconsistency detection", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ok = outcome.failures.is_empty();
        all &= ok;
        println!("[{}] criterion {}: {} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, i + 1, name, start.elapsed().as_secs_f64());
        for n in &outcome.notes {
            println!("       {n}");
        }
        for f in outcome.failures.iter().take(10) {
            println!("       failure: {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
