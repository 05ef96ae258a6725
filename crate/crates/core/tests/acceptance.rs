//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! when any criterion fails.
//!
//! Run with `cargo test --release --test acceptance`.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_rational::Rational64;
use rand::Rng;

use psyco::cmdp::{rollout, Episode, Horizon};
use psyco::envs::{BernoulliToy, ObstacleRun, ParticleDance};
use psyco::harness::{train, EnvKind, ExperimentConfig, MetricsRow, Mode, RepetitionResult};
use psyco::pctl::{
    cumulative_cost, cumulative_cost_with, satisfies, CostFunction, Labeling, PathFormula, StateFormula,
};
use psyco::seed::stream;
use psyco::snes::{lambda_confidence, lambda_mle};
use psyco::verify::{bayesian_verify, Outcome};
use psyco::{beta_cdf, parse_requirement, PolicyParams};

struct Outcome_ {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome_ {
    Outcome_ {
        passed,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// 1. zero cumulative cost iff the episode satisfies the path formula

const ATOMS: [&str; 3] = ["a", "b", "c"];

fn bit_labeling(atoms: usize) -> Labeling<u8> {
    (0..atoms).fold(Labeling::new(), |lab, i| {
        lab.with(ATOMS[i], move |s: &u8| s >> i & 1 == 1)
    })
}

fn random_state_formula<R: Rng>(rng: &mut R, atoms: usize, depth: u32) -> StateFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.1) {
            StateFormula::True
        } else {
            StateFormula::atom(ATOMS[rng.gen_range(0..atoms)])
        };
    }
    match rng.gen_range(0..3) {
        0 => StateFormula::not(random_state_formula(rng, atoms, depth - 1)),
        1 => StateFormula::and(
            random_state_formula(rng, atoms, depth - 1),
            random_state_formula(rng, atoms, depth - 1),
        ),
        _ => StateFormula::or(
            random_state_formula(rng, atoms, depth - 1),
            random_state_formula(rng, atoms, depth - 1),
        ),
    }
}

fn criterion_zero_cost() -> Outcome_ {
    let start = Instant::now();
    let mut rng = stream(2024, &[1]);
    let episodes = 12_000;
    let (mut checked, mut failures) = (0u64, 0u64);
    let severity = CostFunction::with_severity(|s: &u8| 0.5 + f64::from(*s));
    for _ in 0..episodes {
        let atoms = rng.gen_range(2..=3);
        let lab = bit_labeling(atoms);
        let len = rng.gen_range(1..=10);
        let path: Vec<u8> = (0..=len).map(|_| rng.gen_range(0..(1u8 << atoms))).collect();
        let e = Episode::from_path(&path);
        let bound = rng.gen_range(0..=12);
        let mut f = || random_state_formula(&mut rng, atoms, 3);
        let forms = [
            PathFormula::Next(f()),
            PathFormula::Until(f(), f()),
            PathFormula::BoundedUntil(f(), f(), bound),
            PathFormula::Always(f()),
            PathFormula::Eventually(f()),
        ];
        for phi in &forms {
            let sat = satisfies(&e, phi, &lab).unwrap();
            let unit = cumulative_cost(&e, phi, &lab).unwrap();
            let weighted = cumulative_cost_with(&e, phi, &lab, &severity).unwrap();
            checked += 1;
            if sat != (unit == 0.0) || sat != (weighted == 0.0) {
                failures += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failures == 0 && secs < 10.0,
        format!("{episodes} episodes, {checked} formula checks, {failures} failures, {secs:.2} s (limit 10 s)"),
    )
}

// ---------------------------------------------------------------------------
// 2. exhaustive path enumeration on a rational Markov chain

type Chain = [[Rational64; 3]; 3];

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn chains() -> Vec<Chain> {
    vec![
        [
            [r(1, 2), r(1, 4), r(1, 4)],
            [r(1, 3), r(1, 3), r(1, 3)],
            [r(0, 1), r(3, 8), r(5, 8)],
        ],
        [
            [r(7, 10), r(1, 5), r(1, 10)],
            [r(1, 6), r(1, 2), r(1, 3)],
            [r(2, 9), r(4, 9), r(1, 3)],
        ],
    ]
}

/// `P(G phi)` by forward propagation over the states satisfying `phi`.
fn always_by_propagation(chain: &Chain, start: usize, good: u8, steps: usize) -> Rational64 {
    let ok = |s: usize| good >> s & 1 == 1;
    let mut mass = [r(0, 1); 3];
    if ok(start) {
        mass[start] = r(1, 1);
    }
    for _ in 0..steps {
        let mut next = [r(0, 1); 3];
        for (s, m) in mass.iter().enumerate() {
            for (t, n) in next.iter_mut().enumerate() {
                if ok(t) {
                    *n += *m * chain[s][t];
                }
            }
        }
        mass = next;
    }
    mass.iter().sum()
}

fn in_interval(p: Rational64, lo: Rational64, hi: Rational64, closed_lo: bool, closed_hi: bool) -> bool {
    (if closed_lo { p >= lo } else { p > lo }) && (if closed_hi { p <= hi } else { p < hi })
}

fn criterion_enumeration() -> Outcome_ {
    let steps = 5;
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for (ci, chain) in chains().iter().enumerate() {
        // every subset of states as the truth set of phi
        for good in 0u8..8 {
            let lab = Labeling::new().with("phi", move |s: &u8| good >> s & 1 == 1);
            let always = PathFormula::Always(StateFormula::atom("phi"));
            let eventually_not = PathFormula::Eventually(StateFormula::not(StateFormula::atom("phi")));
            for start in 0..3u8 {
                let (mut p_always, mut p_eventually) = (r(0, 1), r(0, 1));
                let mut path = vec![start; steps + 1];
                let total = 3usize.pow(steps as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut prob = r(1, 1);
                    for k in 1..=steps {
                        path[k] = (c % 3) as u8;
                        c /= 3;
                        prob *= chain[path[k - 1] as usize][path[k] as usize];
                    }
                    let e = Episode::from_path(&path);
                    if satisfies(&e, &always, &lab).unwrap() {
                        p_always += prob;
                    }
                    if satisfies(&e, &eventually_not, &lab).unwrap() {
                        p_eventually += prob;
                    }
                }
                cases += 1;
                let oracle = always_by_propagation(chain, start as usize, good, steps);
                if p_always != oracle {
                    mismatches.push(format!(
                        "chain {ci} set {good:03b} start {start}: {p_always} vs {oracle}"
                    ));
                }
                if p_always + p_eventually != r(1, 1) {
                    mismatches.push(format!("chain {ci} set {good:03b} start {start}: complement"));
                }
                // P_J(G phi) iff P_{1-J}(F !phi) for closed, open and half-open bounds
                for (lo, hi) in [
                    (r(0, 1), r(1, 1)),
                    (r(1, 2), r(1, 1)),
                    (r(17, 20), r(1, 1)),
                    (r(1, 10), r(9, 10)),
                    (r(0, 1), r(1, 3)),
                ] {
                    for (cl, ch) in [(true, true), (false, true), (true, false), (false, false)] {
                        let lhs = in_interval(p_always, lo, hi, cl, ch);
                        let rhs = in_interval(p_eventually, r(1, 1) - hi, r(1, 1) - lo, ch, cl);
                        if lhs != rhs {
                            mismatches.push(format!(
                                "chain {ci} set {good:03b} start {start}: duality at [{lo}, {hi}]"
                            ));
                        }
                    }
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{cases} (chain, truth set, start) cases over all 3^{steps} paths, exact rational agreement")
        } else {
            mismatches[..mismatches.len().min(3)].join("; ")
        },
    )
}

// ---------------------------------------------------------------------------
// 3. regularized incomplete beta against closed forms and quadrature

/// Adaptive Simpson over 64 panels, with a tolerance relative to a coarse
/// composite estimate of the integral.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    let panels: Vec<(f64, f64, f64, f64, f64)> = (0..PANELS)
        .map(|i| {
            let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
            let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            (lo, hi, flo, fmid, fhi)
        })
        .collect();
    let coarse: f64 = panels
        .iter()
        .map(|(lo, hi, x, y, z)| (hi - lo) / 6.0 * (x + 4.0 * y + z))
        .sum();
    let tol = rel * coarse.abs() / PANELS as f64;
    panels
        .iter()
        .map(|&(lo, hi, flo, fmid, fhi)| {
            let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            rec(f, lo, hi, flo, fmid, fhi, whole, tol, 40)
        })
        .sum()
}

/// Unnormalized lower and upper tails of the Beta(a, b) density at `x`,
/// scaled by `exp(-shift)`. A shape below one puts a singularity at that
/// end, removed by integrating over `u = t^a` or `v = (1 - t)^b` instead.
fn beta_tails(x: f64, a: f64, b: f64, shift: f64) -> (f64, f64) {
    let xlogy = |k: f64, y: f64| if k == 0.0 { 0.0 } else { k * y.ln() };
    let density = |t: f64| (xlogy(a - 1.0, t) + xlogy(b - 1.0, 1.0 - t) - shift).exp();
    let lower = if a < 1.0 {
        let g = |u: f64| ((b - 1.0) * (-u.powf(1.0 / a)).ln_1p() - shift).exp() / a;
        simpson(&g, 0.0, x.powf(a), 1e-12)
    } else {
        simpson(&density, 0.0, x, 1e-12)
    };
    let upper = if b < 1.0 {
        let g = |v: f64| ((a - 1.0) * (-v.powf(1.0 / b)).ln_1p() - shift).exp() / b;
        simpson(&g, 0.0, (1.0 - x).powf(b), 1e-12)
    } else {
        simpson(&density, x, 1.0, 1e-12)
    };
    (lower, upper)
}

/// `I_x(a, b)` by quadrature alone: both tails are integrated at the same
/// split point and normalized by their sum.
fn beta_cdf_by_quadrature(x: f64, a: f64, b: f64) -> f64 {
    // the density's log at its mode keeps the integrands near unit scale
    let mode = if a > 1.0 && b > 1.0 {
        (a - 1.0) / (a + b - 2.0)
    } else {
        0.5
    };
    let shift = (a - 1.0) * mode.ln() + (b - 1.0) * (1.0 - mode).ln();
    let (l, u) = beta_tails(x, a, b, shift);
    l / (l + u)
}

fn criterion_beta() -> Outcome_ {
    let start = Instant::now();
    let mut rng = stream(2024, &[3]);
    let mut closed_worst: f64 = 0.0;
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(0.0..1.0);
        let k: f64 = rng.gen_range(0.05..200.0);
        closed_worst = closed_worst.max((beta_cdf(x, k, 1.0).unwrap() - x.powf(k)).abs());
        closed_worst = closed_worst.max((beta_cdf(x, 1.0, k).unwrap() - (1.0 - (1.0 - x).powf(k))).abs());
    }
    let mut quad_worst: f64 = 0.0;
    let mut worst_at = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(0.001..0.999);
        let a: f64 = rng.gen_range(0.5..200.0);
        let b: f64 = rng.gen_range(0.5..200.0);
        let d = (beta_cdf(x, a, b).unwrap() - beta_cdf_by_quadrature(x, a, b)).abs();
        if d > quad_worst {
            quad_worst = d;
            worst_at = (x, a, b);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        closed_worst <= 1e-12 && quad_worst <= 1e-8 && secs < 5.0,
        format!(
            "closed forms max error {closed_worst:.1e} (limit 1e-12), quadrature max error {quad_worst:.1e} at {worst_at:?} (limit 1e-8), {secs:.2} s (limit 5 s)"
        ),
    )
}

// ---------------------------------------------------------------------------
// 4. false-positive rate of Satisfied verdicts

fn criterion_calibration() -> Outcome_ {
    let req = parse_requirement("P[>=0.5](G safe) with C[>=0.98]").unwrap();
    let mut truth = stream(2024, &[4]);
    let (mut satisfied, mut false_pos, mut violated, mut false_neg) = (0u32, 0u32, 0u32, 0u32);
    for trial in 0..500u64 {
        let p: f64 = truth.gen_range(0.0..1.0);
        let env = BernoulliToy::new(p);
        let theta = PolicyParams::zeros(env.policy_shape());
        let v = bayesian_verify(&env, &theta, &req, env.horizon(), 1000, &mut stream(2024, &[4, trial])).unwrap();
        match v.outcome {
            Outcome::Satisfied => {
                satisfied += 1;
                false_pos += u32::from(p < req.p_req);
            }
            Outcome::Violated => {
                violated += 1;
                false_neg += u32::from(p >= req.p_req);
            }
            Outcome::Inconclusive => {}
        }
    }
    let rate = f64::from(false_pos) / f64::from(satisfied.max(1));
    let se = (0.02 * 0.98 / f64::from(satisfied.max(1))).sqrt();
    let bound = 0.02 + 3.0 * se;
    outcome(
        satisfied > 0 && rate <= bound,
        format!(
            "{satisfied} satisfied verdicts, false-positive rate {rate:.4} (limit {bound:.4}); {violated} violated, false-negative rate {:.4}",
            f64::from(false_neg) / f64::from(violated.max(1))
        ),
    )
}

// ---------------------------------------------------------------------------
// 5. Lagrangian weights

fn criterion_lambda() -> Outcome_ {
    // 0.5 cases are exact in real arithmetic; f64 rounding stays below 1e-12
    let checks = [
        ("confidence c_sat = c_req", lambda_confidence(0.98, 0.98), 0.0),
        ("confidence c_sat = 1", lambda_confidence(1.0, 0.98), 1.0),
        ("confidence c_sat = 0.99", lambda_confidence(0.99, 0.98), 0.5),
        ("likelihood 18/20", lambda_mle(18, 20, 0.9).unwrap(), 0.0),
        ("likelihood 20/20", lambda_mle(20, 20, 0.9).unwrap(), 1.0),
        ("likelihood 19/20", lambda_mle(19, 20, 0.9).unwrap(), 0.5),
        (
            "first generation, 20/20 at p_req 0.85",
            lambda_confidence(1.0 - beta_cdf(0.85, 21.0, 1.0).unwrap(), 0.98),
            0.0,
        ),
    ];
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).abs() > 1e-12)
        .map(|(name, got, want)| format!("{name}: {got} vs {want}"))
        .collect();
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} values reproduced", checks.len())
        } else {
            bad.join("; ")
        },
    )
}

// ---------------------------------------------------------------------------
// training runs

const SEEDS: u32 = 5;

struct FinalWindow {
    sat_proportion: f64,
    mean_return: f64,
    mean_return_satisfying: Option<f64>,
}

fn final_window(rows: &[MetricsRow], population: usize, episodes: usize) -> FinalWindow {
    let k = episodes / population;
    let tail = &rows[rows.len() - k..];
    let sat: u64 = tail.iter().map(|r| r.s_gen).sum();
    let sat_return: f64 = tail
        .iter()
        .filter_map(|r| r.return_sat_gen.map(|m| m * r.s_gen as f64))
        .sum();
    FinalWindow {
        sat_proportion: sat as f64 / (k * population) as f64,
        mean_return: tail.iter().map(|r| r.mean_return).sum::<f64>() / k as f64,
        mean_return_satisfying: (sat > 0).then(|| sat_return / sat as f64),
    }
}

fn run(cfg: &ExperimentConfig) -> (Vec<RepetitionResult>, f64) {
    let start = Instant::now();
    let out = train(cfg).expect("training run");
    (out, start.elapsed().as_secs_f64())
}

fn list(xs: impl IntoIterator<Item = f64>, digits: usize) -> String {
    xs.into_iter()
        .map(|x| format!("{x:.digits$}"))
        .collect::<Vec<_>>()
        .join(", ")
}

// 6. Obstacle Run

fn criterion_obstacle_run() -> Outcome_ {
    let cfg = ExperimentConfig {
        env: EnvKind::ObstacleRun,
        n_max: 4,
        episodes: 20_000,
        verify_every: 1_000,
        verify_cap: 1_000,
        repetitions: SEEDS,
        mode: Mode::Bayesian,
        ..ExperimentConfig::default()
    };
    let req = cfg.requirement().unwrap();
    assert_eq!((req.p_req, req.c_req), (0.9, 0.98));
    let (reps, secs) = run(&cfg);
    let props: Vec<f64> = reps
        .iter()
        .map(|r| final_window(&r.rows, cfg.population, 2_000).sat_proportion)
        .collect();
    let verdicts: Vec<String> = reps
        .iter()
        .map(|r| {
            r.rows
                .last()
                .and_then(|row| row.verify_outcome.clone())
                .unwrap_or_default()
        })
        .collect();
    let above = props.iter().filter(|p| **p >= 0.9).count();
    let verified = verdicts.iter().filter(|v| *v == "satisfied").count();
    outcome(
        above >= 4 && verified >= 3,
        format!(
            "final 2000-episode satisfying proportion [{}] ({above}/5 >= 0.9, need 4); final verification [{}] ({verified}/5 satisfied, need 3); {secs:.1} s",
            list(props, 3),
            verdicts.join(", ")
        ),
    )
}

// 7 and 8. Particle Dance

fn particle_dance(mode: Mode, n_max: u32) -> ExperimentConfig {
    ExperimentConfig {
        env: EnvKind::ParticleDance,
        n_max,
        episodes: 60_000,
        verify_every: 60_000,
        verify_cap: 1_000,
        repetitions: SEEDS,
        mode,
        ..ExperimentConfig::default()
    }
}

struct ParticleDanceRuns {
    unconstrained: Vec<FinalWindow>,
    bayesian: Vec<FinalWindow>,
    mle: Vec<FinalWindow>,
    p_req: f64,
    secs: f64,
}

fn particle_dance_runs() -> ParticleDanceRuns {
    let mut secs = 0.0;
    let mut windows = |mode| {
        let cfg = particle_dance(mode, 1);
        let (reps, t) = run(&cfg);
        secs += t;
        reps.iter()
            .map(|r| final_window(&r.rows, cfg.population, 5_000))
            .collect::<Vec<_>>()
    };
    let unconstrained = windows(Mode::Unconstrained);
    let bayesian = windows(Mode::Bayesian);
    let mle = windows(Mode::Mle);
    ParticleDanceRuns {
        unconstrained,
        bayesian,
        mle,
        p_req: particle_dance(Mode::Bayesian, 1).requirement().unwrap().p_req,
        secs,
    }
}

fn criterion_particle_dance(runs: &ParticleDanceRuns) -> [Outcome_; 3] {
    let u_ret: Vec<f64> = runs.unconstrained.iter().map(|w| w.mean_return).collect();
    let c_ret: Vec<f64> = runs.bayesian.iter().map(|w| w.mean_return).collect();
    let higher = u_ret.iter().zip(&c_ret).filter(|(u, c)| u > c).count();
    let a = outcome(
        higher >= 4,
        format!(
            "final 5000-episode mean return, unconstrained [{}] vs n_max = 1 [{}]: unconstrained higher in {higher}/5 (need 4)",
            list(u_ret.iter().copied(), 2),
            list(c_ret.iter().copied(), 2)
        ),
    );

    let props: Vec<f64> = runs.bayesian.iter().map(|w| w.sat_proportion).collect();
    let mean_prop = props.iter().sum::<f64>() / props.len() as f64;
    let lo = runs.p_req - 0.05;
    let b = outcome(
        (lo..=1.0).contains(&mean_prop),
        format!(
            "constrained final 5000-episode satisfying proportion [{}], mean {mean_prop:.3} (need within [{lo:.2}, 1])",
            list(props, 3)
        ),
    );

    let mean_ret = u_ret.iter().sum::<f64>() / u_ret.len() as f64;
    let c = outcome(
        mean_ret >= -30.0,
        format!(
            "unconstrained final 5000-episode mean return {mean_ret:.2} (need >= -30); training {:.1} s",
            runs.secs
        ),
    );
    [a, b, c]
}

fn criterion_mle_vs_snes(runs: &ParticleDanceRuns) -> Outcome_ {
    let pairs = runs.bayesian.iter().zip(&runs.mle);
    let over = pairs
        .clone()
        .filter(|(s, m)| m.sat_proportion >= s.sat_proportion)
        .count();
    let better = pairs
        .clone()
        .filter(|(s, m)| match (s.mean_return_satisfying, m.mean_return_satisfying) {
            (Some(s), Some(m)) => s >= m,
            (Some(_), None) => true,
            _ => false,
        })
        .count();
    let fmt = |xs: Vec<Option<f64>>| {
        xs.iter()
            .map(|x| x.map_or("-".into(), |v| format!("{v:.2}")))
            .collect::<Vec<String>>()
            .join(", ")
    };
    outcome(
        over >= 3 && better >= 3,
        format!(
            "satisfying proportion SNES [{}] vs MLE [{}]: MLE >= SNES in {over}/5; satisfying-episode return SNES [{}] vs MLE [{}]: SNES >= MLE in {better}/5 (need 3 each)",
            list(runs.bayesian.iter().map(|w| w.sat_proportion), 3),
            list(runs.mle.iter().map(|w| w.sat_proportion), 3),
            fmt(runs.bayesian.iter().map(|w| w.mean_return_satisfying).collect()),
            fmt(runs.mle.iter().map(|w| w.mean_return_satisfying).collect()),
        ),
    )
}

// ---------------------------------------------------------------------------
// 9. time per environment step

fn criterion_step_time() -> Outcome_ {
    let horizon = Horizon::new(50).unwrap();
    let mut rng = stream(2024, &[9]);
    let pd = ParticleDance::default();
    let or = ObstacleRun::default();
    let pd_policy = PolicyParams::random(pd.policy_shape(), &mut rng);
    let or_policy = PolicyParams::random(or.policy_shape(), &mut rng);
    let mut per_step = Vec::new();
    for which in 0..2 {
        let start = Instant::now();
        let mut steps = 0usize;
        for _ in 0..2_000 {
            steps += if which == 0 {
                rollout(&pd, &pd_policy, horizon, &mut rng).unwrap().len()
            } else {
                rollout(&or, &or_policy, horizon, &mut rng).unwrap().len()
            };
        }
        per_step.push(start.elapsed().as_secs_f64() / steps.max(1) as f64);
    }
    let worst = per_step.iter().copied().fold(0.0, f64::max);
    outcome(
        worst < 1e-3,
        format!(
            "Particle Dance {:.2} us/step, Obstacle Run {:.2} us/step (limit 1000 us)",
            per_step[0] * 1e6,
            per_step[1] * 1e6
        ),
    )
}

// ---------------------------------------------------------------------------
// 10. byte-identical metrics from repeated `train` runs

fn train_cli(dir: &Path, out: &Path) -> Result<(), String> {
    let config = dir.join("run.toml");
    std::fs::write(
        &config,
        "env = \"particle_dance\"\nn_max = 1\nepisodes = 2000\nverify_every = 500\nverify_cap = 200\nrepetitions = 3\nseed = 11\n",
    )
    .map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_psyco"))
        .arg("train")
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(out)
        .env_remove("PSYCO_OUT_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(String::from_utf8_lossy(&status.stderr).into_owned());
    }
    Ok(())
}

fn criterion_determinism() -> Outcome_ {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if let Err(e) = train_cli(dir.path(), &a).and_then(|_| train_cli(dir.path(), &b)) {
        return outcome(false, format!("train failed: {e}"));
    }
    let mut names: Vec<String> = std::fs::read_dir(&a)
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".csv"))
        .collect();
    names.sort();
    let differing: Vec<&String> = names
        .iter()
        .filter(|n| std::fs::read(a.join(n)).ok() != std::fs::read(b.join(n)).ok())
        .collect();
    outcome(
        names.len() == 4 && differing.is_empty(),
        format!("{} CSV files compared, {} differ", names.len(), differing.len()),
    )
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome_)> = Vec::new();
    let mut report = |name, o: Outcome_| {
        println!("{} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        results.push((name, o));
    };
    report("1 zero cost iff satisfied", criterion_zero_cost());
    report("2 path enumeration on a rational chain", criterion_enumeration());
    report("3 incomplete beta numerics", criterion_beta());
    report("4 verifier calibration", criterion_calibration());
    report("5 lagrangian weights", criterion_lambda());
    report("6 obstacle run training", criterion_obstacle_run());
    let runs = particle_dance_runs();
    let [a, b, c] = criterion_particle_dance(&runs);
    report("7a particle dance return ordering", a);
    report("7b particle dance satisfying proportion", b);
    report("7c particle dance unconstrained return", c);
    report("8 likelihood vs confidence weighting", criterion_mle_vs_snes(&runs));
    report("9 time per step", criterion_step_time());
    report("10 deterministic metrics", criterion_determinism());

    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.passed).map(|(n, _)| *n).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
