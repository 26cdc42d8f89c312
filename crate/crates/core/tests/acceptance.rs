//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p hidcorr --test acceptance -- --nocapture --test-threads 1`
//! to see the report.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use hidcorr::cli::{self, Cli, RunConfig};
use hidcorr::correlations::{self, DiscordOptions, MeasurementPair, BOUND_SLACK, DISCORD_SLACK};
use hidcorr::families::{self, KEEP_A, KEEP_B};
use hidcorr::states::{self, SubsystemLayout};
use hidcorr::tensor::{self, Tolerances, DEFAULT_GAP_TOL};

use clap::Parser;

/// Collects sub-check outcomes and prints one line for the criterion.
struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("\n[PASS] criterion {}: {}", self.id, self.title);
        } else {
            println!("\n[FAIL] criterion {}: {}", self.id, self.title);
            for f in &self.failures {
                println!("         - {f}");
            }
            panic!("criterion {} failed: {:?}", self.id, self.failures);
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn spectrum(m: &tensor::ComplexMatrix) -> Vec<f64> {
    tensor::hermitian_eig(m, DEFAULT_GAP_TOL).unwrap().eigenvalues
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn config(args: &[&str]) -> RunConfig {
    let mut full = vec!["hidcorr", "sample"];
    full.extend_from_slice(args);
    Cli::try_parse_from(full).unwrap().config
}

#[test]
fn criterion_1_alpha_family() {
    let mut c = Criterion::new(1, "alpha family: MID(1,3) <= 1e-8, I(a,b) = h(alpha) to 1e-10, < 1 s");
    let start = Instant::now();
    for alpha in linspace(0.0, 1.0, 50) {
        let point = families::family_alpha(alpha).unwrap();
        let (i_ab, mid, _) = families::measure_13(&point.spec);
        c.check(mid <= 1e-8, || format!("alpha={alpha}: MID={mid}"));
        let h = families::binary_entropy(alpha);
        c.check((i_ab - h).abs() <= 1e-10, || format!("alpha={alpha}: I={i_ab} h={h}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 1.0, || format!("runtime {elapsed:.3} s"));
    c.finish();
}

#[test]
fn criterion_2_gamma_family() {
    let mut c = Criterion::new(2, "gamma family: dephased spectrum {(1±cos)/4 x2} to 1e-9, I(a,b)=1, MID(pi/3)=0.811278");
    let grid: Vec<f64> = (1..=50).map(|k| PI * k as f64 / 51.0).filter(|&g| !families::gamma_is_degenerate(g)).collect();
    assert_eq!(grid.len(), 50);
    for gamma in grid {
        let point = families::family_gamma(gamma).unwrap();
        let r13 = point.reduced_13();
        let (meas, _) = MeasurementPair::from_marginals(&r13, Tolerances::default()).unwrap();
        let post = spectrum(correlations::dephase(&r13, &meas).unwrap().matrix());
        let cg = gamma.cos();
        let mut want = vec![(1.0 + cg) / 4.0, (1.0 + cg) / 4.0, (1.0 - cg) / 4.0, (1.0 - cg) / 4.0];
        want.sort_by(|a, b| b.total_cmp(a));
        let d = max_diff(&post, &want);
        c.check(d <= 1e-9, || format!("gamma={gamma}: spectrum off by {d:e}"));
        let i_ab = correlations::mutual_information(&point.state);
        c.check((i_ab - 1.0).abs() <= 1e-10, || format!("gamma={gamma}: I={i_ab}"));
    }
    let gamma = PI / 3.0;
    let (_, mid, _) = families::measure_13(&families::gamma_spec(gamma).unwrap());
    let closed = families::binary_entropy((1.0 + gamma.cos()) / 2.0);
    c.check((mid - closed).abs() <= 1e-6, || format!("MID(pi/3)={mid} closed form {closed}"));
    c.check((mid - 0.811_278).abs() <= 1e-6, || format!("MID(pi/3)={mid}"));
    c.finish();
}

#[test]
fn criterion_3_lambda_family() {
    let mut c = Criterion::new(3, "lambda family: spectra to 1e-9, MID = S'-S to 1e-8, limit lambda->1/2 (>= 0.97 at 0.49)");
    for lambda in (0..50).map(|k| 0.49 * k as f64 / 49.0) {
        let point = families::family_lambda(lambda).unwrap();
        let r13 = point.reduced_13();
        let cl = families::c_lambda(lambda);
        let mut reduced_want = vec![0.0, lambda, 0.5 * (1.0 - lambda + cl), 0.5 * (1.0 - lambda - cl)];
        reduced_want.sort_by(|a, b| b.total_cmp(a));
        let d = max_diff(&spectrum(r13.matrix()), &reduced_want);
        c.check(d <= 1e-9, || format!("lambda={lambda}: reduced spectrum off by {d:e}"));

        let (meas, _) = MeasurementPair::from_marginals(&r13, Tolerances::default()).unwrap();
        let post = spectrum(correlations::dephase(&r13, &meas).unwrap().matrix());
        let post_want = [1.0 - 1.5 * lambda, lambda / 2.0, lambda / 2.0, lambda / 2.0];
        let d = max_diff(&post, &post_want);
        c.check(d <= 1e-9, || format!("lambda={lambda}: post-measurement spectrum off by {d:e}"));

        let mid = correlations::mid(&r13).0;
        let closed = families::lambda_post_measurement_entropy(lambda) - families::lambda_reduced_entropy(lambda);
        c.check((mid - closed).abs() <= 1e-8, || format!("lambda={lambda}: MID={mid} S'-S={closed}"));
    }

    // limit: both coordinates approach 1
    let mut last = (0.0, 0.0);
    for lambda in [0.49, 0.499, 0.4999, 0.49999] {
        let (i_ab, mid, _) = families::measure_13(&families::lambda_spec(lambda).unwrap());
        c.check(mid > last.1 && i_ab > last.0, || format!("lambda={lambda}: not increasing toward 1"));
        last = (i_ab, mid);
    }
    c.check(1.0 - last.1 < 1e-3 && 1.0 - last.0 < 1e-6, || format!("lambda=0.49999: (I, MID) = {last:?}"));
    let (i_lim, mid_lim, _) = families::measure_13(&families::lambda_limit_spec());
    c.check((i_lim - 1.0).abs() < 1e-12 && (mid_lim - 1.0).abs() < 1e-12, || format!("lambda=1/2: ({i_lim}, {mid_lim})"));

    // stated threshold at lambda = 0.49
    let (i_49, mid_49, _) = families::measure_13(&families::lambda_spec(0.49).unwrap());
    c.check(i_49 >= 0.97, || format!("lambda=0.49: I(a,b)={i_49} < 0.97"));
    c.check(mid_49 >= 0.97, || format!("lambda=0.49: MID(1,3)={mid_49} < 0.97"));
    c.finish();
}

#[test]
fn criterion_4_random_scatter_bounds() {
    let mut c = Criterion::new(4, "10^4 random classical states: zero violations of the bound chain, < 60 s");
    let start = Instant::now();
    let n = 10_000;
    let samples = families::sample_random_classical(n, 42).unwrap();
    let mut violations = 0usize;
    for s in &samples {
        if s.mid_13 > s.i_ab + BOUND_SLACK {
            violations += 1;
        }
        let spec = families::random_canonical_spec(42, s.index);
        let checks = correlations::check_bounds(&spec, &KEEP_A, &KEEP_B).unwrap();
        assert_eq!(checks.len(), 5);
        // the chain's M(1,3) must be the sampler's value
        c.check((checks[0].lhs - s.mid_13).abs() < 1e-12, || format!("sample {}: inconsistent MID", s.index));
        violations += checks.iter().filter(|b| !b.satisfied).count();
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(violations == 0, || format!("{violations} violations"));
    c.check(elapsed < 60.0, || format!("runtime {elapsed:.1} s"));
    // the scatter reaches well into the triangle
    let max_mid = samples.iter().map(|s| s.mid_13).fold(0.0, f64::max);
    c.check(max_mid > 0.1, || format!("max MID {max_mid}"));
    c.finish();
}

#[test]
fn criterion_5_commutation_sufficiency() {
    let mut c = Criterion::new(5, "commuting reduced projectors imply MID(reduction) <= 1e-8; lambda spec non-commuting");
    let mut rng = common::rng(5);
    let mut commuting = 0;
    let mut non_commuting = 0;
    for i in 0..1000 {
        let spec = match i % 4 {
            0 => families::canonical_spec(common::random_table(&mut rng, 4, 2)).unwrap(),
            1 => common::random_product_basis_spec(&mut rng),
            2 => states::ClassicalStateSpec::computational(
                common::random_table(&mut rng, 4, 2),
                SubsystemLayout::qubits(3, 2).unwrap(),
            )
            .unwrap(),
            _ => common::random_entangled_basis_spec(&mut rng),
        };
        if correlations::commutation_classicality(&spec, &KEEP_A, &KEEP_B).unwrap() {
            commuting += 1;
            let r13 = states::reduce(&states::build_classical_state(&spec), &KEEP_A, &KEEP_B).unwrap();
            let (mid, _) = correlations::mid(&r13);
            c.check(mid <= 1e-8, || format!("spec {i}: commuting but MID={mid}"));
        } else {
            non_commuting += 1;
        }
    }
    c.check(commuting >= 400 && non_commuting >= 400, || format!("{commuting} commuting / {non_commuting} non-commuting"));
    let lambda = families::lambda_spec(0.25).unwrap();
    c.check(!correlations::commutation_classicality(&lambda, &KEEP_A, &KEEP_B).unwrap(), || {
        "lambda spec reported commuting".into()
    });
    c.finish();
}

#[test]
fn criterion_6_discord_overestimation() {
    let mut c = Criterion::new(6, "M_S <= MID + 1e-6 on lambda sweep; joint zero set on alpha; gap > 0.05 at some I > 0.5");
    let rows = cli::family_rows(&config(&["--family", "lambda", "--steps", "50"])).unwrap();
    let mut widest_gap: f64 = 0.0;
    for r in &rows {
        let ms = r.ms_13.expect("discord computed for lambda");
        c.check(ms <= r.mid_13 + DISCORD_SLACK, || format!("lambda={}: M_S={ms} MID={}", r.param, r.mid_13));
        c.check(ms >= -1e-8, || format!("lambda={}: M_S={ms} negative", r.param));
        let both_zero = ms.abs() <= DISCORD_SLACK && r.mid_13.abs() <= 1e-8;
        let both_positive = ms > DISCORD_SLACK && r.mid_13 > 1e-8;
        c.check(both_zero || both_positive, || format!("lambda={}: zero sets disagree ({ms}, {})", r.param, r.mid_13));
        if r.i_ab > 0.5 {
            widest_gap = widest_gap.max(r.mid_13 - ms);
        }
    }
    c.check(widest_gap > 0.05, || format!("largest MID - M_S gap for I > 0.5 is {widest_gap}"));

    let opts = DiscordOptions::default();
    for alpha in linspace(0.0, 1.0, 11) {
        let r13 = families::family_alpha(alpha).unwrap().reduced_13();
        let (mid, _) = correlations::mid(&r13);
        let ms = correlations::symmetric_discord(&r13, &opts).unwrap().value;
        c.check(mid <= 1e-8 && ms.abs() <= DISCORD_SLACK, || format!("alpha={alpha}: MID={mid} M_S={ms}"));
    }
    println!("\n         largest MID - M_S gap at I(a,b) > 0.5: {widest_gap:.6}");
    c.finish();
}

#[test]
fn criterion_7_oracle_property_suite() {
    let mut c = Criterion::new(7, "trace preservation, eig reconstruction, idempotent dephasing, LU invariance, determinism");
    let mut rng = common::rng(7);

    // partial trace preserves trace
    for (dims, keep) in [
        (vec![2, 2, 2], vec![0, 2]),
        (vec![2, 3, 2], vec![1]),
        (vec![3, 2, 2, 2], vec![0, 3]),
        (vec![4, 2], vec![0]),
    ] {
        let layout = SubsystemLayout::new(dims.clone(), 1).unwrap();
        for _ in 0..25 {
            let rho = common::random_density(&mut rng, layout.clone());
            let reduced = tensor::partial_trace(rho.matrix(), &dims, &keep).unwrap();
            let d = (reduced.trace() - rho.matrix().trace()).norm();
            c.check(d <= 1e-12, || format!("dims {dims:?} keep {keep:?}: trace changed by {d:e}"));
        }
    }

    // eigendecomposition reconstruction on 500 random Hermitian 8x8 matrices
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let m = common::random_hermitian(&mut rng, 8);
        let spec = tensor::hermitian_eig(&m, DEFAULT_GAP_TOL).unwrap();
        let diff = &spec.reconstruct() - &m;
        worst = worst.max(diff.max_abs());
    }
    c.check(worst <= 1e-9, || format!("reconstruction error {worst:e}"));

    // dephasing idempotence
    for _ in 0..50 {
        let rho = common::random_density(&mut rng, SubsystemLayout::qubits(3, 1).unwrap());
        let (meas, _) = MeasurementPair::from_marginals(&rho, Tolerances::default()).unwrap();
        let once = correlations::dephase(&rho, &meas).unwrap();
        let twice = correlations::dephase(&once, &meas).unwrap();
        let d = (once.matrix() - twice.matrix()).max_abs();
        c.check(d <= 1e-12, || format!("dephasing not idempotent: {d:e}"));
    }

    // MID invariance under local unitaries
    let mut tested = 0;
    for i in 0..100 {
        let r13 = states::reduce(
            &states::build_classical_state(&families::random_canonical_spec(99, i)),
            &KEEP_A,
            &KEEP_B,
        )
        .unwrap();
        let (mid, degenerate) = correlations::mid(&r13);
        if degenerate {
            continue;
        }
        tested += 1;
        let ua = common::random_unitary(&mut rng, 2);
        let ub = common::random_unitary(&mut rng, 2);
        let (rotated, _) = correlations::mid(&r13.local_conjugate(&ua, &ub).unwrap());
        c.check((mid - rotated).abs() <= 1e-8, || format!("sample {i}: MID {mid} vs rotated {rotated}"));
    }
    c.check(tested >= 90, || format!("only {tested} nondegenerate states"));

    // byte-identical reruns
    let run = |f: fn(&RunConfig, &mut dyn std::io::Write) -> Result<(), cli::CliError>, cfg: &RunConfig| {
        let mut out = Vec::new();
        f(cfg, &mut out).unwrap();
        out
    };
    let sample_cfg = config(&["--n", "500", "--seed", "11"]);
    c.check(run(cli::cmd_sample, &sample_cfg) == run(cli::cmd_sample, &sample_cfg), || "sample CSV differs".into());
    let env_cfg = config(&["--n", "500", "--steps", "20", "--bins", "10"]);
    c.check(run(cli::cmd_envelope, &env_cfg) == run(cli::cmd_envelope, &env_cfg), || "envelope CSV differs".into());
    let fam_cfg = config(&["--family", "lambda", "--steps", "4"]);
    c.check(run(cli::cmd_family, &fam_cfg) == run(cli::cmd_family, &fam_cfg), || "family CSV differs".into());
    c.finish();
}
