//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chainrate::capacity::{binary_entropy, damping_capacity, entanglement_assisted_capacity, ChannelEfficiency};
use chainrate::protocols::{
    dual_rail_rate, dual_rail_success_distribution, dual_rail_tilted_rate, log2_binomial, multi_excitation_rate,
    plain_rate, probabilities_from_conditionals,
};
use chainrate::rng::stream_rng;
use chainrate::simulator::{
    amplitude_full_space_oracle, damping_product, dual_rail_statevector_oracle, full_hilbert_plain_oracle,
    simulate_dual_rail, MessageQubit,
};
use chainrate::{diagonalize, AmplitudeTable, ChainSpec, Error, Feedback};
use rand::Rng;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn pair() -> AmplitudeTable {
    diagonalize(&ChainSpec::xyz_pair(0.25, 0.0).unwrap()).unwrap()
}

fn heisenberg(n: usize) -> AmplitudeTable {
    diagonalize(&ChainSpec::heisenberg(n, 0.25).unwrap()).unwrap()
}

fn two_spin_law() -> Outcome {
    let table = pair();
    let steps = (4.0 * PI / 1e-3).floor() as usize;
    let worst = (0..=steps)
        .map(|i| {
            let t = i as f64 * 1e-3;
            (table.end_to_end(t).norm_sqr() - (t / 2.0).sin().powi(2)).abs()
        })
        .fold(0.0, f64::max);
    outcome(worst < 1e-12, format!("max deviation {worst:.2e} over {} points", steps + 1))
}

fn perfect_transfer_anchors() -> Outcome {
    let table = pair();
    let r_star = plain_rate(&table, PI, 0).unwrap();
    let one = ChannelEfficiency::new(1.0).unwrap();
    let (q1, qe1) = (damping_capacity(one), entanglement_assisted_capacity(one));
    let mut taus: Vec<f64> = (1..).map(|i| i as f64 * 1e-3).take_while(|&t| t <= PI / 2.0).collect();
    taus.push(PI / 2.0);
    let nonzero = taus.iter().filter(|&&t| plain_rate(&table, t, 0).unwrap() != 0.0).count();
    let pass = (r_star - 1.0 / PI).abs() < 1e-10 && (q1 - 1.0).abs() < 1e-10 && (qe1 - 1.0).abs() < 1e-10 && nonzero == 0;
    outcome(
        pass,
        format!("r(pi) - 1/pi = {:.1e}, Q(1) = {q1}, Q_E(1) = {qe1}, nonzero rates below pi/2: {nonzero}", r_star - 1.0 / PI),
    )
}

fn optimum_before_perfect_transfer() -> Outcome {
    let table = pair();
    let r_star = plain_rate(&table, PI, 0).unwrap();
    let (tau_max, r_max) = (1..)
        .map(|i| PI / 2.0 + i as f64 * 1e-3)
        .take_while(|&t| t < PI)
        .map(|t| (t, plain_rate(&table, t, 0).unwrap()))
        .fold((0.0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    outcome(r_max > r_star, format!("tau_max = {tau_max:.3}, r = {r_max:.6} vs r(pi) = {r_star:.6}"))
}

fn multi_excitation_closed_forms() -> Outcome {
    let table = pair();
    let mut worst: f64 = 0.0;
    for i in 1..=100 {
        let tau = 0.06 * i as f64;
        let p = table.end_to_end(tau).norm_sqr();
        let q = 1.0 - p;
        let mut check = |e: usize, m: usize, expected: f64| {
            let got = multi_excitation_rate(&table, tau, e, m).unwrap().rate;
            worst = worst.max((got - expected).abs());
        };
        check(1, 2, p / (2.0 * tau));
        for m in [3usize, 4, 8] {
            check(1, m, p * (m as f64).log2() / (m as f64 * tau));
        }
        for m in [3usize, 4, 6] {
            let t2 = m as f64 * tau * (1.0 - q * q + 2.0 * q - 2.0 * q.powi(3)) / (1.0 - q * q).powi(2);
            check(2, m, log2_binomial(m, 2) / t2);
        }
    }
    outcome(worst < 1e-12, format!("max deviation {worst:.2e} over 100 intervals"))
}

fn grid_max(points: usize, f: impl Fn(f64) -> f64) -> f64 {
    (0..=points).map(|i| f(i as f64 / points as f64)).fold(f64::NEG_INFINITY, f64::max)
}

fn capacity_grid_oracle() -> Outcome {
    let h = |x: f64| binary_entropy(x.clamp(0.0, 1.0)).unwrap();
    let mut rng = stream_rng(2024, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let eta: f64 = rng.random();
        let e = ChannelEfficiency::new(eta).unwrap();
        let q_grid = grid_max(1_000_000, |p| h(eta * p) - h((1.0 - eta) * p));
        let qe_grid = 0.5 * grid_max(1_000_000, |p| h(p) + h(eta * p) - h((1.0 - eta) * p));
        worst = worst.max((damping_capacity(e) - q_grid).abs()).max((entanglement_assisted_capacity(e) - qe_grid).abs());
    }
    outcome(worst < 1e-8, format!("max deviation {worst:.2e} over 20 efficiencies"))
}

fn amplitude_oracle() -> Outcome {
    let spec = ChainSpec::heisenberg(6, 0.25).unwrap();
    let table = diagonalize(&spec).unwrap();
    let mut rng = stream_rng(6, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = rng.random_range(0.0..50.0);
        let full = amplitude_full_space_oracle(&spec, t).unwrap();
        for m in 0..6 {
            for n in 0..6 {
                worst = worst.max((full[(m, n)] - table.amplitude(m, n, t).unwrap()).norm());
            }
        }
    }
    outcome(worst < 1e-10, format!("max deviation {worst:.2e} over 20 times"))
}

fn product_channel() -> Outcome {
    let spec = ChainSpec::xyz_pair(0.25, 0.0).unwrap();
    let table = diagonalize(&spec).unwrap();
    let mut rng = stream_rng(7, 0);
    let (mut worst, mut purity_gap): (f64, f64) = (0.0, 0.0);
    for tau in [1.0, 2.0, 3.0] {
        let messages: Vec<MessageQubit> = (0..3).map(|_| MessageQubit::random(&mut rng)).collect();
        let out = full_hilbert_plain_oracle(&spec, &messages, tau, 0).unwrap();
        let expected = damping_product(&messages, table.end_to_end(tau).norm_sqr());
        worst = worst.max((&out.rho_bob - &expected).iter().map(|z| z.norm()).fold(0.0, f64::max));
        purity_gap = out.chain_purities.iter().map(|p| (p - 1.0).abs()).fold(purity_gap, f64::max);
    }
    outcome(
        worst < 1e-10 && purity_gap < 1e-10,
        format!("max state deviation {worst:.2e}, max purity gap {purity_gap:.2e}"),
    )
}

fn dual_rail_recursion() -> Outcome {
    let (mut oracle_gap, mut route_gap): (f64, f64) = (0.0, 0.0);
    for n in [2usize, 4, 8] {
        let table = heisenberg(n);
        for tau in [2.0, 8.5] {
            let dist = dual_rail_success_distribution(&table, tau, 50).unwrap();
            let times: Vec<f64> = (1..=50).map(|k| k as f64 * tau).collect();
            let oracle = dual_rail_statevector_oracle(&table, &times).unwrap();
            let via_pi = probabilities_from_conditionals(&dist.conditional_probabilities());
            for k in 0..50 {
                oracle_gap = oracle_gap.max((dist.probabilities[k] - oracle[k]).abs());
                route_gap = route_gap.max((dist.probabilities[k] - via_pi[k]).abs());
            }
        }
    }
    outcome(
        oracle_gap < 1e-10 && route_gap < 1e-10,
        format!("state-vector deviation {oracle_gap:.2e}, conditional-route deviation {route_gap:.2e}"),
    )
}

fn mass_convergence() -> Outcome {
    let table = heisenberg(8);
    let taus: Vec<f64> = (0..=38).map(|i| 1.0 + 0.5 * i as f64).collect();
    let (mut converged, mut reported, mut bad) = (0usize, 0usize, 0usize);
    for &tau in &taus {
        match dual_rail_rate(&table, tau, 100_000, Feedback::Classical) {
            Ok(r) if r.captured_mass >= 0.999 && r.rate.is_finite() => converged += 1,
            Err(Error::Unconverged { .. }) => reported += 1,
            _ => bad += 1,
        }
    }
    let fraction = converged as f64 / taus.len() as f64;
    outcome(
        fraction >= 0.9 && bad == 0,
        format!("{converged}/{} converged, {reported} reported unconverged", taus.len()),
    )
}

fn monte_carlo_convergence() -> Outcome {
    let table = heisenberg(8);
    let (tau, k_max) = (8.5, 100_000);
    let mean_time = dual_rail_rate(&table, tau, k_max, Feedback::Classical).unwrap().mean_time;
    let classical = simulate_dual_rail(&table, tau, k_max, Feedback::Classical, 1e5 * mean_time, 1).unwrap();
    let quantum = simulate_dual_rail(&table, tau, k_max, Feedback::Quantum, 2e5 * mean_time, 1).unwrap();
    let (rc, rq) = (classical.final_rate(), quantum.final_rate());
    let err_c = (rc - 1.0 / mean_time).abs() * mean_time;
    let err_q = (rq - rc / 2.0).abs() / (rc / 2.0);
    outcome(err_c < 0.02 && err_q < 0.02, format!("classical error {err_c:.2e}, quantum vs half classical {err_q:.2e}"))
}

fn tilt_properties() -> Outcome {
    let table = heisenberg(8);
    let mut bitwise = true;
    for tau in [2.0, 8.5, 15.0] {
        let plain = dual_rail_rate(&table, tau, 5000, Feedback::Classical).unwrap().rate;
        let tilted = dual_rail_tilted_rate(&table, tau, 0.0, 5000, 16, 1).unwrap().mean;
        bitwise &= plain.to_bits() == tilted.to_bits();
    }
    let mut points = Vec::new();
    let mut excluded = 0;
    for i in 0..=300 {
        let tau = 10.0 + 0.1 * i as f64;
        match dual_rail_tilted_rate(&table, tau, 0.04, 5000, 16, 1) {
            Ok(r) => points.push((tau.ln(), r.mean.ln())),
            Err(Error::Unconverged { .. }) => excluded += 1,
            Err(e) => return outcome(false, format!("tau {tau}: {e}")),
        }
    }
    let n = points.len() as f64;
    let (mx, my) = (points.iter().map(|p| p.0).sum::<f64>() / n, points.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    outcome(
        bitwise && (-1.3..=-0.7).contains(&slope),
        format!("zero tilt bitwise: {bitwise}, slope {slope:.3} from {} points ({excluded} unconverged)", points.len()),
    )
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_chainrate"))
        .args(args)
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("{args:?} exited with {status}"))
    }
}

fn rerun_matches(dir: &Path, name: &str, args: &[&str]) -> Result<bool, String> {
    let first = dir.join(format!("{name}.csv"));
    let second = dir.join(format!("{name}.rerun.csv"));
    let mut full: Vec<&str> = args.to_vec();
    let first_str = first.to_str().unwrap();
    full.extend(["--out", first_str]);
    run_cli(&full)?;
    run_cli(&["rerun", "--manifest", first_str, "--out", second.to_str().unwrap()])?;
    let (a, b) = (std::fs::read(&first).map_err(|e| e.to_string())?, std::fs::read(&second).map_err(|e| e.to_string())?);
    Ok(a == b)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, &[&str]); 7] = [
        ("amplitudes", &["amplitudes", "--chain", "heisenberg", "--n", "8", "--t", "0:10:0.5"]),
        ("fig2", &["fig2", "--tau", "0.1:6:0.1"]),
        ("fig3", &["fig3", "--tau", "0.1:6:0.1"]),
        ("fig4", &["fig4", "--tau", "1:6:0.5", "--kmax", "20000"]),
        ("fig5_dual", &["fig5", "--tau", "8.5", "--duration", "500"]),
        ("fig5_multi", &["fig5", "--protocol", "multi-excitation", "--tau", "2", "--duration", "500", "--seed", "3"]),
        ("fig6", &["fig6", "--tau", "5:7:0.5", "--epsilon", "0,0.04", "--realizations", "4"]),
    ];
    let mut differing = Vec::new();
    for (name, args) in runs {
        match rerun_matches(dir.path(), name, args) {
            Ok(true) => {}
            Ok(false) => differing.push(name.to_string()),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(differing.is_empty(), format!("{} commands, differing: {differing:?}", runs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("two-spin sine law", Duration::from_secs(1), two_spin_law),
        ("perfect-transfer anchors", Duration::from_secs(1), perfect_transfer_anchors),
        ("optimum before perfect transfer", Duration::from_secs(5), optimum_before_perfect_transfer),
        ("multi-excitation closed forms", Duration::from_secs(1), multi_excitation_closed_forms),
        ("capacity grid oracle", Duration::from_secs(30), capacity_grid_oracle),
        ("full-space amplitude oracle", Duration::from_secs(10), amplitude_oracle),
        ("product channel identity", Duration::from_secs(10), product_channel),
        ("dual-rail recursion oracle", Duration::from_secs(5), dual_rail_recursion),
        ("dual-rail mass convergence", Duration::from_secs(120), mass_convergence),
        ("Monte Carlo convergence", Duration::from_secs(60), monte_carlo_convergence),
        ("tilt properties", Duration::from_secs(300), tilt_properties),
        ("rerun determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed < *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {} ({:.2} s, limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
