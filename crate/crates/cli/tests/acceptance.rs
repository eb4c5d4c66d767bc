//! One check per acceptance criterion. Each prints a PASS/FAIL line with its
//! runtime; the test fails if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use renorm::circle::{induced_rotation_number, triangulation_table};
use renorm::combinat::*;
use renorm::dynplane::*;
use renorm::paramplane::*;
use renorm::raster::{map_indices, Resolution, Window};
use renorm::rotnum::*;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

/// Induced-rotation probe length.
const Q_PROBE: usize = 200;
/// Center agreement with the grid-search oracle.
const CENTER_TOL: f64 = 1e-8;
/// Tolerance on `a_{1/2} = -1`.
const HALF_CENTER_TOL: f64 = 1e-12;
/// `|f_c^q(0)|` bound at a computed center.
const CENTER_RESIDUAL_TOL: f64 = 1e-12;
/// Admissible range of `s_n`.
const SCALING_RANGE: (f64, f64) = (1e-2, 1e2);
/// Bound on `|s_{n+2}/s_n - 1|` for the last three same-side pairs.
const SCALING_DEV_TOL: f64 = 0.05;
/// Relative spread of the last three closest-return ratios.
const RATIO_CAUCHY_TOL: f64 = 0.05;
/// Measured constants, pinned.
const GOLDEN_TRIANGULATION_BOUND: f64 = 1.618_033_988_749_895;
const SILVER_TRIANGULATION_BOUND: f64 = std::f64::consts::SQRT_2;
const TRIANGULATION_PIN_TOL: f64 = 1e-7;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn coprime_pairs(q_min: u64, q_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (q_min..=q_max).flat_map(|q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q)))
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100_000 {
        let q = rng.gen_range(2..=10_000_u64);
        let theta = RotationNumber::rational(rng.gen_range(1..q), q).map_err(|e| e.to_string())?;
        ensure!(
            cf_prime_step(&theta) == prime_renormalize(&theta),
            "mismatch at {theta}"
        );
    }
    let period = |t: RotationNumber| match orbit_signature(&t, 1000) {
        OrbitSignature::Periodic { period, .. } => Some(period),
        _ => None,
    };
    ensure!(period(RotationNumber::golden()) == Some(2), "golden period");
    ensure!(period(RotationNumber::silver()) == Some(4), "silver period");
    Ok("1e5 rationals exact; golden period 2, silver period 4".into())
}

fn criterion_2() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime_pairs(3, 1000) {
        let rt = return_times(p, q).map_err(|e| e.to_string())?;
        ensure!(rt.a + rt.b == q, "{p}/{q}: a + b");
        ensure!(p * rt.a % q == q - 1 && p * rt.b % q == 1, "{p}/{q}: congruences");
        let w = build_seq(p, q).map_err(|e| e.to_string())?;
        ensure!(
            w.word().count(Letter::A) as u64 == rt.a && w.word().count(Letter::B) as u64 == rt.b,
            "{p}/{q}: letter counts"
        );
        n += 1;
    }
    Ok(format!("{n} coprime pairs"))
}

fn criterion_3() -> Outcome {
    let bad: Vec<String> = map_indices(1998, |i| {
        let q = i as u64 + 3;
        (1..q)
            .filter(|&p| gcd(p, q) == 1)
            .filter(|&p| !build_seq(p, q).is_ok_and(|w| w.check_invariants()))
            .map(|p| format!("{p}/{q}"))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    ensure!(
        bad.is_empty(),
        "constraints fail for {:?}",
        &bad[..bad.len().min(5)]
    );
    let show = |p| build_seq(p, 3).map(|w| w.word().to_string()).unwrap_or_default();
    ensure!(show(1) == "A A B", "seq(1,3) = {}", show(1));
    ensure!(show(2) == "A B B", "seq(2,3) = {}", show(2));
    Ok("all q <= 2000; seq(1,3) = A A B, seq(2,3) = A B B".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let q = rng.gen_range(3..=500_u64);
        let p = loop {
            let p = rng.gen_range(1..q);
            if gcd(p, q) == 1 {
                break p;
            }
        };
        let word = build_seq(p, q).map_err(|e| e.to_string())?.word().clone();
        let stats = JumpStats::new(&word);
        for j in -10_000..=10_000_i64 {
            let c = stats.at(j);
            ensure!(c.nu + c.mu + c.kappa == j, "{p}/{q}: counts at {j}");
            if j > 0 {
                ensure!(total_jump(&word, j) == c.nu - c.mu, "{p}/{q}: total jump at {j}");
            }
        }
        ensure!(is_mixed(&word), "{p}/{q} not mixed");
        ensure!(
            kappa_divergence_check(&word, 10_000).map_err(|e| e.to_string())?,
            "{p}/{q}: kappa bounded"
        );
    }
    let all_a = PeriodicWord::new(vec![Letter::A; 7]).map_err(|e| e.to_string())?;
    ensure!(
        !kappa_divergence_check(&all_a, 10_000).map_err(|e| e.to_string())?,
        "all-A word diverges"
    );
    Ok("100 random words, |j| <= 1e4".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let pre: Vec<u32> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(1..=5)).collect();
        let period: Vec<u32> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..=5)).collect();
        let theta = if rng.gen_bool(0.5) {
            RotationNumber::quadratic(pre, period)
        } else {
            RotationNumber::quadratic_complement(pre, period)
        }
        .map_err(|e| e.to_string())?;
        let oracle = induced_rotation_number(&theta, Q_PROBE).map_err(|e| e.to_string())?;
        let fast = fast_renormalize(&theta).map_err(|e| e.to_string())?;
        ensure!(
            oracle.contains(fast.to_f64(), 1e-12),
            "{theta}: fast {fast} vs {oracle:?}"
        );
    }
    for m in 2..=50_u64 {
        let theta = RotationNumber::rational(1, m).map_err(|e| e.to_string())?;
        let n = fast_step_count(&theta).map_err(|e| e.to_string())?;
        ensure!(u64::from(n) == m - 1, "n(1/{m}) = {n}");
    }
    Ok("200 quadratics; n(1/m) = m - 1 for m <= 50".into())
}

fn criterion_6() -> Outcome {
    let max_ratio = |theta: RotationNumber| -> Result<f64, String> {
        let table = triangulation_table(&theta, 10_000).map_err(|e| e.to_string())?;
        Ok(table.iter().map(|t| t.ratio).fold(0.0, f64::max))
    };
    let g = max_ratio(RotationNumber::golden())?;
    let s = max_ratio(RotationNumber::silver())?;
    ensure!(g <= 2.62, "golden bound {g}");
    ensure!(
        (g - GOLDEN_TRIANGULATION_BOUND).abs() < TRIANGULATION_PIN_TOL,
        "golden pin {g}"
    );
    ensure!(
        (s - SILVER_TRIANGULATION_BOUND).abs() < TRIANGULATION_PIN_TOL,
        "silver pin {s}"
    );
    Ok(format!("golden max ratio {g}, silver {s}"))
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0_f64;
    for (p, q) in coprime_pairs(2, 10) {
        let (p, q) = (p as u32, q as u32);
        let fast = satellite_center(p, q, None).map_err(|e| format!("{p}/{q}: {e}"))?;
        let slow = center_bruteforce(p, q).map_err(|e| format!("{p}/{q}: {e}"))?;
        let d = (fast.c - slow.c).norm();
        worst = worst.max(d);
        ensure!(d < CENTER_TOL, "{p}/{q}: distance {d}");
        ensure!(
            critical_value(fast.c, q).0.norm() < CENTER_RESIDUAL_TOL,
            "{p}/{q}: not superattracting"
        );
        divisor_test(fast.c, q).map_err(|e| format!("{p}/{q}: {e}"))?;
    }
    let half = satellite_center(1, 2, None).map_err(|e| e.to_string())?.c;
    ensure!(
        (half - Complex64::new(-1.0, 0.0)).norm() < HALF_CENTER_TOL,
        "a_1/2 = {half}"
    );
    Ok(format!("q <= 10, worst distance {worst:e}"))
}

fn criterion_8() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for (name, theta) in [
        ("golden", RotationNumber::golden()),
        ("(3-sqrt5)/2", RotationNumber::anti_golden()),
    ] {
        let table = pool
            .install(|| scaling_table(&theta, 987))
            .map_err(|e| e.to_string())?;
        ensure!(table.failures.is_empty(), "{name}: {:?}", table.failures);
        for r in &table.rows {
            ensure!(
                (SCALING_RANGE.0..=SCALING_RANGE.1).contains(&r.s),
                "{name}: s = {} at {}/{}",
                r.s,
                r.p,
                r.q
            );
        }
        for side in [ApproachSide::Left, ApproachSide::Right] {
            let dev = table.same_side_deviations(side);
            ensure!(dev.len() >= 3, "{name}: too few {side} rows");
            let tail = &dev[dev.len() - 3..];
            ensure!(
                tail.iter().all(|d| d.abs() < SCALING_DEV_TOL),
                "{name} {side}: {tail:?}"
            );
        }
        if name != "golden" {
            for (p, q) in [(8, 21), (21, 55), (55, 144), (5, 13), (13, 34), (34, 89)] {
                ensure!(
                    table.rows.iter().any(|r| (r.p, r.q) == (p, q)),
                    "{name}: {p}/{q} missing"
                );
            }
        }
        summary.push(format!(
            "{name} s -> {:.4}",
            table.rows.last().map_or(f64::NAN, |r| r.s)
        ));
    }
    Ok(summary.join(", "))
}

fn criterion_9() -> Outcome {
    let g = RotationNumber::golden();
    let orbit = siegel_critical_orbit(&g, 1_000_000);
    ensure!(orbit.bounded && orbit.points.len() == 1_000_000, "orbit escaped");
    let times = closest_return_times(&g, 233).map_err(|e| e.to_string())?;
    ensure!(
        times == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233],
        "record times {times:?}"
    );
    let rep = closest_returns(&g, 233).map_err(|e| e.to_string())?;
    let tail = &rep.ratios[rep.ratios.len().saturating_sub(3)..];
    ensure!(tail.len() == 3, "too few ratios");
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(l, h), &r| (l.min(r), h.max(r)));
    ensure!(hi / lo - 1.0 < RATIO_CAUCHY_TOL, "ratios {tail:?}");
    Ok(format!("ratio -> {:.4}", tail[2]))
}

fn criterion_10() -> Outcome {
    let rep = molecule_model_checks();
    ensure!(rep.passed(), "{rep:?}");
    let window = Window::new(Complex64::new(-0.4, 0.0), 3.2).map_err(|e| e.to_string())?;
    let res = Resolution::new(512, 512).map_err(|e| e.to_string())?;
    let a = molecule_render(window, res, 500).to_ppm_bytes();
    let b = molecule_render(window, res, 500).to_ppm_bytes();
    ensure!(a == b, "render differs between runs");
    Ok(format!(
        "-1/3 within 1e-2 of 0 after {:?} steps",
        rep.steps_to_parabolic
    ))
}

fn run_cli(threads: u16, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_renorm"))
        .arg("--threads")
        .arg(threads.to_string())
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(out.stdout)
}

fn criterion_11() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["centers", "--qmax", "10", "--bruteforce"],
        &["scale", "--theta", "[0;(1)]", "--qmax", "987"],
        &["scale", "--theta", "[0;2,(1)]", "--qmax", "987"],
        &["siegel", "--format", "csv", "--qmax", "233"],
        &["molecule", "--window", "-0.4,0,3.2", "--res", "512x512"],
    ];
    for args in runs {
        let one = run_cli(1, args)?;
        let eight = run_cli(8, args)?;
        ensure!(
            !one.is_empty() && one == eight,
            "{args:?} differs between 1 and 8 threads"
        );
    }
    Ok("centers, scale x2, siegel csv, molecule ppm".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check, Duration); 11] = [
        ("prime renormalization", criterion_1, Duration::from_secs(5)),
        ("return-time congruences", criterion_2, Duration::from_secs(10)),
        ("word invariants", criterion_3, Duration::from_secs(30)),
        ("jump identities", criterion_4, Duration::from_secs(10)),
        ("oracle gate for n(theta)", criterion_5, Duration::from_secs(60)),
        (
            "triangulation comparability",
            criterion_6,
            Duration::from_secs(30),
        ),
        (
            "center solver vs brute force",
            criterion_7,
            Duration::from_secs(120),
        ),
        ("satellite scaling", criterion_8, Duration::from_secs(300)),
        ("Siegel boundedness", criterion_9, Duration::from_secs(30)),
        ("molecule model", criterion_10, Duration::from_secs(20)),
        (
            "determinism across thread counts",
            criterion_11,
            Duration::from_secs(600),
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        match &outcome {
            Ok(detail) => println!(
                "PASS {:>2} {name} ({:.2}s): {detail}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                println!("FAIL {:>2} {name} ({:.2}s): {why}", i + 1, elapsed.as_secs_f64());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
