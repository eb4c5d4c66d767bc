use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use renorm::circle::*;
use renorm::raster::map_indices;
use renorm::rotnum::*;

fn random_bounded_quadratic(rng: &mut ChaCha8Rng, bound: u32) -> RotationNumber {
    let pre: Vec<u32> = (0..rng.gen_range(0..4))
        .map(|_| rng.gen_range(1..=bound))
        .collect();
    let period: Vec<u32> = (0..rng.gen_range(1..4))
        .map(|_| rng.gen_range(1..=bound))
        .collect();
    if rng.gen_bool(0.5) {
        RotationNumber::quadratic(pre, period).unwrap()
    } else {
        RotationNumber::quadratic_complement(pre, period).unwrap()
    }
}

#[test]
fn induced_rotation_confirms_fast_renormalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut separated = 0;
    for _ in 0..200 {
        let theta = random_bounded_quadratic(&mut rng, 5);
        let oracle = induced_rotation_number(&theta, 200).unwrap();
        let fast = fast_renormalize(&theta).unwrap();
        assert!(
            oracle.contains(fast.to_f64(), 1e-12),
            "{theta}: {fast} not in {oracle:?}"
        );

        // One prime step fewer is a different rotation number, and the oracle
        // tells them apart whenever they are farther apart than its window.
        let n = fast_step_count(&theta).unwrap();
        if n >= 2 {
            let short = (0..n - 1).fold(theta.clone(), |t, _| prime_renormalize(&t));
            if (short.to_f64() - fast.to_f64()).abs() > 2.0 * (oracle.upper - oracle.lower) {
                assert!(!oracle.contains(short.to_f64(), 1e-12));
                separated += 1;
            }
        }
    }
    assert!(separated > 0);
}

#[test]
fn step_count_at_unit_fractions() {
    for m in 2..=50_u64 {
        for theta in [
            RotationNumber::rational(1, m).unwrap(),
            RotationNumber::rational(m - 1, m).unwrap(),
        ] {
            assert_eq!(u64::from(fast_step_count(&theta).unwrap()), m - 1);
            assert!(fast_renormalize(&theta).unwrap().is_zero());
            let fr = first_return(&theta, &fundamental_sector(&theta).unwrap()).unwrap();
            assert!(fr.is_degenerate());
            assert_eq!(fr.times, (m, m));
            assert_eq!(induced_rotation_number(&theta, 200).unwrap().best, (0, 1));
        }
    }
}

#[test]
fn rational_fundamental_returns_have_consecutive_times() {
    let results = map_indices(498, |i| {
        let q = i as u64 + 3;
        let mut checked = 0;
        for p in 1..q {
            let Ok(theta) = RotationNumber::rational(p, q) else {
                continue;
            };
            let fr = first_return(&theta, &fundamental_sector(&theta).unwrap()).unwrap();
            let n = u64::from(fast_step_count(&theta).unwrap());
            let (lo, hi) = fr.times_sorted();
            if fr.is_degenerate() {
                assert_eq!(hi, n + 1, "{theta}");
            } else {
                assert_eq!((lo, hi), (n, n + 1), "{theta}");
            }
            checked += 1;
        }
        checked
    });
    assert!(results.iter().sum::<usize>() > 70_000);
}

#[test]
fn induced_rotation_on_rationals() {
    for q in 3..=60_u64 {
        for p in 1..q {
            let Ok(theta) = RotationNumber::rational(p, q) else {
                continue;
            };
            let fast = fast_renormalize(&theta).unwrap();
            let oracle = induced_rotation_number(&theta, 200).unwrap();
            assert!(
                oracle.contains(fast.to_f64(), 1e-12),
                "{theta}: {fast} vs {oracle:?}"
            );
        }
    }
}

#[test]
fn two_atom_sectors_reproduce_return_times() {
    for q in 3..=200_u64 {
        for p in 1..q {
            let Ok(rt) = return_times(p, q) else { continue };
            let theta = RotationNumber::rational(p, q).unwrap();
            let fr = first_return(&theta, &two_atom_sector(p, q).unwrap()).unwrap();
            assert_eq!(fr.times, (rt.a, rt.b), "{p}/{q}");
        }
    }
}

#[test]
fn golden_fundamental_sector_return() {
    let g = RotationNumber::golden();
    let fr = first_return(&g, &fundamental_sector(&g).unwrap()).unwrap();
    assert_eq!(fr.times_sorted(), (2, 3));
    assert_eq!(fast_step_count(&g).unwrap(), 2);
    let s = RotationNumber::silver();
    let fr = first_return(&s, &fundamental_sector(&s).unwrap()).unwrap();
    assert_eq!(fr.times, (2, 3));
}

fn max_ratio(theta: &RotationNumber) -> f64 {
    let table = triangulation_table(theta, 10_000).unwrap();
    assert!(table.iter().all(|t| t.distinct_lengths <= 3));
    table.iter().map(|t| t.ratio).fold(0.0, f64::max)
}

#[test]
fn triangulations_stay_comparable() {
    // At convergent levels only two lengths occur, in ratio
    // 1 + [0; a_{n+1}, a_{n+2}, ...].
    let golden = max_ratio(&RotationNumber::golden());
    assert!(golden <= 2.62, "{golden}");
    assert!((golden - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-7, "{golden}");
    let silver = max_ratio(&RotationNumber::silver());
    assert!((silver - 2f64.sqrt()).abs() < 1e-7, "{silver}");
}

#[test]
fn return_times_grow_like_the_golden_mean() {
    let rows = return_time_growth(&RotationNumber::golden(), 15).unwrap();
    let (ea, eb) = growth_exponents(&rows, 2).unwrap();
    let target = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    assert!((ea - target).abs() < 1e-2 && (eb - target).abs() < 1e-2);
    for r in &rows {
        assert_eq!(r.a + r.b, r.q);
    }
}
