use bdqmc::digitalnet::{check_net, min_t, scramble, sobol_points, DigitalNet, DirectionNumbers, ScrambleRealization};

const REFERENCE: &str = include_str!("data/sobol_reference.txt");

#[test]
fn matches_reference_table() {
    let mut lines = REFERENCE.lines().filter(|l| !l.starts_with("# unscrambled"));
    let dims: Vec<usize> = lines
        .next()
        .unwrap()
        .trim_start_matches("# dims:")
        .split_whitespace()
        .map(|d| d.parse().unwrap())
        .collect();
    let rows: Vec<Vec<u64>> = lines
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 256);
    let s = *dims.last().unwrap();
    let net = DigitalNet::sobol(DirectionNumbers::joe_kuo(), s, 8).unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (&d, &want) in dims.iter().zip(row) {
            assert_eq!(net.digits(i, d - 1) >> 34, want, "point {i}, dimension {d}");
        }
    }
}

#[test]
fn streamed_points_match_direct_digits() {
    let net = DigitalNet::sobol(DirectionNumbers::joe_kuo(), 7, 9).unwrap();
    net.for_each_point(|i, x| {
        for (j, &xj) in x.iter().enumerate() {
            assert_eq!(xj, net.digits(i, j));
        }
    });
}

#[test]
fn leading_dimensions_are_zero_nets() {
    for m in 0..=10 {
        let pts = sobol_points(DirectionNumbers::joe_kuo(), 2, m).unwrap().rows::<f64>();
        assert!(check_net(&pts, 0, m, 2), "m={m}");
        let first: Vec<Vec<f64>> = pts.iter().map(|p| vec![p[0]]).collect();
        assert!(check_net(&first, 0, m, 1), "m={m}");
    }
}

#[test]
fn three_dimensional_quality() {
    let pts = sobol_points(DirectionNumbers::joe_kuo(), 3, 6).unwrap().rows::<f64>();
    assert_eq!(min_t(&pts, 6, 3), 1);
}

#[test]
fn scrambling_preserves_minimal_t() {
    for s in 1..=3 {
        for m in [4, 6] {
            let base = sobol_points(DirectionNumbers::joe_kuo(), s, m).unwrap();
            let t = min_t(&base.rows::<f64>(), m, s);
            for seed in 0..20 {
                let scrambled = scramble(&base, &ScrambleRealization::new(seed, 0, s));
                assert_eq!(min_t(&scrambled.rows::<f64>(), m, s), t, "s={s} m={m} seed={seed}");
            }
        }
    }
}

#[test]
fn scrambled_coordinates_are_interior() {
    let (s, m) = (4, 18);
    let base = DigitalNet::sobol(DirectionNumbers::joe_kuo(), s, m).unwrap();
    let net = ScrambleRealization::new(20240601, 3, s).scramble_net(&base);
    let mut count = 0usize;
    let low_mask = (1u64 << (64 - m)) - (1 << 11);
    net.for_each_point(|_, x| {
        for &xj in x {
            let u: f64 = bdqmc::digitalnet::unit_from_digits(xj);
            assert!(u > 0.0 && u < 1.0);
            assert_ne!(xj & low_mask, 0);
            count += 1;
        }
    });
    assert!(count >= 1_000_000);
}

#[test]
fn scrambles_differ_across_replicates() {
    let base = sobol_points(DirectionNumbers::joe_kuo(), 2, 5).unwrap();
    let a = scramble(&base, &ScrambleRealization::new(1, 0, 2));
    let b = scramble(&base, &ScrambleRealization::new(1, 1, 2));
    let c = scramble(&base, &ScrambleRealization::new(1, 0, 2));
    assert_ne!(a, b);
    assert_eq!(a, c);
}
