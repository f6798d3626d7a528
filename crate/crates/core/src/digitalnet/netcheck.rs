//! Exhaustive `(t, m, s)`-net verification in base 2.

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(rest: u32, slot: usize, current: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if slot + 1 == current.len() {
            current[slot] = rest;
            f(current);
            return;
        }
        for k in 0..=rest {
            current[slot] = k;
            rec(rest - k, slot + 1, current, f);
        }
    }
    let mut current = vec![0; parts];
    rec(total, 0, &mut current, f);
}

/// True iff every elementary interval of volume `2^(t-m)` holds exactly
/// `2^t` of the points. Requires exactly `2^m` points in `[0, 1)^s`.
pub fn check_net<P: AsRef<[f64]>>(points: &[P], t: u32, m: u32, s: usize) -> bool {
    if s == 0 || m >= usize::BITS || points.len() != 1usize << m {
        return false;
    }
    let in_cube = points.iter().all(|p| {
        let p = p.as_ref();
        p.len() == s && p.iter().all(|&u| (0.0..1.0).contains(&u))
    });
    if !in_cube {
        return false;
    }
    if t >= m {
        return true;
    }
    let level = m - t;
    let expected = 1usize << t;
    let mut counts = vec![0usize; 1 << level];
    let mut ok = true;
    compositions(level, s, &mut |shape| {
        if !ok {
            return;
        }
        counts.iter_mut().for_each(|c| *c = 0);
        for p in points {
            let mut cell = 0usize;
            for (&u, &k) in p.as_ref().iter().zip(shape) {
                // Scaling by a power of two is exact.
                let a = (u * f64::from(1u32 << k)) as usize;
                cell = (cell << k) | a;
            }
            counts[cell] += 1;
        }
        ok = counts.iter().all(|&c| c == expected);
    });
    ok
}

/// Smallest `t` for which `check_net` passes.
pub fn min_t<P: AsRef<[f64]>>(points: &[P], m: u32, s: usize) -> u32 {
    (0..=m).find(|&t| check_net(points, t, m, s)).unwrap_or(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_grid_is_a_zero_net() {
        for m in 0..8 {
            let pts: Vec<Vec<f64>> = (0..1u32 << m).map(|i| vec![f64::from(i) / f64::from(1u32 << m)]).collect();
            assert!(check_net(&pts, 0, m, 1));
            assert_eq!(min_t(&pts, m, 1), 0);
        }
    }

    #[test]
    fn repeated_point_fails() {
        let pts = vec![vec![0.5], vec![0.5]];
        assert!(!check_net(&pts, 0, 1, 1));
        assert!(check_net(&pts, 1, 1, 1));
    }

    #[test]
    fn duplicated_set_has_worst_quality() {
        let pts = vec![vec![0.3, 0.6]; 16];
        assert_eq!(min_t(&pts, 4, 2), 4);
    }

    #[test]
    fn wrong_size_or_outside_cube_fails() {
        assert!(!check_net(&[vec![0.1], vec![0.6], vec![0.3]], 0, 2, 1));
        assert!(!check_net(&[vec![0.1], vec![1.0]], 0, 1, 1));
    }

    #[test]
    fn composition_count() {
        let mut n = 0;
        compositions(4, 3, &mut |_| n += 1);
        assert_eq!(n, 15);
    }
}
