//! Euclidean projections onto the three convex sets whose intersection is
//! the positivity polytope.

/// Projection onto the monotone cone `x_1 >= x_2 >= ... >= x_n`
/// (pool adjacent violators, unit weights).
pub fn project_nonincreasing(x: &[f64]) -> Vec<f64> {
    // blocks of (sum, count); each block mean must not exceed the previous one
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(x.len());
    for &v in x {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s0 / c0 as f64 >= s1 / c1 as f64 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s0 + s1, c0 + c1);
        }
    }
    let mut out = Vec::with_capacity(x.len());
    for (sum, count) in blocks {
        let mean = sum / count as f64;
        out.extend(std::iter::repeat_n(mean, count));
    }
    out
}

/// Projection onto the probability simplex `{x >= 0, sum(x) = 1}` by the
/// sort-and-threshold rule.
pub fn project_simplex(x: &[f64]) -> Vec<f64> {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let t = (cumulative - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            threshold = t;
        } else {
            break;
        }
    }
    x.iter().map(|v| (v - threshold).max(0.0)).collect()
}

/// Projection onto `{x : a . x >= 0}`.
pub fn project_halfspace(x: &[f64], a: &[f64], a_norm_sq: f64) -> Vec<f64> {
    let dot: f64 = a.iter().zip(x).map(|(p, q)| p * q).sum();
    if dot >= 0.0 {
        return x.to_vec();
    }
    let step = dot / a_norm_sq;
    x.iter().zip(a).map(|(v, ai)| v - step * ai).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn pava_examples() {
        assert_eq!(project_nonincreasing(&[3.0, 2.0, 1.0]), vec![3.0, 2.0, 1.0]);
        assert_eq!(project_nonincreasing(&[1.0, 3.0]), vec![2.0, 2.0]);
        assert_eq!(
            project_nonincreasing(&[1.0, 2.0, 3.0, 0.0]),
            vec![2.0, 2.0, 2.0, 0.0]
        );
        assert_eq!(project_nonincreasing(&[4.0, 1.0, 3.0]), vec![4.0, 2.0, 2.0]);
    }

    #[test]
    fn simplex_examples() {
        let p = project_simplex(&[0.7, 0.2, 0.1]);
        assert!(p
            .iter()
            .zip([0.7, 0.2, 0.1])
            .all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(project_simplex(&[2.0, 0.0]), vec![1.0, 0.0]);
        assert_eq!(project_simplex(&[0.0, 0.0]), vec![0.5, 0.5]);
        let p = project_simplex(&[0.5, 0.5, -3.0]);
        assert_eq!(p, vec![0.5, 0.5, 0.0]);
    }

    #[test]
    fn halfspace_examples() {
        let a = [-1.0, 1.0, 1.0];
        assert_eq!(
            project_halfspace(&[0.2, 0.5, 0.3], &a, 3.0),
            vec![0.2, 0.5, 0.3]
        );
        let p = project_halfspace(&[1.0, 0.0, 0.0], &a, 3.0);
        let dot: f64 = a.iter().zip(&p).map(|(x, y)| x * y).sum();
        assert!(dot.abs() < 1e-15);
    }

    proptest! {
        // Each projection is feasible, idempotent, and beats every feasible
        // point of a small random sample (variational inequality, sampled).
        #[test]
        fn projections_are_nearest(x in prop::collection::vec(-2.0f64..2.0, 2..7),
                                   y in prop::collection::vec(0.0f64..1.0, 7)) {
            let n = x.len();
            let m = project_nonincreasing(&x);
            prop_assert!(m.windows(2).all(|w| w[0] >= w[1] - 1e-15));
            prop_assert!((m.iter().sum::<f64>() - x.iter().sum::<f64>()).abs() < 1e-12);
            let mut cand = y[..n].to_vec();
            cand.sort_by(|a, b| b.total_cmp(a));
            prop_assert!(dist(&x, &m) <= dist(&x, &cand) + 1e-12);
            prop_assert_eq!(project_nonincreasing(&m), m.clone());

            let s = project_simplex(&x);
            prop_assert!(s.iter().all(|v| *v >= 0.0));
            prop_assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let total: f64 = y[..n].iter().sum::<f64>().max(1e-9);
            let cand: Vec<f64> = y[..n].iter().map(|v| v / total).collect();
            prop_assert!(dist(&x, &s) <= dist(&x, &cand) + 1e-12);
            // first-order optimality: (x - s) . (c - s) <= 0 for feasible c
            let inner: f64 = x.iter().zip(&s).zip(&cand).map(|((a, b), c)| (a - b) * (c - b)).sum();
            prop_assert!(inner <= 1e-12);
        }
    }
}
