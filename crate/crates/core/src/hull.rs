//! Minimum-norm point of a finite convex hull (Wolfe's algorithm).

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq)]
pub struct MinNormPoint {
    pub point: Vec<f64>,
    /// `(generator index, weight)` for the active generators; weights sum to 1.
    pub weights: Vec<(usize, f64)>,
    pub norm: f64,
}

const MAJOR_LIMIT: usize = 1000;
const MINOR_LIMIT: usize = 1000;

/// Point of `co(points)` closest to the origin. `points` must be nonempty
/// and of equal length.
pub fn min_norm_point(points: &[Vec<f64>]) -> MinNormPoint {
    assert!(!points.is_empty(), "hull needs at least one generator");
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let max_sq = points.iter().map(|p| dot(p, p)).fold(0.0, f64::max);
    let start = (0..points.len())
        .min_by(|&i, &j| dot(&points[i], &points[i]).total_cmp(&dot(&points[j], &points[j])))
        .unwrap();
    let mut active = vec![start];
    let mut w = vec![1.0];
    let mut x = points[start].clone();
    let combine = |active: &[usize], w: &[f64]| {
        let mut x = vec![0.0; points[0].len()];
        for (&i, &wi) in active.iter().zip(w) {
            for (xk, pk) in x.iter_mut().zip(&points[i]) {
                *xk += wi * pk;
            }
        }
        x
    };
    for _ in 0..MAJOR_LIMIT {
        let xx = dot(&x, &x);
        if xx <= 1e-30 * max_sq {
            break;
        }
        let (j, xpj) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // x·p_j / ‖x‖ bounds the distance from below.
        if xx - xpj <= 1e-12 * xx || active.contains(&j) {
            break;
        }
        active.push(j);
        w.push(0.0);
        for _ in 0..MINOR_LIMIT {
            let v = affine_minimizer(points, &active);
            if v.iter().all(|&vi| vi > 1e-12) {
                w = v;
                break;
            }
            let theta = w
                .iter()
                .zip(&v)
                .filter(|(_, &vi)| vi <= 1e-12)
                .map(|(&wi, &vi)| if wi - vi > 0.0 { wi / (wi - vi) } else { 0.0 })
                .fold(1.0, f64::min);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi = (1.0 - theta) * *wi + theta * vi;
            }
            let keep: Vec<usize> = (0..active.len()).filter(|&k| w[k] > 1e-12).collect();
            active = keep.iter().map(|&k| active[k]).collect();
            w = keep.iter().map(|&k| w[k]).collect();
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= total);
            if active.len() == 1 {
                w = vec![1.0];
                break;
            }
        }
        x = combine(&active, &w);
    }
    let norm = dot(&x, &x).sqrt();
    MinNormPoint { point: x, weights: active.into_iter().zip(w).collect(), norm }
}

/// Weights summing to 1 minimizing `‖Σ v_k p_k‖` over the affine hull of
/// the active generators.
fn affine_minimizer(points: &[Vec<f64>], active: &[usize]) -> Vec<f64> {
    let k = active.len();
    let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
    for a in 0..k {
        for b in 0..k {
            kkt[(a, b)] = points[active[a]].iter().zip(&points[active[b]]).map(|(x, y)| x * y).sum();
        }
        kkt[(a, k)] = 1.0;
        kkt[(k, a)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    let cutoff = 1e-14 * kkt.amax();
    match kkt.svd(true, true).solve(&rhs, cutoff) {
        Ok(sol) if sol.iter().all(|v| v.is_finite()) => {
            let v: Vec<f64> = sol.rows(0, k).iter().copied().collect();
            let total: f64 = v.iter().sum();
            v.iter().map(|vi| vi / total).collect()
        }
        _ => {
            let mut v = vec![0.0; k];
            v[0] = 1.0;
            v
        }
    }
}
