//! Grid-search minimizer of the hinge objective for tiny problems.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::fusion::TrustWeights;
use crate::optim::HingeProblem;

/// Grids with more weight points than this are searched coarse-to-fine.
const FULL_GRID_BUDGET: usize = 1_000_000;

struct Grid<'a> {
    problem: &'a HingeProblem,
    half: i64,
    step: f64,
}

impl Grid<'_> {
    fn value(&self, k: i64) -> f64 {
        k as f64 * self.step
    }

    /// Mean hinge with per-sample offsets `partial` and intercept `b`.
    fn hinge(&self, partial: &[f64], b: f64) -> f64 {
        let t = self.problem.targets();
        partial.iter().zip(t).map(|(&c, &t)| (1.0 - t * (c + b)).max(0.0)).sum::<f64>() / partial.len() as f64
    }

    /// Best intercept on the grid for fixed weights. The hinge is convex and
    /// piecewise linear in `b`, so its grid minimum sits next to one of its
    /// kinks (`b = t_j - c_j`) or at an end of the box.
    fn best_bias(&self, partial: &[f64]) -> (i64, f64) {
        if !self.problem.fit_bias() {
            return (0, self.hinge(partial, 0.0));
        }
        let mut best = (0, f64::INFINITY);
        let mut consider = |k: i64| {
            let k = k.clamp(-self.half, self.half);
            let h = self.hinge(partial, self.value(k));
            if h < best.1 || (h == best.1 && k < best.0) {
                best = (k, h);
            }
        };
        consider(-self.half);
        consider(self.half);
        for (&c, &t) in partial.iter().zip(self.problem.targets()) {
            let k = (t - c) / self.step;
            consider(libm::floor(k) as i64);
            consider(libm::ceil(k) as i64);
        }
        best
    }

    /// Objective at weight indices `idx`, minimized over the grid intercept.
    fn eval(&self, idx: &[i64], partial: &mut [f64]) -> (i64, f64) {
        let mut w = [0.0f64; 3];
        for (wi, &k) in w.iter_mut().zip(idx) {
            *wi = self.value(k);
        }
        let w = &w[..idx.len()];
        for (p, sample) in partial.iter_mut().zip(self.problem.samples()) {
            *p = sample.iter().map(|&(i, x)| w[i] * x).sum();
        }
        let (b, h) = self.best_bias(partial);
        (b, h + self.problem.lambda() * self.problem.penalty().value(w))
    }

    /// Exhaustive search of the box `lo..=hi` (per coordinate) with stride `by`.
    fn search(&self, lo: &[i64], hi: &[i64], by: i64) -> (Vec<i64>, i64, f64) {
        let m = lo.len();
        let mut partial = vec![0.0; self.problem.num_samples()];
        let mut idx = lo.to_vec();
        let mut best = (idx.clone(), 0, f64::INFINITY);
        loop {
            let (b, v) = self.eval(&idx, &mut partial);
            if v < best.2 {
                best = (idx.clone(), b, v);
            }
            // odometer increment; the upper end is always visited
            let mut d = 0;
            loop {
                if d == m {
                    return best;
                }
                if idx[d] < hi[d] {
                    idx[d] = (idx[d] + by).min(hi[d]);
                    break;
                }
                idx[d] = lo[d];
                d += 1;
            }
        }
    }
}

/// Minimizes the hinge objective over the grid `{-box, -box+step, …, box}`
/// for every weight and the intercept.
///
/// The intercept is minimized exactly on the grid for each weight vector.
/// Weight grids with more than a million points are searched with a coarse
/// pass followed by fine passes around the coarse winner, re-centering until
/// the winner is interior. Only problems with at most three agents are
/// accepted.
pub fn brute_force_weights(problem: &HingeProblem, r#box: f64, step: f64) -> Result<(TrustWeights, f64)> {
    let m = problem.num_features();
    if m > 3 {
        bail!(Argument, "grid search is limited to 3 agents, got {m}");
    }
    if !(step > 0.0 && r#box > 0.0 && step.is_finite() && r#box.is_finite()) {
        bail!(Argument, "box and step must be positive");
    }
    let half = libm::round(r#box / step) as i64;
    let grid = Grid { problem, half, step };
    let points = (2 * half + 1) as f64;
    let (mut idx, mut b, mut value);
    if libm::pow(points, m as f64) <= FULL_GRID_BUDGET as f64 {
        (idx, b, value) = grid.search(&vec![-half; m], &vec![half; m], 1);
    } else {
        let per_axis = libm::pow(FULL_GRID_BUDGET as f64, 1.0 / m as f64);
        let stride = libm::ceil((2 * half) as f64 / (per_axis - 1.0)) as i64;
        (idx, b, value) = grid.search(&vec![-half; m], &vec![half; m], stride);
        let radius = 2 * stride;
        for _ in 0..64 {
            let lo: Vec<i64> = idx.iter().map(|&k| (k - radius).max(-half)).collect();
            let hi: Vec<i64> = idx.iter().map(|&k| (k + radius).min(half)).collect();
            let (next, nb, nv) = grid.search(&lo, &hi, 1);
            let on_edge = next
                .iter()
                .zip(lo.iter().zip(&hi))
                .any(|(&k, (&l, &h))| (k == l && l > -half) || (k == h && h < half));
            let improved = nv < value;
            if improved {
                (idx, b, value) = (next, nb, nv);
            }
            if !(improved && on_edge) {
                break;
            }
        }
    }
    let weights = idx.iter().map(|&k| grid.value(k)).collect();
    Ok((TrustWeights::new(weights, grid.value(b), problem.penalty().method()), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optim::Penalty;

    #[test]
    fn shutdown_problem_returns_zero() {
        let p = HingeProblem::new(2, vec![vec![(0, 1.0), (1, -1.0)], vec![(0, -1.0), (1, -1.0)]], vec![1.0, -1.0], 5.0, Penalty::L1, true)
            .unwrap();
        let (w, v) = brute_force_weights(&p, 3.0, 0.01).unwrap();
        assert_eq!(w.weights, [0.0, 0.0]);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_agents_share_weight() {
        let targets = vec![1.0, -1.0, 1.0];
        let samples = targets.iter().map(|&t| vec![(0, t), (1, t)]).collect();
        let p = HingeProblem::new(2, samples, targets, 0.1, Penalty::L2, true).unwrap();
        let (w, _) = brute_force_weights(&p, 3.0, 0.01).unwrap();
        assert!((w.weights[0] - w.weights[1]).abs() < 1e-12, "{:?}", w.weights);
    }

    #[test]
    fn refuses_large_problems() {
        let p = HingeProblem::new(4, vec![vec![(3, 1.0)]], vec![1.0], 0.0, Penalty::L1, true).unwrap();
        assert!(matches!(brute_force_weights(&p, 3.0, 0.01), Err(crate::Error::Argument(_))));
    }

    #[test]
    fn coarse_to_fine_agrees_with_exhaustive_on_small_box() {
        // box 0.6 at 0.01 is 121^3 < budget; at 0.001 it needs refinement
        let samples = vec![vec![(0, 1.0), (1, -1.0), (2, 1.0)], vec![(0, -1.0), (2, 1.0)], vec![(1, 1.0)]];
        let p = HingeProblem::new(3, samples, vec![1.0, -1.0, 1.0], 0.3, Penalty::L1, true).unwrap();
        let (_, coarse) = brute_force_weights(&p, 0.6, 0.01).unwrap();
        let (_, fine) = brute_force_weights(&p, 0.6, 0.001).unwrap();
        assert!(fine <= coarse + 1e-12);
        assert!(coarse - fine < 0.01);
    }
}
