//! Dense two-phase simplex for `A x = b, x ≥ 0`, optionally minimizing `c · x`.
//!
//! Problems here are small (tens of rows, a few hundred columns), so a full
//! tableau is used. Rows are equilibrated before pivoting and the tableau is
//! periodically rebuilt from the original data through the current basis,
//! which keeps accumulated pivoting error from stalling phase one. A feasible
//! vertex is polished by re-solving the basic columns in least squares
//! against the original (unscaled) system.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Phase-one objective (sum of scaled artificials) accepted as feasible.
    pub feasibility_tol: f64,
    pub pivot_tol: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { feasibility_tol: 1e-9, pivot_tol: 1e-12, max_iter: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(DVector<f64>),
    Infeasible { residual: f64 },
    IterationLimit,
}

/// Finds `x ≥ 0` with `A x = b`, or reports the minimal phase-one residual.
pub fn find_nonnegative_solution(a: &DMatrix<f64>, b: &DVector<f64>, opts: &SimplexOptions) -> Feasibility {
    solve_lp(a, b, None, opts)
}

/// As [`find_nonnegative_solution`], then minimizes `c · x` over the feasible set.
pub fn minimize_nonnegative(a: &DMatrix<f64>, b: &DVector<f64>, c: &DVector<f64>, opts: &SimplexOptions) -> Feasibility {
    assert_eq!(c.len(), a.ncols(), "cost length must match column count");
    solve_lp(a, b, Some(c), opts)
}

const REINVERT_EVERY: usize = 40;

struct Tableau {
    m: usize,
    n: usize,
    /// Equilibrated `[A | I | b]`.
    base: DMatrix<f64>,
    /// Phase-one and phase-two costs over structural and artificial columns.
    costs: [DVector<f64>; 2],
    /// Constraint rows then the two reduced-cost rows.
    tab: DMatrix<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: &DMatrix<f64>, b: &DVector<f64>, cost: Option<&DVector<f64>>) -> Self {
        let (m, n) = a.shape();
        let width = n + m + 1;
        let mut base = DMatrix::<f64>::zeros(m, width);
        for i in 0..m {
            let scale = a.row(i).iter().fold(b[i].abs(), |acc, v| acc.max(v.abs()));
            let s = if scale > 0.0 { 1.0 / scale } else { 1.0 };
            let s = if b[i] < 0.0 { -s } else { s };
            for j in 0..n {
                base[(i, j)] = a[(i, j)] * s;
            }
            base[(i, n + i)] = 1.0;
            base[(i, width - 1)] = b[i] * s;
        }
        let mut phase_one = DVector::zeros(n + m);
        phase_one.rows_mut(n, m).fill(1.0);
        let mut phase_two = DVector::zeros(n + m);
        if let Some(c) = cost {
            phase_two.rows_mut(0, n).copy_from(c);
        }
        let mut t = Self {
            m,
            n,
            base,
            costs: [phase_one, phase_two],
            tab: DMatrix::zeros(m + 2, width),
            basis: (n..n + m).collect(),
        };
        t.reinvert();
        t
    }

    fn width(&self) -> usize {
        self.n + self.m + 1
    }

    /// Rebuilds constraint rows as `B⁻¹ [A | I | b]` and the reduced costs
    /// from scratch. Keeps the old tableau if the basis is numerically singular.
    fn reinvert(&mut self) {
        let (m, width) = (self.m, self.width());
        let bmat = self.base.select_columns(&self.basis);
        let Some(rows) = bmat.lu().solve(&self.base) else {
            return;
        };
        if rows.iter().any(|v| !v.is_finite()) {
            return;
        }
        self.tab.rows_mut(0, m).copy_from(&rows);
        for (k, c) in self.costs.iter().enumerate() {
            let cb = DVector::from_iterator(m, self.basis.iter().map(|&j| c[j]));
            for j in 0..width {
                let own = if j < width - 1 { c[j] } else { 0.0 };
                let proj: f64 = (0..m).map(|i| cb[i] * rows[(i, j)]).sum();
                self.tab[(m + k, j)] = own - proj;
            }
        }
        for (i, &bv) in self.basis.iter().enumerate() {
            for r in 0..m {
                self.tab[(r, bv)] = if r == i { 1.0 } else { 0.0 };
            }
            self.tab[(m, bv)] = 0.0;
            self.tab[(m + 1, bv)] = 0.0;
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let tab = &mut self.tab;
        let p = tab[(row, col)];
        tab.row_mut(row).iter_mut().for_each(|v| *v /= p);
        let pivot_row = tab.row(row).clone_owned();
        for i in 0..tab.nrows() {
            if i == row {
                continue;
            }
            let f = tab[(i, col)];
            if f != 0.0 {
                for j in 0..tab.ncols() {
                    tab[(i, j)] -= f * pivot_row[j];
                }
                tab[(i, col)] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Pivots on reduced-cost row `m + phase` until no structural column
    /// improves it, reinverting periodically and once more before declaring
    /// optimality. Returns false on hitting the iteration limit.
    fn run(&mut self, phase: usize, opts: &SimplexOptions) -> bool {
        let (m, n, width) = (self.m, self.n, self.width());
        let cost_row = m + phase;
        let mut degenerate_run = 0usize;
        let mut since_reinvert = 0usize;
        let mut fresh = false;
        let mut dead: Vec<usize> = Vec::new();
        for _ in 0..opts.max_iter {
            if since_reinvert >= REINVERT_EVERY {
                self.reinvert();
                since_reinvert = 0;
                fresh = true;
            }
            let bland = degenerate_run > 50;
            let tab = &self.tab;
            let mut candidates = (0..n).filter(|&j| tab[(cost_row, j)] < -opts.pivot_tol && !dead.contains(&j));
            let entering = if bland {
                candidates.next()
            } else {
                candidates.min_by(|&x, &y| tab[(cost_row, x)].total_cmp(&tab[(cost_row, y)]))
            };
            let Some(col) = entering else {
                if fresh {
                    return true;
                }
                self.reinvert();
                since_reinvert = 0;
                fresh = true;
                dead.clear();
                continue;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let aij = tab[(i, col)];
                if aij > opts.pivot_tol {
                    let ratio = tab[(i, width - 1)].max(0.0) / aij;
                    let better = match leave {
                        None => true,
                        Some((li, best)) => {
                            ratio < best - 1e-15
                                || (ratio <= best + 1e-15
                                    && (if bland {
                                        self.basis[i] < self.basis[li]
                                    } else {
                                        aij > tab[(li, col)]
                                    }))
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leave else {
                // Unbounded along this column. Costs used here are bounded
                // below on the feasible set, so this is a numerical dead end.
                dead.push(col);
                continue;
            };
            degenerate_run = if ratio.abs() <= 1e-15 { degenerate_run + 1 } else { 0 };
            self.pivot(row, col);
            since_reinvert += 1;
            fresh = false;
        }
        false
    }

    fn phase_one_residual(&self) -> f64 {
        -self.tab[(self.m, self.width() - 1)]
    }

    /// Pivots basic artificials out wherever a structural column allows it.
    fn drive_out_artificials(&mut self) {
        let n = self.n;
        for i in 0..self.m {
            if self.basis[i] < n {
                continue;
            }
            let best = (0..n)
                .filter(|j| !self.basis.contains(j))
                .max_by(|&x, &y| self.tab[(i, x)].abs().total_cmp(&self.tab[(i, y)].abs()));
            if let Some(j) = best {
                if self.tab[(i, j)].abs() > 1e-9 {
                    self.pivot(i, j);
                }
            }
        }
    }

    fn solution(&self) -> DVector<f64> {
        let mut x = DVector::zeros(self.n);
        let w = self.width() - 1;
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.n {
                x[bv] = self.tab[(i, w)].max(0.0);
            }
        }
        x
    }
}

fn solve_lp(a: &DMatrix<f64>, b: &DVector<f64>, cost: Option<&DVector<f64>>, opts: &SimplexOptions) -> Feasibility {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m, "rhs length must match row count");
    if m == 0 {
        return Feasibility::Feasible(DVector::zeros(n));
    }
    let mut t = Tableau::new(a, b, cost);
    if !t.run(0, opts) {
        return Feasibility::IterationLimit;
    }
    let residual = t.phase_one_residual();
    if residual > opts.feasibility_tol {
        return Feasibility::Infeasible { residual };
    }
    if cost.is_some() {
        // Artificials left in the basis could move during phase two.
        t.drive_out_artificials();
        t.reinvert();
        if !t.run(1, opts) {
            return Feasibility::IterationLimit;
        }
    }
    Feasibility::Feasible(polish(a, b, &t.basis, n, t.solution()))
}

/// Minimum-norm least-squares solution, discarding singular values below
/// `1e-15` relative to the largest.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    if a.is_empty() {
        return None;
    }
    let svd = a.clone().svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-15;
    let x = svd.solve(b, cutoff).ok()?;
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Least-squares re-solve on the structural basic columns; kept only when it
/// stays nonnegative and improves the residual.
fn polish(a: &DMatrix<f64>, b: &DVector<f64>, basis: &[usize], n: usize, x: DVector<f64>) -> DVector<f64> {
    let support: Vec<usize> = basis.iter().copied().filter(|&j| j < n).collect();
    if support.is_empty() {
        return x;
    }
    let sub = a.select_columns(&support);
    let Some(y) = least_squares(&sub, b) else {
        return x;
    };
    if y.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return x;
    }
    let mut candidate = DVector::zeros(n);
    for (k, &j) in support.iter().enumerate() {
        candidate[j] = y[k];
    }
    if (a * &candidate - b).norm() <= (a * &x - b).norm() {
        candidate
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: a nonnegative solution exists iff some basis of linearly
    /// independent columns has a nonnegative basic solution.
    fn enumerate_bases(a: &DMatrix<f64>, b: &DVector<f64>) -> bool {
        let (m, n) = a.shape();
        let mut subset = Vec::new();
        fn rec(a: &DMatrix<f64>, b: &DVector<f64>, start: usize, k: usize, subset: &mut Vec<usize>) -> bool {
            if subset.len() == k {
                let sub = a.select_columns(subset.as_slice());
                let svd = sub.clone().svd(true, true);
                if svd.rank(1e-10) < k {
                    return false;
                }
                let y = svd.solve(b, 1e-12).unwrap();
                return (&sub * &y - b).norm() < 1e-9 && y.iter().all(|&v| v >= -1e-12);
            }
            for j in start..a.ncols() {
                subset.push(j);
                if rec(a, b, j + 1, k, subset) {
                    return true;
                }
                subset.pop();
            }
            false
        }
        (0..=m.min(n)).any(|k| {
            if k == 0 {
                return b.norm() < 1e-12;
            }
            subset.clear();
            rec(a, b, 0, k, &mut subset)
        })
    }

    /// Oracle: minimum of `c · x` over nonnegative basic solutions.
    fn enumerate_min_cost(a: &DMatrix<f64>, b: &DVector<f64>, c: &DVector<f64>) -> Option<f64> {
        let (m, n) = a.shape();
        let mut best: Option<f64> = None;
        for mask in 1u32..(1 << n) {
            let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
            if cols.len() > m {
                continue;
            }
            let sub = a.select_columns(&cols);
            let svd = sub.clone().svd(true, true);
            if svd.rank(1e-10) < cols.len() {
                continue;
            }
            let y = svd.solve(b, 1e-12).unwrap();
            if (&sub * &y - b).norm() < 1e-9 && y.iter().all(|&v| v >= -1e-12) {
                let v: f64 = cols.iter().zip(y.iter()).map(|(&j, &yj)| c[j] * yj).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
        if best.is_none() && b.norm() < 1e-12 {
            best = Some(0.0);
        }
        best
    }

    #[test]
    fn simple_simplex_point() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 1.0, 1.0, -2.0, 4.0]);
        let b = DVector::from_vec(vec![1.0, 3.0]);
        match find_nonnegative_solution(&a, &b, &SimplexOptions::default()) {
            Feasibility::Feasible(x) => {
                assert!(x.iter().all(|&v| v >= 0.0));
                assert!((&a * &x - &b).norm() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 1.0, 1.0, -2.0, 4.0]);
        let b = DVector::from_vec(vec![1.0, 5.0]);
        assert!(matches!(
            find_nonnegative_solution(&a, &b, &SimplexOptions::default()),
            Feasibility::Infeasible { .. }
        ));
    }

    #[test]
    fn agrees_with_basis_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.random_range(1..=3);
            let n = rng.random_range(1..=5);
            let a = DMatrix::from_fn(m, n, |_, _| rng.random_range(-3i32..=3) as f64);
            let b = DVector::from_fn(m, |_, _| rng.random_range(-3i32..=3) as f64);
            let oracle = enumerate_bases(&a, &b);
            let got = find_nonnegative_solution(&a, &b, &SimplexOptions::default());
            match got {
                Feasibility::Feasible(x) => {
                    assert!(oracle, "simplex found a point the oracle missed: {a} {b}");
                    assert!(x.iter().all(|&v| v >= 0.0));
                    assert!((&a * &x - &b).norm() < 1e-9);
                }
                Feasibility::Infeasible { .. } => assert!(!oracle, "missed feasible system {a} {b}"),
                Feasibility::IterationLimit => panic!("iteration limit"),
            }
        }
    }

    #[test]
    fn minimization_agrees_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.random_range(1..=3);
            let n = rng.random_range(1..=6);
            // A positive first row keeps the feasible set bounded.
            let a = DMatrix::from_fn(m, n, |i, _| {
                if i == 0 { rng.random_range(1i32..=3) as f64 } else { rng.random_range(-3i32..=3) as f64 }
            });
            let b = DVector::from_fn(m, |i, _| {
                if i == 0 { rng.random_range(1i32..=3) as f64 } else { rng.random_range(-3i32..=3) as f64 }
            });
            let c = DVector::from_fn(n, |_, _| rng.random_range(-2i32..=3) as f64);
            let oracle = enumerate_min_cost(&a, &b, &c);
            match minimize_nonnegative(&a, &b, &c, &SimplexOptions::default()) {
                Feasibility::Feasible(x) => {
                    let best = oracle.expect("oracle found no feasible point");
                    assert!((&a * &x - &b).norm() < 1e-9);
                    assert!((c.dot(&x) - best).abs() < 1e-9, "{} vs {best}", c.dot(&x));
                }
                Feasibility::Infeasible { .. } => assert!(oracle.is_none()),
                Feasibility::IterationLimit => panic!("iteration limit"),
            }
        }
    }
}
