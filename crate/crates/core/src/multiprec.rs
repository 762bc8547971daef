//! Dense linear algebra and a tableau simplex in 512-bit binary floating
//! point. Used where interpolation systems are too ill-conditioned for
//! double or double-double arithmetic.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

pub(crate) const PRECISION: usize = 512;

pub(crate) type Mp = FBig<HalfEven>;

pub(crate) fn mp(x: f64) -> Mp {
    Mp::try_from(x).expect("finite input").with_precision(PRECISION).value()
}

pub(crate) fn to_f64(x: &Mp) -> f64 {
    x.to_f64().value()
}

pub(crate) fn abs(x: &Mp) -> Mp {
    if x.signum() < Mp::ZERO { -x.clone() } else { x.clone() }
}

fn is_negative(x: &Mp) -> bool {
    x.signum() < Mp::ZERO
}

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub(crate) struct MpMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Mp>,
}

impl MpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![mp(0.0); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Mp {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Mp) {
        self.data[r * self.cols + c] = v;
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Mp]) -> Vec<Mp> {
        (0..self.rows)
            .map(|r| {
                x.iter()
                    .enumerate()
                    .fold(mp(0.0), |acc, (c, v)| acc + self.get(r, c) * v)
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting; `None`
    /// when a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        assert_eq!(n, self.cols, "square matrix required");
        let mut a = self.clone();
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            inv.set(i, i, mp(1.0));
        }
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| abs(a.get(x, k)).cmp(&abs(a.get(y, k))))?;
            if a.get(p, k).signum() == Mp::ZERO {
                return None;
            }
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let pivot = a.get(k, k).clone();
            for c in 0..n {
                a.set(k, c, a.get(k, c) / &pivot);
                inv.set(k, c, inv.get(k, c) / &pivot);
            }
            for r in 0..n {
                if r == k || a.get(r, k).signum() == Mp::ZERO {
                    continue;
                }
                let f = a.get(r, k).clone();
                for c in 0..n {
                    a.set(r, c, a.get(r, c) - &f * a.get(k, c));
                    inv.set(r, c, inv.get(r, c) - &f * inv.get(k, c));
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

/// Optimal basis of `min cost·x` subject to `a x = b`, `x ≥ 0`.
#[derive(Debug, Clone)]
pub(crate) struct Vertex {
    pub basis: Vec<usize>,
    pub values: Vec<Mp>,
}

/// Two-phase dense tableau simplex using Dantzig's rule, with Bland's rule
/// after a run of degenerate pivots. Entries are expected to be of moderate
/// size; `None` means infeasible, unbounded, a rank-deficient system or an
/// exhausted iteration budget.
pub(crate) fn simplex(a: &MpMatrix, b: &[Mp], cost: &[Mp]) -> Option<Vertex> {
    let (m, n) = (a.rows, a.cols);
    let width = n + m + 1;
    let mut t = MpMatrix::zeros(m, width);
    for (r, rhs) in b.iter().enumerate() {
        let flip = is_negative(rhs);
        for c in 0..n {
            let v = a.get(r, c).clone();
            t.set(r, c, if flip { -v } else { v });
        }
        t.set(r, n + r, mp(1.0));
        t.set(r, n + m, abs(rhs));
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let phase_one: Vec<Mp> = (0..n + m).map(|c| mp(if c >= n { 1.0 } else { 0.0 })).collect();
    run_phase(&mut t, &mut basis, &phase_one, n + m)?;
    let infeasibility = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n)
        .fold(mp(0.0), |acc, (r, _)| acc + t.get(r, n + m));
    if infeasibility > mp(1e-60) {
        return None;
    }
    for r in 0..m {
        if basis[r] < n {
            continue;
        }
        let c = (0..n).find(|&c| abs(t.get(r, c)) > mp(1e-60))?;
        pivot(&mut t, &mut basis, r, c);
    }
    let mut phase_two = cost.to_vec();
    phase_two.resize(n + m, mp(0.0));
    run_phase(&mut t, &mut basis, &phase_two, n)?;
    let values = (0..m).map(|r| t.get(r, n + m).clone()).collect();
    Some(Vertex { basis, values })
}

fn run_phase(t: &mut MpMatrix, basis: &mut [usize], cost: &[Mp], allowed: usize) -> Option<()> {
    let m = t.rows;
    let rhs = t.cols - 1;
    let max_iter = 50 * (rhs + m);
    let entering_tol = mp(1e-50);
    let pivot_tol = mp(1e-60);
    let mut degenerate = 0;
    for _ in 0..max_iter {
        let reduced = |c: usize| {
            (0..m).fold(cost[c].clone(), |acc, r| acc - &cost[basis[r]] * t.get(r, c))
        };
        let candidates = (0..allowed).filter(|c| !basis.contains(c));
        let entering = if degenerate > 50 {
            candidates.into_iter().find(|&c| reduced(c) < -entering_tol.clone())
        } else {
            candidates
                .map(|c| (c, reduced(c)))
                .filter(|(_, d)| *d < -entering_tol.clone())
                .min_by(|x, y| x.1.cmp(&y.1))
                .map(|(c, _)| c)
        };
        let Some(c) = entering else {
            return Some(());
        };
        let row = (0..m)
            .filter(|&r| *t.get(r, c) > pivot_tol)
            .map(|r| (r, t.get(r, rhs) / t.get(r, c)))
            .min_by(|x, y| x.1.cmp(&y.1).then(basis[x.0].cmp(&basis[y.0])))
            .map(|(r, _)| r)?;
        if t.get(row, rhs).signum() == Mp::ZERO {
            degenerate += 1;
        } else {
            degenerate = 0;
        }
        pivot(t, basis, row, c);
    }
    None
}

fn pivot(t: &mut MpMatrix, basis: &mut [usize], row: usize, col: usize) {
    let p = t.get(row, col).clone();
    for c in 0..t.cols {
        t.set(row, c, t.get(row, c) / &p);
    }
    for r in 0..t.rows {
        if r == row || t.get(r, col).signum() == Mp::ZERO {
            continue;
        }
        let f = t.get(r, col).clone();
        for c in 0..t.cols {
            let v = t.get(r, c) - &f * t.get(row, c);
            t.set(r, c, v);
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> MpMatrix {
        let mut out = MpMatrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out.set(r, c, mp(v));
            }
        }
        out
    }

    #[test]
    fn inverse_of_hilbert_is_exact() {
        let n = 8;
        let mut h = MpMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                h.set(r, c, mp(1.0) / mp((r + c + 1) as f64));
            }
        }
        let inv = h.inverse().unwrap();
        // Known entry of the inverse Hilbert matrix of order 8.
        assert!((to_f64(inv.get(0, 0)) - 64.0).abs() < 1e-30);
        for r in 0..n {
            let col: Vec<Mp> = (0..n).map(|k| inv.get(k, r).clone()).collect();
            let e = h.mul_vec(&col);
            for (k, v) in e.iter().enumerate() {
                let want = if k == r { 1.0 } else { 0.0 };
                assert!((to_f64(v) - want).abs() < 1e-100);
            }
        }
    }

    #[test]
    fn singular_inverse_is_none() {
        assert!(matrix(&[&[1.0, 2.0], &[2.0, 4.0]]).inverse().is_none());
    }

    #[test]
    fn simplex_small_lp() {
        // min -x0 - x1 s.t. x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6.
        let a = matrix(&[&[1.0, 2.0, 1.0, 0.0], &[3.0, 1.0, 0.0, 1.0]]);
        let b = [mp(4.0), mp(6.0)];
        let cost = [mp(-1.0), mp(-1.0), mp(0.0), mp(0.0)];
        let v = simplex(&a, &b, &cost).unwrap();
        let mut x = [0.0; 4];
        for (r, &j) in v.basis.iter().enumerate() {
            x[j] = to_f64(&v.values[r]);
        }
        assert!((x[0] - 1.6).abs() < 1e-15 && (x[1] - 1.2).abs() < 1e-15);
    }

    #[test]
    fn simplex_detects_infeasibility() {
        let a = matrix(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let b = [mp(1.0), mp(2.0)];
        assert!(simplex(&a, &b, &[mp(1.0), mp(1.0)]).is_none());
    }
}
