//! Convex-polynomial interpolation with prescribed values and derivatives.
//!
//! Given real nodes `x_k` and non-real nodes `z_k` with targets for the
//! derivatives of orders `0..=N_k`, [`solve`] searches for a convex-polynomial
//! meeting every target. For each degree `d` in a geometric schedule the
//! problem is a linear feasibility question over the coefficient simplex:
//!
//! ```text
//! a_i ≥ 0,   Σ a_i = 1,   Σ_i (i)_j node^{i−j} a_i = target_{j,node}
//! ```
//!
//! with complex rows split into real and imaginary parts. Column `i` is
//! rescaled by `max(1, max|node|)^i` to keep the monomial basis conditioned.
//! Every returned polynomial is re-verified by direct evaluation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

use crate::convex_poly::{falling_factorial, horner_derivative, ConvexPolynomial, NODE_TOL};
use crate::lp::{minimize_nonnegative, Feasibility, SimplexOptions};
use crate::matrix::{complex_scalar, complex_vec};
use crate::multiprec::{abs, mp, simplex, to_f64, Mp, MpMatrix, Vertex};

pub const DEFAULT_MAX_DEGREE: usize = 200;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

fn default_max_degree() -> usize {
    DEFAULT_MAX_DEGREE
}

fn default_residual_tol() -> f64 {
    DEFAULT_RESIDUAL_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealNode {
    pub x: f64,
    /// `targets[j]` is the prescribed `p^{(j)}(x)`.
    pub targets: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexNode {
    #[serde(with = "complex_scalar")]
    pub z: Complex64,
    #[serde(with = "complex_vec")]
    pub targets: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationProblem {
    #[serde(default)]
    pub real_nodes: Vec<RealNode>,
    #[serde(default)]
    pub complex_nodes: Vec<ComplexNode>,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default = "default_residual_tol")]
    pub residual_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("problem has no nodes")]
    NoNodes,
    #[error("node {0} has no targets")]
    NoTargets(usize),
    #[error("problem contains non-finite values")]
    NonFinite,
    #[error("residual tolerance must be positive")]
    BadTolerance,
}

impl InterpolationProblem {
    pub fn new(real_nodes: Vec<RealNode>, complex_nodes: Vec<ComplexNode>) -> Self {
        Self {
            real_nodes,
            complex_nodes,
            max_degree: DEFAULT_MAX_DEGREE,
            residual_tol: DEFAULT_RESIDUAL_TOL,
        }
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.real_nodes.is_empty() && self.complex_nodes.is_empty() {
            return Err(ProblemError::NoNodes);
        }
        let counts = self
            .real_nodes
            .iter()
            .map(|n| n.targets.len())
            .chain(self.complex_nodes.iter().map(|n| n.targets.len()));
        for (i, c) in counts.enumerate() {
            if c == 0 {
                return Err(ProblemError::NoTargets(i));
            }
        }
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        let ok = self
            .real_nodes
            .iter()
            .all(|n| n.x.is_finite() && n.targets.iter().all(|t| t.is_finite()))
            && self
                .complex_nodes
                .iter()
                .all(|n| finite(n.z) && n.targets.iter().all(|&t| finite(t)));
        if !ok {
            return Err(ProblemError::NonFinite);
        }
        if !(self.residual_tol > 0.0) {
            return Err(ProblemError::BadTolerance);
        }
        Ok(())
    }

    /// Number of (node, derivative order) conditions.
    pub fn constraint_count(&self) -> usize {
        self.real_nodes.iter().map(|n| n.targets.len()).sum::<usize>()
            + self.complex_nodes.iter().map(|n| n.targets.len()).sum::<usize>()
    }

    fn constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for n in &self.real_nodes {
            for (order, &t) in n.targets.iter().enumerate() {
                out.push(Constraint {
                    node: Complex64::new(n.x, 0.0),
                    order,
                    target: Complex64::new(t, 0.0),
                    real: true,
                });
            }
        }
        for n in &self.complex_nodes {
            for (order, &t) in n.targets.iter().enumerate() {
                out.push(Constraint { node: n.z, order, target: t, real: false });
            }
        }
        out
    }

    fn all_nodes(&self) -> Vec<Complex64> {
        self.real_nodes
            .iter()
            .map(|n| Complex64::new(n.x, 0.0))
            .chain(self.complex_nodes.iter().map(|n| n.z))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct Constraint {
    node: Complex64,
    order: usize,
    target: Complex64,
    real: bool,
}

/// A violated clause of the node admissibility condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code")]
pub enum Violation {
    DuplicateNode {
        #[serde(with = "complex_scalar")]
        node: Complex64,
    },
    RealNodeNotBelowMinusOne { x: f64 },
    ComplexNodeInClosedDisk {
        #[serde(with = "complex_scalar")]
        z: Complex64,
    },
    ComplexNodeReal {
        #[serde(with = "complex_scalar")]
        z: Complex64,
    },
    ConjugateNodePair {
        #[serde(with = "complex_scalar")]
        first: Complex64,
        #[serde(with = "complex_scalar")]
        second: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<Violation>,
}

/// Checks the node conditions under which every choice of targets is attainable:
/// distinct nodes, real nodes in `(−∞, −1)`, complex nodes outside the closed
/// disk, off the real line, and free of conjugate pairs.
pub fn check_admissibility(prob: &InterpolationProblem) -> AdmissibilityReport {
    let mut violations = Vec::new();
    let nodes = prob.all_nodes();
    for i in 0..nodes.len() {
        if nodes[..i].iter().any(|&m| (m - nodes[i]).norm() <= NODE_TOL) {
            violations.push(Violation::DuplicateNode { node: nodes[i] });
        }
    }
    for n in &prob.real_nodes {
        if n.x >= -1.0 - NODE_TOL {
            violations.push(Violation::RealNodeNotBelowMinusOne { x: n.x });
        }
    }
    for (k, n) in prob.complex_nodes.iter().enumerate() {
        if n.z.norm() <= 1.0 + NODE_TOL {
            violations.push(Violation::ComplexNodeInClosedDisk { z: n.z });
        }
        if n.z.im.abs() <= NODE_TOL {
            violations.push(Violation::ComplexNodeReal { z: n.z });
        }
        for m in &prob.complex_nodes[k + 1..] {
            if (n.z - m.z.conj()).norm() <= NODE_TOL {
                violations.push(Violation::ConjugateNodePair { first: n.z, second: m.z });
            }
        }
    }
    AdmissibilityReport { admissible: violations.is_empty(), violations }
}

/// Why a problem has no convex-polynomial solution at any degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code")]
pub enum InfeasibleReason {
    /// A real node (or a complex node on the real line) with a non-real target.
    NonRealTarget {
        #[serde(with = "complex_scalar")]
        node: Complex64,
        order: usize,
    },
    /// `p(1) = 1` for every convex-polynomial.
    UnitValue {
        #[serde(with = "complex_scalar")]
        target: Complex64,
    },
    /// `|p(z)| ≤ 1` whenever `|z| ≤ 1`.
    DiskBound {
        #[serde(with = "complex_scalar")]
        node: Complex64,
        #[serde(with = "complex_scalar")]
        target: Complex64,
    },
    /// `p^{(j)}(conj z) = conj p^{(j)}(z)`.
    ConjugateSymmetry {
        #[serde(with = "complex_scalar")]
        first: Complex64,
        #[serde(with = "complex_scalar")]
        second: Complex64,
        order: usize,
    },
    /// Every derivative is nonnegative on `[0, ∞)`.
    PositiveAxisSign { x: f64, order: usize },
    /// The same node appears twice with different targets.
    ConflictingDuplicate {
        #[serde(with = "complex_scalar")]
        node: Complex64,
        order: usize,
    },
    /// The node set fails admissibility where admissibility is required.
    Inadmissible { violations: Vec<Violation> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum InterpolationCertificate {
    Feasible {
        polynomial: ConvexPolynomial,
        degree_used: usize,
        max_residual: f64,
    },
    InfeasibleNecessary {
        reason: InfeasibleReason,
    },
    InfeasibleAtCap {
        max_degree: usize,
    },
}

impl InterpolationCertificate {
    pub fn polynomial(&self) -> Option<&ConvexPolynomial> {
        match self {
            InterpolationCertificate::Feasible { polynomial, .. } => Some(polynomial),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, InterpolationCertificate::Feasible { .. })
    }
}

/// Target combinations that no convex-polynomial can meet, regardless of degree.
pub fn necessary_target_check(prob: &InterpolationProblem) -> Result<(), InfeasibleReason> {
    let tol = prob.residual_tol;
    let cons = prob.constraints();
    for c in &cons {
        if c.node.im.abs() <= NODE_TOL && c.target.im.abs() > tol {
            return Err(InfeasibleReason::NonRealTarget { node: c.node, order: c.order });
        }
        if c.order == 0 && (c.node - 1.0).norm() <= NODE_TOL && (c.target - 1.0).norm() > tol {
            return Err(InfeasibleReason::UnitValue { target: c.target });
        }
        if c.order == 0 && c.node.norm() <= 1.0 && c.target.norm() > 1.0 + tol {
            return Err(InfeasibleReason::DiskBound { node: c.node, target: c.target });
        }
        if c.node.im.abs() <= NODE_TOL && c.node.re >= 0.0 && c.target.re < -tol {
            return Err(InfeasibleReason::PositiveAxisSign { x: c.node.re, order: c.order });
        }
    }
    for (i, a) in cons.iter().enumerate() {
        for b in &cons[i + 1..] {
            if a.order != b.order {
                continue;
            }
            if (a.node - b.node).norm() <= NODE_TOL && (a.target - b.target).norm() > tol {
                return Err(InfeasibleReason::ConflictingDuplicate { node: a.node, order: a.order });
            }
            let conjugate = (a.node - b.node.conj()).norm() <= NODE_TOL && a.node.im.abs() > NODE_TOL;
            if !a.real && !b.real && conjugate && (a.target - b.target.conj()).norm() > tol {
                return Err(InfeasibleReason::ConjugateSymmetry {
                    first: a.node,
                    second: b.node,
                    order: a.order,
                });
            }
        }
    }
    Ok(())
}

/// Degrees tried by [`solve`]: `count + 2`, doubling, with `max_degree` last.
pub fn degree_schedule(constraint_count: usize, max_degree: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = (constraint_count + 2).max(1);
    loop {
        if d >= max_degree {
            out.push(max_degree);
            break;
        }
        out.push(d);
        d *= 2;
    }
    out
}

pub fn solve(prob: &InterpolationProblem) -> InterpolationCertificate {
    if let Err(reason) = necessary_target_check(prob) {
        return InterpolationCertificate::InfeasibleNecessary { reason };
    }
    for d in degree_schedule(prob.constraint_count(), prob.max_degree) {
        if let Some((polynomial, max_residual)) = solve_at_degree(prob, d) {
            log::debug!("interpolation feasible at degree {d}, residual {max_residual:e}");
            return InterpolationCertificate::Feasible { polynomial, degree_used: d, max_residual };
        }
        log::trace!("interpolation infeasible at degree {d}");
    }
    InterpolationCertificate::InfeasibleAtCap { max_degree: prob.max_degree }
}

/// One feasibility attempt at a fixed degree. Returns the polynomial and its
/// verified maximum residual when it is within `residual_tol`.
pub fn solve_at_degree(prob: &InterpolationProblem, degree: usize) -> Option<(ConvexPolynomial, f64)> {
    let sys = System::assemble(prob, degree);
    for cost in sys.objectives() {
        let Some(mut coeffs) = sys.vertex(&cost) else {
            continue;
        };
        sys.refine(&mut coeffs);
        if let Some(done) = accept(prob, coeffs) {
            return Some(done);
        }
    }

    // Rounding the coefficients to f64 leaves an error of roughly
    // eps · Σ a_i |node|^i, which reaches 1e-6 on clustered or high-order
    // problems, and the f64 tableau can misjudge feasibility there. Fall
    // back to exact vertices and seeded rounding.
    let exact = ExactSystem::assemble(&sys);
    for cost in sys.objectives() {
        let cost: Vec<Mp> = cost.iter().map(|&c| mp(c)).collect();
        // The feasible set does not depend on the objective.
        let vertex = simplex(&exact.a, &exact.b, &cost)?;
        if let Some(done) = exact.seeded_rounding(&vertex).and_then(|c| accept(prob, c)) {
            return Some(done);
        }
    }
    None
}

/// The scaled system in multiprecision arithmetic.
struct ExactSystem {
    a: MpMatrix,
    b: Vec<Mp>,
    /// `scale^i` for every column.
    powers: Vec<Mp>,
}

impl ExactSystem {
    fn assemble(sys: &System) -> Self {
        let rows = sys.a.nrows();
        let cols = sys.a.ncols();
        let scale = mp(sys.scale);
        let mut powers = vec![mp(1.0)];
        for i in 1..cols {
            powers.push(&powers[i - 1] * &scale);
        }
        let mut a = MpMatrix::zeros(rows, cols);
        let mut b = vec![mp(1.0)];
        for (i, p) in powers.iter().enumerate() {
            a.set(0, i, mp(1.0) / p);
        }
        let mut r = 1;
        for c in &sys.cons {
            let (wr, wi) = (mp(c.node.re) / &scale, mp(c.node.im) / &scale);
            let (mut pr, mut pi) = (mp(1.0) / &powers[c.order], mp(0.0));
            for i in c.order..cols {
                let ff = mp(falling_factorial(i, c.order));
                a.set(r, i, &pr * &ff);
                if !c.real {
                    a.set(r + 1, i, &pi * &ff);
                }
                (pr, pi) = (&pr * &wr - &pi * &wi, &pr * &wi + &pi * &wr);
            }
            b.push(mp(c.target.re));
            if !c.real {
                b.push(mp(c.target.im));
            }
            r += if c.real { 1 } else { 2 };
        }
        Self { a, b, powers }
    }

    /// Rounds an exact vertex so that the rounding error is cancelled. Low-degree columns outside the basis get
    /// small weights `w`, sized to dominate the rounding error of the basic
    /// part; the basis is re-solved exactly to absorb them and rounded, and
    /// the seeded columns, whose own rounding is negligible, take up the
    /// residual that rounding left.
    fn seeded_rounding(&self, vertex: &Vertex) -> Option<Vec<f64>> {
        let rows = self.a.rows;
        let basis = &vertex.basis;
        let b_inv = self.a.select_columns(basis).inverse()?;
        let eps = mp(f64::EPSILON);
        let bound: Vec<Mp> = (0..rows)
            .map(|r| {
                let mass = basis
                    .iter()
                    .zip(&vertex.values)
                    .fold(mp(0.0), |acc, (&i, y)| acc + abs(self.a.get(r, i)) * abs(y));
                &eps * mass
            })
            .collect();
        let free: Vec<usize> = (0..self.a.cols).filter(|i| !basis.contains(i)).collect();
        for start in (0..).step_by(2).take(8) {
            let Some(fine) = free.get(start..start + rows) else {
                break;
            };
            if let Some(coeffs) = self.round_with_seeds(basis, &b_inv, fine, &bound) {
                return Some(coeffs);
            }
        }
        None
    }

    fn round_with_seeds(&self, basis: &[usize], b_inv: &MpMatrix, fine: &[usize], bound: &[Mp]) -> Option<Vec<f64>> {
        let rows = self.a.rows;
        let v = self.a.select_columns(fine);
        let v_inv = v.inverse()?;
        let seeds: Vec<Mp> = (0..rows)
            .map(|k| {
                let s = (0..rows).fold(mp(0.0), |acc, r| acc + abs(v_inv.get(k, r)) * &bound[r]);
                mp(4.0) * s
            })
            .collect();
        let spill = v.mul_vec(&seeds);
        let rhs: Vec<Mp> = self.b.iter().zip(&spill).map(|(b, s)| b - s).collect();
        let y_basis = b_inv.mul_vec(&rhs);
        if y_basis.iter().any(|y| y.signum() < Mp::ZERO) {
            return None;
        }
        let mut coeffs = vec![0.0; self.a.cols];
        let mut rounded = Vec::with_capacity(rows);
        for (&i, y) in basis.iter().zip(&y_basis) {
            coeffs[i] = to_f64(&(y / &self.powers[i]));
            rounded.push(mp(coeffs[i]) * &self.powers[i]);
        }
        let landed = self.a.select_columns(basis).mul_vec(&rounded);
        let left: Vec<Mp> = rhs.iter().zip(&landed).map(|(r, l)| r - l).collect();
        let correction = v_inv.mul_vec(&left);
        for ((&i, w), d) in fine.iter().zip(&seeds).zip(&correction) {
            let y = w + d;
            if y.signum() < Mp::ZERO {
                return None;
            }
            coeffs[i] = to_f64(&(y / &self.powers[i]));
        }
        Some(coeffs)
    }
}

fn accept(prob: &InterpolationProblem, coeffs: Vec<f64>) -> Option<(ConvexPolynomial, f64)> {
    let sum: f64 = coeffs.iter().sum();
    if !(sum > 0.0) || (sum - 1.0).abs() > 1e-6 {
        return None;
    }
    let p = ConvexPolynomial::renormalized(coeffs);
    let residual = max_residual(prob, &p);
    (residual <= prob.residual_tol).then_some((p, residual))
}

/// The scaled linear system for one degree: variable `y_i = a_i · scale^i`.
struct System {
    a: DMatrix<f64>,
    b: DVector<f64>,
    scale: f64,
    cons: Vec<Constraint>,
}

impl System {
    fn assemble(prob: &InterpolationProblem, degree: usize) -> Self {
        let cons = prob.constraints();
        let scale = prob.all_nodes().iter().map(|z| z.norm()).fold(1.0, f64::max);
        let cols = degree + 1;
        let rows = 1 + cons.iter().map(|c| if c.real { 1 } else { 2 }).sum::<usize>();
        let mut a = DMatrix::<f64>::zeros(rows, cols);
        let mut b = DVector::<f64>::zeros(rows);
        let mut inv_pow = 1.0;
        for i in 0..cols {
            a[(0, i)] = inv_pow;
            inv_pow /= scale;
        }
        b[0] = 1.0;
        let mut r = 1;
        for c in &cons {
            let w = c.node / scale;
            let inv_scale_j = scale.powi(-(c.order as i32));
            let mut pw = Complex64::new(1.0, 0.0);
            for i in c.order..cols {
                let v = pw * falling_factorial(i, c.order) * inv_scale_j;
                a[(r, i)] = v.re;
                if !c.real {
                    a[(r + 1, i)] = v.im;
                }
                pw *= w;
            }
            b[r] = c.target.re;
            if !c.real {
                b[r + 1] = c.target.im;
            }
            r += if c.real { 1 } else { 2 };
        }
        Self { a, b, scale, cons }
    }

    /// Vertex minimizing `cost · y`, as coefficients. The phase-one
    /// tolerance is loose on purpose: refinement and the final verification
    /// decide acceptance, not the tableau.
    fn vertex(&self, cost: &DVector<f64>) -> Option<Vec<f64>> {
        let opts = SimplexOptions { feasibility_tol: 1e-6, ..SimplexOptions::default() };
        let y = match minimize_nonnegative(&self.a, &self.b, cost, &opts) {
            Feasibility::Feasible(y) => y,
            _ => return None,
        };
        Some(
            y.iter()
                .enumerate()
                .map(|(i, &v)| (v / self.scale.powi(i as i32)).max(0.0))
                .collect(),
        )
    }

    /// Objectives tried in turn. `Σ y_i` bounds the cancellation mass
    /// `Σ a_i |node|^i` at every node; the others trade it for smaller
    /// masses at the inner nodes or lower degree, giving different vertices
    /// whose rounding may land closer to the targets.
    fn objectives(&self) -> Vec<DVector<f64>> {
        let n = self.a.ncols();
        let mut moduli: Vec<f64> = self.cons.iter().map(|c| c.node.norm() / self.scale).collect();
        moduli.sort_by(f64::total_cmp);
        moduli.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let all_nodes = DVector::from_fn(n, |i, _| moduli.iter().map(|m| m.powi(i as i32)).sum::<f64>());
        let graded = DVector::from_fn(n, |i, _| 1.0 + i as f64 / n as f64);
        vec![DVector::from_element(n, 1.0), all_nodes, graded]
    }

    /// Linear map from a residual to the least-squares coefficient
    /// correction on `cols`, built with rows and columns equilibrated.
    fn correction_map(&self, cols: &[usize]) -> Option<DMatrix<f64>> {
        let mut sub = self.a.select_columns(cols);
        let row_scale: Vec<f64> = sub
            .row_iter()
            .map(|row| {
                let m = row.amax();
                if m > 0.0 { 1.0 / m } else { 1.0 }
            })
            .collect();
        for (i, mut row) in sub.row_iter_mut().enumerate() {
            row *= row_scale[i];
        }
        let col_scale: Vec<f64> = sub
            .column_iter()
            .map(|c| {
                let n = c.norm();
                if n > 0.0 { 1.0 / n } else { 1.0 }
            })
            .collect();
        for (k, mut c) in sub.column_iter_mut().enumerate() {
            c *= col_scale[k];
        }
        let svd = sub.svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-15;
        let mut map = svd.pseudo_inverse(cutoff).ok()?;
        for (k, mut row) in map.row_iter_mut().enumerate() {
            row *= col_scale[k] / self.scale.powi(cols[k] as i32);
        }
        for (i, mut col) in map.column_iter_mut().enumerate() {
            col *= row_scale[i];
        }
        map.iter().all(|v| v.is_finite()).then_some(map)
    }

    /// Iterative refinement against accurately computed residuals, solving
    /// corrections in least squares on the scaled support columns. Returns
    /// the final residual max-norm.
    fn refine(&self, coeffs: &mut Vec<f64>) -> f64 {
        let rows = self.a.nrows();
        let mut r = residual_vector(&self.cons, coeffs, rows);
        for _ in 0..6 {
            let cols: Vec<usize> = (0..coeffs.len()).filter(|&i| coeffs[i] > 0.0).collect();
            if cols.is_empty() || r.amax() == 0.0 {
                break;
            }
            let Some(map) = self.correction_map(&cols) else {
                break;
            };
            let da = map * &r;
            let mut trial = coeffs.clone();
            for (k, &i) in cols.iter().enumerate() {
                trial[i] += da[k];
            }
            if trial.iter().any(|&c| c < 0.0 || !c.is_finite()) {
                break;
            }
            let r_new = residual_vector(&self.cons, &trial, rows);
            if r_new.amax() >= r.amax() {
                break;
            }
            *coeffs = trial;
            r = r_new;
        }
        r.amax()
    }
}

/// Residuals of the simplex row and every constraint row, evaluated in
/// double-double arithmetic.
fn residual_vector(cons: &[Constraint], coeffs: &[f64], rows: usize) -> DVector<f64> {
    let mut r = DVector::zeros(rows);
    let sum = coeffs.iter().fold(TwoFloat::from(0.0), |acc, &c| acc + c);
    r[0] = f64::from(TwoFloat::from(1.0) - sum);
    let mut k = 1;
    for c in cons {
        let d = c.target - horner_derivative(coeffs, c.order, c.node);
        r[k] = d.re;
        if !c.real {
            r[k + 1] = d.im;
        }
        k += if c.real { 1 } else { 2 };
    }
    r
}

/// `max |p^{(j)}(node) − target|` over all conditions, by direct evaluation.
pub fn max_residual(prob: &InterpolationProblem, p: &ConvexPolynomial) -> f64 {
    prob.constraints()
        .iter()
        .map(|c| (p.eval_derivative(c.order, c.node) - c.target).norm())
        .fold(0.0, f64::max)
}

/// A node at which the annihilator must vanish to the given order, i.e.
/// `p^{(j)}(node) = 0` for `j < order`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VanishingNode {
    #[serde(with = "complex_scalar")]
    pub node: Complex64,
    pub order: usize,
}

/// Convex-polynomial vanishing to the requested orders at `vanish` while
/// meeting the extra conditions in `prescribed`. The combined node set must be
/// admissible.
pub fn vanishing_annihilator(vanish: &[VanishingNode], prescribed: &InterpolationProblem) -> InterpolationCertificate {
    let mut prob = prescribed.clone();
    for v in vanish {
        let order = v.order.max(1);
        if v.node.im == 0.0 {
            prob.real_nodes.push(RealNode { x: v.node.re, targets: vec![0.0; order] });
        } else {
            prob.complex_nodes.push(ComplexNode { z: v.node, targets: vec![Complex64::new(0.0, 0.0); order] });
        }
    }
    let report = check_admissibility(&prob);
    if !report.admissible {
        return InterpolationCertificate::InfeasibleNecessary {
            reason: InfeasibleReason::Inadmissible { violations: report.violations },
        };
    }
    solve(&prob)
}
