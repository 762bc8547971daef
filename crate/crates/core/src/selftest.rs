//! Curated canonical forms with hand-derived verdicts, and the property
//! checks run by `convex-cyclic selftest`.
//!
//! Every check draws from its own seeded generator, so a run is a pure
//! function of the seed. Timings go to the log only.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::convex_poly::{
    find_growth_index, peaking_polynomial, ConvexPolynomial, GrowthQuery, PeakingOptions, NODE_TOL, SUM_TOL,
};
use crate::dynamics::{
    density_generators, empirical_density_scan, growth_witness, hull_contains, lattice, orbit, random_functional,
    GrowthOutcome, HullQuery,
};
use crate::interpolation::{
    check_admissibility, max_residual, solve, ComplexNode, InterpolationCertificate, InterpolationProblem, RealNode,
};
use crate::jordan_forms::{
    complexify, jordan_block, poly_on_jordan_block, real_jordan_block, Block, DirectSumSpec,
};
use crate::json;
use crate::matrix::{poly_on_matrix, Field, MatrixSpec};
use crate::spectral::{classify, ConvexCyclicVerdict};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A canonical form with its expected verdict.
#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub name: &'static str,
    pub field: Field,
    pub form: DirectSumSpec,
    pub convex_cyclic: bool,
    pub cyclic: bool,
    pub subspaces: bool,
    /// Sorted, deduplicated failure codes.
    pub codes: &'static [&'static str],
}

impl GoldenCase {
    pub fn matrix(&self) -> MatrixSpec {
        self.form.build_in(self.field).expect("golden forms are valid")
    }

    /// A convex-cyclic vector for convex-cyclic cases: all ones satisfies
    /// every blockwise condition.
    pub fn vector(&self) -> DVector<Complex64> {
        DVector::from_element(self.form.dim(), r(1.0))
    }
}

fn jordan(k: usize, lambda: Complex64) -> Block {
    Block::jordan(k, lambda)
}

fn diag(v: Complex64) -> Block {
    Block::diag(v)
}

fn rj(k: usize, rad: f64, theta: f64) -> Block {
    Block::real_jordan(k, rad, theta)
}

/// Hand-built canonical forms. Convex-cyclic over ℝ: cyclic with every
/// eigenvalue outside 𝔻̄ ∪ [0, ∞). Over ℂ: cyclic, every eigenvalue outside
/// 𝔻̄ ∪ ℝ, and no two eigenvalues conjugate.
pub fn golden_suite() -> Vec<GoldenCase> {
    use Field::{Complex as C, Real as R};
    let case = |name, field, blocks: Vec<Block>, cyclic, subspaces, codes| GoldenCase {
        name,
        field,
        form: DirectSumSpec::new(blocks),
        convex_cyclic: cyclic && subspaces,
        cyclic,
        subspaces,
        codes,
    };
    vec![
        case("real diag(-2, -3)", R, vec![diag(r(-2.0)), diag(r(-3.0))], true, true, &[]),
        case("real diag(-1.5)", R, vec![diag(r(-1.5))], true, true, &[]),
        case("real J3(-2)", R, vec![jordan(3, r(-2.0))], true, true, &[]),
        case("real C1(2, pi/3)", R, vec![rj(1, 2.0, PI / 3.0)], true, true, &[]),
        case("real C2(1.5, 2)", R, vec![rj(2, 1.5, 2.0)], true, true, &[]),
        case("real diag(-2) + C1(3, 1)", R, vec![diag(r(-2.0)), rj(1, 3.0, 1.0)], true, true, &[]),
        case("real J2(-4) + diag(-2, -3)", R, vec![jordan(2, r(-4.0)), diag(r(-2.0)), diag(r(-3.0))], true, true, &[]),
        case("real C1(2, pi/3) + C1(3, 2pi/3)", R, vec![rj(1, 2.0, PI / 3.0), rj(1, 3.0, 2.0 * PI / 3.0)], true, true, &[]),
        case("real J2(-3) + C1(2, 0.5)", R, vec![jordan(2, r(-3.0)), rj(1, 2.0, 0.5)], true, true, &[]),
        case("complex diag(2i, -3+i)", C, vec![diag(c(0.0, 2.0)), diag(c(-3.0, 1.0))], true, true, &[]),
        case("complex J2(2i)", C, vec![jordan(2, c(0.0, 2.0))], true, true, &[]),
        case("complex J3(1+2i) + diag(-2-2i)", C, vec![jordan(3, c(1.0, 2.0)), diag(c(-2.0, -2.0))], true, true, &[]),
        case("complex diag(2i, 3i)", C, vec![diag(c(0.0, 2.0)), diag(c(0.0, 3.0))], true, true, &[]),
        case("complex J2(-1.5+0.5i) + diag(2.5i)", C, vec![jordan(2, c(-1.5, 0.5)), diag(c(0.0, 2.5))], true, true, &[]),
        case("real diag(-2, -2)", R, vec![diag(r(-2.0)), diag(r(-2.0))], false, true, &["NotCyclic", "RepeatedEigenvalue"]),
        case("complex diag(2i, 2i)", C, vec![diag(c(0.0, 2.0)), diag(c(0.0, 2.0))], false, true, &["NotCyclic", "RepeatedEigenvalue"]),
        case("real J2(-2) + J1(-2)", R, vec![jordan(2, r(-2.0)), jordan(1, r(-2.0))], false, true, &["NotCyclic", "RepeatedEigenvalue"]),
        case("real C1(2, pi/3) + C1(2, pi/3)", R, vec![rj(1, 2.0, PI / 3.0), rj(1, 2.0, PI / 3.0)], false, true, &["NotCyclic", "RepeatedEigenvalue"]),
        case("complex diag(1+2i, 1-2i)", C, vec![diag(c(1.0, 2.0)), diag(c(1.0, -2.0))], true, false, &["ConjugatePair"]),
        case("complex J2(2i) + diag(-2i)", C, vec![jordan(2, c(0.0, 2.0)), diag(c(0.0, -2.0))], true, false, &["ConjugatePair"]),
        case("real diag(-0.5, -3)", R, vec![diag(r(-0.5)), diag(r(-3.0))], true, false, &["EigenvalueInClosedDisk"]),
        case("real C1(0.8, 1)", R, vec![rj(1, 0.8, 1.0)], true, false, &["EigenvalueInClosedDisk"]),
        case("complex J2(0.5i)", C, vec![jordan(2, c(0.0, 0.5))], true, false, &["EigenvalueInClosedDisk"]),
        case("real diag(2, -3)", R, vec![diag(r(2.0)), diag(r(-3.0))], true, false, &["NonNegativeRealEigenvalue"]),
        case("real diag(0)", R, vec![diag(r(0.0))], true, false, &["EigenvalueInClosedDisk", "NonNegativeRealEigenvalue"]),
        case("complex diag(-2, 3i)", C, vec![diag(r(-2.0)), diag(c(0.0, 3.0))], true, false, &["RealEigenvalue"]),
        case(
            "complex diag(0.3, 0.2i)",
            C,
            vec![diag(r(0.3)), diag(c(0.0, 0.2))],
            true,
            false,
            &["EigenvalueInClosedDisk", "RealEigenvalue"],
        ),
        case("real diag(0.5, 0.25)", R, vec![diag(r(0.5)), diag(r(0.25))], true, false, &["EigenvalueInClosedDisk", "NonNegativeRealEigenvalue"]),
    ]
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

type Check = fn(&mut ChaCha8Rng) -> (bool, String);

/// `(id, name, runtime limit, check)` for every criterion run in-process.
fn checks() -> Vec<(u8, &'static str, Option<Duration>, Check)> {
    vec![
        (1, "convex-polynomial algebra", Some(Duration::from_secs(10)), check_algebra),
        (2, "peaking polynomials", Some(Duration::from_secs(30)), check_peaking),
        (3, "growth scans", None, check_growth),
        (4, "classification", None, check_classification),
        (5, "Jordan block evaluation", None, check_toeplitz),
        (6, "complexification", None, check_complexification),
        (7, "interpolation", Some(Duration::from_secs(300)), check_interpolation),
        (8, "dynamics consistency", None, check_dynamics),
        (9, "output determinism", None, check_determinism),
    ]
}

/// Runs the criteria whose ids are listed, or all of them when `only` is empty.
pub fn run(seed: u64, only: &[u8]) -> SelftestReport {
    let mut criteria = Vec::new();
    for (id, name, limit, check) in checks() {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ id as u64);
        let start = Instant::now();
        let (ok, mut detail) = check(&mut rng);
        let elapsed = start.elapsed();
        log::info!("criterion {id} ({name}) took {elapsed:?}");
        let in_time = limit.is_none_or(|l| elapsed <= l);
        if !in_time {
            detail.push_str("; runtime limit exceeded");
        }
        criteria.push(CriterionResult { id, name: name.to_string(), passed: ok && in_time, detail });
    }
    SelftestReport { seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

/// Random point of the simplex of dimension `len` (flat Dirichlet).
pub fn random_simplex<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}

/// Random convex-polynomial of degree at most `max_degree`.
pub fn random_convex<R: Rng + ?Sized>(max_degree: usize, rng: &mut R) -> ConvexPolynomial {
    let len = rng.random_range(1..=max_degree + 1);
    ConvexPolynomial::new(random_simplex(len, rng)).expect("normalized simplex point")
}

fn in_simplex(coeffs: &[f64]) -> bool {
    coeffs.iter().all(|&a| a >= 0.0) && (coeffs.iter().sum::<f64>() - 1.0).abs() <= SUM_TOL
}

fn random_disk_point<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.random::<f64>().sqrt(), rng.random_range(-PI..PI))
}

fn check_algebra(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    for i in 0..10_000 {
        let p = random_convex(8, rng);
        let q = random_convex(8, rng);
        let prod = p.multiply(&q);
        let comp = p.compose(&q);
        if !in_simplex(prod.coeffs()) || ConvexPolynomial::new(prod.coeffs().to_vec()).is_err() {
            failures.push(format!("product {i}"));
        }
        if !in_simplex(comp.coeffs()) || ConvexPolynomial::new(comp.coeffs().to_vec()).is_err() {
            failures.push(format!("composition {i}"));
        }
        for poly in [&p, &prod, &comp] {
            if (poly.eval(r(1.0)) - 1.0).norm() > 1e-12 {
                failures.push(format!("p(1) != 1 at {i}"));
            }
        }
        for _ in 0..10 {
            let z = random_disk_point(rng);
            let w = p.eval(z);
            if w.norm() > 1.0 + 1e-12 {
                failures.push(format!("disk bound at {i}"));
            }
            if (p.eval(z.conj()) - w.conj()).norm() > 1e-12 {
                failures.push(format!("conjugate symmetry at {i}"));
            }
        }
    }
    summarize(failures, "10000 pairs: closure, p(1) = 1, disk bound, conjugate symmetry")
}

fn summarize(failures: Vec<String>, what: &str) -> (bool, String) {
    if failures.is_empty() {
        (true, what.to_string())
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        (false, format!("{} failures: {}", failures.len(), shown.join(", ")))
    }
}

/// Node set with at most 6 nodes, moduli in [1.2, 4], sometimes several on
/// the outer circle, never two conjugate nodes on it.
pub fn random_peaking_nodes<R: Rng + ?Sized>(rng: &mut R) -> Vec<Complex64> {
    loop {
        let count = rng.random_range(1..=6);
        let mut moduli: Vec<f64> = (0..count).map(|_| rng.random_range(1.2..=4.0)).collect();
        let top = moduli.iter().cloned().fold(0.0, f64::max);
        for m in moduli.iter_mut() {
            if rng.random_bool(0.3) {
                *m = top;
            }
        }
        let nodes: Vec<Complex64> = moduli.iter().map(|&m| Complex64::from_polar(m, rng.random_range(-PI..PI))).collect();
        let distinct = (0..count).all(|i| (i + 1..count).all(|j| (nodes[i] - nodes[j]).norm() > 1e-3));
        let outer: Vec<Complex64> = nodes.iter().copied().filter(|z| (z.norm() - top).abs() <= NODE_TOL).collect();
        let no_conj = (0..outer.len()).all(|i| (i + 1..outer.len()).all(|j| (outer[i] - outer[j].conj()).norm() > 1e-3));
        if distinct && no_conj {
            return nodes;
        }
    }
}

/// `log |z^m (α z + 1 − α)|` evaluated from its factors.
fn log_peaking_modulus(z: Complex64, m: usize, alpha: f64) -> f64 {
    m as f64 * z.norm().ln() + (r(alpha) * z + (1.0 - alpha)).norm().ln()
}

fn check_peaking(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    let mut max_k = 0;
    for i in 0..200 {
        let nodes = random_peaking_nodes(rng);
        let cert = match peaking_polynomial(&nodes, &PeakingOptions::default()) {
            Ok(cert) => cert,
            Err(e) => {
                failures.push(format!("set {i}: {e}"));
                continue;
            }
        };
        max_k = max_k.max(cert.m);
        let big_r = nodes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        // Exhaustive check: the peak is the strict maximum, on the outer
        // circle, and no smaller exponent gives an outer strict peak.
        let peaks_at = |m: usize| -> Option<usize> {
            let logs: Vec<f64> = nodes.iter().map(|&z| log_peaking_modulus(z, m, cert.alpha)).collect();
            let best = (0..nodes.len()).max_by(|&a, &b| logs[a].total_cmp(&logs[b]))?;
            let unique = (0..nodes.len()).all(|j| j == best || logs[j] < logs[best]);
            (unique && (nodes[best].norm() - big_r).abs() <= NODE_TOL).then_some(best)
        };
        if peaks_at(cert.m) != Some(cert.peak_index) || nodes[cert.peak_index] != cert.peak_point {
            failures.push(format!("set {i}: peak not confirmed"));
        }
        if (0..cert.m).any(|m| peaks_at(m).is_some()) {
            failures.push(format!("set {i}: smaller exponent already peaks"));
        }
        // Direct evaluation of the returned polynomial where it is representable.
        if let Some(pv) = cert.peak_value {
            let direct = cert.polynomial.eval(cert.peak_point).norm();
            if ((direct - pv) / pv).abs() > 1e-9 {
                failures.push(format!("set {i}: evaluation {direct} vs {pv}"));
            }
        }
        let c_alpha = nodes
            .iter()
            .filter(|z| (z.norm() - big_r).abs() <= NODE_TOL)
            .map(|&z| (r(cert.alpha) * z + (1.0 - cert.alpha)).norm())
            .fold(0.0, f64::max);
        let log_expected = c_alpha.ln() + cert.m as f64 * big_r.ln();
        if (cert.log_peak_value - log_expected).abs() > 1e-9 {
            failures.push(format!("set {i}: peak value differs from c_alpha R^m"));
        }
    }
    summarize(failures, &format!("200 node sets peaked, largest exponent {max_k}"))
}

fn check_growth(rng: &mut ChaCha8Rng) -> (bool, String) {
    let worked = GrowthQuery {
        theta: PI / 2.0,
        w: r(1.0),
        eps_seq: |_| r(0.0),
        m_seq: |n| 2f64.powi(n as i32),
        threshold: 100.0,
        max_n: 5000,
    };
    let mut failures = Vec::new();
    match find_growth_index(&worked) {
        Ok(8) => {}
        other => failures.push(format!("worked example gave {other:?}")),
    }
    for i in 0..100 {
        let theta = loop {
            let t: f64 = rng.random_range(-2.0 * PI..2.0 * PI);
            let k = (t / PI).round();
            if (t - k * PI).abs() > 1e-3 {
                break t;
            }
        };
        let w = Complex64::from_polar(rng.random_range(0.1..5.0), rng.random_range(-PI..PI));
        let e0 = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let growth = rng.random_range(1.01..2.0f64);
        let threshold = 10f64.powf(rng.random_range(0.0..6.0));
        let q = GrowthQuery {
            theta,
            w,
            eps_seq: move |n| e0 / (n as f64 + 1.0),
            m_seq: move |n| growth.powi(n as i32),
            threshold,
            max_n: 5000,
        };
        match find_growth_index(&q) {
            Ok(n) => {
                let value = growth.powi(n as i32) * (e0 / (n as f64 + 1.0) + Complex64::from_polar(1.0, n as f64 * theta) * w).re;
                if !(value > threshold) {
                    failures.push(format!("query {i}: index {n} does not exceed threshold"));
                }
            }
            Err(e) => failures.push(format!("query {i}: {e}")),
        }
    }
    summarize(failures, "worked example n* = 8; 100 random queries found an index")
}

/// Random real or complex matrix `P` with condition number below 100.
pub fn random_conditioned<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> DMatrix<Complex64> {
    loop {
        let p = DMatrix::from_fn(n, n, |i, j| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = if field == Field::Complex { rng.sample(StandardNormal) } else { 0.0 };
            let d = if i == j { 2.0 } else { 0.0 };
            Complex64::new(re * 0.5 + d, im * 0.5)
        });
        let sv = p.clone().svd(false, false).singular_values;
        let cond = sv.max() / sv.min();
        if cond < 100.0 {
            return p;
        }
    }
}

fn verdict_summary(v: &ConvexCyclicVerdict) -> (bool, bool, bool, Vec<&'static str>) {
    (v.is_convex_cyclic, v.is_cyclic, v.invariant_convex_sets_are_subspaces, v.reason_codes())
}

fn check_classification(rng: &mut ChaCha8Rng) -> (bool, String) {
    let suite = golden_suite();
    let mut failures = Vec::new();
    for g in &suite {
        match classify(&g.matrix(), None) {
            Ok(v) => {
                let want = (g.convex_cyclic, g.cyclic, g.subspaces, g.codes.to_vec());
                if verdict_summary(&v) != want {
                    failures.push(format!("{}: got {:?}", g.name, verdict_summary(&v)));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", g.name)),
        }
    }
    for i in 0..100 {
        let g = &suite[i % suite.len()];
        let t = g.matrix();
        let p = random_conditioned(g.field, t.dim(), rng);
        let similar = t.similar(&p).expect("well-conditioned");
        match (classify(&t, None), classify(&similar, None)) {
            (Ok(a), Ok(b)) if verdict_summary(&a) == verdict_summary(&b) => {}
            (a, b) => failures.push(format!(
                "conjugation {i} of {}: {:?} vs {:?}",
                g.name,
                a.map(|v| verdict_summary(&v)),
                b.map(|v| verdict_summary(&v))
            )),
        }
    }
    let convex = suite.iter().filter(|g| g.convex_cyclic).count();
    summarize(
        failures,
        &format!("{} golden forms ({convex} convex-cyclic) match; 100 conjugations agree", suite.len()),
    )
}

/// Relative Frobenius distance `‖a − b‖ / max(‖b‖, 1)`.
fn rel_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Real coefficients of `∏ (z − λ)^k (z − λ̄)^k` (one factor when λ is real)
/// times a random convex-polynomial.
fn annihilating<R: Rng + ?Sized>(lambda: Complex64, k: usize, rng: &mut R) -> Vec<f64> {
    let mut coeffs = random_convex(3, rng).into_coeffs();
    let factor: Vec<f64> = if lambda.im == 0.0 {
        vec![-lambda.re, 1.0]
    } else {
        vec![lambda.norm_sqr(), -2.0 * lambda.re, 1.0]
    };
    for _ in 0..k {
        let mut next = vec![0.0; coeffs.len() + factor.len() - 1];
        for (i, a) in coeffs.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        coeffs = next;
    }
    coeffs
}

fn check_toeplitz(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let deg = rng.random_range(0..=12);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect();
        let lambda = Complex64::from_polar(rng.random_range(0.0..2.0), rng.random_range(-PI..PI));
        let k = rng.random_range(1..=6);
        let closed = poly_on_jordan_block(&coeffs, lambda, k);
        let dense = poly_on_matrix(&coeffs, &jordan_block(k, lambda));
        let d = rel_diff(&closed, &dense);
        worst = worst.max(d);
        if d > 1e-9 {
            failures.push(format!("case {i}: relative difference {d:e}"));
        }
        let lambda = if rng.random_bool(0.3) { r(lambda.re) } else { lambda };
        let vanishing = annihilating(lambda, k, rng);
        let scale: f64 = vanishing.iter().map(|a| a.abs()).sum::<f64>() * (1.0 + lambda.norm()).powi(vanishing.len() as i32);
        let zero = poly_on_jordan_block(&vanishing, lambda, k);
        if zero.norm() > 1e-8 * scale.max(1.0) {
            failures.push(format!("case {i}: annihilation residual {:e}", zero.norm()));
        }
    }
    summarize(failures, &format!("500 cases, worst relative difference {worst:.1e}"))
}

fn check_complexification(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    for i in 0..1000 {
        let n = rng.random_range(1..=5);
        let rad = rng.random_range(0.0..3.0);
        let theta = rng.random_range(-PI..PI);
        let x: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let c_mat = real_jordan_block(n, rad, theta);
        let cx: Vec<f64> = (&c_mat * DVector::from_column_slice(&x)).iter().copied().collect();
        let lhs = complexify(&cx).expect("even length");
        let ux = DVector::from_vec(complexify(&x).expect("even length"));
        let rhs = jordan_block(n, Complex64::from_polar(rad, theta)) * &ux;
        let d = lhs.iter().zip(rhs.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        if d > 1e-12 {
            failures.push(format!("vector {i}: intertwining error {d:e}"));
        }
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (ux.norm() - xn).abs() > 1e-12 {
            failures.push(format!("vector {i}: norm not preserved"));
        }
    }
    summarize(failures, "1000 vectors: intertwining and isometry to 1e-12")
}

/// Random admissible problem inside the desk-scale bounds: up to 3 real
/// nodes in [−5, −1.5], up to 2 complex nodes with modulus in [1.5, 4] and
/// argument at least 0.2 from the real axis, up to 3 conditions per node
/// (derivative order ≤ 2), targets of modulus below 10. Nodes are kept
/// 0.25 apart from each other and from each other's conjugates.
pub fn random_admissible_problem<R: Rng + ?Sized>(rng: &mut R) -> InterpolationProblem {
    let nr = rng.random_range(0..=3);
    let nc = rng.random_range(if nr == 0 { 1 } else { 0 }..=2);
    let mut xs: Vec<f64> = Vec::new();
    while xs.len() < nr {
        let x = rng.random_range(-5.0..-1.5);
        if xs.iter().all(|&y| (y - x).abs() > 0.25) {
            xs.push(x);
        }
    }
    let mut zs: Vec<Complex64> = Vec::new();
    while zs.len() < nc {
        let modulus = rng.random_range(1.5..4.0);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let z = Complex64::from_polar(modulus, sign * rng.random_range(0.2..PI - 0.2));
        if zs.iter().all(|&w| (w - z).norm() > 0.25 && (w.conj() - z).norm() > 0.25) {
            zs.push(z);
        }
    }
    let real_nodes = xs
        .into_iter()
        .map(|x| {
            let k = rng.random_range(1..=3);
            RealNode { x, targets: (0..k).map(|_| rng.random_range(-10.0..10.0)).collect() }
        })
        .collect();
    let complex_nodes = zs
        .into_iter()
        .map(|z| {
            let k = rng.random_range(1..=3);
            let targets = (0..k)
                .map(|_| Complex64::from_polar(rng.random_range(0.0..10.0), rng.random_range(-PI..PI)))
                .collect();
            ComplexNode { z, targets }
        })
        .collect();
    InterpolationProblem::new(real_nodes, complex_nodes)
}

/// Problem breaking one admissibility clause with targets that also break
/// the matching necessary condition, cycling through five kinds by `kind`.
pub fn random_violating_problem<R: Rng + ?Sized>(kind: usize, rng: &mut R) -> InterpolationProblem {
    let big = |rng: &mut R| {
        let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        s * rng.random_range(1.5..10.0)
    };
    let mut prob = random_admissible_problem(rng);
    match kind % 5 {
        // Real node in (−1, 1) with a value target outside the unit disk.
        0 => prob.real_nodes.push(RealNode { x: rng.random_range(-0.95..0.95), targets: vec![big(rng)] }),
        // Complex node inside the disk with a value target outside it.
        1 => {
            let z = Complex64::from_polar(rng.random_range(0.1..1.0), rng.random_range(0.3..PI - 0.3));
            prob.complex_nodes.push(ComplexNode { z, targets: vec![Complex64::from_polar(big(rng).abs(), rng.random_range(-PI..PI))] });
        }
        // "Complex" node on the real axis with a non-real target.
        2 => {
            let z = r(rng.random_range(-5.0..-1.5));
            prob.complex_nodes.push(ComplexNode { z, targets: vec![c(rng.random_range(-5.0..5.0), big(rng))] });
        }
        // Conjugate pair with non-conjugate value targets.
        3 => {
            let z = Complex64::from_polar(rng.random_range(4.5..6.0), rng.random_range(0.3..PI - 0.3));
            let w = c(rng.random_range(-5.0..5.0), big(rng));
            prob.complex_nodes.push(ComplexNode { z, targets: vec![w] });
            prob.complex_nodes.push(ComplexNode { z: z.conj(), targets: vec![w] });
        }
        // Repeated real node with conflicting value targets.
        _ => {
            let x = rng.random_range(-8.0..-5.5);
            let y = rng.random_range(-5.0..5.0);
            prob.real_nodes.push(RealNode { x, targets: vec![y] });
            prob.real_nodes.push(RealNode { x, targets: vec![y + big(rng)] });
        }
    }
    prob
}

fn check_interpolation(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    let mut max_degree_used = 0;
    let mut worst_residual: f64 = 0.0;
    for i in 0..200 {
        let prob = random_admissible_problem(rng);
        match solve(&prob) {
            InterpolationCertificate::Feasible { polynomial, degree_used, .. } => {
                let residual = max_residual(&prob, &polynomial);
                worst_residual = worst_residual.max(residual);
                max_degree_used = max_degree_used.max(degree_used);
                if residual > 1e-8 || !in_simplex(polynomial.coeffs()) || degree_used > 200 {
                    failures.push(format!("admissible {i}: verification failed"));
                }
            }
            other => failures.push(format!("admissible {i}: {}", status_name(&other))),
        }
    }
    let feasible_count = 200 - failures.len();
    for i in 0..200 {
        let prob = random_violating_problem(i, rng);
        if check_admissibility(&prob).admissible {
            failures.push(format!("violating {i}: sampler produced an admissible problem"));
        }
        if solve(&prob).is_feasible() {
            failures.push(format!("violating {i}: returned Feasible"));
        }
    }
    summarize(
        failures,
        &format!(
            "{feasible_count}/200 admissible feasible (degree <= {max_degree_used}, residual <= {worst_residual:.1e}); 200 violating rejected"
        ),
    )
}

fn status_name(c: &InterpolationCertificate) -> &'static str {
    match c {
        InterpolationCertificate::Feasible { .. } => "Feasible",
        InterpolationCertificate::InfeasibleNecessary { .. } => "InfeasibleNecessary",
        InterpolationCertificate::InfeasibleAtCap { .. } => "InfeasibleAtCap",
    }
}

fn check_dynamics(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut failures = Vec::new();
    let suite = golden_suite();
    let convex: Vec<&GoldenCase> = suite.iter().filter(|g| g.convex_cyclic).collect();
    for g in &convex {
        let t = g.matrix();
        let x = g.vector();
        for k in 0..50 {
            let f = random_functional(g.field, t.dim(), rng);
            match growth_witness(&t, &x, &f, 1e6, 2000) {
                Ok(GrowthOutcome::Witness(w)) => {
                    let y = orbit(&t, &x, w.index).expect("dimensions match").points.pop().unwrap();
                    let value = y.iter().zip(f.iter()).map(|(a, b)| a * b.conj()).sum::<Complex64>().re;
                    if !(value > 1e6) {
                        failures.push(format!("{} functional {k}: witness does not re-verify", g.name));
                    }
                }
                Ok(other) => failures.push(format!("{} functional {k}: {other:?}", g.name)),
                Err(e) => failures.push(format!("{} functional {k}: {e}", g.name)),
            }
        }
    }
    // Conjugate coordinates stay conjugate under diag(2i, −2i).
    let t = MatrixSpec::diagonal(Field::Complex, &[c(0.0, 2.0), c(0.0, -2.0)]).expect("diagonal");
    let x = DVector::from_element(2, r(1.0));
    let target = DVector::from_vec(vec![r(1.0), r(0.0)]);
    for budget in [10, 50, 100, 200, 400] {
        let points = density_generators(&t, &x, budget, 1.0).expect("dimensions match");
        if hull_contains(&HullQuery { points, target: target.clone(), tolerance: 1e-6 }) {
            failures.push(format!("obstruction captured at budget {budget}"));
        }
    }
    let d = MatrixSpec::diagonal(Field::Real, &[r(-2.0), r(-3.0)]).expect("diagonal");
    let grid = lattice(2, 5, -10.0, 10.0);
    let coverage = empirical_density_scan(&d, &x, &grid, 400).map(|rep| rep.fraction).unwrap_or(0.0);
    if coverage != 1.0 {
        failures.push(format!("diag(-2, -3) coverage {coverage}"));
    }
    summarize(
        failures,
        &format!("{} convex-cyclic forms x 50 functionals witnessed; obstruction holds; coverage 1", convex.len()),
    )
}

/// Fixed outputs of each subcommand, rendered for comparison.
pub fn reference_outputs() -> Vec<String> {
    let mut out = Vec::new();
    let d = MatrixSpec::diagonal(Field::Real, &[r(-2.0), r(-3.0)]).expect("diagonal");
    if let Ok(v) = classify(&d, None) {
        out.push(json::to_string(&v).unwrap_or_default());
    }
    let prob = InterpolationProblem::new(vec![RealNode { x: -2.0, targets: vec![7.0] }], vec![]);
    out.push(json::to_string(&solve(&prob)).unwrap_or_default());
    if let Ok(cert) = peaking_polynomial(&[c(0.0, 2.0), r(-2.0)], &PeakingOptions::default()) {
        out.push(json::to_string(&cert).unwrap_or_default());
    }
    let x = DVector::from_element(2, r(1.0));
    if let Ok(tr) = orbit(&d, &x, 10) {
        out.push(tr.to_csv());
    }
    if let Ok(rep) = empirical_density_scan(&d, &x, &lattice(2, 5, -10.0, 10.0), 400) {
        out.push(json::to_string(&rep).unwrap_or_default());
    }
    out
}

fn check_determinism(_rng: &mut ChaCha8Rng) -> (bool, String) {
    let first = reference_outputs();
    let second = reference_outputs();
    let ok = first.len() == 5 && first == second;
    let detail = if ok {
        "analyze, interpolate, peak, orbit and density outputs are byte-identical across runs".to_string()
    } else {
        "outputs differ between runs".to_string()
    };
    (ok, detail)
}
