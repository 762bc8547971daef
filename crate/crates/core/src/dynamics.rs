//! Orbits, growth witnesses, empirical hull density and direct-sum vectors.
//!
//! Everything here is empirical: a witness shows one functional's real part
//! exceeding a threshold along the orbit, and a density scan checks hull
//! membership on a finite grid with a finite generator budget.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

use crate::convex_poly::ConvexPolynomial;
use crate::hull;
use crate::json::fmt_f64;
use crate::matrix::{complex_vec, pairing, vector_norm, Field, MatrixError, MatrixSpec};
use crate::spectral::{classify, is_cyclic_vector, SpectralError};

/// Magnitude at which orbit scans stop to stay clear of overflow.
pub const OVERFLOW_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("functional is zero")]
    ZeroFunctional,
    #[error("premise violated: {0:?}")]
    PremiseViolated(Premise),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub matrix: MatrixSpec,
    pub horizon: usize,
    #[serde(with = "points_serde")]
    pub points: Vec<DVector<Complex64>>,
}

mod points_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Point(#[serde(with = "complex_vec")] Vec<Complex64>);

    pub fn serialize<S: Serializer>(v: &[DVector<Complex64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| Point(p.iter().copied().collect())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<DVector<Complex64>>, D::Error> {
        let raw: Vec<Point> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|p| DVector::from_vec(p.0)).collect())
    }
}

impl OrbitTrace {
    pub fn start(&self) -> &DVector<Complex64> {
        &self.points[0]
    }

    /// CSV with a header row; real matrices get one column per coordinate,
    /// complex ones interleave real and imaginary parts.
    pub fn to_csv(&self) -> String {
        let n = self.matrix.dim();
        let complex = self.matrix.field() == Field::Complex;
        let mut out = String::from("n");
        for k in 0..n {
            if complex {
                let _ = write!(out, ",re{k},im{k}");
            } else {
                let _ = write!(out, ",x{k}");
            }
        }
        out.push('\n');
        for (i, p) in self.points.iter().enumerate() {
            let _ = write!(out, "{i}");
            for z in p.iter() {
                out.push(',');
                out.push_str(&fmt_f64(z.re));
                if complex {
                    out.push(',');
                    out.push_str(&fmt_f64(z.im));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// `x, Tx, ..., T^horizon x`, without renormalization.
pub fn orbit(t: &MatrixSpec, x: &DVector<Complex64>, horizon: usize) -> Result<OrbitTrace, DynamicsError> {
    let mut points = Vec::with_capacity(horizon + 1);
    points.push(x.clone());
    for _ in 0..horizon {
        let next = t.apply(points.last().unwrap())?;
        points.push(next);
    }
    Ok(OrbitTrace { matrix: t.clone(), horizon, points })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthWitness {
    #[serde(with = "complex_vec")]
    pub functional: Vec<Complex64>,
    pub index: usize,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum GrowthOutcome {
    Witness(GrowthWitness),
    /// No index up to `max_n` passed the threshold.
    Bounded { max_observed: f64, steps: usize },
    /// An orbit entry exceeded [`OVERFLOW_LIMIT`] before the threshold was passed.
    OverflowReached { index: usize, max_observed: f64 },
}

impl GrowthOutcome {
    pub fn witness(&self) -> Option<&GrowthWitness> {
        match self {
            GrowthOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// First `n ≤ max_n` with `Re⟨T^n x, f⟩ > threshold`, where
/// `⟨y, f⟩ = Σ y_k conj(f_k)` (the dot product for real data).
pub fn growth_witness(
    t: &MatrixSpec,
    x: &DVector<Complex64>,
    f: &DVector<Complex64>,
    threshold: f64,
    max_n: usize,
) -> Result<GrowthOutcome, DynamicsError> {
    if f.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(DynamicsError::ZeroFunctional);
    }
    if f.len() != t.dim() {
        return Err(MatrixError::DimensionMismatch { expected: t.dim(), got: f.len() }.into());
    }
    let mut y = x.clone();
    let mut max_observed = f64::NEG_INFINITY;
    for n in 0..=max_n {
        if n > 0 {
            y = t.apply(&y)?;
        }
        if y.iter().any(|z| !(z.norm() <= OVERFLOW_LIMIT)) {
            return Ok(GrowthOutcome::OverflowReached { index: n, max_observed });
        }
        let value = pairing(&y, f).re;
        if value > threshold {
            return Ok(GrowthOutcome::Witness(GrowthWitness {
                functional: f.iter().copied().collect(),
                index: n,
                value,
                threshold,
            }));
        }
        max_observed = max_observed.max(value);
    }
    Ok(GrowthOutcome::Bounded { max_observed, steps: max_n })
}

/// Uniform sample from the unit sphere of `F^n`, real or complex.
pub fn random_functional<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> DVector<Complex64> {
    loop {
        let f = DVector::from_fn(n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = if field == Field::Complex { rng.sample(StandardNormal) } else { 0.0 };
            Complex64::new(re, im)
        });
        let norm = vector_norm(&f);
        if norm > 1e-12 {
            return f.map(|z| z / norm);
        }
    }
}

/// Finite generator set and a target point; complex coordinates are
/// compared through their real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HullQuery {
    pub points: Vec<DVector<Complex64>>,
    pub target: DVector<Complex64>,
    pub tolerance: f64,
}

/// Whether the target is within `tolerance` (Euclidean) of the convex hull
/// of the generators.
pub fn hull_contains(q: &HullQuery) -> bool {
    hull_distance(q) <= q.tolerance
}

/// Euclidean distance from the target to the hull of the generators.
pub fn hull_distance(q: &HullQuery) -> f64 {
    if q.points.is_empty() {
        return f64::INFINITY;
    }
    let shifted: Vec<Vec<f64>> = q.points.iter().map(|p| realify(&(p - &q.target))).collect();
    hull::min_norm_point(&shifted).norm
}

fn realify(v: &DVector<Complex64>) -> Vec<f64> {
    v.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Coverage of a density scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub fraction: f64,
    pub covered: usize,
    pub grid_points: usize,
    pub generators: usize,
    pub is_convex_cyclic: bool,
}

/// The α grid `k/16`, `k = 1..15`, used for the hull generators `p_{m,α}(T) x`.
fn density_alphas() -> impl Iterator<Item = f64> {
    (1..16).map(|k| k as f64 / 16.0)
}

/// Generators farther out than this multiple of the region of interest are
/// skipped; hull arithmetic loses about `ε · ‖generator‖` in accuracy.
const GENERATOR_REACH: f64 = 1e6;

/// Convex-polynomial images `p(T) x` used as hull generators: orbit points
/// `T^m x`, then `p_{m,α}(T) x` for `α` on a fixed grid, then pairwise
/// products of those, up to `budget` generators. Generators with norm above
/// `10⁶ · max(1, ‖x‖, radius)` are skipped.
pub fn density_generators(
    t: &MatrixSpec,
    x: &DVector<Complex64>,
    budget: usize,
    radius: f64,
) -> Result<Vec<DVector<Complex64>>, DynamicsError> {
    if x.len() != t.dim() {
        return Err(MatrixError::DimensionMismatch { expected: t.dim(), got: x.len() }.into());
    }
    let cap = GENERATOR_REACH * vector_norm(x).max(radius).max(1.0);
    let mut orbit_pts = vec![x.clone()];
    while orbit_pts.len() < budget.max(1) {
        let next = t.apply(orbit_pts.last().unwrap())?;
        if !(vector_norm(&next) <= cap) {
            break;
        }
        orbit_pts.push(next);
    }
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    let push = |out: &mut Vec<DVector<Complex64>>, v: DVector<Complex64>| {
        if out.len() < budget && vector_norm(&v) <= cap {
            out.push(v);
        }
    };
    for p in &orbit_pts {
        push(&mut out, p.clone());
    }
    // p_{m,α}(T) x = α T^{m+1} x + (1 − α) T^m x.
    let mut base: Vec<ConvexPolynomial> = Vec::new();
    for m in 0..orbit_pts.len().saturating_sub(1) {
        for alpha in density_alphas() {
            let v = &orbit_pts[m + 1] * Complex64::new(alpha, 0.0) + &orbit_pts[m] * Complex64::new(1.0 - alpha, 0.0);
            base.push(ConvexPolynomial::peaking(m, alpha));
            push(&mut out, v);
        }
    }
    'products: for i in 0..base.len() {
        for j in i..base.len() {
            if out.len() >= budget {
                break 'products;
            }
            let p = base[i].multiply(&base[j]);
            push(&mut out, apply_convex(t, &p, x)?);
        }
    }
    Ok(out)
}

/// `p(T) x` by Horner's rule on vectors.
pub fn apply_convex(t: &MatrixSpec, p: &ConvexPolynomial, x: &DVector<Complex64>) -> Result<DVector<Complex64>, DynamicsError> {
    let mut acc = DVector::<Complex64>::zeros(x.len());
    for &c in p.coeffs().iter().rev() {
        acc = t.apply(&acc)? + x * Complex64::new(c, 0.0);
    }
    Ok(acc)
}

/// Relative hull tolerance used by [`empirical_density_scan`].
pub const DEFAULT_HULL_TOL: f64 = 1e-9;

/// Fraction of `grid` inside the hull of [`density_generators`], each point
/// accepted within `1e-9 · max(1, ‖point‖)`. An empty grid is vacuously covered.
pub fn empirical_density_scan(
    t: &MatrixSpec,
    x: &DVector<Complex64>,
    grid: &[DVector<Complex64>],
    poly_budget: usize,
) -> Result<DensityReport, DynamicsError> {
    empirical_density_scan_with_tol(t, x, grid, poly_budget, DEFAULT_HULL_TOL)
}

/// As [`empirical_density_scan`] with tolerance `rel_tol · max(1, ‖point‖)`.
pub fn empirical_density_scan_with_tol(
    t: &MatrixSpec,
    x: &DVector<Complex64>,
    grid: &[DVector<Complex64>],
    poly_budget: usize,
    rel_tol: f64,
) -> Result<DensityReport, DynamicsError> {
    let verdict = classify(t, None)?;
    let radius = grid.iter().map(vector_norm).fold(0.0, f64::max);
    let points = density_generators(t, x, poly_budget, radius)?;
    let covered = grid
        .iter()
        .filter(|g| {
            hull_contains(&HullQuery {
                points: points.clone(),
                target: (*g).clone(),
                tolerance: rel_tol * vector_norm(g).max(1.0),
            })
        })
        .count();
    let fraction = if grid.is_empty() { 1.0 } else { covered as f64 / grid.len() as f64 };
    Ok(DensityReport {
        fraction,
        covered,
        grid_points: grid.len(),
        generators: points.len(),
        is_convex_cyclic: verdict.is_convex_cyclic,
    })
}

/// Square lattice with `per_side` points per axis on `[lo, hi]^dim`.
pub fn lattice(dim: usize, per_side: usize, lo: f64, hi: f64) -> Vec<DVector<Complex64>> {
    let step = if per_side > 1 { (hi - lo) / (per_side - 1) as f64 } else { 0.0 };
    let total = per_side.pow(dim as u32);
    (0..total)
        .map(|mut idx| {
            DVector::from_fn(dim, |_, _| {
                let k = idx % per_side;
                idx /= per_side;
                Complex64::new(lo + step * k as f64, 0.0)
            })
        })
        .collect()
}

/// Part of an operator direct sum, with its proposed convex-cyclic vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Summand {
    pub matrix: MatrixSpec,
    pub vector: DVector<Complex64>,
}

/// The premise of the direct-sum construction that failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Premise {
    /// A summand, or the sum of the trailing summands, is not convex-cyclic.
    SummandNotConvexCyclic(usize),
    /// A supplied vector has the wrong length.
    DimensionMismatch(usize),
    /// `p0(T_1)` is not convex-cyclic.
    ImageNotConvexCyclic,
    /// `u_1` is not convex-cyclic for `p0(T_1)`, or `u_2` not for `T_2`.
    VectorNotConvexCyclic(usize),
    /// `p0` does not make the trailing part nilpotent.
    NotPowerBounded,
}

/// Relative tolerance for the Krylov and nilpotency checks.
const PREMISE_TOL: f64 = 1e-8;

/// Convex-cyclic vector `(u_1, u_2)` for `T_1 ⊕ T_2`, where `T_1` is the
/// first summand and `T_2` the direct sum of the rest.
///
/// Requires `p0(T_1)` convex-cyclic with `u_1` a convex-cyclic vector for it,
/// `T_2` convex-cyclic with vector `u_2`, and `p0(T_2)` nilpotent. For a
/// convex-cyclic matrix the convex-cyclic vectors are exactly its cyclic
/// vectors, so vectors are checked with the Krylov rank test.
pub fn direct_sum_vector(summands: &[Summand], p0: &ConvexPolynomial) -> Result<DVector<Complex64>, DynamicsError> {
    let violated = |p| Err(DynamicsError::PremiseViolated(p));
    for (i, s) in summands.iter().enumerate() {
        if s.vector.len() != s.matrix.dim() {
            return violated(Premise::DimensionMismatch(i));
        }
    }
    match summands {
        [] => Ok(DVector::zeros(0)),
        [only] => Ok(only.vector.clone()),
        [first, rest @ ..] => {
            let t2 = rest[1..].iter().fold(rest[0].matrix.clone(), |acc, s| acc.direct_sum(&s.matrix));
            let u2 = DVector::from_iterator(
                rest.iter().map(|s| s.vector.len()).sum(),
                rest.iter().flat_map(|s| s.vector.iter().copied()),
            );
            if !classify(&first.matrix, None)?.is_convex_cyclic {
                return violated(Premise::SummandNotConvexCyclic(0));
            }
            if !classify(&t2, None)?.is_convex_cyclic {
                return violated(Premise::SummandNotConvexCyclic(1));
            }
            if !is_cyclic_vector(&t2, &u2, PREMISE_TOL)? {
                return violated(Premise::VectorNotConvexCyclic(1));
            }
            let image = first.matrix.apply_polynomial(&p0.as_polynomial());
            if !classify(&image, None)?.is_convex_cyclic {
                return violated(Premise::ImageNotConvexCyclic);
            }
            if !is_cyclic_vector(&image, &first.vector, PREMISE_TOL)? {
                return violated(Premise::VectorNotConvexCyclic(0));
            }
            if !is_nilpotent(&t2.apply_polynomial(&p0.as_polynomial())) {
                return violated(Premise::NotPowerBounded);
            }
            let mut out: Vec<Complex64> = first.vector.iter().copied().collect();
            out.extend(u2.iter().copied());
            Ok(DVector::from_vec(out))
        }
    }
}

/// `‖N^n‖ ≤ tol · max(1, ‖N‖)^n` for `n = dim`.
fn is_nilpotent(n_mat: &MatrixSpec) -> bool {
    let n = n_mat.dim();
    let scale = n_mat.norm2().max(1.0);
    let mut power = n_mat.entries().clone();
    for _ in 1..n {
        power = &power * n_mat.entries();
    }
    let norm = MatrixSpec::complex(power).map(|m| m.norm2()).unwrap_or(f64::INFINITY);
    norm <= PREMISE_TOL * scale.powi(n as i32)
}
