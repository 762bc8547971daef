//! Eigenstructure and convex-cyclicity verdicts.
//!
//! A matrix over ℂ is convex-cyclic exactly when it is cyclic, every
//! eigenvalue lies outside the closed unit disk and off the real line, and no
//! two eigenvalues are conjugate to each other. Over ℝ the requirement is
//! cyclicity plus every (real or complex) eigenvalue avoiding the closed disk
//! and the nonnegative real ray. Dropping cyclicity from either list gives
//! the condition under which every invariant closed convex set is a subspace.
//!
//! Strict inequalities are decided with an explicit tolerance `tol`:
//!
//! * `|λ| > 1` as `|λ| > 1 + tol`
//! * realness as `|Im λ| ≤ tol`
//! * `λ ∈ ℝ⁺` as `|Im λ| ≤ tol` and `Re λ ≥ −tol`
//! * conjugacy as `|λ_j − conj λ_k| ≤ tol`
//!
//! Inputs within `tol` of a decision edge are reported in
//! [`ConvexCyclicVerdict::borderline`].

use nalgebra::{linalg::Schur, DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jordan_forms::{Block, DirectSumSpec, JordanError};
use crate::matrix::{complex_scalar, complex_vec, Field, MatrixSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not square")]
    NonSquare,
    #[error("eigensolver did not converge")]
    EigensolverFailure,
    #[error("not a canonical form: {0}")]
    NotCanonicalForm(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance must be positive and finite")]
    BadTolerance,
}

impl From<JordanError> for SpectralError {
    fn from(e: JordanError) -> Self {
        SpectralError::NotCanonicalForm(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for eigenvalue comparisons and decision edges.
    pub eig: f64,
    /// Relative singular-value threshold (times `max(σ_max(T), 1)`) for numerical rank.
    pub rank_rel: f64,
}

impl Tolerances {
    pub const DEFAULT_REL: f64 = 1e-9;

    /// `eig = 1e-9 · max(‖T‖₂, 1)`, `rank_rel = 1e-9`.
    pub fn for_matrix(t: &MatrixSpec) -> Self {
        Self::with_eig(Self::DEFAULT_REL * t.norm2().max(1.0))
    }

    pub fn with_eig(eig: f64) -> Self {
        Self { eig, rank_rel: Self::DEFAULT_REL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueInfo {
    #[serde(with = "complex_scalar")]
    pub value: Complex64,
    pub algebraic_mult: usize,
    pub geometric_mult: usize,
    /// For real matrices, index of the conjugate partner of a non-real eigenvalue.
    pub conjugate_partner: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenstructure {
    pub field: Field,
    pub dim: usize,
    pub eigenvalues: Vec<EigenvalueInfo>,
    /// Point spectrum of the adjoint: conjugates of `eigenvalues`, same order.
    #[serde(with = "complex_vec")]
    pub adjoint_spectrum: Vec<Complex64>,
    pub tolerances: Tolerances,
}

impl Eigenstructure {
    pub fn is_cyclic(&self) -> bool {
        is_cyclic(self)
    }
}

/// Eigenvalues of `T` clustered into distinct values with multiplicities.
///
/// Raw eigenvalues come from a Schur decomposition (real Schur for real
/// matrices so conjugate pairs stay paired). Defective eigenvalues split by
/// roughly `ε^{1/k}` under rounding, so candidate clusters of size `k` are
/// accepted up to a size-dependent radius, but only if `T − μI` is
/// numerically singular at the cluster mean `μ`.
pub fn eigenstructure(t: &MatrixSpec, tol: Option<Tolerances>) -> Result<Eigenstructure, SpectralError> {
    let tol = tol.unwrap_or_else(|| Tolerances::for_matrix(t));
    if !(tol.eig > 0.0 && tol.eig.is_finite() && tol.rank_rel > 0.0) {
        return Err(SpectralError::BadTolerance);
    }
    let n = t.dim();
    let raw = raw_eigenvalues(t)?;
    let sigma_max = t.norm2();
    let scale = sigma_max.max(1.0);
    let rank_threshold = tol.rank_rel * scale;
    let nullity = |mu: Complex64| -> usize {
        let shifted = t.entries() - DMatrix::<Complex64>::identity(n, n) * mu;
        shifted
            .svd(false, false)
            .singular_values
            .iter()
            .filter(|&&s| s <= rank_threshold)
            .count()
    };

    let radius = |k: usize| (scale * 1e-11f64.powf(1.0 / k as f64)).max(tol.eig);
    let mut assigned = vec![false; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in (2..=n).rev() {
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut free: Vec<usize> = (0..n).filter(|&j| !assigned[j]).collect();
            if free.len() < k {
                break;
            }
            free.sort_by(|&a, &b| (raw[a] - raw[i]).norm().total_cmp(&(raw[b] - raw[i]).norm()));
            let cand = &free[..k];
            let diam = cand
                .iter()
                .flat_map(|&a| cand.iter().map(move |&b| (a, b)))
                .map(|(a, b)| (raw[a] - raw[b]).norm())
                .fold(0.0, f64::max);
            if diam > radius(k) {
                continue;
            }
            let mu = mean(cand.iter().map(|&j| raw[j]));
            if nullity(mu) >= 1 {
                cand.iter().for_each(|&j| assigned[j] = true);
                clusters.push(cand.to_vec());
            }
        }
    }
    clusters.extend((0..n).filter(|&j| !assigned[j]).map(|j| vec![j]));

    let mut values: Vec<(Complex64, usize)> = clusters
        .iter()
        .map(|c| (mean(c.iter().map(|&j| raw[j])), c.len()))
        .collect();
    if t.field() == Field::Real {
        for v in values.iter_mut() {
            if v.0.im.abs() <= tol.eig {
                v.0.im = 0.0;
            }
        }
    }
    values.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(b.0.im.total_cmp(&a.0.im)));

    let mut eigenvalues: Vec<EigenvalueInfo> = values
        .iter()
        .map(|&(value, alg)| EigenvalueInfo {
            value,
            algebraic_mult: alg,
            geometric_mult: nullity(value).clamp(1, alg),
            conjugate_partner: None,
        })
        .collect();

    if t.field() == Field::Real {
        let m = eigenvalues.len();
        for a in 0..m {
            if eigenvalues[a].value.im <= 0.0 || eigenvalues[a].conjugate_partner.is_some() {
                continue;
            }
            let target = eigenvalues[a].value.conj();
            let partner = (0..m)
                .filter(|&b| b != a && eigenvalues[b].conjugate_partner.is_none() && eigenvalues[b].value.im < 0.0)
                .min_by(|&x, &y| {
                    (eigenvalues[x].value - target).norm().total_cmp(&(eigenvalues[y].value - target).norm())
                });
            if let Some(b) = partner {
                // Real matrices have exactly conjugate spectra; remove rounding asymmetry.
                eigenvalues[b].value = target;
                eigenvalues[b].geometric_mult = eigenvalues[a].geometric_mult;
                eigenvalues[a].conjugate_partner = Some(b);
                eigenvalues[b].conjugate_partner = Some(a);
            }
        }
    }

    let adjoint_spectrum = eigenvalues.iter().map(|e| e.value.conj()).collect();
    Ok(Eigenstructure { field: t.field(), dim: n, eigenvalues, adjoint_spectrum, tolerances: tol })
}

fn mean(it: impl Iterator<Item = Complex64>) -> Complex64 {
    let (s, c) = it.fold((Complex64::new(0.0, 0.0), 0usize), |(s, c), z| (s + z, c + 1));
    s / c as f64
}

fn raw_eigenvalues(t: &MatrixSpec) -> Result<Vec<Complex64>, SpectralError> {
    let n = t.dim();
    let max_iter = 10_000 * n.max(1);
    match t.field() {
        Field::Real => {
            let schur = Schur::try_new(t.real_part(), f64::EPSILON, max_iter)
                .ok_or(SpectralError::EigensolverFailure)?;
            Ok(schur.complex_eigenvalues().iter().copied().collect())
        }
        Field::Complex => {
            let schur = Schur::try_new(t.entries().clone(), f64::EPSILON, max_iter)
                .ok_or(SpectralError::EigensolverFailure)?;
            let ev = schur.eigenvalues().ok_or(SpectralError::EigensolverFailure)?;
            Ok(ev.iter().copied().collect())
        }
    }
}

/// Every eigenvalue has geometric multiplicity one.
pub fn is_cyclic(es: &Eigenstructure) -> bool {
    es.eigenvalues.iter().all(|e| e.geometric_mult == 1)
}

/// A violated (or borderline) clause of the convex-cyclicity conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code")]
pub enum Reason {
    NotCyclic,
    RepeatedEigenvalue {
        #[serde(with = "complex_scalar")]
        eigenvalue: Complex64,
        geometric_mult: usize,
    },
    EigenvalueInClosedDisk {
        #[serde(with = "complex_scalar")]
        eigenvalue: Complex64,
    },
    RealEigenvalue {
        #[serde(with = "complex_scalar")]
        eigenvalue: Complex64,
    },
    NonNegativeRealEigenvalue {
        #[serde(with = "complex_scalar")]
        eigenvalue: Complex64,
    },
    ConjugatePair {
        #[serde(with = "complex_scalar")]
        first: Complex64,
        #[serde(with = "complex_scalar")]
        second: Complex64,
    },
}

impl Reason {
    /// Stable string code, identical to the JSON `code` field.
    pub fn code(&self) -> &'static str {
        match self {
            Reason::NotCyclic => "NotCyclic",
            Reason::RepeatedEigenvalue { .. } => "RepeatedEigenvalue",
            Reason::EigenvalueInClosedDisk { .. } => "EigenvalueInClosedDisk",
            Reason::RealEigenvalue { .. } => "RealEigenvalue",
            Reason::NonNegativeRealEigenvalue { .. } => "NonNegativeRealEigenvalue",
            Reason::ConjugatePair { .. } => "ConjugatePair",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexCyclicVerdict {
    pub field: Field,
    pub is_cyclic: bool,
    pub is_convex_cyclic: bool,
    pub invariant_convex_sets_are_subspaces: bool,
    pub failed_conditions: Vec<Reason>,
    pub borderline: Vec<Reason>,
    pub tolerances_used: Tolerances,
    pub eigenstructure: Eigenstructure,
}

impl ConvexCyclicVerdict {
    /// Sorted reason codes, convenient for comparing verdicts across similar matrices.
    pub fn reason_codes(&self) -> Vec<&'static str> {
        let mut codes: Vec<_> = self.failed_conditions.iter().map(Reason::code).collect();
        codes.sort_unstable();
        codes.dedup();
        codes
    }
}

pub fn classify(t: &MatrixSpec, tol: Option<Tolerances>) -> Result<ConvexCyclicVerdict, SpectralError> {
    let es = eigenstructure(t, tol)?;
    Ok(verdict_from(es))
}

/// Applies the eigenvalue conditions to an already computed eigenstructure.
pub fn verdict_from(es: Eigenstructure) -> ConvexCyclicVerdict {
    let tol = es.tolerances.eig;
    let mut spectral_fail = Vec::new();
    let mut borderline = Vec::new();
    let near_edge = |stat: f64, edge: f64| stat != 0.0 && (stat - edge).abs() <= tol;

    for e in &es.eigenvalues {
        // Real matrices: one report per conjugate pair.
        if es.field == Field::Real && e.value.im < 0.0 && e.conjugate_partner.is_some() {
            continue;
        }
        let lam = e.value;
        let modulus = lam.norm();
        if modulus <= 1.0 + tol {
            spectral_fail.push(Reason::EigenvalueInClosedDisk { eigenvalue: lam });
        }
        if (modulus - (1.0 + tol)).abs() <= tol {
            borderline.push(Reason::EigenvalueInClosedDisk { eigenvalue: lam });
        }
        let off_axis = lam.im.abs();
        match es.field {
            Field::Complex => {
                if off_axis <= tol {
                    spectral_fail.push(Reason::RealEigenvalue { eigenvalue: lam });
                }
                if near_edge(off_axis, tol) {
                    borderline.push(Reason::RealEigenvalue { eigenvalue: lam });
                }
            }
            Field::Real => {
                if off_axis <= tol && lam.re >= -tol {
                    spectral_fail.push(Reason::NonNegativeRealEigenvalue { eigenvalue: lam });
                }
                if lam.re >= -tol && near_edge(off_axis, tol) {
                    borderline.push(Reason::NonNegativeRealEigenvalue { eigenvalue: lam });
                }
            }
        }
    }
    if es.field == Field::Complex {
        for (j, a) in es.eigenvalues.iter().enumerate() {
            for b in &es.eigenvalues[j + 1..] {
                let gap = (a.value - b.value.conj()).norm();
                if gap <= tol {
                    spectral_fail.push(Reason::ConjugatePair { first: a.value, second: b.value });
                }
                if near_edge(gap, tol) {
                    borderline.push(Reason::ConjugatePair { first: a.value, second: b.value });
                }
            }
        }
    }

    let cyclic = is_cyclic(&es);
    let mut failed_conditions = Vec::new();
    if !cyclic {
        failed_conditions.push(Reason::NotCyclic);
        for e in es.eigenvalues.iter().filter(|e| e.geometric_mult > 1) {
            if es.field == Field::Real && e.value.im < 0.0 && e.conjugate_partner.is_some() {
                continue;
            }
            failed_conditions.push(Reason::RepeatedEigenvalue {
                eigenvalue: e.value,
                geometric_mult: e.geometric_mult,
            });
        }
    }
    let subspaces = spectral_fail.is_empty();
    failed_conditions.extend(spectral_fail);

    ConvexCyclicVerdict {
        field: es.field,
        is_cyclic: cyclic,
        is_convex_cyclic: cyclic && subspaces,
        invariant_convex_sets_are_subspaces: subspaces,
        failed_conditions,
        borderline,
        tolerances_used: es.tolerances,
        eigenstructure: es,
    }
}

/// Whether `v` is a convex-cyclic vector for the canonical form `spec`.
///
/// Returns `false` outright when the form is not convex-cyclic. Otherwise the
/// test is blockwise: diagonal entries need a nonzero coordinate, `J_k`
/// blocks a nonzero first coordinate, `C_k` blocks a nonzero first pair.
pub fn convex_cyclic_vector_test(spec: &DirectSumSpec, v: &[Complex64]) -> Result<bool, SpectralError> {
    spec.validate()?;
    let n = spec.dim();
    if v.len() != n {
        return Err(SpectralError::DimensionMismatch { expected: n, got: v.len() });
    }
    let field = spec.natural_field();
    if field == Field::Real && v.iter().any(|z| z.im != 0.0) {
        return Err(SpectralError::NotCanonicalForm(
            "complex vector supplied for a real canonical form".into(),
        ));
    }
    if !classify(&spec.build()?, None)?.is_convex_cyclic {
        return Ok(false);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut at = 0;
    for b in &spec.blocks {
        let ok = match b {
            Block::Diag { .. } | Block::Jordan(_) => v[at] != zero,
            Block::RealJordan(_) => v[at] != zero || v[at + 1] != zero,
        };
        if !ok {
            return Ok(false);
        }
        at += b.dim();
    }
    Ok(true)
}

/// Krylov test: `v, Tv, ..., T^{n−1}v` span the whole space.
///
/// Runs Arnoldi with reorthogonalization and reports breakdown when a new
/// direction has norm below `rel_tol · max(‖T‖₂, 1)`.
pub fn is_cyclic_vector(t: &MatrixSpec, v: &DVector<Complex64>, rel_tol: f64) -> Result<bool, SpectralError> {
    let n = t.dim();
    if v.len() != n {
        return Err(SpectralError::DimensionMismatch { expected: n, got: v.len() });
    }
    let vn = v.norm();
    if vn == 0.0 {
        return Ok(false);
    }
    let threshold = rel_tol * t.norm2().max(1.0);
    let mut basis: Vec<DVector<Complex64>> = vec![v / Complex64::new(vn, 0.0)];
    while basis.len() < n {
        let mut w = t.entries() * basis.last().unwrap();
        for _ in 0..2 {
            for q in &basis {
                let h = q.dotc(&w);
                w -= q * h;
            }
        }
        let h = w.norm();
        if h <= threshold {
            return Ok(false);
        }
        basis.push(w / Complex64::new(h, 0.0));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan_forms::{jordan_block, real_jordan_block};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(field: Field, vals: &[Complex64]) -> MatrixSpec {
        MatrixSpec::diagonal(field, vals).unwrap()
    }

    fn codes(v: &ConvexCyclicVerdict) -> Vec<&'static str> {
        v.reason_codes()
    }

    #[test]
    fn eigenstructure_examples() {
        let es = eigenstructure(&diag(Field::Complex, &[c(0.0, 2.0), c(-3.0, 0.0)]), None).unwrap();
        assert_eq!(es.eigenvalues.len(), 2);
        assert!(es.eigenvalues.iter().all(|e| e.algebraic_mult == 1 && e.geometric_mult == 1));

        let j2 = MatrixSpec::real(jordan_block(2, c(5.0, 0.0)).map(|z| z.re)).unwrap();
        let es = eigenstructure(&j2, None).unwrap();
        assert_eq!(es.eigenvalues.len(), 1);
        let e = &es.eigenvalues[0];
        assert!((e.value - c(5.0, 0.0)).norm() < 1e-9);
        assert_eq!((e.algebraic_mult, e.geometric_mult), (2, 1));
        assert!(is_cyclic(&es));

        let id = MatrixSpec::real_rows(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let es = eigenstructure(&id, None).unwrap();
        assert_eq!(es.eigenvalues.len(), 1);
        assert_eq!((es.eigenvalues[0].algebraic_mult, es.eigenvalues[0].geometric_mult), (2, 2));
        assert!(!is_cyclic(&es));

        assert!(is_cyclic(&eigenstructure(&MatrixSpec::real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]), None).unwrap()));
    }

    #[test]
    fn adjoint_spectrum_is_conjugate() {
        let es = eigenstructure(&diag(Field::Complex, &[c(1.0, 2.0), c(-3.0, 0.5)]), None).unwrap();
        for (e, a) in es.eigenvalues.iter().zip(&es.adjoint_spectrum) {
            assert_eq!(*a, e.value.conj());
        }
    }

    #[test]
    fn real_pairs_are_linked() {
        let m = MatrixSpec::real(real_jordan_block(1, 2.0, PI / 3.0)).unwrap();
        let es = eigenstructure(&m, None).unwrap();
        assert_eq!(es.eigenvalues.len(), 2);
        assert_eq!(es.eigenvalues[0].conjugate_partner, Some(1));
        assert_eq!(es.eigenvalues[1].value, es.eigenvalues[0].value.conj());
    }

    #[test]
    fn higher_order_jordan_blocks_cluster() {
        for k in 2..=5 {
            let m = MatrixSpec::complex(jordan_block(k, c(1.5, 2.0))).unwrap();
            let es = eigenstructure(&m, None).unwrap();
            assert_eq!(es.eigenvalues.len(), 1, "k = {k}");
            assert_eq!(es.eigenvalues[0].algebraic_mult, k);
            assert_eq!(es.eigenvalues[0].geometric_mult, 1);
        }
        let c2 = MatrixSpec::real(real_jordan_block(2, 2.0, 1.0)).unwrap();
        let es = eigenstructure(&c2, None).unwrap();
        assert_eq!(es.eigenvalues.len(), 2);
        assert!(es.eigenvalues.iter().all(|e| e.algebraic_mult == 2 && e.geometric_mult == 1));
    }

    #[test]
    fn classify_examples() {
        let lam = c(0.0, 3.0);
        let v = classify(&diag(Field::Complex, &[lam, lam]), None).unwrap();
        assert!(!v.is_convex_cyclic);
        assert!(codes(&v).contains(&"RepeatedEigenvalue"));

        let v = classify(&diag(Field::Complex, &[c(1.0, 2.0), c(1.0, -2.0)]), None).unwrap();
        assert!(!v.is_convex_cyclic);
        assert_eq!(codes(&v), vec!["ConjugatePair"]);

        let v = classify(&diag(Field::Real, &[c(-2.0, 0.0), c(-3.0, 0.0)]), None).unwrap();
        assert!(v.is_convex_cyclic);
        assert!(v.failed_conditions.is_empty());

        let rot = MatrixSpec::real(real_jordan_block(1, 2.0, PI / 3.0)).unwrap();
        assert!(classify(&rot, None).unwrap().is_convex_cyclic);

        let v = classify(&diag(Field::Complex, &[c(0.0, 2.0), c(0.0, 2.0)]), None).unwrap();
        assert!(!v.is_cyclic && !v.is_convex_cyclic);
        assert!(v.invariant_convex_sets_are_subspaces);
    }

    #[test]
    fn classify_reason_codes() {
        let v = classify(&diag(Field::Complex, &[c(0.5, 0.5), c(-3.0, 0.0)]), None).unwrap();
        assert_eq!(codes(&v), vec!["EigenvalueInClosedDisk", "RealEigenvalue"]);
        let v = classify(&diag(Field::Real, &[c(2.0, 0.0), c(-3.0, 0.0)]), None).unwrap();
        assert_eq!(codes(&v), vec!["NonNegativeRealEigenvalue"]);
        // Negative reals are fine over ℝ but not over ℂ.
        let v = classify(&diag(Field::Complex, &[c(-2.0, 0.0), c(-3.0, 0.0)]), None).unwrap();
        assert_eq!(codes(&v), vec!["RealEigenvalue"]);
        // A real rotation inside the disk is reported once.
        let rot = MatrixSpec::real(real_jordan_block(1, 0.8, 1.0)).unwrap();
        let v = classify(&rot, None).unwrap();
        assert_eq!(v.failed_conditions.len(), 1);
    }

    #[test]
    fn borderline_disk_is_flagged() {
        let v = classify(&diag(Field::Complex, &[c(0.0, 1.0 + 1e-10), c(0.0, 3.0)]), None).unwrap();
        assert!(!v.is_convex_cyclic);
        assert_eq!(v.borderline.len(), 1);
        let v = classify(&diag(Field::Complex, &[c(0.0, 1.5), c(0.0, 3.0)]), None).unwrap();
        assert!(v.borderline.is_empty());
    }

    #[test]
    fn vector_test_examples() {
        let d = DirectSumSpec::new(vec![Block::diag(c(-2.0, 0.0)), Block::diag(c(-3.0, 0.0))]);
        assert!(convex_cyclic_vector_test(&d, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!(!convex_cyclic_vector_test(&d, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap());

        let j = DirectSumSpec::new(vec![Block::jordan(3, c(0.0, 2.0))]);
        assert!(!convex_cyclic_vector_test(&j, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!(convex_cyclic_vector_test(&j, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap());

        let r = DirectSumSpec::new(vec![Block::real_jordan(1, 2.0, PI / 3.0)]);
        assert!(!convex_cyclic_vector_test(&r, &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap());
        assert!(convex_cyclic_vector_test(&r, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap());

        assert!(matches!(
            convex_cyclic_vector_test(&d, &[c(1.0, 0.0)]),
            Err(SpectralError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            convex_cyclic_vector_test(&DirectSumSpec::new(vec![]), &[]),
            Err(SpectralError::NotCanonicalForm(_))
        ));
        // Not convex-cyclic at all: no vector qualifies.
        let bad = DirectSumSpec::new(vec![Block::diag(c(-2.0, 0.0)), Block::diag(c(-2.0, 0.0))]);
        assert!(!convex_cyclic_vector_test(&bad, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap());
    }

    #[test]
    fn krylov_cyclic_vector() {
        let j = MatrixSpec::complex(jordan_block(3, c(0.0, 2.0))).unwrap();
        let e1 = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let e2 = DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(is_cyclic_vector(&j, &e1, 1e-9).unwrap());
        assert!(!is_cyclic_vector(&j, &e2, 1e-9).unwrap());
    }
}
