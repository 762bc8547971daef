//! Convex-polynomials: polynomials whose coefficients are nonnegative and sum
//! to one, i.e. convex combinations of the monomials `1, z, z^2, ...`.
//!
//! Besides the basic algebra this module builds the peaking family
//! `p_{m,α}(z) = z^m (α z + 1 − α)` and runs the bounded growth scans used to
//! witness unbounded real parts of rotated, scaled sequences.

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

/// Absolute tolerance on the coefficient sum accepted by [`ConvexPolynomial::new`].
pub const SUM_TOL: f64 = 1e-12;

/// Tolerance used when comparing user supplied nodes (distinctness, conjugacy, modulus ties).
pub const NODE_TOL: f64 = 1e-10;

/// Default cap on the exponent scan in [`peaking_polynomial`].
pub const DEFAULT_M_CAP: usize = 10_000;

/// Number of α values tried when realness avoidance is requested.
pub const ALPHA_GRID_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("coefficient vector is empty")]
    Empty,
    #[error("coefficient {0} is not finite")]
    NonFinite(usize),
    #[error("coefficient {0} is negative")]
    NegativeCoefficient(usize),
    #[error("coefficients sum to {0}, expected 1")]
    SumNotOne(f64),
}

/// A plain real-coefficient polynomial, `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        horner_real(&self.coeffs, x)
    }

    /// Coefficients of the `order`-th derivative, computed by exact index shifts.
    pub fn derivative(&self, order: usize) -> Polynomial {
        Polynomial::new(derivative_coeffs(&self.coeffs, order))
    }
}

/// A validated convex-polynomial.
///
/// Coefficients are stored with trailing zeros removed (at least one entry is
/// kept). Every stored coefficient is `>= 0` and their sum is renormalized to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoeffs")]
pub struct ConvexPolynomial {
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct RawCoeffs {
    coeffs: Vec<f64>,
}

impl TryFrom<RawCoeffs> for ConvexPolynomial {
    type Error = PolyError;

    fn try_from(raw: RawCoeffs) -> Result<Self, Self::Error> {
        ConvexPolynomial::new(raw.coeffs)
    }
}

impl ConvexPolynomial {
    /// Validates a coefficient vector and canonicalizes it.
    pub fn new(coeffs: Vec<f64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(PolyError::NonFinite(i));
        }
        if let Some(i) = coeffs.iter().position(|&c| c < 0.0) {
            return Err(PolyError::NegativeCoefficient(i));
        }
        let sum: f64 = coeffs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(PolyError::SumNotOne(sum));
        }
        Ok(Self::canonical(coeffs))
    }

    /// Builds from nonnegative coefficients with a positive sum, rescaling
    /// the sum to one. Used after products and compositions where rounding
    /// may have moved the sum slightly.
    pub(crate) fn renormalized(coeffs: Vec<f64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c >= 0.0 && c.is_finite()));
        Self::canonical(coeffs)
    }

    fn canonical(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        // Sums already within a few ulps of one are left unscaled: rescaling
        // every coefficient perturbs values with large cancellation.
        let sum: f64 = coeffs.iter().sum();
        if sum > 0.0 && (sum - 1.0).abs() > 1e-13 {
            coeffs.iter_mut().for_each(|c| *c /= sum);
        }
        // Push the remaining rounding error into the largest coefficient so
        // the stored sum evaluates to exactly 1.0 where representable.
        let imax = coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        for _ in 0..4 {
            let s: f64 = coeffs.iter().sum();
            if s == 1.0 {
                break;
            }
            coeffs[imax] = (coeffs[imax] + (1.0 - s)).max(0.0);
        }
        Self { coeffs }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    /// `p_α(z) = α z + (1 − α)`.
    pub fn linear(alpha: f64) -> Self {
        assert!((0.0..=1.0).contains(&alpha), "alpha must lie in [0, 1]");
        Self::canonical(vec![1.0 - alpha, alpha])
    }

    /// `p_{m,α}(z) = z^m (α z + 1 − α)`.
    pub fn peaking(m: usize, alpha: f64) -> Self {
        assert!((0.0..=1.0).contains(&alpha), "alpha must lie in [0, 1]");
        let mut coeffs = vec![0.0; m + 2];
        coeffs[m] = 1.0 - alpha;
        coeffs[m + 1] = alpha;
        Self::canonical(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Largest index with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        horner_real(&self.coeffs, x)
    }

    /// `p^{(order)}` as a plain polynomial (generally not convex).
    pub fn derivative(&self, order: usize) -> Polynomial {
        Polynomial::new(derivative_coeffs(&self.coeffs, order))
    }

    /// `p^{(order)}(z)`.
    pub fn eval_derivative(&self, order: usize, z: Complex64) -> Complex64 {
        horner_derivative(&self.coeffs, order, z)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::renormalized(convolve(&self.coeffs, &other.coeffs))
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = vec![*self.coeffs.last().unwrap()];
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = convolve(&acc, &inner.coeffs);
            acc[0] += c;
        }
        Self::renormalized(acc)
    }

    /// `self^n` under multiplication.
    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    horner_derivative(coeffs, 0, z)
}

pub(crate) fn horner_real(coeffs: &[f64], x: f64) -> f64 {
    let x = TwoFloat::from(x);
    let acc = coeffs.iter().rev().fold(TwoFloat::from(0.0), |acc, &c| acc * x + c);
    f64::from(acc)
}

/// `p^{(order)}(z)` by Horner's rule in double-double arithmetic.
///
/// Interpolants can carry coefficients whose terms `a_i |z|^i` are many
/// orders of magnitude above the value, so plain `f64` evaluation would lose
/// most of the significant digits.
pub(crate) fn horner_derivative(coeffs: &[f64], order: usize, z: Complex64) -> Complex64 {
    let zero = TwoFloat::from(0.0);
    let w = Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im));
    let mut acc = Complex::new(zero, zero);
    for (i, &c) in coeffs.iter().enumerate().skip(order).rev() {
        acc = acc * w + Complex::new(TwoFloat::from(c) * falling_factorial(i, order), zero);
    }
    Complex64::new(f64::from(acc.re), f64::from(acc.im))
}

pub(crate) fn derivative_coeffs(coeffs: &[f64], order: usize) -> Vec<f64> {
    if order >= coeffs.len() {
        return Vec::new();
    }
    coeffs
        .iter()
        .enumerate()
        .skip(order)
        .map(|(i, &c)| c * falling_factorial(i, order))
        .collect()
}

/// `(i)_j = i (i − 1) ... (i − j + 1)`, zero when `j > i`.
pub fn falling_factorial(i: usize, j: usize) -> f64 {
    if j > i {
        return 0.0;
    }
    ((i - j + 1)..=i).fold(1.0, |acc, t| acc * t as f64)
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Peaking polynomials

/// How α is chosen for `p_{m,α}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaChoice {
    /// α = 1/2, falling back to 1/3 if 1/2 is the excluded value.
    #[default]
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakingOptions {
    pub alpha: AlphaChoice,
    /// Required absolute gap between the peak and the runner-up.
    pub margin_goal: f64,
    /// Also require `p_{m,α}(S) ∩ ℝ = ∅` (node set must avoid the real line).
    pub avoid_real: bool,
    pub m_cap: usize,
}

impl Default for PeakingOptions {
    fn default() -> Self {
        Self {
            alpha: AlphaChoice::Auto,
            margin_goal: 0.0,
            avoid_real: false,
            m_cap: DEFAULT_M_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum PeakPrecondition {
    EmptyNodeSet,
    NonFiniteNode { index: usize },
    DuplicateNodes { first: usize, second: usize },
    MaxModulusNotAboveOne { max_modulus: f64 },
    ConjugateOnOuterCircle { first: usize, second: usize },
    AlphaOutOfRange { alpha: f64 },
    ExcludedAlpha { alpha: f64 },
    NodeOnRealLine { index: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeakError {
    #[error("precondition violated: {0:?}")]
    PreconditionViolated(PeakPrecondition),
    #[error("no peaking exponent found up to m = {0}")]
    NoPeakWithinCap(usize),
    #[error("every α in the perturbation grid hits a real value")]
    RealnessGridExhausted,
}

/// Result of [`peaking_polynomial`].
///
/// `peak_value` and `margin` are `None` only when `c_α R^m` overflows `f64`;
/// the logarithmic fields are always populated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakingCertificate {
    pub polynomial: ConvexPolynomial,
    pub alpha: f64,
    pub m: usize,
    pub peak_index: usize,
    pub peak_point: Complex64,
    pub peak_value: Option<f64>,
    pub log_peak_value: f64,
    pub c_alpha: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub margin: Option<f64>,
    /// `1 − max_{z ≠ peak}|p(z)| / |p(peak)|`.
    pub relative_margin: f64,
}

/// Finds the smallest `m` for which `p_{m,α}` strictly peaks on `nodes` at a
/// node of maximal modulus.
pub fn peaking_polynomial(
    nodes: &[Complex64],
    opts: &PeakingOptions,
) -> Result<PeakingCertificate, PeakError> {
    use PeakPrecondition as P;
    let fail = |p| Err(PeakError::PreconditionViolated(p));

    if nodes.is_empty() {
        return fail(P::EmptyNodeSet);
    }
    if let Some(index) = nodes.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return fail(P::NonFiniteNode { index });
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if (nodes[i] - nodes[j]).norm() <= NODE_TOL {
                return fail(P::DuplicateNodes { first: i, second: j });
            }
        }
    }
    let r = nodes.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if r <= 1.0 {
        return fail(P::MaxModulusNotAboveOne { max_modulus: r });
    }
    let outer: Vec<usize> = (0..nodes.len())
        .filter(|&i| (nodes[i].norm() - r).abs() <= NODE_TOL)
        .collect();
    for (a, &i) in outer.iter().enumerate() {
        for &j in &outer[a + 1..] {
            if (nodes[i] - nodes[j].conj()).norm() <= NODE_TOL {
                return fail(P::ConjugateOnOuterCircle { first: i, second: j });
            }
        }
    }
    if opts.avoid_real {
        if let Some(index) = nodes.iter().position(|z| z.im.abs() <= NODE_TOL) {
            return fail(P::NodeOnRealLine { index });
        }
    }

    // The peak node on the outer circle has the largest real part; it does not
    // depend on α.
    let peak_index = *outer
        .iter()
        .max_by(|&&a, &&b| nodes[a].re.total_cmp(&nodes[b].re))
        .unwrap();
    let peak = nodes[peak_index];

    let excluded = |alpha: f64| (Complex64::new(alpha, 0.0) * peak + (1.0 - alpha)).norm() == 0.0;

    let base_alpha = match opts.alpha {
        AlphaChoice::Fixed(a) => {
            if !(a > 0.0 && a < 1.0) {
                return fail(P::AlphaOutOfRange { alpha: a });
            }
            if excluded(a) {
                return fail(P::ExcludedAlpha { alpha: a });
            }
            a
        }
        AlphaChoice::Auto => {
            if excluded(0.5) {
                1.0 / 3.0
            } else {
                0.5
            }
        }
    };

    if !opts.avoid_real {
        return scan_exponent(nodes, peak_index, r, base_alpha, opts, 0);
    }
    for alpha in alpha_grid(base_alpha) {
        if excluded(alpha) {
            continue;
        }
        let cert = scan_exponent(nodes, peak_index, r, alpha, opts, 1)?;
        if nodes.iter().all(|&z| !is_real_value(cert.polynomial.eval(z))) {
            return Ok(cert);
        }
    }
    Err(PeakError::RealnessGridExhausted)
}

/// `α_0` followed by symmetric perturbations `α_0 ± 0.03 j`, clipped to (0, 1).
fn alpha_grid(alpha0: f64) -> Vec<f64> {
    let mut grid = vec![alpha0];
    let mut j = 1;
    while grid.len() < ALPHA_GRID_LEN {
        for sign in [1.0, -1.0] {
            let a = alpha0 + sign * 0.03 * j as f64;
            if a > 0.0 && a < 1.0 && grid.len() < ALPHA_GRID_LEN {
                grid.push(a);
            }
        }
        j += 1;
        if j > 100 {
            break;
        }
    }
    grid
}

fn is_real_value(w: Complex64) -> bool {
    w.im.abs() <= NODE_TOL * w.norm().max(1.0)
}

fn scan_exponent(
    nodes: &[Complex64],
    peak_index: usize,
    r: f64,
    alpha: f64,
    opts: &PeakingOptions,
    m_start: usize,
) -> Result<PeakingCertificate, PeakError> {
    // log|p_{m,α}(z)| = m log|z| + log|α z + 1 − α|
    let lin: Vec<f64> = nodes
        .iter()
        .map(|&z| (Complex64::new(alpha, 0.0) * z + (1.0 - alpha)).norm())
        .collect();
    let log_mod: Vec<f64> = nodes.iter().map(|z| z.norm().ln()).collect();
    let log_lin: Vec<f64> = lin.iter().map(|v| v.ln()).collect();

    for m in m_start..=opts.m_cap {
        let mf = m as f64;
        let log_at = |i: usize| {
            if lin[i] == 0.0 || (m > 0 && nodes[i].norm() == 0.0) {
                f64::NEG_INFINITY
            } else {
                mf * log_mod[i] + log_lin[i]
            }
        };
        let log_peak = log_at(peak_index);
        let log_other = (0..nodes.len())
            .filter(|&i| i != peak_index)
            .map(log_at)
            .fold(f64::NEG_INFINITY, f64::max);
        if log_other >= log_peak {
            continue;
        }
        let relative_margin = 1.0 - (log_other - log_peak).exp();
        let peak_value = log_peak.exp();
        let (peak_value, margin) = if peak_value.is_finite() {
            (Some(peak_value), Some(peak_value * relative_margin))
        } else {
            (None, None)
        };
        // An overflowing margin exceeds any finite goal.
        if margin.is_some_and(|g| g <= opts.margin_goal) {
            continue;
        }
        return Ok(PeakingCertificate {
            polynomial: ConvexPolynomial::peaking(m, alpha),
            alpha,
            m,
            peak_index,
            peak_point: nodes[peak_index],
            peak_value,
            log_peak_value: log_peak,
            c_alpha: lin[peak_index],
            r,
            k: m,
            margin,
            relative_margin,
        });
    }
    Err(PeakError::NoPeakWithinCap(opts.m_cap))
}

// ---------------------------------------------------------------------------
// Growth scans

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    #[error("theta is an integer multiple of pi")]
    ThetaMultipleOfPi,
    #[error("w must be nonzero")]
    ZeroW,
    #[error("threshold must be finite")]
    NonFiniteThreshold,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no index up to {0} exceeds the threshold")]
    NotFoundWithinCap(usize),
}

/// Inputs for the one-variable growth scan `M_n Re(ε_n + e^{inθ} w) > threshold`.
pub struct GrowthQuery<E, M>
where
    E: Fn(usize) -> Complex64,
    M: Fn(usize) -> f64,
{
    pub theta: f64,
    pub w: Complex64,
    pub eps_seq: E,
    pub m_seq: M,
    pub threshold: f64,
    pub max_n: usize,
}

fn is_multiple_of_pi(theta: f64) -> bool {
    let k = (theta / std::f64::consts::PI).round();
    (theta - k * std::f64::consts::PI).abs() <= NODE_TOL
}

fn angles_congruent(a: f64, b: f64) -> bool {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d <= NODE_TOL || tau - d <= NODE_TOL
}

impl<E, M> GrowthQuery<E, M>
where
    E: Fn(usize) -> Complex64,
    M: Fn(usize) -> f64,
{
    fn check(&self) -> Result<(), GrowthError> {
        if is_multiple_of_pi(self.theta) {
            return Err(GrowthError::ThetaMultipleOfPi);
        }
        if self.w.norm() == 0.0 {
            return Err(GrowthError::ZeroW);
        }
        if !self.threshold.is_finite() {
            return Err(GrowthError::NonFiniteThreshold);
        }
        Ok(())
    }

    fn value(&self, n: usize) -> f64 {
        let rot = Complex64::from_polar(1.0, n as f64 * self.theta);
        (self.m_seq)(n) * ((self.eps_seq)(n) + rot * self.w).re
    }

    /// Lazily yields every index `1 ≤ n ≤ max_n` above the threshold.
    pub fn hits(&self) -> Result<impl Iterator<Item = usize> + '_, GrowthError> {
        self.check()?;
        Ok((1..=self.max_n).filter(move |&n| self.value(n) > self.threshold))
    }
}

/// Smallest `n ≥ 1` with `M_n Re(ε_n + e^{inθ} w) > threshold`.
pub fn find_growth_index<E, M>(q: &GrowthQuery<E, M>) -> Result<usize, GrowthError>
where
    E: Fn(usize) -> Complex64,
    M: Fn(usize) -> f64,
{
    q.hits()?
        .next()
        .ok_or(GrowthError::NotFoundWithinCap(q.max_n))
}

/// Smallest `n ≥ 1` with `r^n Re(Σ_k e^{inθ_k} f_k) > threshold`.
pub fn multivariable_growth_index(
    r: f64,
    thetas: &[f64],
    f: &[Complex64],
    threshold: f64,
    max_n: usize,
) -> Result<usize, GrowthError> {
    let bad = |s: &str| Err(GrowthError::PreconditionViolated(s.to_string()));
    if !(r > 1.0) {
        return bad("r must exceed 1");
    }
    if thetas.len() != f.len() || thetas.is_empty() {
        return bad("thetas and f must be nonempty and of equal length");
    }
    if f.iter().all(|c| c.norm() == 0.0) {
        return bad("f is identically zero");
    }
    if !threshold.is_finite() {
        return Err(GrowthError::NonFiniteThreshold);
    }
    for (i, &t) in thetas.iter().enumerate() {
        if is_multiple_of_pi(t) {
            return bad(&format!("theta[{i}] is a multiple of pi"));
        }
        for (j, &s) in thetas.iter().enumerate().skip(i + 1) {
            if angles_congruent(t, s) || angles_congruent(t, -s) {
                return bad(&format!("theta[{i}] = ±theta[{j}] mod 2pi"));
            }
        }
    }
    let mut scale = 1.0;
    for n in 1..=max_n {
        scale *= r;
        let s: Complex64 = thetas
            .iter()
            .zip(f)
            .map(|(&t, &c)| Complex64::from_polar(1.0, n as f64 * t) * c)
            .sum();
        if scale * s.re > threshold {
            return Ok(n);
        }
        if !scale.is_finite() {
            break;
        }
    }
    Err(GrowthError::NotFoundWithinCap(max_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validate_examples() {
        let p = ConvexPolynomial::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(p.coeffs(), &[0.5, 0.5]);
        assert_eq!(
            ConvexPolynomial::new(vec![-0.1, 1.1]),
            Err(PolyError::NegativeCoefficient(0))
        );
        match ConvexPolynomial::new(vec![0.5, 0.6]) {
            Err(PolyError::SumNotOne(s)) => assert!((s - 1.1).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(ConvexPolynomial::new(vec![]), Err(PolyError::Empty));
        assert_eq!(
            ConvexPolynomial::new(vec![f64::NAN, 1.0]),
            Err(PolyError::NonFinite(0))
        );
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = ConvexPolynomial::new(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 1.0]);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn eval_examples() {
        let id = ConvexPolynomial::monomial(1);
        assert_eq!(id.eval(c(3.0, 4.0)), c(3.0, 4.0));
        let p = ConvexPolynomial::new(vec![0.0, 0.0, 0.5, 0.5]).unwrap();
        assert_eq!(p.eval(c(-2.0, 0.0)), c(-2.0, 0.0));
        assert_eq!(p.eval_real(-2.0), -2.0);
        assert_eq!(p.eval(c(1.0, 0.0)).re, 1.0);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ConvexPolynomial::monomial(1).derivative(1).coeffs, vec![1.0]);
        let p = ConvexPolynomial::new(vec![0.5, 0.0, 0.5]).unwrap();
        assert_eq!(p.derivative(1).coeffs, vec![0.0, 1.0]);
        assert!(p.derivative(3).coeffs.is_empty());
        // p^{(k)}(0) = k! a_k
        let q = ConvexPolynomial::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let fact = [1.0, 1.0, 2.0, 6.0];
        for (k, f) in fact.iter().enumerate() {
            let d0 = q.eval_derivative(k, c(0.0, 0.0)).re;
            assert!((d0 - f * q.coeffs()[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn multiply_and_compose_examples() {
        let h = ConvexPolynomial::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(h.multiply(&h).coeffs(), &[0.25, 0.5, 0.25]);
        assert_eq!(h.multiply(&ConvexPolynomial::one()), h);
        assert_eq!(h.compose(&ConvexPolynomial::monomial(1)), h);
        assert_eq!(ConvexPolynomial::monomial(1).compose(&h), h);
        assert_eq!(
            ConvexPolynomial::monomial(2).compose(&h).coeffs(),
            &[0.25, 0.5, 0.25]
        );
    }

    #[test]
    fn json_shape() {
        let p: ConvexPolynomial = serde_json::from_str(r#"{"coeffs":[0.25,0.75]}"#).unwrap();
        assert_eq!(p.coeffs(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<ConvexPolynomial>(r#"{"coeffs":[-1,2]}"#).is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"coeffs":[0.25,0.75]}"#);
    }

    /// Brute force: smallest m for which |p_{m,α}| has a unique maximiser on S
    /// lying on the outer circle.
    fn brute_peak(nodes: &[Complex64], alpha: f64) -> (usize, usize) {
        let r = nodes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for m in 0..2000 {
            let p = ConvexPolynomial::peaking(m, alpha);
            let vals: Vec<f64> = nodes.iter().map(|&z| p.eval(z).norm()).collect();
            let (imax, vmax) = vals
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            if nodes[imax].norm() == r && vals.iter().enumerate().all(|(i, &v)| i == imax || v < *vmax) {
                return (m, imax);
            }
        }
        panic!("no peak");
    }

    #[test]
    fn peaking_examples() {
        let s = [c(0.0, 2.0), c(-2.0, 0.0)];
        let cert = peaking_polynomial(
            &s,
            &PeakingOptions { alpha: AlphaChoice::Fixed(0.5), ..Default::default() },
        )
        .unwrap();
        assert_eq!(cert.peak_point, c(0.0, 2.0));
        assert_eq!((cert.m, cert.peak_index), brute_peak(&s, 0.5));
        let expected = cert.c_alpha * 2f64.powi(cert.m as i32);
        assert!((cert.peak_value.unwrap() - expected).abs() <= 1e-9 * expected);

        let s = [c(3.0, 0.0), c(1.5, 0.0)];
        let cert = peaking_polynomial(&s, &PeakingOptions::default()).unwrap();
        assert_eq!(cert.peak_point, c(3.0, 0.0));
        assert_eq!((cert.m, cert.peak_index), brute_peak(&s, 0.5));
        assert_eq!(cert.alpha, 0.5);
    }

    #[test]
    fn peaking_needs_large_m_when_moduli_close() {
        // |α z + 1 − α| has its maximum at the inner node, so m must grow.
        let s = [c(-2.05, 0.0), c(0.0, -2.0), c(1.9, 0.0)];
        let cert = peaking_polynomial(&s, &PeakingOptions::default()).unwrap();
        assert_eq!(cert.peak_index, 0);
        assert!(cert.m > 20);
        assert_eq!((cert.m, cert.peak_index), brute_peak(&s, 0.5));
    }

    #[test]
    fn peaking_preconditions() {
        let opts = PeakingOptions::default();
        let err = |s: &[Complex64]| peaking_polynomial(s, &opts).unwrap_err();
        assert!(matches!(
            err(&[c(0.5, 0.0), c(0.0, 0.9)]),
            PeakError::PreconditionViolated(PeakPrecondition::MaxModulusNotAboveOne { .. })
        ));
        assert!(matches!(
            err(&[c(1.0, 2.0), c(1.0, -2.0)]),
            PeakError::PreconditionViolated(PeakPrecondition::ConjugateOnOuterCircle { .. })
        ));
        assert!(matches!(
            err(&[c(2.0, 0.0), c(2.0, 0.0)]),
            PeakError::PreconditionViolated(PeakPrecondition::DuplicateNodes { .. })
        ));
        // Conjugates strictly inside the outer circle are fine.
        assert!(peaking_polynomial(&[c(3.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)], &opts).is_ok());
        let fixed = PeakingOptions { alpha: AlphaChoice::Fixed(1.0), ..opts };
        assert!(matches!(
            peaking_polynomial(&[c(2.0, 0.0)], &fixed),
            Err(PeakError::PreconditionViolated(PeakPrecondition::AlphaOutOfRange { .. }))
        ));
    }

    #[test]
    fn peaking_avoids_real_values() {
        let s = [c(0.0, 2.0), c(1.0, 1.0), c(-1.2, 0.5)];
        let opts = PeakingOptions { avoid_real: true, ..Default::default() };
        let cert = peaking_polynomial(&s, &opts).unwrap();
        assert!(cert.m >= 1);
        for &z in &s {
            assert!(cert.polynomial.eval(z).im.abs() > 1e-10);
        }
        let real_node = [c(0.0, 2.0), c(-1.5, 0.0)];
        assert!(matches!(
            peaking_polynomial(&real_node, &opts),
            Err(PeakError::PreconditionViolated(PeakPrecondition::NodeOnRealLine { index: 1 }))
        ));
    }

    #[test]
    fn margin_goal_pushes_m_up() {
        let s = [c(0.0, 2.0), c(-2.0, 0.0)];
        let base = peaking_polynomial(&s, &PeakingOptions::default()).unwrap();
        let goal = base.margin.unwrap() * 10.0;
        let opts = PeakingOptions { margin_goal: goal, ..Default::default() };
        let cert = peaking_polynomial(&s, &opts).unwrap();
        assert!(cert.m > base.m);
        assert!(cert.margin.unwrap() > goal);
    }

    fn linear_scan(theta: f64, w: Complex64, threshold: f64) -> usize {
        (1..).find(|&n| 2f64.powi(n as i32) * (Complex64::from_polar(1.0, n as f64 * theta) * w).re > threshold).unwrap()
    }

    #[test]
    fn growth_index_worked_example() {
        let q = GrowthQuery {
            theta: PI / 2.0,
            w: c(1.0, 0.0),
            eps_seq: |_| c(0.0, 0.0),
            m_seq: |n| 2f64.powi(n as i32),
            threshold: 100.0,
            max_n: 100,
        };
        assert_eq!(find_growth_index(&q), Ok(8));
        assert_eq!(linear_scan(PI / 2.0, c(1.0, 0.0), 100.0), 8);
        let hits: Vec<usize> = q.hits().unwrap().take(3).collect();
        assert_eq!(hits, vec![8, 12, 16]);
    }

    #[test]
    fn growth_index_errors() {
        let mk = |theta: f64, w: Complex64, max_n: usize| GrowthQuery {
            theta,
            w,
            eps_seq: |_| c(0.0, 0.0),
            m_seq: |n| 2f64.powi(n as i32),
            threshold: 100.0,
            max_n,
        };
        assert_eq!(find_growth_index(&mk(PI, c(1.0, 0.0), 10)), Err(GrowthError::ThetaMultipleOfPi));
        assert_eq!(find_growth_index(&mk(-3.0 * PI, c(1.0, 0.0), 10)), Err(GrowthError::ThetaMultipleOfPi));
        assert_eq!(find_growth_index(&mk(1.0, c(0.0, 0.0), 10)), Err(GrowthError::ZeroW));
        assert_eq!(
            find_growth_index(&mk(PI / 2.0, c(1.0, 0.0), 5)),
            Err(GrowthError::NotFoundWithinCap(5))
        );
    }

    #[test]
    fn multivariable_examples() {
        assert_eq!(multivariable_growth_index(2.0, &[PI / 2.0], &[c(1.0, 0.0)], 100.0, 100), Ok(8));
        assert!(matches!(
            multivariable_growth_index(2.0, &[PI / 2.0], &[c(0.0, 0.0)], 100.0, 100),
            Err(GrowthError::PreconditionViolated(_))
        ));
        assert!(matches!(
            multivariable_growth_index(2.0, &[PI / 3.0, -PI / 3.0], &[c(1.0, 0.0), c(1.0, 0.0)], 100.0, 100),
            Err(GrowthError::PreconditionViolated(_))
        ));
        assert!(matches!(
            multivariable_growth_index(2.0, &[PI / 3.0, PI / 3.0 + 2.0 * PI], &[c(1.0, 0.0), c(1.0, 0.0)], 100.0, 100),
            Err(GrowthError::PreconditionViolated(_))
        ));
    }
}
