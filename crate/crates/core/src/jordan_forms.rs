//! Canonical building blocks: lower Jordan blocks `J_k(λ)`, real Jordan blocks
//! `C_k(r, θ)`, and direct sums of them.
//!
//! Everything uses the lower-triangular convention: `λ` on the diagonal and
//! ones on the subdiagonal. Upper-triangular inputs must be transposed by the
//! caller.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{complex_scalar, Field, MatrixSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    #[error("vector has odd length {0}")]
    OddLength(usize),
    #[error("block {0} has size zero")]
    ZeroSize(usize),
    #[error("block {0} has a negative or non-finite parameter")]
    BadParameter(usize),
    #[error("direct sum has no blocks")]
    Empty,
    #[error("block {0} has a non-real eigenvalue but a real matrix was requested")]
    NotReal(usize),
}

/// `J_k(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JordanBlock {
    #[serde(rename = "k")]
    pub size: usize,
    #[serde(rename = "lambda", with = "complex_scalar")]
    pub eigenvalue: Complex64,
}

/// `C_k(r, θ)`, a `2k × 2k` real block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealJordanBlock {
    #[serde(rename = "k")]
    pub half_size: usize,
    pub r: f64,
    pub theta: f64,
}

impl RealJordanBlock {
    /// The eigenvalue `r e^{iθ}` carried by the block (its conjugate is the other one).
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Block {
    Jordan(JordanBlock),
    RealJordan(RealJordanBlock),
    Diag {
        #[serde(with = "complex_scalar")]
        value: Complex64,
    },
}

impl Block {
    pub fn jordan(size: usize, eigenvalue: Complex64) -> Self {
        Block::Jordan(JordanBlock { size, eigenvalue })
    }

    pub fn real_jordan(half_size: usize, r: f64, theta: f64) -> Self {
        Block::RealJordan(RealJordanBlock { half_size, r, theta })
    }

    pub fn diag(value: Complex64) -> Self {
        Block::Diag { value }
    }

    pub fn dim(&self) -> usize {
        match self {
            Block::Jordan(b) => b.size,
            Block::RealJordan(b) => 2 * b.half_size,
            Block::Diag { .. } => 1,
        }
    }

    fn is_real(&self) -> bool {
        match self {
            Block::Jordan(b) => b.eigenvalue.im == 0.0,
            Block::RealJordan(_) => true,
            Block::Diag { value } => value.im == 0.0,
        }
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        match *self {
            Block::Jordan(b) => jordan_block(b.size, b.eigenvalue),
            Block::RealJordan(b) => {
                real_jordan_block(b.half_size, b.r, b.theta).map(|x| Complex64::new(x, 0.0))
            }
            Block::Diag { value } => DMatrix::from_element(1, 1, value),
        }
    }
}

/// An ordered direct sum `⊕ blocks`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectSumSpec {
    pub blocks: Vec<Block>,
}

impl DirectSumSpec {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn validate(&self) -> Result<(), JordanError> {
        if self.blocks.is_empty() {
            return Err(JordanError::Empty);
        }
        for (i, b) in self.blocks.iter().enumerate() {
            match *b {
                Block::Jordan(j) => {
                    if j.size == 0 {
                        return Err(JordanError::ZeroSize(i));
                    }
                    if !(j.eigenvalue.re.is_finite() && j.eigenvalue.im.is_finite()) {
                        return Err(JordanError::BadParameter(i));
                    }
                }
                Block::RealJordan(c) => {
                    if c.half_size == 0 {
                        return Err(JordanError::ZeroSize(i));
                    }
                    if !(c.r >= 0.0 && c.r.is_finite() && c.theta.is_finite()) {
                        return Err(JordanError::BadParameter(i));
                    }
                }
                Block::Diag { value } => {
                    if !(value.re.is_finite() && value.im.is_finite()) {
                        return Err(JordanError::BadParameter(i));
                    }
                }
            }
        }
        Ok(())
    }

    /// Real when every block has real entries, complex otherwise.
    pub fn natural_field(&self) -> Field {
        if self.blocks.iter().all(Block::is_real) {
            Field::Real
        } else {
            Field::Complex
        }
    }

    /// Dense block-diagonal matrix over the natural field.
    pub fn build(&self) -> Result<MatrixSpec, JordanError> {
        self.build_in(self.natural_field())
    }

    pub fn build_in(&self, field: Field) -> Result<MatrixSpec, JordanError> {
        self.validate()?;
        if field == Field::Real {
            if let Some(i) = self.blocks.iter().position(|b| !b.is_real()) {
                return Err(JordanError::NotReal(i));
            }
        }
        let n = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        let mut at = 0;
        for b in &self.blocks {
            let d = b.dim();
            m.view_mut((at, at), (d, d)).copy_from(&b.matrix());
            at += d;
        }
        Ok(MatrixSpec::new(field, m).expect("block matrices are square and finite"))
    }
}

/// `J_k(λ)`: `λ` on the diagonal, ones on the subdiagonal.
pub fn jordan_block(k: usize, lambda: Complex64) -> DMatrix<Complex64> {
    DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            lambda
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `R(θ)`, rotation by `θ`.
pub fn rotation(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[c, -s], [s, c]]
}

/// `C_k(r, θ)`: cells `r R(θ)` on the block diagonal, `I_2` on the block subdiagonal.
pub fn real_jordan_block(k: usize, r: f64, theta: f64) -> DMatrix<f64> {
    let rot = rotation(theta);
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        for i in 0..2 {
            for j in 0..2 {
                m[(2 * b + i, 2 * b + j)] = r * rot[i][j];
            }
        }
        if b + 1 < k {
            m[(2 * b + 2, 2 * b)] = 1.0;
            m[(2 * b + 3, 2 * b + 1)] = 1.0;
        }
    }
    m
}

/// Taylor coefficients `p^{(d)}(λ) / d!` for `d = 0..count`, by repeated
/// synthetic division of the coefficient vector.
pub fn taylor_coefficients(coeffs: &[f64], lambda: Complex64, count: usize) -> Vec<Complex64> {
    let mut work: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if work.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        // Divide by (z − λ): quotient overwrites work[1..], remainder in work[0].
        for i in (0..work.len() - 1).rev() {
            let carry = work[i + 1] * lambda;
            work[i] += carry;
        }
        out.push(work[0]);
        work.remove(0);
    }
    out
}

/// `p(J_k(λ))` in closed form: lower-triangular Toeplitz with entry
/// `(i, j) = p^{(i−j)}(λ) / (i−j)!` for `i ≥ j`.
pub fn poly_on_jordan_block(coeffs: &[f64], lambda: Complex64, k: usize) -> DMatrix<Complex64> {
    let t = taylor_coefficients(coeffs, lambda, k);
    DMatrix::from_fn(k, k, |i, j| if i >= j { t[i - j] } else { Complex64::new(0.0, 0.0) })
}

/// `U_c(x_1, ..., x_{2n}) = (x_1 + i x_2, ..., x_{2n−1} + i x_{2n})`.
pub fn complexify(x: &[f64]) -> Result<Vec<Complex64>, JordanError> {
    if !x.len().is_multiple_of(2) {
        return Err(JordanError::OddLength(x.len()));
    }
    Ok(x.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

/// Inverse of [`complexify`].
pub fn realify(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|w| [w.re, w.im]).collect()
}

/// `C(n, d)` as a float.
pub fn binomial(n: usize, d: usize) -> f64 {
    if d > n {
        return 0.0;
    }
    let d = d.min(n - d);
    (0..d).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `C_k(r, θ)^n` in closed form: block `(i, j)`, `d = i − j ≥ 0`, equals
/// `C(n, d) r^{n−d} R((n−d) θ)`.
pub fn real_block_power(r: f64, theta: f64, k: usize, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for bi in 0..k {
        for bj in 0..=bi {
            let d = bi - bj;
            if d > n {
                continue;
            }
            let scale = binomial(n, d) * r.powi((n - d) as i32);
            let rot = rotation((n - d) as f64 * theta);
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * bi + i, 2 * bj + j)] = scale * rot[i][j];
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn build_examples() {
        let j1 = jordan_block(1, c(2.0, 1.0));
        assert_eq!(j1[(0, 0)], c(2.0, 1.0));
        let j4 = jordan_block(4, c(3.0, 0.0));
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 3.0 } else if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(j4[(i, j)], c(want, 0.0));
            }
        }
        let (r, t) = (2.0, 0.7);
        let c1 = real_jordan_block(1, r, t);
        assert_eq!(c1[(0, 0)], r * t.cos());
        assert_eq!(c1[(0, 1)], -r * t.sin());
        assert_eq!(c1[(1, 0)], r * t.sin());
        assert_eq!(c1[(1, 1)], r * t.cos());
        let c3 = real_jordan_block(3, r, t);
        assert_eq!(c3[(2, 0)], 1.0);
        assert_eq!(c3[(3, 1)], 1.0);
        assert_eq!(c3[(3, 0)], 0.0);
        assert_eq!(c3[(4, 2)], 1.0);
    }

    #[test]
    fn direct_sum_layout_and_field() {
        let spec = DirectSumSpec::new(vec![
            Block::diag(c(-2.0, 0.0)),
            Block::jordan(2, c(-4.0, 0.0)),
            Block::real_jordan(1, 2.0, 1.0),
        ]);
        let m = spec.build().unwrap();
        assert_eq!(m.field(), Field::Real);
        assert_eq!(m.dim(), 5);
        assert_eq!(m.entries()[(2, 1)], c(1.0, 0.0));
        assert_eq!(m.entries()[(1, 0)], c(0.0, 0.0));

        let cplx = DirectSumSpec::new(vec![Block::jordan(2, c(0.0, 2.0))]);
        assert_eq!(cplx.natural_field(), Field::Complex);
        assert!(matches!(cplx.build_in(Field::Real), Err(JordanError::NotReal(0))));
        assert!(DirectSumSpec::new(vec![]).build().is_err());
        assert!(DirectSumSpec::new(vec![Block::jordan(0, c(1.0, 0.0))]).build().is_err());
    }

    #[test]
    fn direct_sum_json_shape() {
        let text = r#"{"blocks":[{"type":"jordan","k":3,"lambda":[0,2]},{"type":"real_jordan","k":2,"r":2.0,"theta":1.047},{"type":"diag","value":-2.0}]}"#;
        let spec: DirectSumSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.dim(), 3 + 4 + 1);
        assert_eq!(spec.blocks[2], Block::diag(c(-2.0, 0.0)));
        let again: DirectSumSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn toeplitz_examples() {
        let one = poly_on_jordan_block(&[1.0], c(3.0, 1.0), 3);
        assert_eq!(one, DMatrix::identity(3, 3));

        // z^n on J_4(λ): first column λ^n, C(n,1) λ^{n-1}, C(n,2) λ^{n-2}, C(n,3) λ^{n-3}
        let n = 7;
        let lam = c(1.5, -0.5);
        let mut zn = vec![0.0; n + 1];
        zn[n] = 1.0;
        let m = poly_on_jordan_block(&zn, lam, 4);
        for d in 0..4 {
            let want = lam.powi((n - d) as i32) * binomial(n, d);
            assert!((m[(d, 0)] - want).norm() < 1e-12 * want.norm());
        }

        // (z − 2)^3 vanishes to order 3 at 2.
        let cube = [-8.0, 12.0, -6.0, 1.0];
        let z = poly_on_jordan_block(&cube, c(2.0, 0.0), 3);
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn complexify_examples() {
        assert_eq!(complexify(&[1.0, 0.0, 0.0, 1.0]).unwrap(), vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(complexify(&[0.0; 4]).unwrap(), vec![c(0.0, 0.0); 2]);
        assert_eq!(complexify(&[1.0, 2.0, 3.0]), Err(JordanError::OddLength(3)));
        assert_eq!(realify(&complexify(&[1.0, 2.0, 3.0, 4.0]).unwrap()), vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn real_power_examples() {
        let (r, t) = (1.3, 0.4);
        assert_eq!(real_block_power(r, t, 2, 0), DMatrix::identity(4, 4));
        let p = real_block_power(r, t, 1, 5);
        let rot = rotation(5.0 * t);
        assert!((p[(0, 0)] - r.powi(5) * rot[0][0]).abs() < 1e-12);
        assert!((p[(1, 0)] - r.powi(5) * rot[1][0]).abs() < 1e-12);
        let p3 = real_block_power(r, t, 3, 6);
        let rot = rotation(4.0 * t);
        let want = 15.0 * r.powi(4);
        assert!((p3[(4, 0)] - want * rot[0][0]).abs() < 1e-12);
        assert!((p3[(5, 0)] - want * rot[1][0]).abs() < 1e-12);
        // Blocks beyond the exponent vanish.
        assert_eq!(real_block_power(r, t, 3, 1)[(4, 0)], 0.0);
    }
}
