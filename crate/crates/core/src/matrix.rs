//! Square real or complex matrices with a field tag, plus the small dense
//! helpers shared by the other modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::convex_poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("row {0} has a different length")]
    RaggedRow(usize),
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("entry ({row}, {col}) has a nonzero imaginary part in a real matrix")]
    NonRealEntry { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A scalar as it appears in JSON: a bare number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub(crate) enum ScalarRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ScalarRepr> for Complex64 {
    fn from(s: ScalarRepr) -> Self {
        match s {
            ScalarRepr::Real(x) => Complex64::new(x, 0.0),
            ScalarRepr::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// Serde adapter for a vector of scalars accepting numbers or `[re, im]`
/// pairs on input and always writing pairs.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw: Vec<ScalarRepr> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(Complex64::from).collect())
    }
}

/// Serde adapter for a single scalar (number or pair in, pair out).
pub mod complex_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Ok(ScalarRepr::deserialize(d)?.into())
    }
}

/// An `n × n` matrix over ℝ or ℂ. Real matrices are stored with zero
/// imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSpec {
    field: Field,
    entries: DMatrix<Complex64>,
}

impl MatrixSpec {
    pub fn new(field: Field, entries: DMatrix<Complex64>) -> Result<Self, MatrixError> {
        let (rows, cols) = entries.shape();
        if rows == 0 {
            return Err(MatrixError::Empty);
        }
        if rows != cols {
            return Err(MatrixError::NonSquare { rows, cols });
        }
        for row in 0..rows {
            for col in 0..cols {
                let z = entries[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(MatrixError::NonFinite { row, col });
                }
                if field == Field::Real && z.im != 0.0 {
                    return Err(MatrixError::NonRealEntry { row, col });
                }
            }
        }
        Ok(Self { field, entries })
    }

    pub fn real(m: DMatrix<f64>) -> Result<Self, MatrixError> {
        Self::new(Field::Real, m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn complex(m: DMatrix<Complex64>) -> Result<Self, MatrixError> {
        Self::new(Field::Complex, m)
    }

    /// Row-major real matrix; panics on ragged or non-square input.
    pub fn real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::real(DMatrix::from_row_slice(n, flat.len() / n.max(1), &flat)).expect("valid real matrix")
    }

    pub fn diagonal(field: Field, values: &[Complex64]) -> Result<Self, MatrixError> {
        Self::new(field, DMatrix::from_diagonal(&DVector::from_column_slice(values)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Real part of the entries; exact for real-field matrices.
    pub fn real_part(&self) -> DMatrix<f64> {
        self.entries.map(|z| z.re)
    }

    /// Same entries reinterpreted over ℂ.
    pub fn as_complex(&self) -> Self {
        Self { field: Field::Complex, entries: self.entries.clone() }
    }

    /// Largest singular value.
    pub fn norm2(&self) -> f64 {
        spectral_norm(&self.entries)
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>, MatrixError> {
        if x.len() != self.dim() {
            return Err(MatrixError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(&self.entries * x)
    }

    /// `p(T)` by Horner's rule on the dense matrix.
    pub fn apply_polynomial(&self, p: &Polynomial) -> Self {
        Self { field: self.field, entries: poly_on_matrix(&p.coeffs, &self.entries) }
    }

    /// `P T P^{-1}` with `P` of the same field; `None` if `P` is singular.
    pub fn similar(&self, p: &DMatrix<Complex64>) -> Option<Self> {
        let inv = p.clone().try_inverse()?;
        let mut entries = p * &self.entries * inv;
        if self.field == Field::Real {
            entries.iter_mut().for_each(|z| z.im = 0.0);
        }
        Some(Self { field: self.field, entries })
    }

    /// Block-diagonal direct sum. The result is real only if both parts are.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.entries);
        m.view_mut((a, a), (b, b)).copy_from(&other.entries);
        let field = if self.field == Field::Real && other.field == Field::Real {
            Field::Real
        } else {
            Field::Complex
        };
        Self { field, entries: m }
    }
}

pub(crate) fn poly_on_matrix(coeffs: &[f64], m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for &c in coeffs.iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

pub(crate) fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// `⟨x, f⟩ = Σ x_k conj(f_k)`.
pub fn pairing(x: &DVector<Complex64>, f: &DVector<Complex64>) -> Complex64 {
    x.iter().zip(f.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn vector_norm(x: &DVector<Complex64>) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    field: Field,
    rows: Vec<Vec<serde_json::Value>>,
}

impl Serialize for MatrixSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = self.entries[(i, j)];
                        match self.field {
                            Field::Real => serde_json::json!(z.re),
                            Field::Complex => serde_json::json!([z.re, z.im]),
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixRepr { field: self.field, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Raw {
            field: Field,
            rows: Vec<Vec<ScalarRepr>>,
        }
        let raw = Raw::deserialize(d)?;
        let n = raw.rows.len();
        if n == 0 {
            return Err(D::Error::custom(MatrixError::Empty));
        }
        let cols = raw.rows[0].len();
        if let Some(i) = raw.rows.iter().position(|r| r.len() != cols) {
            return Err(D::Error::custom(MatrixError::RaggedRow(i)));
        }
        let entries = DMatrix::from_fn(n, cols, |i, j| Complex64::from(raw.rows[i][j]));
        MatrixSpec::new(raw.field, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_real_and_complex() {
        let m: MatrixSpec = serde_json::from_str(r#"{"field":"real","rows":[[-2,0],[0,-3]]}"#).unwrap();
        assert_eq!(m.field(), Field::Real);
        assert_eq!(m.entries()[(1, 1)], Complex64::new(-3.0, 0.0));
        let back: MatrixSpec = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);

        let c: MatrixSpec =
            serde_json::from_str(r#"{"field":"complex","rows":[[[0,2],0],[0,[1.5,-1]]]}"#).unwrap();
        assert_eq!(c.entries()[(0, 0)], Complex64::new(0.0, 2.0));
        assert_eq!(c.entries()[(1, 1)], Complex64::new(1.5, -1.0));
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("[0.0,2.0]"));
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(serde_json::from_str::<MatrixSpec>(r#"{"field":"real","rows":[[1,2]]}"#).is_err());
        assert!(serde_json::from_str::<MatrixSpec>(r#"{"field":"real","rows":[[1,2],[3]]}"#).is_err());
        assert!(serde_json::from_str::<MatrixSpec>(r#"{"field":"real","rows":[[[1,1]]]}"#).is_err());
        assert!(serde_json::from_str::<MatrixSpec>(r#"{"field":"real","rows":[]}"#).is_err());
    }

    #[test]
    fn polynomial_on_matrix_matches_powers() {
        let m = MatrixSpec::real_rows(&[&[1.0, 2.0], &[0.0, 3.0]]);
        let p = Polynomial::new(vec![1.0, 0.0, 2.0]);
        let got = m.apply_polynomial(&p);
        let e = m.entries();
        let want = DMatrix::identity(2, 2) + e * e * Complex64::new(2.0, 0.0);
        assert!((got.entries() - want).norm() < 1e-12);
    }

    #[test]
    fn pairing_is_conjugate_linear_in_f() {
        let x = DVector::from_vec(vec![Complex64::new(1.0, 0.0)]);
        let f = DVector::from_vec(vec![Complex64::new(0.0, 1.0)]);
        assert_eq!(pairing(&x, &f), Complex64::new(0.0, -1.0));
    }
}
