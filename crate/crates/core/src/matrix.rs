//! Dense exact matrices and linear maps.

use std::fmt;

use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};

/// Row-major dense matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LabError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(LabError::FieldMismatch(format!(
                "entry over {} in a matrix over {field}",
                bad.field()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from integer rows; convenient for fixtures and tests.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).inverse().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.axpy_row(r, col, &f);
                    inv.axpy_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let p = a.get(rank, col).inverse().expect("nonzero pivot");
            a.scale_row(rank, &p);
            for r in 0..self.rows {
                if r != rank && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.axpy_row(r, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = &self.data[idx] * s;
        }
    }

    /// row[target] -= f * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(source, j) * f;
            let idx = target * self.cols + j;
            self.data[idx] = &self.data[idx] - &v;
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A linear map between based spaces. Column `j` of the matrix is the image
/// of the `j`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    /// Checks the declared dimensions against the matrix.
    pub fn with_dims(source: usize, target: usize, matrix: Matrix) -> Result<Self> {
        if matrix.cols() != source || matrix.rows() != target {
            return Err(LabError::Shape(format!(
                "map {source}->{target} given a {}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearMap { matrix })
    }

    pub fn zero(field: FieldSpec, source: usize, target: usize) -> Self {
        LinearMap::new(Matrix::zeros(field, target, source))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap::new(Matrix::identity(field, n))
    }

    /// Map given by the images of the source basis vectors.
    pub fn from_images(field: FieldSpec, target: usize, images: &[Vec<Scalar>]) -> Self {
        LinearMap::new(Matrix::from_fn(field, target, images.len(), |i, j| {
            images[j][i].clone()
        }))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    pub fn image(&self, j: usize) -> Vec<Scalar> {
        self.matrix.col(j)
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&inner.matrix))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap::new(self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.matrix.inverse().map(LinearMap::new)
    }
}

pub fn basis_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip_over_q() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64_rows(q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
        assert_eq!(inv, Matrix::from_i64_rows(q, &[&[4, -1], &[-7, 2]]));
    }

    #[test]
    fn singular_has_no_inverse() {
        let f3 = FieldSpec::Prime(3);
        let m = Matrix::from_i64_rows(f3, &[&[1, 2], &[2, 1]]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn map_columns_are_images() {
        let q = FieldSpec::Rationals;
        let f = LinearMap::from_images(q, 2, &[vec![q.from_i64(1), q.from_i64(2)], vec![q.zero(), q.from_i64(3)]]);
        assert_eq!(f.apply(&basis_vector(q, 2, 0)), vec![q.from_i64(1), q.from_i64(2)]);
        assert_eq!(f.matrix().get(1, 1), &q.from_i64(3));
    }
}
