//! Finite-dimensional algebras given by structure constants.

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{basis_vector, Matrix};
use crate::report::{IdentityCheck, Report};

/// Where a product table came from. Purely informational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Given,
    StarAlpha,
    DiamondPlus,
    DiamondMinus,
    CirclePlus,
    CircleMinus,
    DualProduct,
    MatchedPairSum,
    SemidirectSum,
    Opposite,
}

/// A bilinear product `e_i e_j = sum_k c[i][j][k] e_k`. Associativity is not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductTable {
    field: FieldSpec,
    dim: usize,
    c: Vec<Scalar>,
    provenance: Provenance,
}

impl ProductTable {
    pub fn new(field: FieldSpec, dim: usize, c: Vec<Scalar>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(LabError::Shape(format!(
                "{} structure constants for dimension {dim}",
                c.len()
            )));
        }
        if let Some(bad) = c.iter().find(|s| s.field() != field) {
            return Err(LabError::FieldMismatch(format!(
                "constant over {} in a table over {field}",
                bad.field()
            )));
        }
        Ok(ProductTable {
            field,
            dim,
            c,
            provenance: Provenance::Given,
        })
    }

    /// Builds from a nested `[i][j][k]` cube.
    pub fn from_cube(field: FieldSpec, cube: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let n = cube.len();
        let mut c = Vec::with_capacity(n * n * n);
        for (i, plane) in cube.iter().enumerate() {
            if plane.len() != n {
                return Err(LabError::Shape(format!("c[{i}] has {} rows, expected {n}", plane.len())));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(LabError::Shape(format!(
                        "c[{i}][{j}] has {} entries, expected {n}",
                        row.len()
                    )));
                }
                c.extend(row.iter().cloned());
            }
        }
        ProductTable::new(field, n, c)
    }

    pub fn from_fn(field: FieldSpec, dim: usize, f: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        ProductTable {
            field,
            dim,
            c,
            provenance: Provenance::Given,
        }
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        ProductTable {
            field,
            dim,
            c: vec![field.zero(); dim * dim * dim],
            provenance: Provenance::Given,
        }
    }

    /// Sparse constructor from `(i, j, k, coefficient)` entries.
    pub fn from_entries(field: FieldSpec, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let mut t = ProductTable::zero(field, dim);
        for &(i, j, k, v) in entries {
            let idx = t.index(i, j, k);
            t.c[idx] = &t.c[idx] + &field.from_i64(v);
        }
        t
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.index(i, j, k)]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn cube(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.get(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Product of basis elements as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = self.index(i, j, 0);
        self.c[start..start + self.dim].to_vec()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> e_i y` (column-vector convention).
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, j| self.get(i, j, k).clone())
    }

    /// Matrix of `y -> y e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, j| self.get(j, i, k).clone())
    }

    pub fn scale(&self, s: &Scalar) -> ProductTable {
        ProductTable {
            field: self.field,
            dim: self.dim,
            c: self.c.iter().map(|x| x * s).collect(),
            provenance: self.provenance,
        }
    }

    pub fn is_associative(&self) -> bool {
        validate_algebra(self).pass
    }
}

/// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
///
/// The residual is reported as a vector over the output index `l`; the witness carries `(i, j, k)`.
pub fn validate_algebra(table: &ProductTable) -> Report {
    let n = table.dim();
    let f = table.field();
    let mut check = IdentityCheck::new("assoc");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut res = vec![f.zero(); n];
                for m in 0..n {
                    let a = table.get(i, j, m);
                    let b = table.get(j, k, m);
                    for (l, r) in res.iter_mut().enumerate() {
                        if !a.is_zero() {
                            *r = &*r + &(a * table.get(m, k, l));
                        }
                        if !b.is_zero() {
                            *r = &*r - &(b * table.get(i, m, l));
                        }
                    }
                }
                check.record(&[i, j, k], res);
            }
        }
    }
    Report::from_checks(vec![check])
}

/// An associative (not necessarily unital) algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    table: ProductTable,
    labels: Option<Vec<String>>,
}

impl Algebra {
    /// Validates associativity.
    pub fn from_table(table: ProductTable) -> Result<Self> {
        if table.dim() == 0 {
            return Err(LabError::Shape("algebra dimension must be at least 1".into()));
        }
        let report = validate_algebra(&table);
        if !report.pass {
            return Err(LabError::NotAssociative(Box::new(report)));
        }
        Ok(Algebra { table, labels: None })
    }

    pub fn new(field: FieldSpec, dim: usize, c: Vec<Scalar>) -> Result<Self> {
        Algebra::from_table(ProductTable::new(field, dim, c)?)
    }

    pub fn from_entries(field: FieldSpec, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        Algebra::from_table(ProductTable::from_entries(field, dim, entries))
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Algebra {
            table: ProductTable::zero(field, dim),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(LabError::Shape(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn explicit_labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Basis labels; `e1, e2, ...` when none were given.
    pub fn labels(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => l.clone(),
            None => (1..=self.dim()).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.table.get(i, j, k)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.table.mul(x, y)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        basis_vector(self.field(), self.dim(), i)
    }

    pub fn left_mult(&self, i: usize) -> Matrix {
        self.table.left_mult(i)
    }

    pub fn right_mult(&self, i: usize) -> Matrix {
        self.table.right_mult(i)
    }

    /// `x^op y = y x`.
    pub fn opposite(&self) -> Algebra {
        let t = &self.table;
        Algebra {
            table: ProductTable::from_fn(t.field(), t.dim(), |i, j, k| t.get(j, i, k).clone())
                .with_provenance(Provenance::Opposite),
            labels: self.labels.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table.basis_product(i, j) == self.table.basis_product(j, i)))
    }

    /// Reinterprets the constants over another field (integers only; used for fixtures).
    pub fn reduce_to(&self, field: FieldSpec) -> Result<Algebra> {
        let c = self
            .table
            .constants()
            .iter()
            .map(|s| reinterpret(s, field))
            .collect::<Result<Vec<_>>>()?;
        let mut a = Algebra::new(field, self.dim(), c)?;
        a.labels = self.labels.clone();
        Ok(a)
    }
}

/// Moves a scalar to another field by reading it as a fraction.
pub fn reinterpret(s: &Scalar, field: FieldSpec) -> Result<Scalar> {
    field.parse_scalar(&s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn zero_and_nil_are_associative() {
        assert!(validate_algebra(&ProductTable::zero(q(), 2)).pass);
        let nil2 = ProductTable::from_entries(q(), 2, &[(0, 0, 1, 1)]);
        assert!(validate_algebra(&nil2).pass);
    }

    #[test]
    fn left_identity_table_is_associative() {
        // e1 e_j = e_j and e2 e_j = e_j: both basis elements are left identities.
        let t = ProductTable::from_entries(q(), 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 0, 1), (1, 1, 1, 1)]);
        assert!(validate_algebra(&t).pass);
    }

    #[test]
    fn perturbed_table_fails_with_witness() {
        // Same as above but e2 e2 = e1. First failure: (e2 e1) e2 = e2 while e2 (e1 e2) = e1.
        let t = ProductTable::from_entries(q(), 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 0, 1), (1, 1, 0, 1)]);
        let r = validate_algebra(&t);
        assert!(!r.pass);
        let w = r.checks[0].witness.as_ref().unwrap();
        assert_eq!(w.indices, vec![1, 0, 1]);
        assert!(Algebra::from_table(t).is_err());
    }

    #[test]
    fn multiplication_matrices_follow_column_convention() {
        let nil2 = Algebra::from_entries(q(), 2, &[(0, 0, 1, 1)]).unwrap();
        let l = nil2.left_mult(0);
        assert_eq!(l.apply(&nil2.basis(0)), nil2.basis(1));
        assert!(is_zero(&l.apply(&nil2.basis(1))));
        assert_eq!(nil2.right_mult(0), l);
    }

    fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }
}
