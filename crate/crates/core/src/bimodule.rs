//! Bimodules and bimodule algebras over an algebra.
//!
//! Actions are stored per basis element of the base algebra as matrices acting on column
//! vectors: `l(x) v = Lmat(x) v` and `v r(x) = Rmat(x) v`. With this convention the right
//! module axiom reads `Rmat(xy) = Rmat(y) Rmat(x)`.

use crate::algebra::{validate_algebra, Algebra, ProductTable};
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{basis_vector, Matrix};
use crate::report::{IdentityCheck, Report};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimodule {
    field: FieldSpec,
    base_dim: usize,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(field: FieldSpec, base_dim: usize, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        if left.len() != base_dim || right.len() != base_dim {
            return Err(LabError::DimMismatch(format!(
                "{} left and {} right action matrices for a base of dimension {base_dim}",
                left.len(),
                right.len()
            )));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(LabError::Shape(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(LabError::FieldMismatch(format!("action over {} in a bimodule over {field}", m.field())));
            }
        }
        Ok(Bimodule {
            field,
            base_dim,
            dim,
            left,
            right,
        })
    }

    pub fn zero_action(field: FieldSpec, base_dim: usize, dim: usize) -> Self {
        Bimodule {
            field,
            base_dim,
            dim,
            left: vec![Matrix::zeros(field, dim, dim); base_dim],
            right: vec![Matrix::zeros(field, dim, dim); base_dim],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_matrices(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[Matrix] {
        &self.right
    }

    /// Matrix of `l(x)` for an arbitrary `x` in the base algebra.
    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left, x)
    }

    /// Matrix of `v -> v r(x)`.
    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.right, x)
    }

    /// `l(x) v`
    pub fn act_left(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        apply_combination(self.field, &self.left, x, v)
    }

    /// `v r(x)`
    pub fn act_right(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        apply_combination(self.field, &self.right, x, v)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        basis_vector(self.field, self.dim, i)
    }

    pub fn is_zero_action(&self) -> bool {
        self.left.iter().chain(&self.right).all(Matrix::is_zero)
    }
}

fn combine(field: FieldSpec, dim: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, xi) in mats.iter().zip(x) {
        if !xi.is_zero() {
            out = out.add(&m.scale(xi));
        }
    }
    out
}

fn apply_combination(field: FieldSpec, mats: &[Matrix], x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); v.len()];
    for (m, xi) in mats.iter().zip(x) {
        if xi.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(m.apply(v)) {
            if !y.is_zero() {
                *o = &*o + &(xi * &y);
            }
        }
    }
    out
}

/// `(A, L, R)`.
pub fn regular_bimodule(a: &Algebra) -> Bimodule {
    let n = a.dim();
    Bimodule {
        field: a.field(),
        base_dim: n,
        dim: n,
        left: (0..n).map(|i| a.left_mult(i)).collect(),
        right: (0..n).map(|i| a.right_mult(i)).collect(),
    }
}

/// `(V*, r*, l*)`: the new left action is the transpose of the old right action and vice versa.
pub fn dual_bimodule(v: &Bimodule) -> Bimodule {
    Bimodule {
        field: v.field,
        base_dim: v.base_dim,
        dim: v.dim,
        left: v.right.iter().map(Matrix::transpose).collect(),
        right: v.left.iter().map(Matrix::transpose).collect(),
    }
}

fn check_dims(a: &Algebra, v: &Bimodule) -> Result<()> {
    if a.dim() != v.base_dim {
        return Err(LabError::DimMismatch(format!(
            "bimodule over a base of dimension {}, algebra has dimension {}",
            v.base_dim,
            a.dim()
        )));
    }
    if a.field() != v.field {
        return Err(LabError::FieldMismatch(format!("algebra over {}, bimodule over {}", a.field(), v.field)));
    }
    Ok(())
}

fn flat(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Checks the left module, right module and compatibility axioms on basis pairs.
pub fn validate_bimodule(a: &Algebra, v: &Bimodule) -> Result<Report> {
    check_dims(a, v)?;
    let n = a.dim();
    let mut left = IdentityCheck::new("de:bim.left");
    let mut right = IdentityCheck::new("de:bim.right");
    let mut compat = IdentityCheck::new("de:bim.compat");
    for i in 0..n {
        for j in 0..n {
            let xy = a.table().basis_product(i, j);
            left.record(&[i, j], flat(&v.left_of(&xy).sub(&v.left[i].mul(&v.left[j]))));
            right.record(&[i, j], flat(&v.right_of(&xy).sub(&v.right[j].mul(&v.right[i]))));
            compat.record(&[i, j], flat(&v.right[j].mul(&v.left[i]).sub(&v.left[i].mul(&v.right[j]))));
        }
    }
    Ok(Report::from_checks(vec![left, right, compat]))
}

/// A bimodule carrying its own compatible associative product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BimoduleAlgebra {
    module: Bimodule,
    product: ProductTable,
}

impl BimoduleAlgebra {
    pub fn new(module: Bimodule, product: ProductTable) -> Result<Self> {
        if product.dim() != module.dim() {
            return Err(LabError::DimMismatch(format!(
                "product of dimension {} on a module of dimension {}",
                product.dim(),
                module.dim()
            )));
        }
        if product.field() != module.field() {
            return Err(LabError::FieldMismatch("product and module fields differ".into()));
        }
        Ok(BimoduleAlgebra { module, product })
    }

    /// A bimodule viewed as a bimodule algebra with the zero product.
    pub fn zero_product(module: Bimodule) -> Self {
        let product = ProductTable::zero(module.field(), module.dim());
        BimoduleAlgebra { module, product }
    }

    /// `(A, ., L, R)`.
    pub fn regular(a: &Algebra) -> Self {
        BimoduleAlgebra {
            module: regular_bimodule(a),
            product: a.table().clone(),
        }
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn product(&self) -> &ProductTable {
        &self.product
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.module.field()
    }

    pub fn mul(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        self.product.mul(v, w)
    }

    /// Same module, different product.
    pub fn with_product(&self, product: ProductTable) -> Result<Self> {
        BimoduleAlgebra::new(self.module.clone(), product)
    }
}

/// Associativity of the product, the bimodule axioms and the compatibility identities.
pub fn validate_bimodule_algebra(a: &Algebra, r: &BimoduleAlgebra) -> Result<Report> {
    let v = &r.module;
    check_dims(a, v)?;
    let n = a.dim();
    let m = v.dim();
    let mut report = validate_algebra(&r.product).prefixed("de:bimal.");
    let mut t1a = IdentityCheck::new("eq:twoalg1.a");
    let mut t1b = IdentityCheck::new("eq:twoalg1.b");
    let mut t2a = IdentityCheck::new("eq:twoalg2.a");
    let mut t2b = IdentityCheck::new("eq:twoalg2.b");
    let mut t3a = IdentityCheck::new("eq:twoalg3.a");
    let mut t3b = IdentityCheck::new("eq:twoalg3.b");
    for i in 0..n {
        for j in 0..n {
            let xy = a.table().basis_product(i, j);
            for p in 0..m {
                let u = v.basis(p);
                let lhs = v.act_left(&xy, &u);
                let rhs = v.left[i].apply(&v.left[j].apply(&u));
                t1a.record(&[i, j, p], sub(&lhs, &rhs));
                let lhs = v.act_right(&u, &xy);
                let rhs = v.right[j].apply(&v.right[i].apply(&u));
                t2a.record(&[i, j, p], sub(&lhs, &rhs));
                let lhs = v.right[j].apply(&v.left[i].apply(&u));
                let rhs = v.left[i].apply(&v.right[j].apply(&u));
                t3a.record(&[i, j, p], sub(&lhs, &rhs));
            }
        }
    }
    for i in 0..n {
        for p in 0..m {
            for q in 0..m {
                let u = v.basis(p);
                let w = v.basis(q);
                let uw = r.product.basis_product(p, q);
                let lhs = v.left[i].apply(&uw);
                let rhs = r.mul(&v.left[i].apply(&u), &w);
                t1b.record(&[i, p, q], sub(&lhs, &rhs));
                let lhs = v.right[i].apply(&uw);
                let rhs = r.mul(&u, &v.right[i].apply(&w));
                t2b.record(&[i, p, q], sub(&lhs, &rhs));
                let lhs = r.mul(&v.right[i].apply(&u), &w);
                let rhs = r.mul(&u, &v.left[i].apply(&w));
                t3b.record(&[i, p, q], sub(&lhs, &rhs));
            }
        }
    }
    for c in [t1a, t1b, t2a, t2b, t3a, t3b] {
        report.push(c);
    }
    Ok(report)
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn regular_and_dual_are_bimodules() {
        for a in fixtures::all(FieldSpec::Rationals) {
            let reg = regular_bimodule(&a.algebra);
            assert!(validate_bimodule(&a.algebra, &reg).unwrap().pass, "{}", a.name);
            let dual = dual_bimodule(&reg);
            assert!(validate_bimodule(&a.algebra, &dual).unwrap().pass, "{}", a.name);
            assert_eq!(dual_bimodule(&dual), reg);
        }
    }

    #[test]
    fn identity_left_action_on_nil2_fails() {
        let q = FieldSpec::Rationals;
        let a = fixtures::nil2(q);
        let v = Bimodule::new(
            q,
            2,
            2,
            vec![Matrix::identity(q, 2), Matrix::zeros(q, 2, 2)],
            vec![Matrix::zeros(q, 2, 2); 2],
        )
        .unwrap();
        let r = validate_bimodule(&a, &v).unwrap();
        assert!(!r.pass);
        let c = r.check("de:bim.left").unwrap();
        assert_eq!(c.witness.as_ref().unwrap().indices, vec![0, 0]);
    }

    #[test]
    fn regular_bimodule_algebra_passes() {
        for a in fixtures::all(FieldSpec::Rationals) {
            let r = BimoduleAlgebra::regular(&a.algebra);
            assert!(validate_bimodule_algebra(&a.algebra, &r).unwrap().pass, "{}", a.name);
            let z = BimoduleAlgebra::zero_product(regular_bimodule(&a.algebra));
            assert!(validate_bimodule_algebra(&a.algebra, &z).unwrap().pass, "{}", a.name);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let q = FieldSpec::Rationals;
        let v = Bimodule::zero_action(q, 3, 1);
        assert!(matches!(
            validate_bimodule(&fixtures::nil2(q), &v),
            Err(LabError::DimMismatch(_))
        ));
    }
}
