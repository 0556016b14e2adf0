//! Two- and three-fold tensors over an algebra's basis.

use crate::algebra::ProductTable;
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{LinearMap, Matrix};
use crate::report::IdentityCheck;

/// `r = Σ t[i][j] e_i ⊗ e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor2 {
    t: Matrix,
}

impl Tensor2 {
    pub fn new(t: Matrix) -> Result<Self> {
        if !t.is_square() {
            return Err(LabError::Shape(format!("tensor table is {}x{}", t.rows(), t.cols())));
        }
        Ok(Tensor2 { t })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Tensor2 { t: Matrix::zeros(field, n, n) }
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Tensor2::new(Matrix::from_i64_rows(field, rows)).expect("square table")
    }

    /// Sum of `v · e_i ⊗ e_j` over the given entries.
    pub fn from_entries(field: FieldSpec, n: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut t = Matrix::zeros(field, n, n);
        for &(i, j, v) in entries {
            let cur = t.get(i, j).clone();
            t.set(i, j, &cur + &field.from_i64(v));
        }
        Tensor2 { t }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.t.field()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.t.get(i, j)
    }

    pub fn table(&self) -> &Matrix {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.t.is_symmetric()
    }

    pub fn is_skew(&self) -> bool {
        self.t.is_skew()
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        Tensor2 { t: self.t.add(&other.t) }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        Tensor2 { t: self.t.sub(&other.t) }
    }

    pub fn scale(&self, s: &Scalar) -> Tensor2 {
        Tensor2 { t: self.t.scale(s) }
    }

    fn nonzero(&self) -> Vec<(usize, usize, &Scalar)> {
        let n = self.dim();
        (0..n * n)
            .map(|k| (k / n, k % n, self.t.get(k / n, k % n)))
            .filter(|(_, _, v)| !v.is_zero())
            .collect()
    }
}

/// `r^t[i][j] = r[j][i]`.
pub fn transpose_t(r: &Tensor2) -> Tensor2 {
    Tensor2 { t: r.t.transpose() }
}

/// The map `F_r: A* -> A` with `F_r(e_i*) = Σ_j t[i][j] e_j`.
pub fn tensor_as_map(r: &Tensor2) -> LinearMap {
    LinearMap::new(r.t.transpose())
}

/// Inverse of [`tensor_as_map`].
pub fn map_as_tensor(f: &LinearMap) -> Result<Tensor2> {
    Tensor2::new(f.matrix().transpose())
}

/// `(α, β) = ((r - r^t)/2, (r + r^t)/2)`.
pub fn sym_skew_split(r: &Tensor2) -> Result<(Tensor2, Tensor2)> {
    let f = r.field();
    f.require_half("symmetric/skew split")?;
    let half = f.fraction(1, 2)?;
    let rt = transpose_t(r);
    Ok((r.sub(&rt).scale(&half), r.add(&rt).scale(&half)))
}

/// `Σ u[i][j][k] e_i ⊗ e_j ⊗ e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    field: FieldSpec,
    n: usize,
    u: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Tensor3 {
            field,
            n,
            u: vec![field.zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.u[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let at = self.idx(i, j, k);
        self.u[at] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let at = self.idx(i, j, k);
        self.u[at] = &self.u[at] + v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.u
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor3 {
        Tensor3 {
            field: self.field,
            n: self.n,
            u: self.u.iter().map(|v| v * s).collect(),
        }
    }

    fn zip(&self, other: &Tensor3, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Tensor3 {
        assert_eq!(self.n, other.n, "tensor dimension mismatch");
        Tensor3 {
            field: self.field,
            n: self.n,
            u: self.u.iter().zip(&other.u).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// One tuple per component; the witness is the first nonzero component.
    pub fn to_check(&self, id: &str) -> IdentityCheck {
        let mut check = IdentityCheck::new(id);
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    check.record(&[i, j, k], vec![self.get(i, j, k).clone()]);
                }
            }
        }
        check
    }
}

/// `u[i][j][k] -> u[k][j][i]`.
pub fn switch13(u: &Tensor3) -> Tensor3 {
    let n = u.n;
    let mut out = Tensor3::zero(u.field, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.set(k, j, i, u.get(i, j, k).clone());
            }
        }
    }
    out
}

/// The product `X_{ab} Y_{cd}` in `A⊗A⊗A`, slots numbered 0..3. The two slot pairs must share
/// exactly one slot; there the `X` factor multiplies the `Y` factor from the left. No unit is used.
pub fn placed_product(
    table: &ProductTable,
    x: &Tensor2,
    slots_x: (usize, usize),
    y: &Tensor2,
    slots_y: (usize, usize),
) -> Tensor3 {
    let n = table.dim();
    let sx = [slots_x.0, slots_x.1];
    let sy = [slots_y.0, slots_y.1];
    let shared = *sx.iter().find(|s| sy.contains(s)).expect("slot pairs share a slot");
    assert!(sx[0] != sx[1] && sy[0] != sy[1] && sx != sy, "invalid slot placement");
    let mut out = Tensor3::zero(table.field(), n);
    let xs = x.nonzero();
    let ys = y.nonzero();
    for &(xi, xj, xv) in &xs {
        for &(yi, yj, yv) in &ys {
            let coeff = xv * yv;
            let mut idx = [0usize; 3];
            let (mut left, mut right) = (0, 0);
            for (slot, comp) in [(sx[0], xi), (sx[1], xj)] {
                if slot == shared {
                    left = comp;
                } else {
                    idx[slot] = comp;
                }
            }
            for (slot, comp) in [(sy[0], yi), (sy[1], yj)] {
                if slot == shared {
                    right = comp;
                } else {
                    idx[slot] = comp;
                }
            }
            for m in 0..n {
                let c = table.get(left, right, m);
                if c.is_zero() {
                    continue;
                }
                idx[shared] = m;
                out.add_to(idx[0], idx[1], idx[2], &(&coeff * c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn map_convention() {
        let r = Tensor2::from_entries(q(), 2, &[(0, 1, 1)]);
        let f = tensor_as_map(&r);
        assert_eq!(f.image(0), vec![q().zero(), q().one()]);
        assert_eq!(f.image(1), vec![q().zero(), q().zero()]);
        assert_eq!(map_as_tensor(&f).unwrap(), r);
    }

    #[test]
    fn split_examples() {
        let r = Tensor2::from_entries(q(), 2, &[(0, 1, 1)]);
        let (a, b) = sym_skew_split(&r).unwrap();
        let h = q().fraction(1, 2).unwrap();
        assert_eq!(a.get(0, 1), &h);
        assert_eq!(a.get(1, 0), &-&h);
        assert_eq!(b.get(1, 0), &h);
        assert!(sym_skew_split(&Tensor2::zero(FieldSpec::Prime(2), 2)).is_err());
    }

    #[test]
    fn switch13_fixes_palindromes() {
        let mut u = Tensor3::zero(q(), 2);
        u.set(0, 1, 0, q().one());
        assert_eq!(switch13(&u), u);
        u.set(0, 0, 1, q().from_i64(3));
        assert_eq!(switch13(&switch13(&u)), u);
    }

    #[test]
    fn placed_product_r12_r13_on_nil2() {
        // r = e1⊗e1: r12 r13 = e1e1⊗e1⊗e1 = e2⊗e1⊗e1
        let a = fixtures::nil2(q());
        let r = Tensor2::from_entries(q(), 2, &[(0, 0, 1)]);
        let u = placed_product(a.table(), &r, (0, 1), &r, (0, 2));
        assert_eq!(u.get(1, 0, 0), &q().one());
        assert_eq!(u.entries().iter().filter(|v| !v.is_zero()).count(), 1);
    }
}
