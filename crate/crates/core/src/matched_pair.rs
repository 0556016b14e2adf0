//! Matched pairs of algebras and the sum constructions on `A ⊕ B`.
//!
//! Basis order on every direct sum is "A first, then B".

use crate::algebra::{Algebra, ProductTable, Provenance};
use crate::bimodule::{validate_bimodule, validate_bimodule_algebra, Bimodule, BimoduleAlgebra};
use crate::error::{LabError, Result};
use crate::field::Scalar;
use crate::matrix::{basis_vector, Matrix};
use crate::report::{IdentityCheck, Report};

/// `(A, B, l_A, r_A, l_B, r_B)`: `B` is an `A`-bimodule via `(l_A, r_A)` and `A` is a
/// `B`-bimodule via `(l_B, r_B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub a: Algebra,
    pub b: Algebra,
    /// `A` acting on `B`.
    pub on_b: Bimodule,
    /// `B` acting on `A`.
    pub on_a: Bimodule,
}

impl MatchedPair {
    pub fn new(a: Algebra, b: Algebra, on_b: Bimodule, on_a: Bimodule) -> Result<Self> {
        if on_b.base_dim() != a.dim() || on_b.dim() != b.dim() {
            return Err(LabError::DimMismatch("A-action on B has the wrong shape".into()));
        }
        if on_a.base_dim() != b.dim() || on_a.dim() != a.dim() {
            return Err(LabError::DimMismatch("B-action on A has the wrong shape".into()));
        }
        if a.field() != b.field() || on_a.field() != a.field() || on_b.field() != a.field() {
            return Err(LabError::FieldMismatch("matched pair components over different fields".into()));
        }
        Ok(MatchedPair { a, b, on_b, on_a })
    }

    /// `(A, R, l, r, 0, 0)` for a bimodule algebra `R`.
    pub fn from_bimodule_algebra(a: &Algebra, r: &BimoduleAlgebra) -> Result<Self> {
        let b = Algebra::from_table(r.product().clone())?;
        let on_a = Bimodule::zero_action(a.field(), r.dim(), a.dim());
        MatchedPair::new(a.clone(), b, r.module().clone(), on_a)
    }

    fn la(&self, x: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.on_b.act_left(x, b)
    }
    fn ra(&self, b: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.on_b.act_right(b, x)
    }
    fn lb(&self, b: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.on_a.act_left(b, x)
    }
    fn rb(&self, x: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.on_a.act_right(x, b)
    }
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Checks both bimodule structures and the six compatibility identities.
///
/// The last two identities are displayed in the literature as a chain `lhs = rhs = 0`. By default
/// only `lhs = rhs` is checked, which is what associativity of `A ⊕ B` requires. With `strict`
/// the additional requirement `rhs = 0` is checked under the ids `eq:2.8.zero` / `eq:2.9.zero`.
pub fn validate_matched_pair(mp: &MatchedPair, strict: bool) -> Result<Report> {
    let f = mp.a.field();
    let n = mp.a.dim();
    let m = mp.b.dim();
    let mut report = validate_bimodule(&mp.a, &mp.on_b)?.prefixed("de:mp.A-on-B.");
    report.extend(validate_bimodule(&mp.b, &mp.on_a)?.prefixed("de:mp.B-on-A."));
    let ea = |i| basis_vector(f, n, i);
    let eb = |i| basis_vector(f, m, i);
    let (a, b) = (&mp.a, &mp.b);

    let mut c4 = IdentityCheck::new("eq:2.4");
    let mut c5 = IdentityCheck::new("eq:2.5");
    let mut c8 = IdentityCheck::new("eq:2.8");
    let mut c8z = IdentityCheck::new("eq:2.8.zero");
    // quantified over (x, a, b) with x in A, a, b in B
    for i in 0..n {
        for p in 0..m {
            for q in 0..m {
                let (x, u, w) = (ea(i), eb(p), eb(q));
                let lhs = mp.la(&x, &b.mul(&u, &w));
                let rhs = add(&mp.la(&mp.rb(&x, &u), &w), &b.mul(&mp.la(&x, &u), &w));
                c4.record(&[i, p, q], sub(&lhs, &rhs));
            }
        }
    }
    // (a, b, x)
    for p in 0..m {
        for q in 0..m {
            for i in 0..n {
                let (u, w, x) = (eb(p), eb(q), ea(i));
                let lhs = mp.ra(&b.mul(&u, &w), &x);
                let rhs = add(&mp.ra(&u, &mp.lb(&w, &x)), &b.mul(&u, &mp.ra(&w, &x)));
                c5.record(&[p, q, i], sub(&lhs, &rhs));
            }
        }
    }
    // (a, x, b)
    for p in 0..m {
        for i in 0..n {
            for q in 0..m {
                let (u, x, w) = (eb(p), ea(i), eb(q));
                let lhs = add(&mp.la(&mp.lb(&u, &x), &w), &b.mul(&mp.ra(&u, &x), &w));
                let rhs = add(&mp.ra(&u, &mp.rb(&x, &w)), &b.mul(&u, &mp.la(&x, &w)));
                c8.record(&[p, i, q], sub(&lhs, &rhs));
                c8z.record(&[p, i, q], rhs);
            }
        }
    }

    let mut c6 = IdentityCheck::new("eq:2.6");
    let mut c7 = IdentityCheck::new("eq:2.7");
    let mut c9 = IdentityCheck::new("eq:2.9");
    let mut c9z = IdentityCheck::new("eq:2.9.zero");
    // (a, x, y)
    for p in 0..m {
        for i in 0..n {
            for j in 0..n {
                let (u, x, y) = (eb(p), ea(i), ea(j));
                let lhs = mp.lb(&u, &a.mul(&x, &y));
                let rhs = add(&mp.lb(&mp.ra(&u, &x), &y), &a.mul(&mp.lb(&u, &x), &y));
                c6.record(&[p, i, j], sub(&lhs, &rhs));
            }
        }
    }
    // (x, y, a)
    for i in 0..n {
        for j in 0..n {
            for p in 0..m {
                let (x, y, u) = (ea(i), ea(j), eb(p));
                let lhs = mp.rb(&a.mul(&x, &y), &u);
                let rhs = add(&mp.rb(&x, &mp.la(&y, &u)), &a.mul(&x, &mp.rb(&y, &u)));
                c7.record(&[i, j, p], sub(&lhs, &rhs));
            }
        }
    }
    // (x, a, y)
    for i in 0..n {
        for p in 0..m {
            for j in 0..n {
                let (x, u, y) = (ea(i), eb(p), ea(j));
                let lhs = add(&mp.lb(&mp.la(&x, &u), &y), &a.mul(&mp.rb(&x, &u), &y));
                let rhs = add(&mp.rb(&x, &mp.ra(&u, &y)), &a.mul(&x, &mp.lb(&u, &y)));
                c9.record(&[i, p, j], sub(&lhs, &rhs));
                c9z.record(&[i, p, j], rhs);
            }
        }
    }
    for c in [c4, c5, c6, c7, c8, c9] {
        report.push(c);
    }
    if strict {
        report.push(c8z);
        report.push(c9z);
    }
    Ok(report)
}

/// The product on `A ⊕ B` without any validation; may be non-associative.
pub fn matched_pair_sum_table(mp: &MatchedPair) -> ProductTable {
    let f = mp.a.field();
    let n = mp.a.dim();
    let m = mp.b.dim();
    let d = n + m;
    let split = |k: usize| -> (Vec<Scalar>, Vec<Scalar>) {
        let v = basis_vector(f, d, k);
        (v[..n].to_vec(), v[n..].to_vec())
    };
    let mut c = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let (x, a) = split(i);
            let (y, b) = split(j);
            let a_part = add(&add(&mp.a.mul(&x, &y), &mp.lb(&a, &y)), &mp.rb(&x, &b));
            let b_part = add(&add(&mp.b.mul(&a, &b), &mp.la(&x, &b)), &mp.ra(&a, &y));
            c.extend(a_part);
            c.extend(b_part);
        }
    }
    ProductTable::new(f, d, c)
        .expect("shape is consistent")
        .with_provenance(Provenance::MatchedPairSum)
}

/// `A ⋈ B`; refuses an invalid matched pair.
pub fn matched_pair_sum(mp: &MatchedPair) -> Result<Algebra> {
    let report = validate_matched_pair(mp, false)?;
    if !report.pass {
        return Err(LabError::Invalid {
            what: "matched pair",
            report: Box::new(report),
        });
    }
    Algebra::from_table(matched_pair_sum_table(mp))
}

/// `A ⋉ R` with `(x1, v1)(x2, v2) = (x1 x2, l(x1) v2 + v1 r(x2) + v1 ∘ v2)`.
pub fn semidirect_sum(a: &Algebra, r: &BimoduleAlgebra) -> Result<Algebra> {
    let report = validate_bimodule_algebra(a, r)?;
    if !report.pass {
        return Err(LabError::Invalid {
            what: "bimodule algebra",
            report: Box::new(report),
        });
    }
    Ok(semidirect_sum_unchecked(a, r))
}

/// Semidirect sum for inputs already known to be valid.
pub(crate) fn semidirect_sum_unchecked(a: &Algebra, r: &BimoduleAlgebra) -> Algebra {
    let f = a.field();
    let n = a.dim();
    let m = r.dim();
    let v = r.module();
    let table = ProductTable::from_fn(f, n + m, |i, j, k| match (i < n, j < n, k < n) {
        (true, true, true) => a.c(i, j, k).clone(),
        // l(x_i) v_j
        (true, false, false) => v.left_matrices()[i].get(k - n, j - n).clone(),
        // v_i r(x_j)
        (false, true, false) => v.right_matrices()[j].get(k - n, i - n).clone(),
        (false, false, false) => r.product().get(i - n, j - n, k - n).clone(),
        _ => f.zero(),
    })
    .with_provenance(Provenance::SemidirectSum);
    let labels = a
        .labels()
        .into_iter()
        .chain((1..=m).map(|i| format!("v{i}")))
        .collect();
    Algebra::from_table(table)
        .expect("semidirect sum of a valid bimodule algebra is associative")
        .with_labels(labels)
        .expect("label count matches")
}

/// Splits `C = A ⊕ B` along two complementary sets of basis indices that span subalgebras.
pub fn split_algebra(c: &Algebra, idx_a: &[usize], idx_b: &[usize]) -> Result<MatchedPair> {
    let d = c.dim();
    let mut seen = vec![0u8; d];
    for &i in idx_a.iter().chain(idx_b) {
        if i >= d {
            return Err(LabError::NotDirectSum(format!("index {i} out of range for dimension {d}")));
        }
        seen[i] += 1;
    }
    if let Some(i) = seen.iter().position(|&s| s != 1) {
        return Err(LabError::NotDirectSum(format!(
            "basis index {i} appears {} times across the two parts",
            seen[i]
        )));
    }
    if idx_a.is_empty() || idx_b.is_empty() {
        return Err(LabError::NotDirectSum("both parts must be nonempty".into()));
    }
    let f = c.field();
    let (n, m) = (idx_a.len(), idx_b.len());
    let restrict = |idx: &[usize], other: &[usize], side: &str| -> Result<Algebra> {
        for &i in idx {
            for &j in idx {
                if let Some(&k) = other.iter().find(|&&k| !c.c(i, j, k).is_zero()) {
                    return Err(LabError::NotSubalgebra(format!(
                        "{side}: product of basis {i} and {j} has a component along basis {k}"
                    )));
                }
            }
        }
        let p = idx.len();
        Algebra::from_table(ProductTable::from_fn(f, p, |i, j, k| c.c(idx[i], idx[j], idx[k]).clone()))
    };
    let a = restrict(idx_a, idx_b, "first part")?;
    let b = restrict(idx_b, idx_a, "second part")?;
    // x * a = l_A(x) a + r_B(a) x and a * x = l_B(a) x + r_A(x) a
    let la = (0..n)
        .map(|i| Matrix::from_fn(f, m, m, |k, p| c.c(idx_a[i], idx_b[p], idx_b[k]).clone()))
        .collect();
    let ra = (0..n)
        .map(|i| Matrix::from_fn(f, m, m, |k, p| c.c(idx_b[p], idx_a[i], idx_b[k]).clone()))
        .collect();
    let lb = (0..m)
        .map(|p| Matrix::from_fn(f, n, n, |k, i| c.c(idx_b[p], idx_a[i], idx_a[k]).clone()))
        .collect();
    let rb = (0..m)
        .map(|p| Matrix::from_fn(f, n, n, |k, i| c.c(idx_a[i], idx_b[p], idx_a[k]).clone()))
        .collect();
    MatchedPair::new(a, b, Bimodule::new(f, n, m, la, ra)?, Bimodule::new(f, m, n, lb, rb)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::bimodule::regular_bimodule;
    use crate::field::FieldSpec;
    use crate::fixtures;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn ut2_split_reads_off_actions() {
        let ut2 = fixtures::ut2(q());
        let mp = split_algebra(&ut2, &[0, 2], &[1]).unwrap();
        let one = q().one();
        // l_A(E11) E12 = E12, E12 r_A(E22) = E12
        assert_eq!(mp.on_b.left_matrices()[0].get(0, 0), &one);
        assert!(mp.on_b.left_matrices()[1].is_zero());
        assert_eq!(mp.on_b.right_matrices()[1].get(0, 0), &one);
        assert!(mp.on_b.right_matrices()[0].is_zero());
        assert!(mp.on_a.is_zero_action());
        assert!(validate_matched_pair(&mp, false).unwrap().pass);
        let sum = matched_pair_sum(&mp).unwrap();
        // basis of the sum is (E11, E22, E12); compare after reordering
        let order = [0, 2, 1];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(sum.c(i, j, k), ut2.c(order[i], order[j], order[k]));
                }
            }
        }
    }

    #[test]
    fn split_then_sum_is_identity_when_parts_are_in_order() {
        let m2 = fixtures::m2(q());
        let mp = split_algebra(&m2, &[0, 1], &[2, 3]);
        // {E11, E12} is closed, {E21, E22} is closed
        let mp = mp.unwrap();
        assert!(validate_matched_pair(&mp, false).unwrap().pass);
        assert_eq!(matched_pair_sum(&mp).unwrap().table().constants(), m2.table().constants());
    }

    #[test]
    fn non_subalgebra_split_is_rejected() {
        let m2 = fixtures::m2(q());
        // E12 E21 = E11 leaves the span of {E12, E21}
        assert!(matches!(
            split_algebra(&m2, &[1, 2], &[0, 3]),
            Err(LabError::NotSubalgebra(_))
        ));
        assert!(matches!(
            split_algebra(&m2, &[0, 1], &[1, 2, 3]),
            Err(LabError::NotDirectSum(_))
        ));
    }

    #[test]
    fn bimodule_algebra_gives_matched_pair_and_semidirect_sum() {
        let a = fixtures::nil2(q());
        let r = BimoduleAlgebra::regular(&a);
        let mp = MatchedPair::from_bimodule_algebra(&a, &r).unwrap();
        assert!(validate_matched_pair(&mp, false).unwrap().pass);
        let s1 = matched_pair_sum(&mp).unwrap();
        let s2 = semidirect_sum(&a, &r).unwrap();
        assert_eq!(s1.table().constants(), s2.table().constants());

        let z = BimoduleAlgebra::zero_product(regular_bimodule(&a));
        let s = semidirect_sum(&a, &z).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(validate_algebra(s.table()).pass);
    }

    #[test]
    fn strict_mode_flags_the_trailing_zero() {
        // M2 = span{E11, E12} + span{E21, E22}: associativity gives the two-term identities,
        // but with a = E21, x = E12, b = E21 the right side equals E21, not zero.
        let mp = split_algebra(&fixtures::m2(q()), &[0, 1], &[2, 3]).unwrap();
        assert!(validate_matched_pair(&mp, false).unwrap().pass);
        let strict = validate_matched_pair(&mp, true).unwrap();
        assert!(strict.check("eq:2.8").unwrap().pass);
        assert!(!strict.check("eq:2.8.zero").unwrap().pass);
        assert!(!strict.pass);
    }
}
