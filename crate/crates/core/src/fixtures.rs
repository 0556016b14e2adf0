//! Small algebras used throughout the examples and tests.

use crate::algebra::Algebra;
use crate::bimodule::regular_bimodule;
use crate::bundle::{Bundle, NamedBimodule, NamedForm, NamedTensor};
use crate::field::FieldSpec;
use crate::frobenius::BilinearForm;
use crate::matrix::{LinearMap, Matrix};
use crate::tensor::Tensor2;

pub struct Fixture {
    pub name: &'static str,
    pub algebra: Algebra,
}

fn labelled(field: FieldSpec, dim: usize, entries: &[(usize, usize, usize, i64)], labels: &[&str]) -> Algebra {
    Algebra::from_entries(field, dim, entries)
        .and_then(|a| a.with_labels(labels.iter().map(|s| s.to_string()).collect()))
        .expect("fixture is associative")
}

/// Two-dimensional algebra with zero multiplication.
pub fn zero_alg2(field: FieldSpec) -> Algebra {
    labelled(field, 2, &[], &["e1", "e2"])
}

/// `e1 e1 = e2`, all other products zero.
pub fn nil2(field: FieldSpec) -> Algebra {
    labelled(field, 2, &[(0, 0, 1, 1)], &["e1", "e2"])
}

/// Dual numbers `k[x]/(x^2)` with basis `u = 1, x`.
pub fn dual_num(field: FieldSpec) -> Algebra {
    labelled(
        field,
        2,
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        &["u", "x"],
    )
}

/// Upper-triangular 2x2 matrices with basis `E11, E12, E22`.
pub fn ut2(field: FieldSpec) -> Algebra {
    labelled(
        field,
        3,
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        &["E11", "E12", "E22"],
    )
}

/// Full 2x2 matrices with basis `E11, E12, E21, E22`.
pub fn m2(field: FieldSpec) -> Algebra {
    // E_ij E_kl = delta_jk E_il, basis index of E_ij is 2(i-1) + (j-1).
    let mut entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                entries.push((2 * i + j, 2 * j + l, 2 * i + l, 1));
            }
        }
    }
    labelled(field, 4, &entries, &["E11", "E12", "E21", "E22"])
}

pub fn by_name(name: &str, field: FieldSpec) -> Option<Algebra> {
    match name.to_ascii_lowercase().as_str() {
        "zeroalg2" | "zero2" => Some(zero_alg2(field)),
        "nil2" => Some(nil2(field)),
        "dualnum" => Some(dual_num(field)),
        "ut2" => Some(ut2(field)),
        "m2" => Some(m2(field)),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["ZeroAlg2", "Nil2", "DualNum", "UT2", "M2"];

pub fn all(field: FieldSpec) -> Vec<Fixture> {
    NAMES
        .iter()
        .map(|&name| Fixture {
            name,
            algebra: by_name(name, field).expect("known fixture"),
        })
        .collect()
}

/// File stem of the canonical bundle for each fixture.
pub fn file_stem(name: &str) -> String {
    name.to_ascii_lowercase()
}

/// Canonical bundle for a fixture: the algebra, its regular bimodule and a few named objects
/// used by the examples and the command line.
pub fn bundle(name: &str, field: FieldSpec) -> Option<Bundle> {
    let a = by_name(name, field)?;
    let key = NAMES.iter().find(|n| n.eq_ignore_ascii_case(name))?.to_string();
    let n = a.dim();
    let mut b = Bundle::new(field);
    b.bimodules.insert(
        "regular".into(),
        NamedBimodule {
            algebra: key.clone(),
            module: regular_bimodule(&a),
            product: None,
        },
    );
    b.maps.insert("zero".into(), LinearMap::zero(field, n, n));
    b.maps.insert("id".into(), LinearMap::identity(field, n));
    let tensor = |t: Tensor2| NamedTensor {
        algebra: key.clone(),
        tensor: t,
    };
    match key.as_str() {
        "Nil2" => {
            b.maps.insert("P0".into(), LinearMap::zero(field, 2, 2));
            b.maps.insert("P1".into(), LinearMap::new(Matrix::from_i64_rows(field, &[&[2, 0], &[0, 1]])));
            b.tensors.insert("r_e2e2".into(), tensor(Tensor2::from_entries(field, 2, &[(1, 1, 1)])));
        }
        "DualNum" => {
            b.maps.insert("minus_id".into(), LinearMap::identity(field, 2).scale(&field.from_i64(-1)));
            b.tensors.insert("x_x".into(), tensor(Tensor2::from_entries(field, 2, &[(1, 1, 1)])));
            b.forms.insert(
                "trace".into(),
                NamedForm {
                    algebra: key.clone(),
                    form: BilinearForm::new(Matrix::from_i64_rows(field, &[&[0, 1], &[1, 0]])).ok()?,
                },
            );
        }
        "UT2" => {
            b.tensors.insert("flagship".into(), tensor(Tensor2::from_entries(field, 3, &[(0, 1, 1), (1, 0, -1)])));
        }
        _ => {}
    }
    b.algebras.insert(key, a);
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build_over_several_fields() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            assert_eq!(all(f).len(), 5);
        }
    }

    #[test]
    fn dual_num_is_unital_and_commutative() {
        let a = dual_num(FieldSpec::Rationals);
        let u = a.basis(0);
        for i in 0..2 {
            assert_eq!(a.mul(&u, &a.basis(i)), a.basis(i));
            assert_eq!(a.mul(&a.basis(i), &u), a.basis(i));
        }
        assert!(a.is_commutative());
        assert!(!ut2(FieldSpec::Rationals).is_commutative());
    }
}
