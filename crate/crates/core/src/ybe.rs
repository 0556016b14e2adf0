//! Associative Yang-Baxter type equations and the structures a solution induces.

use crate::algebra::{Algebra, ProductTable, Provenance};
use crate::bimodule::{dual_bimodule, regular_bimodule, Bimodule, BimoduleAlgebra};
use crate::error::{LabError, Result};
use crate::field::Scalar;
use crate::matrix::{vec_add, vec_scale, vec_sub, LinearMap, Matrix};
use crate::operator::{balance_residual, bimodule_hom_residual, o_operator_residual, OperatorContext};
use crate::report::{IdentityCheck, Report};
use crate::tensor::{placed_product, sym_skew_split, tensor_as_map, transpose_t, Tensor2, Tensor3};

fn check_dim(a: &Algebra, r: &Tensor2) -> Result<()> {
    if r.dim() != a.dim() {
        return Err(LabError::DimMismatch(format!(
            "tensor over dimension {}, algebra has dimension {}",
            r.dim(),
            a.dim()
        )));
    }
    if r.field() != a.field() {
        return Err(LabError::FieldMismatch(format!("tensor is over {}", r.field())));
    }
    Ok(())
}

/// `(A*, R*, L*)`.
pub fn dual_regular(a: &Algebra) -> Bimodule {
    dual_bimodule(&regular_bimodule(a))
}

/// `r12 r13 + r13 r23 - r23 r12`.
pub fn aybe_residual(a: &Algebra, r: &Tensor2) -> Result<Tensor3> {
    check_dim(a, r)?;
    Ok(aybe_unchecked(a.table(), r))
}

pub(crate) fn aybe_unchecked(t: &ProductTable, r: &Tensor2) -> Tensor3 {
    let p1 = placed_product(t, r, (0, 1), r, (0, 2));
    let p2 = placed_product(t, r, (0, 2), r, (1, 2));
    let p3 = placed_product(t, r, (1, 2), r, (0, 1));
    p1.add(&p2).sub(&p3)
}

/// `r13 r12 - r12 r23 + r23 r13`.
pub fn aayb_residual(a: &Algebra, r: &Tensor2) -> Result<Tensor3> {
    check_dim(a, r)?;
    let t = a.table();
    let p1 = placed_product(t, r, (0, 2), r, (0, 1));
    let p2 = placed_product(t, r, (0, 1), r, (1, 2));
    let p3 = placed_product(t, r, (1, 2), r, (0, 2));
    Ok(p1.sub(&p2).add(&p3))
}

/// `r12 r13 + r13 r23 - r23 r12 - ε (r13 + r31)(r23 + r32)`.
pub fn eaybe_residual(a: &Algebra, r: &Tensor2, eps: &Scalar) -> Result<Tensor3> {
    check_dim(a, r)?;
    let s = r.add(&transpose_t(r));
    let rhs = placed_product(a.table(), &s, (0, 2), &s, (1, 2));
    Ok(aybe_unchecked(a.table(), r).sub(&rhs.scale(eps)))
}

/// `(id⊗id⊗L(x) - R(x)⊗id⊗id) u` for the basis element `x`.
pub fn gaybe_transform(t: &ProductTable, u: &Tensor3, x: usize) -> Tensor3 {
    let n = t.dim();
    let mut out = Tensor3::zero(t.field(), n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = u.get(i, j, k);
                if v.is_zero() {
                    continue;
                }
                for m in 0..n {
                    let c3 = t.get(x, k, m);
                    if !c3.is_zero() {
                        out.add_to(i, j, m, &(v * c3));
                    }
                    let c1 = t.get(i, x, m);
                    if !c1.is_zero() {
                        out.add_to(m, j, k, &-&(v * c1));
                    }
                }
            }
        }
    }
    out
}

/// One tensor per basis element `x`; the equation holds when all vanish.
pub fn gaybe_residual(a: &Algebra, r: &Tensor2) -> Result<Vec<Tensor3>> {
    let u = aybe_residual(a, r)?;
    Ok((0..a.dim()).map(|x| gaybe_transform(a.table(), &u, x)).collect())
}

pub fn aybe_report(a: &Algebra, r: &Tensor2) -> Result<Report> {
    Ok(Report::from_checks(vec![aybe_residual(a, r)?.to_check("eq:aybe")]))
}

/// Checks `eq:maybe.x{i}` per basis element.
pub fn gaybe_report(a: &Algebra, r: &Tensor2) -> Result<Report> {
    Ok(Report::from_checks(
        gaybe_residual(a, r)?
            .iter()
            .enumerate()
            .map(|(x, u)| u.to_check(&format!("eq:maybe.x{}", x + 1)))
            .collect(),
    ))
}

/// `(id⊗L(x) - R(x)⊗id) s` for each basis `x`, flattened `[x][k][l]`, id `eq:invariant`.
pub fn invariance_residual(a: &Algebra, s: &Tensor2) -> Result<Report> {
    check_dim(a, s)?;
    let n = a.dim();
    let mut check = IdentityCheck::new("eq:invariant");
    for x in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut v = a.field().zero();
                for j in 0..n {
                    v = &v + &(s.get(k, j) * a.c(x, j, l));
                    v = &v - &(s.get(j, l) * a.c(j, x, k));
                }
                check.record(&[x, k, l], vec![v]);
            }
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// Three independently computed conditions on a symmetric `s`: invariance, balance of `F_s`
/// on `(A*, R*, L*)`, and `F_s` being an `A`-bimodule homomorphism `A* -> A`.
pub fn invariance_tri_check(a: &Algebra, s: &Tensor2) -> Result<(bool, bool, bool)> {
    check_dim(a, s)?;
    if !s.is_symmetric() {
        return Err(LabError::Shape("tensor must be symmetric".into()));
    }
    let inv = invariance_residual(a, s)?.pass;
    let dual = dual_regular(a);
    let beta = tensor_as_map(s);
    let f = a.field();
    let ctx = OperatorContext::on_bimodule(a, &dual)?.with_mass(f.one(), f.zero());
    let bal = balance_residual(&ctx, &beta)?.pass;
    let hom = bimodule_hom_residual(a, &dual, &beta)?.pass;
    Ok((inv, bal, hom))
}

/// `r(a*) r(b*) - r(R*(r(a*)) b* - a* L*(r^t(b*)))` on dual basis pairs, id `eq:aybeform`.
pub fn operator_form_residual(a: &Algebra, r: &Tensor2) -> Result<Report> {
    check_dim(a, r)?;
    let dual = dual_regular(a);
    let fr = tensor_as_map(r);
    let frt = tensor_as_map(&transpose_t(r));
    let n = a.dim();
    let mut check = IdentityCheck::new("eq:aybeform");
    for k in 0..n {
        for l in 0..n {
            let (ak, bl) = (dual.basis(k), dual.basis(l));
            let lhs = a.mul(&fr.image(k), &fr.image(l));
            let arg = vec_sub(&dual.act_left(&fr.image(k), &bl), &dual.act_right(&ak, &frt.image(l)));
            check.record(&[k, l], vec_sub(&lhs, &fr.apply(&arg)));
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// `Δ(x) = (id⊗L(x) - R(x)⊗id) r` as a map `A -> A⊗A`; row `k·n + l` holds the `e_k⊗e_l`
/// coefficient.
pub fn coproduct(a: &Algebra, r: &Tensor2) -> Result<LinearMap> {
    check_dim(a, r)?;
    let n = a.dim();
    let f = a.field();
    let m = Matrix::from_fn(f, n * n, n, |row, s| {
        let (k, l) = (row / n, row % n);
        let mut v = f.zero();
        for j in 0..n {
            v = &v + &(r.get(k, j) * a.c(s, j, l));
            v = &v - &(r.get(j, l) * a.c(j, s, k));
        }
        v
    });
    LinearMap::with_dims(n, n * n, m)
}

/// Both computations of the product on `A*`: the transpose of [`coproduct`], and
/// `a* ∗ b* = R*(r(a*)) b* - L*(r^t(b*)) a*`.
pub fn dual_product_routes(a: &Algebra, r: &Tensor2) -> Result<(ProductTable, ProductTable)> {
    let delta = coproduct(a, r)?;
    let n = a.dim();
    let f = a.field();
    let via_coproduct = ProductTable::from_fn(f, n, |k, l, s| delta.matrix().get(k * n + l, s).clone());
    let dual = dual_regular(a);
    let fr = tensor_as_map(r);
    let frt = tensor_as_map(&transpose_t(r));
    let products: Vec<Vec<Scalar>> = (0..n * n)
        .map(|kl| {
            let (k, l) = (kl / n, kl % n);
            vec_sub(
                &dual.act_left(&fr.image(k), &dual.basis(l)),
                &dual.act_right(&dual.basis(k), &frt.image(l)),
            )
        })
        .collect();
    let via_operator = ProductTable::from_fn(f, n, |k, l, s| products[k * n + l][s].clone());
    Ok((via_coproduct, via_operator))
}

/// The product on `A*` induced by `r`. Both computation routes must agree.
pub fn dual_product(a: &Algebra, r: &Tensor2) -> Result<ProductTable> {
    let (x, y) = dual_product_routes(a, r)?;
    if x != y {
        return Err(LabError::Internal("dual product routes disagree".into()));
    }
    Ok(x.with_provenance(Provenance::DualProduct))
}

/// `P(x) = Σ t[i][j] e_i x e_j`.
pub fn aguiar_map(a: &Algebra, r: &Tensor2) -> Result<LinearMap> {
    check_dim(a, r)?;
    let n = a.dim();
    let f = a.field();
    let images: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut acc = vec![f.zero(); n];
            for i in 0..n {
                for j in 0..n {
                    let t = r.get(i, j);
                    if t.is_zero() {
                        continue;
                    }
                    let ek = a.table().basis_product(i, k);
                    let v = a.mul(&ek, &a.basis(j));
                    acc = vec_add(&acc, &vec_scale(&v, t));
                }
            }
            acc
        })
        .collect();
    Ok(LinearMap::from_images(f, n, &images))
}

fn require_invariant(a: &Algebra, beta: &Tensor2) -> Result<()> {
    let (inv, bal, hom) = invariance_tri_check(a, beta)?;
    if !(inv && bal && hom) {
        let mut report = invariance_residual(a, beta)?;
        report.push(IdentityCheck::verdict("balanced", bal, ""));
        report.push(IdentityCheck::verdict("bimodule-hom", hom, ""));
        return Err(LabError::Gate {
            gate: "invariant symmetric tensor".into(),
            report: Box::new(report),
        });
    }
    Ok(())
}

/// `a* ⊙± b* = ∓2 R*(β(a*)) b*` for a symmetric invariant `β`.
pub fn beta_circle_products(a: &Algebra, beta: &Tensor2) -> Result<(ProductTable, ProductTable)> {
    require_invariant(a, beta)?;
    Ok(beta_circle_unchecked(a, beta))
}

fn beta_circle_unchecked(a: &Algebra, beta: &Tensor2) -> (ProductTable, ProductTable) {
    let dual = dual_regular(a);
    let fb = tensor_as_map(beta);
    let n = a.dim();
    let f = a.field();
    let base: Vec<Vec<Scalar>> = (0..n * n)
        .map(|kl| dual.act_left(&fb.image(kl / n), &dual.basis(kl % n)))
        .collect();
    let table = |coeff: i64, prov: Provenance| {
        let c = f.from_i64(coeff);
        ProductTable::from_fn(f, n, |k, l, s| &base[k * n + l][s] * &c).with_provenance(prov)
    };
    (table(-2, Provenance::CirclePlus), table(2, Provenance::CircleMinus))
}

/// Weight-one O-operator residuals of `r` on `(A*, ⊙₊, R*, L*)` and of `-r^t` on
/// `(A*, ⊙₋, R*, L*)`, where `β` is the symmetric part of `r`.
pub fn weight_one_residuals(a: &Algebra, r: &Tensor2) -> Result<(Report, Report)> {
    check_dim(a, r)?;
    let (_, beta) = sym_skew_split(r)?;
    let (plus, minus) = beta_circle_products(a, &beta)?;
    let dual = dual_regular(a);
    let f = a.field();
    let mut out = Vec::new();
    for (table, map) in [
        (plus, tensor_as_map(r)),
        (minus, tensor_as_map(&transpose_t(r)).scale(&f.from_i64(-1))),
    ] {
        let ctx = OperatorContext::new(a.clone(), BimoduleAlgebra::new(dual.clone(), table)?)?.with_weight(f.one());
        out.push(o_operator_residual(&ctx, &map)?);
    }
    let minus = out.pop().expect("two reports");
    let plus = out.pop().expect("two reports");
    Ok((plus, minus))
}
