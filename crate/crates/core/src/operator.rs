//! Residuals for Rota-Baxter operators, O-operators, balanced maps and extended O-operators,
//! together with the products they induce.

use crate::algebra::{Algebra, ProductTable, Provenance};
use crate::bimodule::{regular_bimodule, validate_bimodule_algebra, Bimodule, BimoduleAlgebra};
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{vec_add, vec_scale, vec_sub, LinearMap};
use crate::report::{IdentityCheck, Report};

/// Base algebra, bimodule algebra, weight `λ` and masses `κ, μ`.
#[derive(Clone, Debug)]
pub struct OperatorContext {
    pub a: Algebra,
    pub r: BimoduleAlgebra,
    pub weight: Scalar,
    pub kappa: Scalar,
    pub mu: Scalar,
}

impl OperatorContext {
    /// Validates `r` against `a`. Weight and masses start at zero.
    pub fn new(a: Algebra, r: BimoduleAlgebra) -> Result<Self> {
        let report = validate_bimodule_algebra(&a, &r)?;
        if !report.pass {
            return Err(LabError::Invalid {
                what: "bimodule algebra",
                report: Box::new(report),
            });
        }
        let z = a.field().zero();
        Ok(OperatorContext {
            a,
            r,
            weight: z.clone(),
            kappa: z.clone(),
            mu: z,
        })
    }

    /// `(A, ., L, R)`.
    pub fn regular(a: &Algebra) -> Self {
        let z = a.field().zero();
        OperatorContext {
            r: BimoduleAlgebra::regular(a),
            a: a.clone(),
            weight: z.clone(),
            kappa: z.clone(),
            mu: z,
        }
    }

    /// A bimodule with the zero product, where weight and `μ` are irrelevant.
    pub fn on_bimodule(a: &Algebra, v: &Bimodule) -> Result<Self> {
        OperatorContext::new(a.clone(), BimoduleAlgebra::zero_product(v.clone()))
    }

    /// `(A, L, R)` with the zero product.
    pub fn regular_bimodule(a: &Algebra) -> Self {
        let z = a.field().zero();
        OperatorContext {
            r: BimoduleAlgebra::zero_product(regular_bimodule(a)),
            a: a.clone(),
            weight: z.clone(),
            kappa: z.clone(),
            mu: z,
        }
    }

    pub fn with_weight(mut self, weight: Scalar) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_mass(mut self, kappa: Scalar, mu: Scalar) -> Self {
        self.kappa = kappa;
        self.mu = mu;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn module(&self) -> &Bimodule {
        self.r.module()
    }

    fn check_map(&self, f: &LinearMap, name: &str) -> Result<()> {
        if f.source_dim() != self.r.dim() || f.target_dim() != self.a.dim() {
            return Err(LabError::DimMismatch(format!(
                "{name} is {}->{}, expected {}->{}",
                f.source_dim(),
                f.target_dim(),
                self.r.dim(),
                self.a.dim()
            )));
        }
        if f.field() != self.field() {
            return Err(LabError::FieldMismatch(format!("{name} is over {}", f.field())));
        }
        Ok(())
    }

    fn check_scalars(&self) -> Result<()> {
        for s in [&self.weight, &self.kappa, &self.mu] {
            if s.field() != self.field() {
                return Err(LabError::FieldMismatch(format!("scalar {s} is over {}", s.field())));
            }
        }
        Ok(())
    }

    fn left(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.module().act_left(x, v)
    }

    fn right(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.module().act_right(v, x)
    }

    /// `u *_α v = l(α(u)) v + u r(α(v)) + λ u ∘ v`
    pub fn star(&self, alpha: &LinearMap, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let t = vec_add(&self.left(&alpha.apply(u), v), &self.right(u, &alpha.apply(v)));
        vec_add(&t, &vec_scale(&self.r.mul(u, v), &self.weight))
    }
}

/// `P(x)P(y) - P(P(x)y) - P(xP(y)) - λP(xy)` on basis pairs, id `eq:rbo`.
pub fn rota_baxter_residual(a: &Algebra, p: &LinearMap, weight: &Scalar) -> Result<Report> {
    let n = a.dim();
    if p.source_dim() != n || p.target_dim() != n {
        return Err(LabError::DimMismatch(format!(
            "operator is {}->{}, algebra has dimension {n}",
            p.source_dim(),
            p.target_dim()
        )));
    }
    let mut check = IdentityCheck::new("eq:rbo");
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis(i), a.basis(j));
            let (px, py) = (p.image(i), p.image(j));
            let inner = vec_add(
                &vec_add(&a.mul(&px, &y), &a.mul(&x, &py)),
                &vec_scale(&a.table().basis_product(i, j), weight),
            );
            check.record(&[i, j], vec_sub(&a.mul(&px, &py), &p.apply(&inner)));
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// `α(u)α(v) - α(l(α(u))v + u r(α(v)) + λ u∘v)` on basis pairs, id `eq:aop`.
pub fn o_operator_residual(ctx: &OperatorContext, alpha: &LinearMap) -> Result<Report> {
    ctx.check_map(alpha, "α")?;
    ctx.check_scalars()?;
    let mut check = IdentityCheck::new("eq:aop");
    let m = ctx.r.dim();
    for p in 0..m {
        for q in 0..m {
            let (u, v) = (ctx.module().basis(p), ctx.module().basis(q));
            let lhs = ctx.a.mul(&alpha.image(p), &alpha.image(q));
            check.record(&[p, q], vec_sub(&lhs, &alpha.apply(&ctx.star(alpha, &u, &v))));
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// The balance conditions `eq:ksy` (pairs) and `eq:mueq` (triples), scaled by the masses.
pub fn balance_residual(ctx: &OperatorContext, beta: &LinearMap) -> Result<Report> {
    ctx.check_map(beta, "β")?;
    ctx.check_scalars()?;
    let m = ctx.r.dim();
    let mut ksy = IdentityCheck::new("eq:ksy");
    for p in 0..m {
        for q in 0..m {
            let (u, v) = (ctx.module().basis(p), ctx.module().basis(q));
            let res = vec_sub(&ctx.left(&beta.image(p), &v), &ctx.right(&u, &beta.image(q)));
            ksy.record(&[p, q], vec_scale(&res, &ctx.kappa));
        }
    }
    let mut mueq = IdentityCheck::new("eq:mueq");
    for p in 0..m {
        for q in 0..m {
            for s in 0..m {
                let (u, w) = (ctx.module().basis(p), ctx.module().basis(s));
                let uv = ctx.r.product().basis_product(p, q);
                let vw = ctx.r.product().basis_product(q, s);
                let res = vec_sub(&ctx.left(&beta.apply(&uv), &w), &ctx.right(&u, &beta.apply(&vw)));
                mueq.record(&[p, q, s], vec_scale(&res, &ctx.mu));
            }
        }
    }
    Ok(Report::from_checks(vec![ksy, mueq]))
}

/// `β(l(x)u) = x β(u)` and `β(u r(x)) = β(u) x` on basis pairs `(x, u)`.
pub fn bimodule_hom_residual(a: &Algebra, v: &Bimodule, beta: &LinearMap) -> Result<Report> {
    if beta.source_dim() != v.dim() || beta.target_dim() != a.dim() || v.base_dim() != a.dim() {
        return Err(LabError::DimMismatch("map shape does not match the bimodule".into()));
    }
    let mut left = IdentityCheck::new("eq:bimoho.left");
    let mut right = IdentityCheck::new("eq:bimoho.right");
    for i in 0..a.dim() {
        let x = a.basis(i);
        for p in 0..v.dim() {
            let bu = beta.image(p);
            let lhs = beta.apply(&v.left_matrices()[i].apply(&v.basis(p)));
            left.record(&[i, p], vec_sub(&lhs, &a.mul(&x, &bu)));
            let lhs = beta.apply(&v.right_matrices()[i].apply(&v.basis(p)));
            right.record(&[i, p], vec_sub(&lhs, &a.mul(&bu, &x)));
        }
    }
    Ok(Report::from_checks(vec![left, right]))
}

/// Balanced of mass `(κ, μ)`, and additionally a bimodule homomorphism when `check_hom`.
pub fn balanced_residual(ctx: &OperatorContext, beta: &LinearMap, check_hom: bool) -> Result<Report> {
    let mut report = balance_residual(ctx, beta)?;
    if check_hom {
        report.extend(bimodule_hom_residual(&ctx.a, ctx.module(), beta)?);
    }
    Ok(report)
}

/// How much of the modification's hypotheses to enforce before evaluating a residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Evaluate the raw residual only.
    None,
    /// Require the balance conditions.
    Balanced,
    /// Require a balanced bimodule homomorphism (the full definition).
    BalancedHom,
}

fn run_gate(ctx: &OperatorContext, beta: &LinearMap, gate: Gate) -> Result<Option<Report>> {
    let report = match gate {
        Gate::None => return Ok(None),
        Gate::Balanced => balanced_residual(ctx, beta, false)?,
        Gate::BalancedHom => balanced_residual(ctx, beta, true)?,
    };
    Ok(Some(report))
}

/// Raw residual of `eq:gmybe` without any gate.
pub fn extended_o_raw(ctx: &OperatorContext, alpha: &LinearMap, beta: &LinearMap) -> Result<Report> {
    ctx.check_map(alpha, "α")?;
    ctx.check_map(beta, "β")?;
    ctx.check_scalars()?;
    let m = ctx.r.dim();
    let mut check = IdentityCheck::new("eq:gmybe");
    for p in 0..m {
        for q in 0..m {
            let (u, v) = (ctx.module().basis(p), ctx.module().basis(q));
            let lhs = vec_sub(
                &ctx.a.mul(&alpha.image(p), &alpha.image(q)),
                &alpha.apply(&ctx.star(alpha, &u, &v)),
            );
            let rhs = vec_add(
                &vec_scale(&ctx.a.mul(&beta.image(p), &beta.image(q)), &ctx.kappa),
                &vec_scale(&beta.apply(&ctx.r.product().basis_product(p, q)), &ctx.mu),
            );
            check.record(&[p, q], vec_sub(&lhs, &rhs));
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// Residual of `eq:gmybe` after enforcing `gate` on `β`. A failed gate is an error carrying its
/// own report, distinct from a failing residual.
pub fn extended_o_residual(ctx: &OperatorContext, alpha: &LinearMap, beta: &LinearMap, gate: Gate) -> Result<Report> {
    if let Some(g) = run_gate(ctx, beta, gate)? {
        if !g.pass {
            return Err(LabError::Gate {
                gate: format!("{gate:?} modification of mass ({}, {})", ctx.kappa, ctx.mu),
                report: Box::new(g),
            });
        }
    }
    extended_o_raw(ctx, alpha, beta)
}

/// Whether `α` is an extended O-operator with modification `β` in the sense of the definition:
/// `β` a balanced bimodule homomorphism of the context's mass, and the residual vanishes.
pub fn is_extended_o(ctx: &OperatorContext, alpha: &LinearMap, beta: &LinearMap) -> Result<bool> {
    match extended_o_residual(ctx, alpha, beta, Gate::BalancedHom) {
        Ok(r) => Ok(r.pass),
        Err(LabError::Gate { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Table of `*_α` on the basis of `R`.
pub fn star_product(ctx: &OperatorContext, alpha: &LinearMap) -> Result<ProductTable> {
    ctx.check_map(alpha, "α")?;
    ctx.check_scalars()?;
    let m = ctx.r.dim();
    let products: Vec<Vec<Scalar>> = (0..m * m)
        .map(|k| ctx.star(alpha, &ctx.module().basis(k / m), &ctx.module().basis(k % m)))
        .collect();
    Ok(ProductTable::from_fn(ctx.field(), m, |i, j, k| products[i * m + j][k].clone())
        .with_provenance(Provenance::StarAlpha))
}

/// `(associativity of *_α, eq:condition)`, computed independently.
pub fn assoc_criterion_check(ctx: &OperatorContext, alpha: &LinearMap) -> Result<(bool, bool)> {
    let assoc = star_product(ctx, alpha)?.is_associative();
    Ok((assoc, condition_residual(ctx, alpha)?.pass))
}

/// `l(α(u)α(v) - α(u*v)) w - u r(α(v)α(w) - α(v*w))` on basis triples, id `eq:condition`.
pub fn condition_residual(ctx: &OperatorContext, alpha: &LinearMap) -> Result<Report> {
    ctx.check_map(alpha, "α")?;
    let m = ctx.r.dim();
    let defect = |p: usize, q: usize| {
        let (u, v) = (ctx.module().basis(p), ctx.module().basis(q));
        vec_sub(
            &ctx.a.mul(&alpha.image(p), &alpha.image(q)),
            &alpha.apply(&ctx.star(alpha, &u, &v)),
        )
    };
    let defects: Vec<Vec<Scalar>> = (0..m * m).map(|k| defect(k / m, k % m)).collect();
    let mut check = IdentityCheck::new("eq:condition");
    for p in 0..m {
        for q in 0..m {
            for s in 0..m {
                let lhs = ctx.left(&defects[p * m + q], &ctx.module().basis(s));
                let rhs = ctx.right(&ctx.module().basis(p), &defects[q * m + s]);
                check.record(&[p, q, s], vec_sub(&lhs, &rhs));
            }
        }
    }
    Ok(Report::from_checks(vec![check]))
}

fn require_gate(ctx: &OperatorContext, beta: &LinearMap, kappa: Scalar, mu: Scalar, what: &str) -> Result<()> {
    let gated = ctx.clone().with_mass(kappa, mu);
    let report = balanced_residual(&gated, beta, true)?;
    if !report.pass {
        return Err(LabError::Gate {
            gate: format!("{what}: balanced bimodule homomorphism of mass ({}, {})", gated.kappa, gated.mu),
            report: Box::new(report),
        });
    }
    Ok(())
}

/// `u ⋄± v = λ u∘v ∓ 2 l(β(u)) v`. Requires `β` to be a balanced bimodule homomorphism of
/// mass `(-1, ±λ)`; both signs impose the same conditions.
pub fn diamond_products(ctx: &OperatorContext, beta: &LinearMap) -> Result<(ProductTable, ProductTable)> {
    let f = ctx.field();
    require_gate(ctx, beta, f.from_i64(-1), ctx.weight.clone(), "diamond products")?;
    Ok(diamond_products_unchecked(ctx, beta))
}

pub(crate) fn diamond_products_unchecked(ctx: &OperatorContext, beta: &LinearMap) -> (ProductTable, ProductTable) {
    let f = ctx.field();
    let m = ctx.r.dim();
    let two = f.from_i64(2);
    let table = |sign: i64, prov: Provenance| {
        let coeff = &two * &f.from_i64(-sign);
        let entries: Vec<Vec<Scalar>> = (0..m * m)
            .map(|k| {
                let (p, q) = (k / m, k % m);
                let base = vec_scale(&ctx.r.product().basis_product(p, q), &ctx.weight);
                let twist = vec_scale(&ctx.left(&beta.image(p), &ctx.module().basis(q)), &coeff);
                vec_add(&base, &twist)
            })
            .collect();
        ProductTable::from_fn(f, m, |i, j, k| entries[i * m + j][k].clone()).with_provenance(prov)
    };
    (table(1, Provenance::DiamondPlus), table(-1, Provenance::DiamondMinus))
}

/// Compares, for each sign, "`α = (δ₊+δ₋)/2` is an extended O-operator of weight `λ` with
/// modification `β = (δ₊-δ₋)/2` of mass `(-1, ±λ)`" with "`δ±` is an O-operator of weight 1 on
/// `(R, ⋄±, l, r)`". Checks `thm:ansatz.plus` and `thm:ansatz.minus` pass when the two agree.
pub fn verify_ansatz(ctx: &OperatorContext, delta_plus: &LinearMap, delta_minus: &LinearMap) -> Result<Report> {
    let f = ctx.field();
    f.require_half("symmetrizer split")?;
    ctx.check_map(delta_plus, "δ₊")?;
    ctx.check_map(delta_minus, "δ₋")?;
    let half = f.fraction(1, 2)?;
    let alpha = delta_plus.add(delta_minus).scale(&half);
    let beta = delta_plus.sub(delta_minus).scale(&half);
    require_gate(ctx, &beta, f.from_i64(-1), ctx.weight.clone(), "ansatz")?;
    let (dp, dm) = diamond_products_unchecked(ctx, &beta);
    let mut report = Report::new();
    for (sign, delta, table, id) in [
        (1, delta_plus, dp, "thm:ansatz.plus"),
        (-1, delta_minus, dm, "thm:ansatz.minus"),
    ] {
        let mu = &ctx.weight * &f.from_i64(sign);
        let ext_ctx = ctx.clone().with_mass(f.from_i64(-1), mu);
        let lhs = extended_o_raw(&ext_ctx, &alpha, &beta)?.pass;
        let new_r = ctx.r.with_product(table)?;
        let o_ctx = OperatorContext {
            a: ctx.a.clone(),
            r: new_r,
            weight: f.one(),
            kappa: f.zero(),
            mu: f.zero(),
        };
        let rhs = o_operator_residual(&o_ctx, delta)?.pass;
        report.push(IdentityCheck::verdict(
            id,
            lhs == rhs,
            format!("extended={lhs} weight-one={rhs}"),
        ));
    }
    Ok(report)
}

fn check_endo(a: &Algebra, beta: &LinearMap) -> Result<()> {
    if beta.source_dim() != a.dim() || beta.target_dim() != a.dim() {
        return Err(LabError::DimMismatch("operator must be an endomorphism of the algebra".into()));
    }
    Ok(())
}

/// `β(x)β(y) = β(xβ(y))` and `β(x)β(y) = β(β(x)y)`.
pub fn check_averaging(a: &Algebra, beta: &LinearMap) -> Result<Report> {
    check_endo(a, beta)?;
    let n = a.dim();
    let mut left = IdentityCheck::new("averaging.inner");
    let mut right = IdentityCheck::new("averaging.outer");
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis(i), a.basis(j));
            let prod = a.mul(&beta.image(i), &beta.image(j));
            left.record(&[i, j], vec_sub(&prod, &beta.apply(&a.mul(&x, &beta.image(j)))));
            right.record(&[i, j], vec_sub(&prod, &beta.apply(&a.mul(&beta.image(i), &y))));
        }
    }
    Ok(Report::from_checks(vec![left, right]))
}

/// `β(x)β(y) + β²(xy) = β(xβ(y) + β(x)y)`.
pub fn check_nijenhuis(a: &Algebra, beta: &LinearMap) -> Result<Report> {
    check_endo(a, beta)?;
    let n = a.dim();
    let mut check = IdentityCheck::new("nijenhuis");
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis(i), a.basis(j));
            let lhs = vec_add(
                &a.mul(&beta.image(i), &beta.image(j)),
                &beta.apply(&beta.apply(&a.table().basis_product(i, j))),
            );
            let rhs = beta.apply(&vec_add(&a.mul(&x, &beta.image(j)), &a.mul(&beta.image(i), &y)));
            check.record(&[i, j], vec_sub(&lhs, &rhs));
        }
    }
    Ok(Report::from_checks(vec![check]))
}

/// Residual of `α(x)α(y) - α(α(x)y + xα(y) + λxy) = κ̂ xy`, id `eq:pgmybe`.
pub fn pgmybe_residual(a: &Algebra, alpha: &LinearMap, weight: &Scalar, kappa_hat: &Scalar) -> Result<Report> {
    let ctx = OperatorContext::regular(a)
        .with_weight(weight.clone())
        .with_mass(kappa_hat.clone(), a.field().zero());
    let mut r = extended_o_raw(&ctx, alpha, &LinearMap::identity(a.field(), a.dim()))?;
    r.checks[0].id = "eq:pgmybe".into();
    Ok(r)
}

/// For both signs, compares `eq:pgmybe` with `κ̂ = -1 ± λ` against "`α ± id` is Rota-Baxter of
/// weight `λ ∓ 2`". Checks `co:mop.plus` / `co:mop.minus` pass when the two verdicts agree.
pub fn shift_equivalence(a: &Algebra, alpha: &LinearMap, weight: &Scalar) -> Result<Report> {
    check_endo(a, alpha)?;
    let f = a.field();
    let id = LinearMap::identity(f, a.dim());
    let mut report = Report::new();
    for (sign, name) in [(1, "co:mop.plus"), (-1, "co:mop.minus")] {
        let s = f.from_i64(sign);
        let kappa_hat = &f.from_i64(-1) + &(&s * weight);
        let lhs = pgmybe_residual(a, alpha, weight, &kappa_hat)?.pass;
        let shifted = alpha.add(&id.scale(&s));
        let w = weight - &(&s * &f.from_i64(2));
        let rhs = rota_baxter_residual(a, &shifted, &w)?.pass;
        report.push(IdentityCheck::verdict(name, lhs == rhs, format!("pgmybe={lhs} rota-baxter={rhs}")));
    }
    Ok(report)
}

/// `α / λ`, an O-operator of weight 1 whenever `α` has weight `λ`. Never applied implicitly.
pub fn rescale(alpha: &LinearMap, weight: &Scalar) -> Result<LinearMap> {
    let inv = weight.inverse().ok_or(LabError::ZeroWeight("rescale"))?;
    Ok(alpha.scale(&inv))
}
