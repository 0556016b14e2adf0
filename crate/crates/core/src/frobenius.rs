//! Bilinear forms, the induced map `φ: A -> A*`, and transport of operators along it.

use crate::algebra::Algebra;
use crate::error::{LabError, Result};
use crate::field::Scalar;
use crate::matrix::{LinearMap, Matrix};
use crate::operator::{balanced_residual, extended_o_raw, is_extended_o, rota_baxter_residual, OperatorContext};
use crate::report::{IdentityCheck, Report};
use crate::tensor::{map_as_tensor, tensor_as_map, Tensor2};
use crate::ybe::{aybe_residual, dual_regular, eaybe_residual, invariance_tri_check};

/// `B(e_i, e_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(LabError::Shape(format!("form matrix is {}x{}", matrix.rows(), matrix.cols())));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let by = self.matrix.apply(y);
        x.iter()
            .zip(&by)
            .fold(self.matrix.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

fn check_form(a: &Algebra, b: &BilinearForm) -> Result<()> {
    if b.dim() != a.dim() {
        return Err(LabError::DimMismatch(format!("form of size {} on algebra of dimension {}", b.dim(), a.dim())));
    }
    if b.matrix.field() != a.field() {
        return Err(LabError::FieldMismatch(format!("form is over {}", b.matrix.field())));
    }
    Ok(())
}

/// Checks `de:frob.nondegenerate`, `de:frob.invariant` (`B(xy, z) = B(x, yz)`) and, when
/// required, `de:frob.symmetric`.
pub fn validate_frobenius(a: &Algebra, b: &BilinearForm, require_symmetric: bool) -> Result<Report> {
    check_form(a, b)?;
    let n = a.dim();
    let mut report = Report::new();
    report.push(IdentityCheck::verdict(
        "de:frob.nondegenerate",
        b.is_nondegenerate(),
        format!("rank {} of {n}", b.matrix.rank()),
    ));
    let mut inv = IdentityCheck::new("de:frob.invariant");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = b.eval(&a.table().basis_product(i, j), &a.basis(k));
                let rhs = b.eval(&a.basis(i), &a.table().basis_product(j, k));
                inv.record(&[i, j, k], vec![&lhs - &rhs]);
            }
        }
    }
    report.push(inv);
    if require_symmetric {
        let mut sym = IdentityCheck::new("de:frob.symmetric");
        for i in 0..n {
            for j in 0..n {
                sym.record(&[i, j], vec![b.matrix.get(i, j) - b.matrix.get(j, i)]);
            }
        }
        report.push(sym);
    }
    Ok(report)
}

/// `φ(x) = B(x, -)`; its matrix is the transpose of the form's.
pub fn phi(b: &BilinearForm) -> Result<LinearMap> {
    if !b.is_nondegenerate() {
        return Err(LabError::Singular("bilinear form is degenerate".into()));
    }
    Ok(LinearMap::new(b.matrix.transpose()))
}

/// The form whose `φ` inverts `F_s`, for a symmetric invariant invertible `s`.
pub fn form_from_invariant_tensor(a: &Algebra, s: &Tensor2) -> Result<BilinearForm> {
    let (inv, bal, hom) = invariance_tri_check(a, s)?;
    if !(inv && bal && hom) {
        return Err(LabError::Gate {
            gate: "invariant symmetric tensor".into(),
            report: Box::new(Report::from_checks(vec![
                IdentityCheck::verdict("eq:invariant", inv, ""),
                IdentityCheck::verdict("eq:dualssy", bal, ""),
                IdentityCheck::verdict("eq:dualsabi", hom, ""),
            ])),
        });
    }
    let phi_matrix = tensor_as_map(s)
        .matrix()
        .inverse()
        .ok_or_else(|| LabError::Singular("tensor coefficient matrix is singular".into()))?;
    BilinearForm::new(phi_matrix.transpose())
}

/// Independent flags: `f` may be both (e.g. `f = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjointFlags {
    pub self_adjoint: bool,
    pub skew_adjoint: bool,
}

/// `B(f x, y) = ±B(x, f y)`, i.e. `Fᵀ B = ±B F`.
pub fn adjoint_check(f: &LinearMap, b: &BilinearForm) -> Result<AdjointFlags> {
    if f.source_dim() != b.dim() || f.target_dim() != b.dim() {
        return Err(LabError::DimMismatch("operator and form sizes differ".into()));
    }
    let ftb = f.matrix().transpose().mul(&b.matrix);
    let bf = b.matrix.mul(f.matrix());
    Ok(AdjointFlags {
        self_adjoint: ftb == bf,
        skew_adjoint: ftb.add(&bf).is_zero(),
    })
}

/// `f ∘ φ⁻¹: A* -> A`.
pub fn transport(f: &LinearMap, b: &BilinearForm) -> Result<LinearMap> {
    let inv = phi(b)?
        .inverse()
        .ok_or_else(|| LabError::Singular("bilinear form is degenerate".into()))?;
    if f.source_dim() != b.dim() {
        return Err(LabError::DimMismatch("operator and form sizes differ".into()));
    }
    Ok(f.compose(&inv))
}

/// `φ(L(x)y) = R*(x)φ(y)` (`eq:invariant1`) and `φ(yR(x)) = φ(y)L*(x)` (`eq:invariant2`)
/// on basis pairs `(x, y)`.
pub fn intertwining_check(a: &Algebra, b: &BilinearForm) -> Result<Report> {
    check_form(a, b)?;
    let p = phi(b)?;
    let dual = dual_regular(a);
    let n = a.dim();
    let mut left = IdentityCheck::new("eq:invariant1");
    let mut right = IdentityCheck::new("eq:invariant2");
    for i in 0..n {
        let x = a.basis(i);
        for j in 0..n {
            let y = a.basis(j);
            let l = crate::matrix::vec_sub(&p.apply(&a.mul(&x, &y)), &dual.act_left(&x, &p.image(j)));
            left.record(&[i, j], l);
            let r = crate::matrix::vec_sub(&p.apply(&a.mul(&y, &x)), &dual.act_right(&p.image(j), &x));
            right.record(&[i, j], r);
        }
    }
    Ok(Report::from_checks(vec![left, right]))
}

fn balanced_hom(ctx: &OperatorContext, beta: &LinearMap) -> Result<bool> {
    let f = ctx.field();
    Ok(balanced_residual(&ctx.clone().with_mass(f.one(), f.zero()), beta, true)?.pass)
}

/// For a symmetric tensor `β`: (`F_β` balanced homomorphism on `(A*, R*, L*)`,
/// `F_β ∘ φ` balanced homomorphism on `(A, L, R)`).
pub fn pulled_back_balance(a: &Algebra, b: &BilinearForm, beta: &Tensor2) -> Result<(bool, bool)> {
    let fb = tensor_as_map(beta);
    let hat = fb.compose(&phi(b)?);
    let lifted = balanced_hom(&OperatorContext::on_bimodule(a, &dual_regular(a))?, &fb)?;
    let base = balanced_hom(&OperatorContext::regular_bimodule(a), &hat)?;
    Ok((lifted, base))
}

fn skipped(id: &str, why: &str) -> IdentityCheck {
    IdentityCheck::verdict(id, true, format!("skipped: {why}"))
}

/// Compares, as booleans, extended O-operator statements on `(A, L, R)` with their transports
/// to `(A*, R*, L*)` and with Yang-Baxter statements for `α̃ ± β̃`. Every check passes exactly
/// when the two sides agree.
pub fn verify_frobenius_equivalence(
    a: &Algebra,
    alpha: &LinearMap,
    beta: &LinearMap,
    b: &BilinearForm,
    kappa: &Scalar,
) -> Result<Report> {
    let frob = validate_frobenius(a, b, true)?;
    if !frob.pass {
        return Err(LabError::Gate {
            gate: "symmetric Frobenius form".into(),
            report: Box::new(frob),
        });
    }
    let beta_adj = adjoint_check(beta, b)?;
    if !beta_adj.self_adjoint {
        return Err(LabError::Gate {
            gate: "self-adjoint modification".into(),
            report: Box::new(Report::from_checks(vec![IdentityCheck::verdict("de:frob.self-adjoint", false, "")])),
        });
    }
    let f = a.field();
    let zero = f.zero();
    let alpha_t = transport(alpha, b)?;
    let beta_t = transport(beta, b)?;
    let base_ctx = OperatorContext::regular_bimodule(a).with_mass(kappa.clone(), zero.clone());
    let lift_ctx = OperatorContext::on_bimodule(a, &dual_regular(a))?.with_mass(kappa.clone(), zero.clone());

    let mut report = Report::new();
    let base = is_extended_o(&base_ctx, alpha, beta)?;
    let lifted = is_extended_o(&lift_ctx, &alpha_t, &beta_t)?;
    report.push(IdentityCheck::verdict(
        "thm:equivalence.i",
        base == lifted,
        format!("base={base} transported={lifted}"),
    ));
    let raw_base = extended_o_raw(&base_ctx, alpha, beta)?.pass;
    let raw_lift = extended_o_raw(&lift_ctx, &alpha_t, &beta_t)?.pass;
    report.push(IdentityCheck::verdict(
        "thm:equivalence.i.raw",
        raw_base == raw_lift,
        format!("base={raw_base} transported={raw_lift}"),
    ));
    let gate_base = balanced_hom(&base_ctx, beta)?;
    let gate_lift = balanced_hom(&lift_ctx, &beta_t)?;
    report.push(IdentityCheck::verdict(
        "le:frosy",
        gate_base == gate_lift,
        format!("base={gate_base} transported={gate_lift}"),
    ));

    let alpha_adj = adjoint_check(alpha, b)?;
    if !alpha_adj.skew_adjoint {
        for id in ["thm:equivalence.2a", "thm:equivalence.2b", "thm:equivalence.2c"] {
            report.push(skipped(id, "α is not skew-adjoint"));
        }
        return Ok(report);
    }
    let at = map_as_tensor(&alpha_t)?;
    let bt = map_as_tensor(&beta_t)?;
    report.push(IdentityCheck::verdict(
        "thm:equivalence.shape",
        at.is_skew() && bt.is_symmetric(),
        format!("α̃ skew={} β̃ symmetric={}", at.is_skew(), bt.is_symmetric()),
    ));
    let r_pm = [("plus", at.add(&bt)), ("minus", at.sub(&bt))];

    if !gate_base {
        report.push(skipped("thm:equivalence.2a", "β is not a balanced bimodule homomorphism"));
        report.push(skipped("thm:equivalence.2b", "β is not a balanced bimodule homomorphism"));
    } else {
        if f.has_half() {
            let eps = &(kappa + &f.one()) * &f.fraction(1, 4)?;
            for (sign, r) in &r_pm {
                let e = eaybe_residual(a, r, &eps)?.is_zero();
                report.push(IdentityCheck::verdict(
                    format!("thm:equivalence.2a.{sign}"),
                    e == base,
                    format!("eaybe={e} extended={base}"),
                ));
            }
        } else {
            report.push(skipped("thm:equivalence.2a", "characteristic 2"));
        }
        if kappa == &f.from_i64(-1) {
            for (sign, r) in &r_pm {
                let y = aybe_residual(a, r)?.is_zero();
                report.push(IdentityCheck::verdict(
                    format!("thm:equivalence.2b.{sign}"),
                    y == base,
                    format!("aybe={y} extended={base}"),
                ));
            }
        } else {
            report.push(skipped("thm:equivalence.2b", "mass is not -1"));
        }
    }
    if kappa.is_zero() {
        let y = aybe_residual(a, &at)?.is_zero();
        let rb = rota_baxter_residual(a, alpha, &zero)?.pass;
        report.push(IdentityCheck::verdict(
            "thm:equivalence.2c",
            y == rb,
            format!("aybe={y} rota-baxter={rb}"),
        ));
    } else {
        report.push(skipped("thm:equivalence.2c", "mass is not 0"));
    }
    Ok(report)
}
