//! Theorem sweeps. Each target evaluates both sides of an equivalence (or the conclusion of an
//! implication) over an exhaustive or seeded random family of inputs and tallies agreements.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, ProductTable};
use crate::bimodule::{
    dual_bimodule, regular_bimodule, validate_bimodule, validate_bimodule_algebra, Bimodule, BimoduleAlgebra,
};
use crate::double::{
    double_aybe_tests, double_eaybe_check, gaybe_lift_conditions, gaybe_o_conditions, lifted_balanced_check,
    verify_skewgm, DoubleContext,
};
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::fixtures;
use crate::frobenius::{
    adjoint_check, form_from_invariant_tensor, intertwining_check, phi, pulled_back_balance, transport,
    validate_frobenius, verify_frobenius_equivalence, BilinearForm,
};
use crate::matched_pair::{matched_pair_sum_table, split_algebra, validate_matched_pair, MatchedPair};
use crate::matrix::{is_zero_vec, vec_sub, LinearMap, Matrix};
use crate::operator::{
    assoc_criterion_check, balance_residual, balanced_residual, bimodule_hom_residual, condition_residual,
    extended_o_raw, extended_o_residual, is_extended_o, o_operator_residual, rota_baxter_residual,
    shift_equivalence, star_product, verify_ansatz, Gate, OperatorContext,
};
use crate::search::{Candidate, SearchSpace, Symmetry, DEFAULT_BUDGET};
use crate::tensor::{map_as_tensor, sym_skew_split, tensor_as_map, transpose_t, Tensor2};
use crate::ybe::{
    aayb_residual, aguiar_map, aybe_residual, dual_product, dual_product_routes, dual_regular, eaybe_residual,
    gaybe_residual, invariance_residual, invariance_tri_check, operator_form_residual, weight_one_residuals,
};

/// A verification target and a one-line statement of what its sweep compares.
pub struct Target {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const TARGETS: &[Target] = &[
    Target { id: "thm:ag", statement: "every solution of the AAYB gives a weight-zero Rota-Baxter operator via the Aguiar map" },
    Target { id: "pp:dual", statement: "the dual of a bimodule, with actions swapped and transposed, is a bimodule" },
    Target { id: "thm:mp", statement: "A+B with the matched-pair product is associative iff the matched-pair identities hold" },
    Target { id: "co:twoalg", statement: "A+R is associative iff R is a bimodule algebra" },
    Target { id: "le:product", statement: "the product *_alpha is associative iff the condition identity holds" },
    Target { id: "co:product", statement: "for a mass-one balanced beta, the delta product is associative iff the condition identity holds" },
    Target { id: "thm:ansatz", statement: "(alpha, beta) is extended of mass (-1, +-lambda) iff delta+- are weight-one O-operators on the diamond products" },
    Target { id: "co:an1", statement: "on a bimodule, alpha is extended of mass -1 iff alpha +- beta are weight-one O-operators" },
    Target { id: "co:aasso", statement: "extended operators of mass (kappa, 0) give associative star products; eq:alphak at -1 iff alpha +- beta are weight-one O-operators" },
    Target { id: "co:mop", statement: "alpha solves the shifted equation iff alpha +- id is Rota-Baxter of weight lambda -+ 2" },
    Target { id: "le:syin", statement: "a symmetric tensor is invariant iff it is balanced iff it is a bimodule homomorphism" },
    Target { id: "co:abas", statement: "alpha is extended of mass -1 iff r and -r^t are weight-one O-operators on the circle products" },
    Target { id: "thm:aybea", statement: "AYBE iff the operator form holds; EAYBE of mass (kappa+1)/4 iff extended of mass kappa" },
    Target { id: "co:aybea", statement: "for invariant symmetric part, AYBE iff weight-one forms iff mass -1 iff the homomorphism form; skew r: AYBE iff O-operator" },
    Target { id: "pp:frob", statement: "for a symmetric Frobenius form, phi intertwines the regular and dual-regular bimodules" },
    Target { id: "co:synoninbi", statement: "an invertible symmetric invariant tensor defines a symmetric Frobenius form" },
    Target { id: "le:frosy", statement: "self-adjoint beta transports to a symmetric tensor, balanced homomorphism on both sides together" },
    Target { id: "co:frosy1", statement: "a symmetric tensor is a balanced homomorphism iff its pull-back is" },
    Target { id: "thm:equivalence", statement: "extended statements on A agree with their transports and with the Yang-Baxter statements" },
    Target { id: "co:equivalence1", statement: "EAYBE iff the pulled-back pair is extended; skew r: AYBE iff r phi is Rota-Baxter of weight zero" },
    Target { id: "le:syco", statement: "beta is a balanced homomorphism iff its symmetric lift to the double is" },
    Target { id: "thm:skewgm", statement: "alpha is extended with modification beta iff the lifted pair in the double is" },
    Target { id: "co:motoaybe1", statement: "operator statements on V and A against Yang-Baxter statements in the double" },
    Target { id: "pp:bialgebra", statement: "the GAYBE holds iff the dual product is associative" },
    Target { id: "lemma:maybe", statement: "the two computations of the dual product agree" },
    Target { id: "pp:mtoop", statement: "an extended pair with invariant symmetric part gives a GAYBE solution" },
    Target { id: "co:II-MYBE", statement: "EAYBE solutions with invariant symmetric part solve the GAYBE" },
    Target { id: "le:biaspro", statement: "the weight-zero star product on a bimodule is associative iff eq:biaspro holds" },
    Target { id: "thm:maybeequi", statement: "alpha - alpha^21 solves the GAYBE in the double iff eq:biaspro and eq:uvx1-3 hold" },
    Target { id: "co:motoaybe2", statement: "for an extended pair on a bimodule algebra, the GAYBE in the double iff eq:lambdakmucon1-3 hold" },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { trials: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub field: FieldSpec,
    pub mode: Mode,
    pub workers: usize,
    pub budget: u128,
    pub dim_a: Option<usize>,
    pub dim_v: Option<usize>,
    pub algebra: Option<(String, Algebra)>,
}

impl VerifyOptions {
    /// Exhaustive over prime fields, 200 seeded trials over the rationals.
    pub fn new(field: FieldSpec) -> Self {
        let mode = if field.is_prime_field() {
            Mode::Exhaustive
        } else {
            Mode::Random { trials: 200, seed: 0 }
        };
        VerifyOptions {
            field,
            mode,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            dim_a: None,
            dim_v: None,
            algebra: None,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_dims(mut self, dim_a: Option<usize>, dim_v: Option<usize>) -> Self {
        self.dim_a = dim_a;
        self.dim_v = dim_v;
        self
    }

    pub fn with_algebra(mut self, name: impl Into<String>, a: Algebra) -> Self {
        self.algebra = Some((name.into(), a));
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// Tally of one sweep. `cases` excludes inputs that do not meet the hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub target: String,
    pub field: String,
    pub mode: String,
    pub cases: u64,
    pub agreements: u64,
    pub violations: u64,
    pub skipped: u64,
    pub first_violation: Option<String>,
}

impl Summary {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} over {}]: {} cases, {} agreements, {} violations, {} skipped -> {}",
            self.target,
            self.mode,
            self.field,
            self.cases,
            self.agreements,
            self.violations,
            self.skipped,
            if self.pass() { "PASS" } else { "FAIL" }
        )?;
        if let Some(v) = &self.first_violation {
            write!(f, "\n  first violation: {v}")?;
        }
        Ok(())
    }
}

pub fn describe(id: &str) -> Option<&'static str> {
    TARGETS.iter().find(|t| t.id == id).map(|t| t.statement)
}

/// Runs the sweep for `id`.
pub fn verify(id: &str, opts: &VerifyOptions) -> Result<Summary> {
    let sweep: fn(&Sweep) -> Result<Tally> = match id {
        "thm:ag" => sweep_ag,
        "pp:dual" => sweep_dual,
        "thm:mp" => sweep_mp,
        "co:twoalg" => sweep_twoalg,
        "le:product" => sweep_product,
        "co:product" => sweep_co_product,
        "thm:ansatz" => |s| sweep_ansatz(s, true),
        "co:an1" => |s| sweep_ansatz(s, false),
        "co:aasso" => sweep_aasso,
        "co:mop" => sweep_mop,
        "le:syin" => sweep_syin,
        "co:abas" => sweep_abas,
        "thm:aybea" => sweep_aybea,
        "co:aybea" => sweep_co_aybea,
        "pp:frob" => sweep_frob,
        "co:synoninbi" => sweep_synoninbi,
        "le:frosy" => sweep_frosy,
        "co:frosy1" => sweep_frosy1,
        "thm:equivalence" => sweep_equivalence,
        "co:equivalence1" => sweep_equivalence1,
        "le:syco" => sweep_syco,
        "thm:skewgm" => sweep_skewgm,
        "co:motoaybe1" => sweep_motoaybe1,
        "pp:bialgebra" => sweep_bialgebra,
        "lemma:maybe" => sweep_maybe,
        "pp:mtoop" => sweep_mtoop,
        "co:II-MYBE" => sweep_two_mybe,
        "le:biaspro" => sweep_biaspro,
        "thm:maybeequi" => sweep_maybeequi,
        "co:motoaybe2" => sweep_motoaybe2,
        _ => {
            return Err(LabError::Unknown {
                kind: "verify target",
                name: id.to_string(),
            })
        }
    };
    let tally = sweep(&Sweep { o: opts })?;
    let mode = match opts.mode {
        Mode::Exhaustive => "exhaustive".to_string(),
        Mode::Random { trials, seed } => format!("random(trials={trials}, seed={seed})"),
    };
    Ok(Summary {
        target: id.to_string(),
        field: opts.field.to_string(),
        mode,
        cases: tally.cases,
        agreements: tally.agreements,
        violations: tally.violations,
        skipped: tally.skipped,
        first_violation: tally.first,
    })
}

enum Outcome {
    Agree,
    Violation(String),
    Skip,
}

fn agree(ok: bool, label: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Agree
    } else {
        Outcome::Violation(label())
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    agreements: u64,
    violations: u64,
    skipped: u64,
    first: Option<String>,
}

impl Tally {
    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Agree => {
                self.cases += 1;
                self.agreements += 1;
            }
            Outcome::Violation(w) => {
                self.cases += 1;
                self.violations += 1;
                self.first.get_or_insert(w);
            }
            Outcome::Skip => self.skipped += 1,
        }
    }

    fn absorb(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.add(o);
        }
    }
}

/// Input families shared by the sweeps.
struct Sweep<'a> {
    o: &'a VerifyOptions,
}

const STRUCTURE_CAP: u128 = 6561;

impl Sweep<'_> {
    fn field(&self) -> FieldSpec {
        self.o.field
    }

    fn exhaustive(&self) -> bool {
        self.o.mode == Mode::Exhaustive
    }

    /// Coefficient values used when enumerating structures or sampling.
    fn values(&self) -> Vec<Scalar> {
        let f = self.field();
        if f.is_prime_field() {
            (0..f.characteristic()).map(|v| f.residue(v)).collect()
        } else {
            (-2..=2).map(|v| f.from_i64(v)).collect()
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        let seed = match self.o.mode {
            Mode::Random { seed, .. } => seed,
            Mode::Exhaustive => 0,
        };
        ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn trials(&self) -> usize {
        match self.o.mode {
            Mode::Random { trials, .. } => trials,
            Mode::Exhaustive => 0,
        }
    }

    fn require_prime(&self) -> Result<()> {
        if self.field().is_prime_field() {
            Ok(())
        } else {
            Err(LabError::InvalidField("exhaustive sweeps need a prime field".into()))
        }
    }

    fn random_matrix(&self, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        let vals = self.values();
        let data = (0..rows * cols).map(|_| vals[rng.gen_range(0..vals.len())].clone()).collect();
        Matrix::from_vec(self.field(), rows, cols, data).expect("shape")
    }

    /// All maps `source -> target` (exhaustive) or `trials` random ones.
    fn maps(&self, source: usize, target: usize, salt: u64) -> Result<Vec<LinearMap>> {
        if self.exhaustive() {
            self.require_prime()?;
            let space = SearchSpace::maps(self.field(), source, target)?;
            let out = space
                .enumerate(self.o.budget)?
                .map(|t| match space.candidate(&t) {
                    Candidate::Map(m) => m,
                    Candidate::Tensor(t) => tensor_as_map(&t),
                })
                .collect();
            Ok(out)
        } else {
            let mut rng = self.rng(salt);
            Ok((0..self.trials())
                .map(|_| LinearMap::new(self.random_matrix(&mut rng, target, source)))
                .collect())
        }
    }

    fn tensors(&self, n: usize, symmetry: Symmetry, salt: u64) -> Result<Vec<Tensor2>> {
        if self.exhaustive() {
            self.require_prime()?;
            let space = SearchSpace::tensors(self.field(), n)?.with_symmetry(symmetry)?;
            let out = space
                .enumerate(self.o.budget)?
                .map(|t| match space.candidate(&t) {
                    Candidate::Tensor(t) => t,
                    Candidate::Map(m) => Tensor2::new(m.matrix().clone()).expect("square"),
                })
                .collect();
            Ok(out)
        } else {
            let mut rng = self.rng(salt);
            (0..self.trials())
                .map(|_| {
                    let m = self.random_matrix(&mut rng, n, n);
                    let m = match symmetry {
                        Symmetry::None => m,
                        Symmetry::Symmetric => m.add(&m.transpose()),
                        Symmetry::Skew => m.sub(&m.transpose()),
                    };
                    Tensor2::new(m)
                })
                .collect()
        }
    }

    /// The whole prime field when it is small and the sweep is exhaustive, else `preset`.
    fn scalars(&self, preset: &[i64]) -> Vec<Scalar> {
        let f = self.field();
        let mut out: Vec<Scalar> = if self.exhaustive() && f.is_prime_field() && f.characteristic() <= 5 {
            (0..f.characteristic()).map(|v| f.residue(v)).collect()
        } else {
            preset.iter().map(|&v| f.from_i64(v)).collect()
        };
        let mut seen = Vec::new();
        out.retain(|s| {
            let fresh = !seen.contains(s);
            seen.push(s.clone());
            fresh
        });
        out
    }

    fn algebras(&self) -> Vec<(String, Algebra)> {
        if let Some((name, a)) = &self.o.algebra {
            return vec![(name.clone(), a.clone())];
        }
        let f = self.field();
        let n = self.o.dim_a.unwrap_or(2);
        let mut out: Vec<(String, Algebra)> = fixtures::all(f)
            .into_iter()
            .filter(|x| x.algebra.dim() == n)
            .map(|x| (x.name.to_string(), x.algebra))
            .collect();
        if n == 1 {
            out.push(("Zero1".into(), Algebra::zero(f, 1)));
            out.push(("Unit1".into(), Algebra::from_entries(f, 1, &[(0, 0, 0, 1)]).expect("k is associative")));
        }
        out
    }

    fn dim_v(&self, a: &Algebra) -> usize {
        self.o.dim_v.unwrap_or(a.dim())
    }

    /// Zero, regular and dual-regular bimodules where the shape allows, plus every bimodule
    /// whose action entries lie in `values()` when that family is small.
    fn bimodules(&self, a: &Algebra, m: usize) -> Result<Vec<(String, Bimodule)>> {
        let f = self.field();
        let n = a.dim();
        let mut out = vec![("zero".to_string(), Bimodule::zero_action(f, n, m))];
        if m == n {
            let reg = regular_bimodule(a);
            out.push(("dual".into(), dual_bimodule(&reg)));
            out.push(("regular".into(), reg));
        }
        let vals = self.values();
        let k = 2 * n * m * m;
        let count = (vals.len() as u128).checked_pow(k as u32);
        if matches!(count, Some(c) if c <= STRUCTURE_CAP) {
            for code in 0..count.unwrap() {
                let mut c = code;
                let entries: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let d = (c % vals.len() as u128) as usize;
                        c /= vals.len() as u128;
                        vals[d].clone()
                    })
                    .collect();
                let mats: Vec<Matrix> = entries
                    .chunks(m * m)
                    .map(|ch| Matrix::from_vec(f, m, m, ch.to_vec()).expect("shape"))
                    .collect();
                let (left, right) = mats.split_at(n);
                let v = Bimodule::new(f, n, m, left.to_vec(), right.to_vec())?;
                if validate_bimodule(a, &v)?.pass && !out.iter().any(|(_, w)| w == &v) {
                    out.push((format!("enum{code}"), v));
                }
            }
        }
        Ok(out)
    }

    /// Associative products on a space of dimension `m` used for bimodule algebras.
    fn products(&self, a: &Algebra, m: usize) -> Vec<ProductTable> {
        let f = self.field();
        let mut out = vec![ProductTable::zero(f, m)];
        if m == 1 {
            for v in self.values() {
                if !v.is_zero() {
                    out.push(ProductTable::from_fn(f, 1, |_, _, _| v.clone()));
                }
            }
        } else if m == a.dim() {
            out.push(a.table().clone());
        }
        out
    }

    /// Bimodule algebras of dimension `m` over `a` (validated), with the regular one first.
    fn bimodule_algebras(&self, a: &Algebra, m: usize) -> Result<Vec<(String, BimoduleAlgebra)>> {
        let mut out = Vec::new();
        if m == a.dim() {
            out.push(("regular-algebra".to_string(), BimoduleAlgebra::regular(a)));
        }
        for (name, v) in self.bimodules(a, m)? {
            for (k, p) in self.products(a, m).into_iter().enumerate() {
                let r = BimoduleAlgebra::new(v.clone(), p)?;
                if validate_bimodule_algebra(a, &r)?.pass && !out.iter().any(|(_, s)| s == &r) {
                    out.push((format!("{name}/p{k}"), r));
                }
            }
        }
        Ok(out)
    }

    /// Symmetric nondegenerate invariant forms on `a`.
    fn frobenius_forms(&self, a: &Algebra) -> Result<Vec<BilinearForm>> {
        let mut out = Vec::new();
        for s in self.tensors(a.dim(), Symmetry::Symmetric, 77)? {
            let b = BilinearForm::new(s.table().clone())?;
            if b.is_nondegenerate() && validate_frobenius(a, &b, true)?.pass && !out.contains(&b) {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// `(β, α)` pairs: the full product when exhaustive (within budget), else each α paired
    /// with one β in turn.
    fn pairs<'m>(&self, betas: &'m [LinearMap], maps: &'m [LinearMap]) -> Result<Vec<(&'m LinearMap, &'m LinearMap)>> {
        if betas.is_empty() {
            return Ok(Vec::new());
        }
        if self.exhaustive() {
            let count = betas.len() as u128 * maps.len() as u128;
            if count > self.o.budget {
                return Err(LabError::Budget { count, budget: self.o.budget });
            }
            Ok(betas.iter().flat_map(|b| maps.iter().map(move |al| (b, al))).collect())
        } else {
            Ok(maps.iter().enumerate().map(|(i, al)| (&betas[i % betas.len()], al)).collect())
        }
    }

    /// Evaluates `f` on every item, split over the configured workers. Gate errors count as
    /// skipped inputs. Outcomes keep the item order.
    fn run<T: Sync>(&self, items: &[T], f: impl Fn(&T) -> Result<Outcome> + Sync) -> Result<Vec<Outcome>> {
        let workers = self.o.workers.max(1).min(items.len().max(1));
        let chunk = items.len().div_ceil(workers).max(1);
        let eval = |t: &T| match f(t) {
            Err(LabError::Gate { .. }) => Ok(Outcome::Skip),
            other => other,
        };
        let parts: Vec<Result<Vec<Outcome>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = items
                .chunks(chunk)
                .map(|part| scope.spawn(|| part.iter().map(eval).collect::<Result<Vec<_>>>()))
                .collect();
            handles.into_iter().map(|h| h.join().expect("verify worker panicked")).collect()
        });
        let mut out = Vec::with_capacity(items.len());
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    }
}

fn flag(r: Result<crate::report::Report>) -> Result<bool> {
    Ok(r?.pass)
}

fn invariant_sym_part(a: &Algebra, r: &Tensor2) -> Result<Option<(Tensor2, Tensor2)>> {
    let (alpha, beta) = sym_skew_split(r)?;
    if invariance_residual(a, &beta)?.pass {
        Ok(Some((alpha, beta)))
    } else {
        Ok(None)
    }
}

fn dual_ctx(a: &Algebra, kappa: &Scalar) -> Result<OperatorContext> {
    Ok(OperatorContext::on_bimodule(a, &dual_regular(a))?.with_mass(kappa.clone(), a.field().zero()))
}

fn quarter_shift(f: FieldSpec, kappa: &Scalar) -> Result<Scalar> {
    Ok(&(kappa + &f.one()) * &f.fraction(1, 4)?)
}

fn sweep_ag(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 1)?;
        t.absorb(s.run(&rs, |r| {
            if !aayb_residual(&a, r)?.is_zero() {
                return Ok(Outcome::Skip);
            }
            let p = aguiar_map(&a, r)?;
            let ok = rota_baxter_residual(&a, &p, &a.field().zero())?.pass;
            Ok(agree(ok, || format!("{name}: r={:?}", r.table().entries())))
        })?);
    }
    Ok(t)
}

fn sweep_dual(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let vs = s.bimodules(&a, s.dim_v(&a))?;
        t.absorb(s.run(&vs, |(vn, v)| {
            let ok = validate_bimodule(&a, &dual_bimodule(v))?.pass;
            Ok(agree(ok, || format!("{name}: bimodule {vn}")))
        })?);
    }
    Ok(t)
}

/// Matched pairs with one-dimensional components and every choice of structure constants.
fn one_dim_pairs(s: &Sweep) -> Result<Vec<MatchedPair>> {
    let f = s.field();
    let vals = s.values();
    let one = |v: &Scalar| Matrix::from_vec(f, 1, 1, vec![v.clone()]).expect("1x1");
    let mut out = Vec::new();
    for ca in &vals {
        for cb in &vals {
            let a = Algebra::new(f, 1, vec![ca.clone()])?;
            let b = Algebra::new(f, 1, vec![cb.clone()])?;
            for la in &vals {
                for ra in &vals {
                    for lb in &vals {
                        for rb in &vals {
                            let on_b = Bimodule::new(f, 1, 1, vec![one(la)], vec![one(ra)])?;
                            let on_a = Bimodule::new(f, 1, 1, vec![one(lb)], vec![one(rb)])?;
                            out.push(MatchedPair::new(a.clone(), b.clone(), on_b, on_a)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `c'[i][j][k]` for the basis `f_i = Σ_a g[a][i] e_a`.
fn change_basis(a: &Algebra, g: &Matrix, ginv: &Matrix) -> Result<Algebra> {
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| g.col(i)).collect();
    let prods: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| ginv.apply(&a.mul(&cols[ij / n], &cols[ij % n])))
        .collect();
    Algebra::from_table(ProductTable::from_fn(a.field(), n, |i, j, k| prods[i * n + j][k].clone()))
}

fn perturb(mp: &MatchedPair, rng: &mut ChaCha8Rng, delta: &Scalar) -> Result<MatchedPair> {
    let (which, side) = (rng.gen_range(0..2), rng.gen_range(0..2));
    let target = if which == 0 { &mp.on_b } else { &mp.on_a };
    let mut left = target.left_matrices().to_vec();
    let mut right = target.right_matrices().to_vec();
    let mats = if side == 0 { &mut left } else { &mut right };
    let idx = rng.gen_range(0..mats.len());
    let (r, c) = (rng.gen_range(0..mats[idx].rows()), rng.gen_range(0..mats[idx].cols()));
    let v = mats[idx].get(r, c) + delta;
    mats[idx].set(r, c, v);
    let changed = Bimodule::new(target.field(), target.base_dim(), target.dim(), left, right)?;
    let (on_b, on_a) = if which == 0 {
        (changed, mp.on_a.clone())
    } else {
        (mp.on_b.clone(), changed)
    };
    MatchedPair::new(mp.a.clone(), mp.b.clone(), on_b, on_a)
}

/// Random matched pairs from splittings of known algebras after a block-diagonal change of
/// basis; every other instance has one action coefficient perturbed.
fn random_pairs(s: &Sweep) -> Result<Vec<MatchedPair>> {
    let f = s.field();
    let nil = fixtures::nil2(f);
    let dn = fixtures::dual_num(f);
    let seeds: Vec<(Algebra, Vec<usize>, Vec<usize>)> = vec![
        (fixtures::m2(f), vec![0, 1], vec![2, 3]),
        (fixtures::ut2(f), vec![0, 1], vec![2]),
        (
            crate::matched_pair::semidirect_sum(&nil, &BimoduleAlgebra::regular(&nil))?,
            vec![0, 1],
            vec![2, 3],
        ),
        (
            crate::matched_pair::semidirect_sum(&dn, &BimoduleAlgebra::zero_product(dual_regular(&dn)))?,
            vec![0, 1],
            vec![2, 3],
        ),
    ];
    let mut rng = s.rng(3);
    let mut out = Vec::new();
    for t in 0..s.trials() {
        let (c, ia, ib) = &seeds[t % seeds.len()];
        let d = c.dim();
        let (g, ginv) = loop {
            let mut g = Matrix::zeros(f, d, d);
            for block in [ia, ib] {
                for &i in block.iter() {
                    for &j in block.iter() {
                        let v = s.values()[rng.gen_range(0..s.values().len())].clone();
                        g.set(i, j, v);
                    }
                }
            }
            if let Some(inv) = g.inverse() {
                break (g, inv);
            }
        };
        let c2 = change_basis(c, &g, &ginv)?;
        let mp = split_algebra(&c2, ia, ib)?;
        if t % 2 == 1 {
            let delta = f.from_i64(rng.gen_range(1..=2));
            out.push(perturb(&mp, &mut rng, &delta)?);
        } else {
            out.push(mp);
        }
    }
    Ok(out)
}

fn sweep_mp(s: &Sweep) -> Result<Tally> {
    let pairs = if s.exhaustive() {
        s.require_prime()?;
        one_dim_pairs(s)?
    } else {
        random_pairs(s)?
    };
    let mut t = Tally::default();
    t.absorb(s.run(&pairs, |mp| {
        let lhs = matched_pair_sum_table(mp).is_associative();
        let rhs = validate_matched_pair(mp, false)?.pass;
        Ok(agree(lhs == rhs, || format!("sum associative={lhs} matched pair={rhs}: {mp:?}")))
    })?);
    Ok(t)
}

/// `A ⋉ R` computed directly from the definition.
fn semidirect_table(a: &Algebra, r: &BimoduleAlgebra) -> ProductTable {
    let (n, m) = (a.dim(), r.dim());
    let f = a.field();
    let basis = |i: usize| -> (Vec<Scalar>, Vec<Scalar>) {
        let mut x = vec![f.zero(); n];
        let mut v = vec![f.zero(); m];
        if i < n {
            x[i] = f.one();
        } else {
            v[i - n] = f.one();
        }
        (x, v)
    };
    let prods: Vec<Vec<Scalar>> = (0..(n + m) * (n + m))
        .map(|ij| {
            let ((x1, v1), (x2, v2)) = (basis(ij / (n + m)), basis(ij % (n + m)));
            let mod_part = crate::matrix::vec_add(
                &crate::matrix::vec_add(&r.module().act_left(&x1, &v2), &r.module().act_right(&v1, &x2)),
                &r.mul(&v1, &v2),
            );
            a.mul(&x1, &x2).into_iter().chain(mod_part).collect()
        })
        .collect();
    ProductTable::from_fn(f, n + m, |i, j, k| prods[i * (n + m) + j][k].clone())
}

fn sweep_twoalg(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let m = s.o.dim_v.unwrap_or(1);
        let mut items = Vec::new();
        for (vn, v) in s.bimodules(&a, m)? {
            for p in s.products(&a, m) {
                items.push((vn.clone(), BimoduleAlgebra::new(v.clone(), p)?));
            }
        }
        t.absorb(s.run(&items, |(vn, r)| {
            let lhs = validate_bimodule_algebra(&a, r)?.pass;
            let rhs = semidirect_table(&a, r).is_associative();
            Ok(agree(lhs == rhs, || format!("{name}/{vn}: bimodule algebra={lhs} sum associative={rhs}")))
        })?);
    }
    Ok(t)
}

/// `(A, ., L, R)` and each bimodule of dimension `dim_v` with the zero product.
fn product_contexts(s: &Sweep, a: &Algebra) -> Result<Vec<(String, OperatorContext)>> {
    let mut out = vec![("regular-algebra".to_string(), OperatorContext::regular(a))];
    for (vn, v) in s.bimodules(a, s.dim_v(a))? {
        out.push((vn, OperatorContext::on_bimodule(a, &v)?));
    }
    Ok(out)
}

fn sweep_product(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (cn, ctx) in product_contexts(s, &a)? {
            let alphas = s.maps(ctx.r.dim(), a.dim(), 5)?;
            for lam in s.scalars(&[0, 1]) {
                let c = ctx.clone().with_weight(lam.clone());
                t.absorb(s.run(&alphas, |al| {
                    let (x, y) = assoc_criterion_check(&c, al)?;
                    Ok(agree(x == y, || format!("{name}/{cn} λ={lam}: associative={x} condition={y} α={al:?}")))
                })?);
            }
        }
    }
    Ok(t)
}

fn diamond_assoc(ctx: &OperatorContext, dp: &LinearMap, dm: &LinearMap) -> bool {
    let m = ctx.r.dim();
    let v = ctx.module();
    let prods: Vec<Vec<Scalar>> = (0..m * m)
        .map(|pq| {
            let (u, w) = (v.basis(pq / m), v.basis(pq % m));
            let t = crate::matrix::vec_add(&v.act_left(&dp.apply(&u), &w), &v.act_right(&u, &dm.apply(&w)));
            crate::matrix::vec_add(&t, &crate::matrix::vec_scale(&ctx.r.mul(&u, &w), &ctx.weight))
        })
        .collect();
    ProductTable::from_fn(ctx.field(), m, |i, j, k| prods[i * m + j][k].clone()).is_associative()
}

fn sweep_co_product(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (cn, ctx) in product_contexts(s, &a)? {
            let maps = s.maps(ctx.r.dim(), a.dim(), 7)?;
            let sy_ctx = ctx.clone().with_mass(f.one(), f.zero());
            let mut betas = Vec::new();
            for b in &maps {
                if balance_residual(&sy_ctx, b)?.pass {
                    betas.push(b.clone());
                }
            }
            for lam in s.scalars(&[0, 1]) {
                let c = ctx.clone().with_weight(lam.clone());
                let items = s.pairs(&betas, &maps)?;
                t.absorb(s.run(&items, |(b, al)| {
                    let lhs = diamond_assoc(&c, &al.add(b), &al.sub(b));
                    let rhs = condition_residual(&c, al)?.pass;
                    Ok(agree(lhs == rhs, || format!("{name}/{cn} λ={lam}: diamond associative={lhs} condition={rhs}")))
                })?);
            }
        }
    }
    Ok(t)
}

fn sweep_ansatz(s: &Sweep, with_product: bool) -> Result<Tally> {
    let f = s.field();
    f.require_half("symmetrizer split")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let mut ctxs = Vec::new();
        if with_product {
            ctxs.push(("regular-algebra".to_string(), OperatorContext::regular(&a)));
            for (rn, r) in s.bimodule_algebras(&a, s.dim_v(&a))? {
                if !r.product().is_zero() && r != BimoduleAlgebra::regular(&a) {
                    ctxs.push((rn, OperatorContext::new(a.clone(), r)?));
                }
            }
        } else {
            for (vn, v) in s.bimodules(&a, s.dim_v(&a))? {
                ctxs.push((vn, OperatorContext::on_bimodule(&a, &v)?));
            }
        }
        for (cn, ctx) in ctxs {
            let maps = s.maps(ctx.r.dim(), a.dim(), 11)?;
            let lams = if with_product { s.scalars(&[0, 1, -1]) } else { vec![f.zero()] };
            for lam in lams {
                let c = ctx.clone().with_weight(lam.clone());
                let gate = c.clone().with_mass(f.from_i64(-1), lam.clone());
                let mut betas = Vec::new();
                for b in &maps {
                    if balanced_residual(&gate, b, true)?.pass {
                        betas.push(b.clone());
                    }
                }
                let items = s.pairs(&betas, &maps)?;
                t.absorb(s.run(&items, |(b, al)| {
                    let rep = verify_ansatz(&c, &al.add(b), &al.sub(b))?;
                    Ok(agree(rep.pass, || format!("{name}/{cn} λ={lam}: {}", first_note(&rep))))
                })?);
            }
        }
    }
    Ok(t)
}

fn first_note(rep: &crate::report::Report) -> String {
    rep.first_failure()
        .map(|c| format!("{} {}", c.id, c.note.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn circle_table(a: &Algebra, beta: &LinearMap, sign: i64) -> ProductTable {
    let f = a.field();
    let n = a.dim();
    let c = f.from_i64(-2 * sign);
    let prods: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| crate::matrix::vec_scale(&a.mul(&beta.image(ij / n), &a.basis(ij % n)), &c))
        .collect();
    ProductTable::from_fn(f, n, |i, j, k| prods[i * n + j][k].clone())
}

fn sweep_aasso(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let maps = s.maps(a.dim(), a.dim(), 13)?;
        // item (i): mass (κ, 0), balanced gate, star product associative
        for lam in s.scalars(&[0, 1]) {
            for kappa in s.scalars(&[0, 1, -1]) {
                let ctx = OperatorContext::regular(&a)
                    .with_weight(lam.clone())
                    .with_mass(kappa.clone(), f.zero());
                let mut betas = Vec::new();
                for b in &maps {
                    if balanced_residual(&ctx, b, false)?.pass {
                        betas.push(b.clone());
                    }
                }
                let items = s.pairs(&betas, &maps)?;
                t.absorb(s.run(&items, |(b, al)| {
                    if !extended_o_residual(&ctx, al, b, Gate::Balanced)?.pass {
                        return Ok(Outcome::Skip);
                    }
                    let ok = star_product(&ctx, al)?.is_associative();
                    Ok(agree(ok, || format!("{name} (i) λ={lam} κ={kappa}: star product not associative")))
                })?);
            }
        }
        // item (ii): β a bimodule homomorphism, weight 0, mass -1
        let reg = regular_bimodule(&a);
        let mut homs = Vec::new();
        for b in &maps {
            if bimodule_hom_residual(&a, &reg, b)?.pass {
                homs.push(b.clone());
            }
        }
        let base = OperatorContext::regular(&a).with_mass(f.from_i64(-1), f.zero());
        let items = s.pairs(&homs, &maps)?;
        t.absorb(s.run(&items, |(b, al)| {
            let lhs = extended_o_raw(&base, al, b)?.pass;
            let mut ok = true;
            for (sign, g) in [(1, al.add(b)), (-1, al.sub(b))] {
                let ctx = OperatorContext {
                    a: a.clone(),
                    r: BimoduleAlgebra::regular(&a).with_product(circle_table(&a, b, sign))?,
                    weight: f.one(),
                    kappa: f.zero(),
                    mu: f.zero(),
                };
                ok &= o_operator_residual(&ctx, &g)?.pass == lhs;
            }
            Ok(agree(ok, || format!("{name} (ii): eq:alphak={lhs} disagrees with a weight-one form")))
        })?);
    }
    Ok(t)
}

fn sweep_mop(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let maps = s.maps(a.dim(), a.dim(), 17)?;
        for lam in s.scalars(&[0, 1, -1, 2]) {
            t.absorb(s.run(&maps, |al| {
                let rep = shift_equivalence(&a, al, &lam)?;
                Ok(agree(rep.pass, || format!("{name} λ={lam}: {}", first_note(&rep))))
            })?);
        }
    }
    Ok(t)
}

fn sweep_syin(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let ss = s.tensors(a.dim(), Symmetry::Symmetric, 19)?;
        t.absorb(s.run(&ss, |x| {
            let (i, b, h) = invariance_tri_check(&a, x)?;
            Ok(agree(i == b && b == h, || format!("{name}: invariant={i} balanced={b} hom={h}")))
        })?);
    }
    Ok(t)
}

/// `r = α + β` with `β` symmetric invariant and `α` skew.
fn split_family(s: &Sweep, a: &Algebra, salt: u64) -> Result<Vec<Tensor2>> {
    let mut betas = Vec::new();
    for b in s.tensors(a.dim(), Symmetry::Symmetric, salt)? {
        if invariance_residual(a, &b)?.pass && !betas.contains(&b) {
            betas.push(b);
        }
    }
    let alphas = s.tensors(a.dim(), Symmetry::Skew, salt + 1)?;
    Ok(betas
        .iter()
        .flat_map(|b| alphas.iter().map(move |al| al.add(b)))
        .collect())
}

fn sweep_abas(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    f.require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = split_family(s, &a, 23)?;
        let ctx = dual_ctx(&a, &f.from_i64(-1))?;
        t.absorb(s.run(&rs, |r| {
            let (al, be) = sym_skew_split(r)?;
            let lhs = is_extended_o(&ctx, &tensor_as_map(&al), &tensor_as_map(&be))?;
            let (p, m) = weight_one_residuals(&a, r)?;
            Ok(agree(lhs == p.pass && lhs == m.pass, || {
                format!("{name}: extended={lhs} r={} -r^t={}", p.pass, m.pass)
            }))
        })?);
    }
    Ok(t)
}

fn sweep_aybea(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    f.require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 29)?;
        t.absorb(s.run(&rs, |r| {
            let x = aybe_residual(&a, r)?.is_zero();
            let y = operator_form_residual(&a, r)?.pass;
            Ok(agree(x == y, || format!("{name} (i): aybe={x} operator form={y}")))
        })?);
        for kappa in s.scalars(&[-1, 0, 1]) {
            let ctx = dual_ctx(&a, &kappa)?;
            let eps = quarter_shift(f, &kappa)?;
            t.absorb(s.run(&rs, |r| {
                let Some((al, be)) = invariant_sym_part(&a, r)? else {
                    return Ok(Outcome::Skip);
                };
                let x = eaybe_residual(&a, r, &eps)?.is_zero();
                let y = is_extended_o(&ctx, &tensor_as_map(&al), &tensor_as_map(&be))?;
                Ok(agree(x == y, || format!("{name} (ii) κ={kappa}: eaybe={x} extended={y}")))
            })?);
        }
    }
    Ok(t)
}

/// `(α ± β)(a* ∗ b*) = (α ± β)(a*)(α ± β)(b*)` for both signs.
fn rrtho(a: &Algebra, r: &Tensor2, al: &LinearMap, be: &LinearMap) -> bool {
    let dv = dual_regular(a);
    let fr = tensor_as_map(r);
    let frt = tensor_as_map(&transpose_t(r));
    let n = a.dim();
    [al.add(be), al.sub(be)].iter().all(|g| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (dv.basis(i), dv.basis(j));
                let star = vec_sub(&dv.act_left(&fr.apply(&x), &y), &dv.act_right(&x, &frt.apply(&y)));
                is_zero_vec(&vec_sub(&g.apply(&star), &a.mul(&g.apply(&x), &g.apply(&y))))
            })
        })
    })
}

fn sweep_co_aybea(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    f.require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = split_family(s, &a, 31)?;
        let ctx = dual_ctx(&a, &f.from_i64(-1))?;
        t.absorb(s.run(&rs, |r| {
            let (al, be) = sym_skew_split(r)?;
            let (alm, bem) = (tensor_as_map(&al), tensor_as_map(&be));
            let y = aybe_residual(&a, r)?.is_zero();
            let (p, m) = weight_one_residuals(&a, r)?;
            let ext = is_extended_o(&ctx, &alm, &bem)?;
            let hom = rrtho(&a, r, &alm, &bem);
            let all = [y, p.pass, m.pass, ext, hom];
            Ok(agree(all.iter().all(|&v| v == y), || format!("{name}: aybe/r/-r^t/extended/hom = {all:?}")))
        })?);
        let skews = s.tensors(a.dim(), Symmetry::Skew, 37)?;
        let octx = OperatorContext::on_bimodule(&a, &dual_regular(&a))?;
        t.absorb(s.run(&skews, |r| {
            let y = aybe_residual(&a, r)?.is_zero();
            let o = o_operator_residual(&octx, &tensor_as_map(r))?.pass;
            Ok(agree(y == o, || format!("{name} skew: aybe={y} O-operator={o}")))
        })?);
    }
    Ok(t)
}

fn sweep_frob(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let forms = s.frobenius_forms(&a)?;
        t.absorb(s.run(&forms, |b| {
            let ok = intertwining_check(&a, b)?.pass;
            Ok(agree(ok, || format!("{name}: form {:?}", b.matrix().entries())))
        })?);
    }
    Ok(t)
}

fn sweep_synoninbi(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let ss = s.tensors(a.dim(), Symmetry::Symmetric, 41)?;
        t.absorb(s.run(&ss, |x| {
            if x.table().rank() != a.dim() || !invariance_residual(&a, x)?.pass {
                return Ok(Outcome::Skip);
            }
            let b = form_from_invariant_tensor(&a, x)?;
            let ok = validate_frobenius(&a, &b, true)?.pass;
            Ok(agree(ok, || format!("{name}: s={:?}", x.table().entries())))
        })?);
    }
    Ok(t)
}

fn balanced_hom_mass_one(ctx: OperatorContext, beta: &LinearMap) -> Result<bool> {
    let f = ctx.field();
    flag(balanced_residual(&ctx.with_mass(f.one(), f.zero()), beta, true))
}

fn sweep_frosy(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let maps = s.maps(a.dim(), a.dim(), 43)?;
        for b in s.frobenius_forms(&a)? {
            t.absorb(s.run(&maps, |beta| {
                if !adjoint_check(beta, &b)?.self_adjoint {
                    return Ok(Outcome::Skip);
                }
                let tr = transport(beta, &b)?;
                let sym = map_as_tensor(&tr)?.is_symmetric();
                let base = balanced_hom_mass_one(OperatorContext::regular_bimodule(&a), beta)?;
                let lifted = balanced_hom_mass_one(OperatorContext::on_bimodule(&a, &dual_regular(&a))?, &tr)?;
                Ok(agree(sym && base == lifted, || {
                    format!("{name}: symmetric={sym} base={base} transported={lifted}")
                }))
            })?);
        }
    }
    Ok(t)
}

fn sweep_frosy1(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let ss = s.tensors(a.dim(), Symmetry::Symmetric, 47)?;
        for b in s.frobenius_forms(&a)? {
            t.absorb(s.run(&ss, |x| {
                let (l, r) = pulled_back_balance(&a, &b, x)?;
                Ok(agree(l == r, || format!("{name}: tensor={l} pulled back={r}")))
            })?);
        }
    }
    Ok(t)
}

fn sweep_equivalence(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let maps = s.maps(a.dim(), a.dim(), 53)?;
        for b in s.frobenius_forms(&a)? {
            let mut skew = Vec::new();
            let mut selfadj = Vec::new();
            for m in &maps {
                let fl = adjoint_check(m, &b)?;
                if fl.skew_adjoint {
                    skew.push(m.clone());
                }
                if fl.self_adjoint {
                    selfadj.push(m.clone());
                }
            }
            for kappa in s.scalars(&[0, -1, 1]) {
                let items: Vec<(&LinearMap, &LinearMap)> =
                    selfadj.iter().flat_map(|be| skew.iter().map(move |al| (al, be))).collect();
                t.absorb(s.run(&items, |(al, be)| {
                    let rep = verify_frobenius_equivalence(&a, al, be, &b, &kappa)?;
                    Ok(agree(rep.pass, || format!("{name} κ={kappa}: {}", first_note(&rep))))
                })?);
            }
        }
    }
    Ok(t)
}

fn sweep_equivalence1(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    f.require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 59)?;
        for b in s.frobenius_forms(&a)? {
            let ph = phi(&b)?;
            for kappa in s.scalars(&[-1, 0, 1]) {
                let ctx = OperatorContext::regular_bimodule(&a).with_mass(kappa.clone(), f.zero());
                let eps = quarter_shift(f, &kappa)?;
                t.absorb(s.run(&rs, |r| {
                    let Some((al, be)) = invariant_sym_part(&a, r)? else {
                        return Ok(Outcome::Skip);
                    };
                    let x = eaybe_residual(&a, r, &eps)?.is_zero();
                    let y = is_extended_o(&ctx, &tensor_as_map(&al).compose(&ph), &tensor_as_map(&be).compose(&ph))?;
                    Ok(agree(x == y, || format!("{name} κ={kappa}: eaybe={x} pulled back={y}")))
                })?);
            }
            let skews = s.tensors(a.dim(), Symmetry::Skew, 61)?;
            t.absorb(s.run(&skews, |r| {
                let x = aybe_residual(&a, r)?.is_zero();
                let y = rota_baxter_residual(&a, &tensor_as_map(r).compose(&ph), &f.zero())?.pass;
                Ok(agree(x == y, || format!("{name} skew: aybe={x} rota-baxter={y}")))
            })?);
        }
    }
    Ok(t)
}

fn doubles(s: &Sweep, a: &Algebra) -> Result<Vec<(String, DoubleContext)>> {
    s.bimodules(a, s.o.dim_v.unwrap_or(1))?
        .into_iter()
        .map(|(n, v)| Ok((n, DoubleContext::new(a, &v)?)))
        .collect()
}

fn sweep_syco(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (vn, d) in doubles(s, &a)? {
            let maps = s.maps(d.module().dim(), a.dim(), 67)?;
            t.absorb(s.run(&maps, |b| {
                let (l, r) = lifted_balanced_check(&d, b)?;
                Ok(agree(l == r, || format!("{name}/{vn}: lifted={l} base={r}")))
            })?);
        }
    }
    Ok(t)
}

fn sweep_skewgm(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (vn, d) in doubles(s, &a)? {
            let maps = s.maps(d.module().dim(), a.dim(), 71)?;
            let betas = if s.exhaustive() {
                maps.clone()
            } else {
                s.maps(d.module().dim(), a.dim(), 72)?
            };
            for kappa in s.scalars(&[0, 1, -1]) {
                let items: Vec<(&LinearMap, &LinearMap)> = if s.exhaustive() {
                    betas.iter().flat_map(|b| maps.iter().map(move |al| (al, b))).collect()
                } else {
                    maps.iter().zip(&betas).collect()
                };
                t.absorb(s.run(&items, |(al, b)| {
                    let rep = verify_skewgm(&d, al, b, &kappa)?;
                    Ok(agree(rep.pass, || format!("{name}/{vn} κ={kappa}: {}", first_note(&rep))))
                })?);
            }
        }
    }
    Ok(t)
}

fn sweep_motoaybe1(s: &Sweep) -> Result<Tally> {
    let f = s.field();
    f.require_half("item (v)")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let ps = s.maps(a.dim(), a.dim(), 73)?;
        for lam in s.scalars(&[0, 1, -1, 2]) {
            t.absorb(s.run(&ps, |p| {
                let rep = double_aybe_tests(&a, p, &lam)?;
                Ok(agree(rep.pass, || format!("{name} λ={lam}: {}", first_note(&rep))))
            })?);
        }
        for (vn, d) in doubles(s, &a)? {
            let maps = s.maps(d.module().dim(), a.dim(), 79)?;
            let mut betas = Vec::new();
            for b in &maps {
                if lifted_balanced_check(&d, b)?.1 {
                    betas.push(b.clone());
                }
            }
            for kappa in s.scalars(&[-1, 0, 1]) {
                let items: Vec<_> = s.pairs(&betas, &maps)?.into_iter().map(|(b, al)| (al, b)).collect();
                t.absorb(s.run(&items, |(al, b)| {
                    let rep = double_eaybe_check(&d, al, b, &kappa)?;
                    Ok(agree(rep.pass, || format!("{name}/{vn} κ={kappa}: {}", first_note(&rep))))
                })?);
            }
        }
    }
    Ok(t)
}

fn sweep_bialgebra(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 83)?;
        t.absorb(s.run(&rs, |r| {
            let g = gaybe_residual(&a, r)?.iter().all(|u| u.is_zero());
            let d = dual_product(&a, r)?.is_associative();
            Ok(agree(g == d, || format!("{name}: gaybe={g} dual associative={d}")))
        })?);
    }
    Ok(t)
}

fn sweep_maybe(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 89)?;
        t.absorb(s.run(&rs, |r| {
            let (x, y) = dual_product_routes(&a, r)?;
            Ok(agree(x == y, || format!("{name}: routes differ for r={:?}", r.table().entries())))
        })?);
    }
    Ok(t)
}

fn sweep_mtoop(s: &Sweep) -> Result<Tally> {
    s.field().require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 97)?;
        let ctxs: Vec<OperatorContext> = s
            .scalars(&[-1, 0, 1, 2])
            .iter()
            .map(|k| dual_ctx(&a, k))
            .collect::<Result<_>>()?;
        t.absorb(s.run(&rs, |r| {
            let Some((al, be)) = invariant_sym_part(&a, r)? else {
                return Ok(Outcome::Skip);
            };
            let (alm, bem) = (tensor_as_map(&al), tensor_as_map(&be));
            let mut hyp = false;
            for c in &ctxs {
                if is_extended_o(c, &alm, &bem)? {
                    hyp = true;
                    break;
                }
            }
            if !hyp {
                return Ok(Outcome::Skip);
            }
            let g = gaybe_residual(&a, r)?.iter().all(|u| u.is_zero());
            Ok(agree(g, || format!("{name}: extended pair without GAYBE, r={:?}", r.table().entries())))
        })?);
    }
    Ok(t)
}

fn sweep_two_mybe(s: &Sweep) -> Result<Tally> {
    s.field().require_half("symmetric part")?;
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        let rs = s.tensors(a.dim(), Symmetry::None, 101)?;
        let epss = s.scalars(&[0, 1, -1, 2]);
        t.absorb(s.run(&rs, |r| {
            if invariant_sym_part(&a, r)?.is_none() {
                return Ok(Outcome::Skip);
            }
            let mut solves = false;
            for e in &epss {
                solves |= eaybe_residual(&a, r, e)?.is_zero();
            }
            if !solves {
                return Ok(Outcome::Skip);
            }
            let g = gaybe_residual(&a, r)?.iter().all(|u| u.is_zero());
            Ok(agree(g, || format!("{name}: EAYBE solution without GAYBE, r={:?}", r.table().entries())))
        })?);
    }
    Ok(t)
}

fn sweep_biaspro(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (vn, v) in s.bimodules(&a, s.dim_v(&a))? {
            let ctx = OperatorContext::on_bimodule(&a, &v)?;
            let maps = s.maps(v.dim(), a.dim(), 103)?;
            t.absorb(s.run(&maps, |al| {
                let x = star_product(&ctx, al)?.is_associative();
                let y = condition_residual(&ctx, al)?.pass;
                Ok(agree(x == y, || format!("{name}/{vn}: associative={x} eq:biaspro={y}")))
            })?);
        }
    }
    Ok(t)
}

fn sweep_maybeequi(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (vn, d) in doubles(s, &a)? {
            let maps = s.maps(d.module().dim(), a.dim(), 107)?;
            t.absorb(s.run(&maps, |al| {
                let c = gaybe_lift_conditions(&d, al)?;
                Ok(agree(c.agree(), || format!("{name}/{vn}: {c:?}")))
            })?);
        }
    }
    Ok(t)
}

fn sweep_motoaybe2(s: &Sweep) -> Result<Tally> {
    let mut t = Tally::default();
    for (name, a) in s.algebras() {
        for (rn, r) in s.bimodule_algebras(&a, s.o.dim_v.unwrap_or(1))? {
            let base = OperatorContext::new(a.clone(), r)?;
            let maps = s.maps(base.r.dim(), a.dim(), 109)?;
            for lam in s.scalars(&[0, 1]) {
                for kappa in s.scalars(&[0, 1, -1]) {
                    for mu in s.scalars(&[0, 1]) {
                        let ctx = base
                            .clone()
                            .with_weight(lam.clone())
                            .with_mass(kappa.clone(), mu.clone());
                        let mut betas = Vec::new();
                        for b in &maps {
                            if balanced_residual(&ctx, b, true)?.pass {
                                betas.push(b.clone());
                            }
                        }
                        let items: Vec<_> = s.pairs(&betas, &maps)?.into_iter().map(|(b, al)| (al, b)).collect();
                        t.absorb(s.run(&items, |(al, b)| {
                            if !extended_o_raw(&ctx, al, b)?.pass {
                                return Ok(Outcome::Skip);
                            }
                            let rep = gaybe_o_conditions(&ctx, al, b)?;
                            Ok(agree(rep.pass, || {
                                format!("{name}/{rn} λ={lam} κ={kappa} μ={mu}: {}", first_note(&rep))
                            }))
                        })?);
                    }
                }
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_target_has_a_sweep() {
        let opts = VerifyOptions::new(FieldSpec::Prime(3)).with_dims(Some(1), Some(1));
        for target in TARGETS {
            let s = verify(target.id, &opts).unwrap_or_else(|e| panic!("{}: {e}", target.id));
            assert!(s.pass(), "{s}");
        }
    }

    #[test]
    fn unknown_target_is_rejected() {
        let opts = VerifyOptions::new(FieldSpec::Prime(3));
        assert!(matches!(verify("thm:nope", &opts), Err(LabError::Unknown { .. })));
    }
}
