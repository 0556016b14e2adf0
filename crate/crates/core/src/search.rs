//! Exhaustive and seeded-random search over coefficient tables with entries in `F_p`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{LinearMap, Matrix};
use crate::operator::{extended_o_residual, o_operator_residual, rota_baxter_residual, Gate, OperatorContext};
use crate::report::{IdentityCheck, Report};
use crate::tensor::Tensor2;
use crate::ybe::{aayb_residual, aybe_residual, eaybe_residual, gaybe_residual, operator_form_residual};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Shape {
    /// `n × n` tensor table.
    Tensor { n: usize },
    /// Map with a `target × source` matrix.
    Map { source: usize, target: usize },
}

impl Shape {
    fn rows_cols(&self) -> (usize, usize) {
        match *self {
            Shape::Tensor { n } => (n, n),
            Shape::Map { source, target } => (target, source),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    #[default]
    None,
    Symmetric,
    Skew,
}

/// Candidate tables with one free coefficient per free position, enumerated lexicographically
/// (first free position most significant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub shape: Shape,
    pub field: FieldSpec,
    pub symmetry: Symmetry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<bool>>,
}

impl SearchSpace {
    pub fn tensors(field: FieldSpec, n: usize) -> Result<Self> {
        SearchSpace::new(Shape::Tensor { n }, field, Symmetry::None)
    }

    pub fn maps(field: FieldSpec, source: usize, target: usize) -> Result<Self> {
        SearchSpace::new(Shape::Map { source, target }, field, Symmetry::None)
    }

    pub fn new(shape: Shape, field: FieldSpec, symmetry: Symmetry) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(LabError::InvalidField("search runs over prime fields only".into()));
        }
        if symmetry != Symmetry::None {
            let (r, c) = shape.rows_cols();
            if r != c {
                return Err(LabError::Shape("symmetry constraints need a square table".into()));
            }
        }
        Ok(SearchSpace {
            shape,
            field,
            symmetry,
            support: None,
        })
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Result<Self> {
        let s = SearchSpace::new(self.shape, self.field, symmetry)?;
        self.symmetry = s.symmetry;
        Ok(self)
    }

    /// Restricts nonzero entries to positions where `mask[row * cols + col]` holds. With a
    /// symmetry constraint the mask must be symmetric.
    pub fn with_support(mut self, mask: Vec<bool>) -> Result<Self> {
        let (r, c) = self.shape.rows_cols();
        if mask.len() != r * c {
            return Err(LabError::Shape(format!("support mask has {} entries, expected {}", mask.len(), r * c)));
        }
        if self.symmetry != Symmetry::None && (0..r).any(|i| (0..c).any(|j| mask[i * c + j] != mask[j * c + i])) {
            return Err(LabError::Shape("support mask must be symmetric".into()));
        }
        self.support = Some(mask);
        Ok(self)
    }

    fn in_support(&self, i: usize, j: usize) -> bool {
        let (_, c) = self.shape.rows_cols();
        self.support.as_ref().is_none_or(|m| m[i * c + j])
    }

    /// Positions `(row, col)` carrying a free coefficient, in enumeration order.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        let (r, c) = self.shape.rows_cols();
        let char2 = self.field.characteristic() == 2;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let keep = match self.symmetry {
                    Symmetry::None => true,
                    Symmetry::Symmetric => i <= j,
                    Symmetry::Skew => i < j || (i == j && char2),
                };
                if keep && self.in_support(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn candidate_count(&self) -> Option<u128> {
        (self.field.characteristic() as u128).checked_pow(self.free_positions().len() as u32)
    }

    pub fn check_budget(&self, budget: u128) -> Result<u128> {
        match self.candidate_count() {
            Some(count) if count <= budget => Ok(count),
            Some(count) => Err(LabError::Budget { count, budget }),
            None => Err(LabError::Budget { count: u128::MAX, budget }),
        }
    }

    fn decode(&self, mut code: u128, k: usize) -> Vec<u64> {
        let p = self.field.characteristic() as u128;
        let mut digits = vec![0u64; k];
        for d in digits.iter_mut().rev() {
            *d = (code % p) as u64;
            code /= p;
        }
        digits
    }

    /// Full coefficient table (row-major residues) for free coefficients `digits`.
    pub fn table_from_digits(&self, positions: &[(usize, usize)], digits: &[u64]) -> Vec<u64> {
        let (r, c) = self.shape.rows_cols();
        let p = self.field.characteristic();
        let mut table = vec![0u64; r * c];
        for (&(i, j), &d) in positions.iter().zip(digits) {
            table[i * c + j] = d;
            match self.symmetry {
                Symmetry::None => {}
                Symmetry::Symmetric => table[j * c + i] = d,
                Symmetry::Skew => {
                    if i != j {
                        table[j * c + i] = (p - d) % p;
                    }
                }
            }
        }
        table
    }

    pub fn candidate(&self, table: &[u64]) -> Candidate {
        let (r, c) = self.shape.rows_cols();
        let data: Vec<Scalar> = table.iter().map(|&v| self.field.residue(v)).collect();
        let m = Matrix::from_vec(self.field, r, c, data).expect("table shape");
        match self.shape {
            Shape::Tensor { .. } => Candidate::Tensor(Tensor2::new(m).expect("square table")),
            Shape::Map { .. } => Candidate::Map(LinearMap::new(m)),
        }
    }

    /// All tables in lexicographic order, after a budget check.
    pub fn enumerate(&self, budget: u128) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        let count = self.check_budget(budget)?;
        let positions = self.free_positions();
        let k = positions.len();
        Ok((0..count).map(move |code| self.table_from_digits(&positions, &self.decode(code, k))))
    }
}

/// A search candidate.
#[derive(Clone, Debug)]
pub enum Candidate {
    Tensor(Tensor2),
    Map(LinearMap),
}

type TensorFn = dyn Fn(&Tensor2) -> Result<bool> + Send + Sync;
type MapFn = dyn Fn(&LinearMap) -> Result<bool> + Send + Sync;

#[derive(Clone)]
enum Test {
    Tensor(Arc<TensorFn>),
    Map(Arc<MapFn>),
}

/// A named residual check on tensors or maps.
#[derive(Clone)]
pub struct Predicate {
    id: String,
    test: Test,
}

impl std::fmt::Debug for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Predicate({})", self.id)
    }
}

/// Names accepted by [`Predicate::by_name`].
pub const REGISTRY: [&str; 8] = ["aybe", "aayb", "eaybe", "gaybe", "operator_form", "rb", "o_op", "ext_o"];

/// Inputs for registry lookups.
#[derive(Clone, Debug)]
pub struct PredicateParams {
    pub algebra: Algebra,
    pub context: Option<OperatorContext>,
    pub modification: Option<LinearMap>,
    pub weight: Scalar,
    pub eaybe_mass: Scalar,
}

impl PredicateParams {
    pub fn new(algebra: Algebra) -> Self {
        let z = algebra.field().zero();
        PredicateParams {
            algebra,
            context: None,
            modification: None,
            weight: z.clone(),
            eaybe_mass: z,
        }
    }
}

impl Predicate {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tensor(id: impl Into<String>, f: impl Fn(&Tensor2) -> Result<bool> + Send + Sync + 'static) -> Self {
        Predicate {
            id: id.into(),
            test: Test::Tensor(Arc::new(f)),
        }
    }

    pub fn map(id: impl Into<String>, f: impl Fn(&LinearMap) -> Result<bool> + Send + Sync + 'static) -> Self {
        Predicate {
            id: id.into(),
            test: Test::Map(Arc::new(f)),
        }
    }

    pub fn aybe(a: &Algebra) -> Self {
        let a = a.clone();
        Predicate::tensor("aybe", move |r| Ok(aybe_residual(&a, r)?.is_zero()))
    }

    pub fn aayb(a: &Algebra) -> Self {
        let a = a.clone();
        Predicate::tensor("aayb", move |r| Ok(aayb_residual(&a, r)?.is_zero()))
    }

    pub fn eaybe(a: &Algebra, eps: &Scalar) -> Self {
        let (a, eps) = (a.clone(), eps.clone());
        Predicate::tensor(format!("eaybe({eps})"), move |r| Ok(eaybe_residual(&a, r, &eps)?.is_zero()))
    }

    pub fn gaybe(a: &Algebra) -> Self {
        let a = a.clone();
        Predicate::tensor("gaybe", move |r| Ok(gaybe_residual(&a, r)?.iter().all(|u| u.is_zero())))
    }

    pub fn operator_form(a: &Algebra) -> Self {
        let a = a.clone();
        Predicate::tensor("operator_form", move |r| Ok(operator_form_residual(&a, r)?.pass))
    }

    pub fn rota_baxter(a: &Algebra, weight: &Scalar) -> Self {
        let (a, w) = (a.clone(), weight.clone());
        Predicate::map(format!("rb({w})"), move |p| Ok(rota_baxter_residual(&a, p, &w)?.pass))
    }

    pub fn o_operator(ctx: &OperatorContext) -> Self {
        let ctx = ctx.clone();
        Predicate::map(format!("o_op({})", ctx.weight), move |m| Ok(o_operator_residual(&ctx, m)?.pass))
    }

    /// Extended O-operators for a fixed modification; candidates for which the gate fails are
    /// rejected.
    pub fn extended_o(ctx: &OperatorContext, beta: &LinearMap) -> Self {
        let (ctx, beta) = (ctx.clone(), beta.clone());
        let id = format!("ext_o({},{},{})", ctx.weight, ctx.kappa, ctx.mu);
        Predicate::map(id, move |m| match extended_o_residual(&ctx, m, &beta, Gate::BalancedHom) {
            Ok(r) => Ok(r.pass),
            Err(LabError::Gate { .. }) => Ok(false),
            Err(e) => Err(e),
        })
    }

    /// Registry lookup used by the command line.
    pub fn by_name(name: &str, params: &PredicateParams) -> Result<Self> {
        let a = &params.algebra;
        let ctx = || params.context.clone().unwrap_or_else(|| OperatorContext::regular(a).with_weight(params.weight.clone()));
        Ok(match name {
            "aybe" => Predicate::aybe(a),
            "aayb" => Predicate::aayb(a),
            "eaybe" => Predicate::eaybe(a, &params.eaybe_mass),
            "gaybe" => Predicate::gaybe(a),
            "operator_form" => Predicate::operator_form(a),
            "rb" => Predicate::rota_baxter(a, &params.weight),
            "o_op" => Predicate::o_operator(&ctx()),
            "ext_o" => {
                let c = ctx();
                let beta = params
                    .modification
                    .clone()
                    .ok_or_else(|| LabError::Unknown {
                        kind: "modification for ext_o",
                        name: "(none given)".into(),
                    })?;
                Predicate::extended_o(&c, &beta)
            }
            _ => {
                return Err(LabError::Unknown {
                    kind: "predicate",
                    name: name.to_string(),
                })
            }
        })
    }

    pub fn eval(&self, c: &Candidate) -> Result<bool> {
        match (&self.test, c) {
            (Test::Tensor(f), Candidate::Tensor(t)) => f(t),
            (Test::Map(f), Candidate::Map(m)) => f(m),
            _ => Err(LabError::Shape(format!("predicate {} does not accept this candidate kind", self.id))),
        }
    }
}

/// Sorted, duplicate-free accepted tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub space: SearchSpace,
    pub predicate: String,
    pub examined: u128,
    pub count: usize,
    pub solutions: Vec<Vec<u64>>,
}

impl SolutionSet {
    fn new(space: SearchSpace, predicate: &str, examined: u128, mut solutions: Vec<Vec<u64>>) -> Self {
        solutions.sort();
        solutions.dedup();
        SolutionSet {
            space,
            predicate: predicate.to_string(),
            examined,
            count: solutions.len(),
            solutions,
        }
    }

    pub fn contains(&self, table: &[u64]) -> bool {
        self.solutions.binary_search_by(|s| s.as_slice().cmp(table)).is_ok()
    }

    pub fn candidates(&self) -> impl Iterator<Item = Candidate> + '_ {
        self.solutions.iter().map(|s| self.space.candidate(s))
    }

    pub fn tensors(&self) -> Vec<Tensor2> {
        self.candidates()
            .filter_map(|c| match c {
                Candidate::Tensor(t) => Some(t),
                Candidate::Map(_) => None,
            })
            .collect()
    }

    pub fn maps(&self) -> Vec<LinearMap> {
        self.candidates()
            .filter_map(|c| match c {
                Candidate::Map(m) => Some(m),
                Candidate::Tensor(_) => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution sets serialize")
    }
}

/// Worker count and enumeration budget.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// Exhaustive filter of `space` by `predicate`. The result does not depend on the worker count.
pub fn search(space: &SearchSpace, predicate: &Predicate, opts: SearchOptions) -> Result<SolutionSet> {
    let count = space.check_budget(opts.budget)?;
    let positions = space.free_positions();
    let k = positions.len();
    let workers = (opts.workers.max(1) as u128).min(count.max(1));
    let chunk = count.div_ceil(workers);
    let results: Vec<Result<Vec<Vec<u64>>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let positions = &positions;
                scope.spawn(move || {
                    let start = w * chunk;
                    let end = ((w + 1) * chunk).min(count);
                    let mut found = Vec::new();
                    for code in start..end {
                        let table = space.table_from_digits(positions, &space.decode(code, k));
                        if predicate.eval(&space.candidate(&table))? {
                            found.push(table);
                        }
                    }
                    Ok(found)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    Ok(SolutionSet::new(space.clone(), predicate.id(), count, all))
}

/// `trials` uniformly random candidates from a seeded generator.
pub fn sample(space: &SearchSpace, trials: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions = space.free_positions();
    let p = space.field.characteristic();
    (0..trials)
        .map(|_| {
            let digits: Vec<u64> = positions.iter().map(|_| rng.gen_range(0..p)).collect();
            space.table_from_digits(&positions, &digits)
        })
        .collect()
}

/// Seeded random filter; `examined` counts the trials.
pub fn search_random(space: &SearchSpace, predicate: &Predicate, trials: usize, seed: u64) -> Result<SolutionSet> {
    let mut found = Vec::new();
    for table in sample(space, trials, seed) {
        if predicate.eval(&space.candidate(&table))? {
            found.push(table);
        }
    }
    Ok(SolutionSet::new(space.clone(), predicate.id(), trials as u128, found))
}

/// Re-evaluates every element; check `certify` fails on the first rejected element.
pub fn certify(set: &SolutionSet, predicate: &Predicate) -> Result<Report> {
    let mut check = IdentityCheck::new("certify");
    for (i, table) in set.solutions.iter().enumerate() {
        let ok = predicate.eval(&set.space.candidate(table))?;
        let residual = if ok {
            vec![set.space.field.zero()]
        } else {
            table.iter().map(|&v| set.space.field.residue(v)).collect()
        };
        check.record(&[i], residual);
    }
    Ok(Report::from_checks(vec![check]))
}

/// Coefficient-table bijection used by [`compare_sets`].
pub type Transport<'a> = &'a dyn Fn(&[u64]) -> Vec<u64>;

/// Compares `s1` (optionally transported by `bijection`) with `s2` as sets. Checks
/// `compare.left-only` and `compare.right-only` carry the first element of each difference.
pub fn compare_sets(
    s1: &SolutionSet,
    s2: &SolutionSet,
    bijection: Option<Transport<'_>>,
) -> Result<Report> {
    if s1.space.field != s2.space.field {
        return Err(LabError::FieldMismatch(format!(
            "solution sets over {} and {}",
            s1.space.field, s2.space.field
        )));
    }
    let mut left: Vec<Vec<u64>> = match bijection {
        Some(f) => s1.solutions.iter().map(|s| f(s)).collect(),
        None => s1.solutions.clone(),
    };
    left.sort();
    let before = left.len();
    left.dedup();
    let injective = left.len() == before;
    let field = s1.space.field;
    let as_residual = |t: &[u64]| -> Vec<Scalar> { t.iter().map(|&v| field.residue(v)).collect() };
    let mut lonly = IdentityCheck::new("compare.left-only");
    for t in &left {
        if !s2.contains(t) {
            lonly.record(&[], as_residual(t));
        }
    }
    let mut ronly = IdentityCheck::new("compare.right-only");
    for t in &s2.solutions {
        if left.binary_search(t).is_err() {
            ronly.record(&[], as_residual(t));
        }
    }
    Ok(Report::from_checks(vec![
        IdentityCheck::verdict(
            "compare.injective",
            injective,
            format!("{before} elements map to {} distinct", left.len()),
        ),
        lonly,
        ronly,
    ]))
}
