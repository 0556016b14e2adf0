//! The twelve acceptance criteria, each timed against its limit. One line per criterion is
//! printed (run with `--nocapture` to see them); the test fails if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ybelab::algebra::Algebra;
use ybelab::bimodule::{regular_bimodule, validate_bimodule, Bimodule};
use ybelab::double::DoubleContext;
use ybelab::error::Result;
use ybelab::field::{FieldSpec, Scalar};
use ybelab::fixtures;
use ybelab::frobenius::{adjoint_check, phi, verify_frobenius_equivalence, BilinearForm};
use ybelab::matrix::{LinearMap, Matrix};
use ybelab::operator::{
    assoc_criterion_check, balanced_residual, is_extended_o, o_operator_residual, rota_baxter_residual,
    shift_equivalence, OperatorContext,
};
use ybelab::search::{compare_sets, search, search_random, Candidate, Predicate, SearchOptions, SearchSpace, Symmetry};
use ybelab::tensor::{map_as_tensor, sym_skew_split, tensor_as_map, Tensor2};
use ybelab::verify::{verify, Mode, VerifyOptions};
use ybelab::ybe::{
    aguiar_map, aybe_residual, dual_product, dual_product_routes, dual_regular, eaybe_residual, gaybe_residual,
    invariance_residual, invariance_tri_check, operator_form_residual,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn all_maps(f: FieldSpec, source: usize, target: usize) -> Vec<LinearMap> {
    let space = SearchSpace::maps(f, source, target).unwrap();
    space
        .enumerate(u128::MAX)
        .unwrap()
        .map(|t| match space.candidate(&t) {
            Candidate::Map(m) => m,
            Candidate::Tensor(_) => unreachable!(),
        })
        .collect()
}

fn all_tensors(f: FieldSpec, n: usize, symmetry: Symmetry) -> Vec<Tensor2> {
    let space = SearchSpace::tensors(f, n).unwrap().with_symmetry(symmetry).unwrap();
    space
        .enumerate(u128::MAX)
        .unwrap()
        .map(|t| match space.candidate(&t) {
            Candidate::Tensor(t) => t,
            Candidate::Map(_) => unreachable!(),
        })
        .collect()
}

fn suffix(problems: &[String]) -> String {
    if problems.is_empty() {
        String::new()
    } else {
        format!("; {}", problems.join("; "))
    }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Flagship skew tensor on the upper triangular matrices.
fn c1_flagship() -> Result<Outcome> {
    let f = FieldSpec::Rationals;
    let a = fixtures::ut2(f);
    let r = Tensor2::from_entries(f, 3, &[(0, 1, 1), (1, 0, -1)]);
    let res = aybe_residual(&a, &r)?;
    let components = res.entries().len();
    let zero = res.entries().iter().all(|c| c.is_zero());
    let form = operator_form_residual(&a, &r)?.pass;
    let ctx = OperatorContext::on_bimodule(&a, &dual_regular(&a))?;
    let o_op = o_operator_residual(&ctx, &tensor_as_map(&r))?.pass;
    ok(
        components == 27 && zero && form && o_op,
        format!("{components} components zero={zero}, operator form={form}, O-operator on dual={o_op}"),
    )
}

/// Associativity of the induced product against the closed-form criterion, all 81 maps.
fn c2_product() -> Result<Outcome> {
    let f = FieldSpec::Prime(3);
    let maps = all_maps(f, 2, 2);
    let mut cases = 0;
    let mut bad = 0;
    let mut assoc_seen = [false; 2];
    for fx in fixtures::all(f).into_iter().filter(|x| x.algebra.dim() == 2) {
        let a = &fx.algebra;
        for ctx in [OperatorContext::regular_bimodule(a), OperatorContext::regular(a)] {
            for lam in [0, 1] {
                let c = ctx.clone().with_weight(f.from_i64(lam));
                for al in &maps {
                    let (x, y) = assoc_criterion_check(&c, al)?;
                    cases += 1;
                    bad += usize::from(x != y);
                    assoc_seen[usize::from(x)] = true;
                }
            }
        }
    }
    ok(
        bad == 0 && assoc_seen == [true, true],
        format!("{cases} cases, {bad} disagreements, both verdicts seen={}", assoc_seen == [true, true]),
    )
}

/// Matched-pair sum associativity against the matched-pair identities, both directions.
fn c3_matched_pairs() -> Result<Outcome> {
    let ex = verify("thm:mp", &VerifyOptions::new(FieldSpec::Prime(3)).with_mode(Mode::Exhaustive))?;
    let rnd = verify(
        "thm:mp",
        &VerifyOptions::new(FieldSpec::Rationals).with_mode(Mode::Random { trials: 1000, seed: 7 }),
    )?;
    ok(
        ex.pass() && rnd.pass() && ex.cases == 729 && rnd.cases == 1000,
        format!(
            "exhaustive F3: {}/{} agree; random Q: {}/{} agree",
            ex.agreements, ex.cases, rnd.agreements, rnd.cases
        ),
    )
}

fn random_map(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> LinearMap {
    let data = (0..n * n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
    LinearMap::new(Matrix::from_vec(f, n, n, data).unwrap())
}

/// Shifted Rota-Baxter equivalence on random maps.
fn c4_shift() -> Result<Outcome> {
    let f = FieldSpec::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    let mut bad = 0;
    for a in [fixtures::dual_num(f), fixtures::nil2(f)] {
        for _ in 0..500 {
            let al = random_map(f, 2, &mut rng);
            for lam in [0, 1, -1, 2] {
                cases += 1;
                bad += usize::from(!shift_equivalence(&a, &al, &f.from_i64(lam))?.pass);
            }
        }
    }
    ok(bad == 0, format!("{cases} cases, {bad} disagreements"))
}

struct AybeaScan {
    cases: usize,
    disagreements: usize,
    eaybe_solutions: Vec<Tensor2>,
}

/// Every tensor on Nil2 over F5 whose symmetric part is invariant, three masses.
fn aybea_scan() -> Result<AybeaScan> {
    let f = FieldSpec::Prime(5);
    let a = fixtures::nil2(f);
    let mut scan = AybeaScan {
        cases: 0,
        disagreements: 0,
        eaybe_solutions: Vec::new(),
    };
    for r in all_tensors(f, 2, Symmetry::None) {
        let (al, be) = sym_skew_split(&r)?;
        if !invariance_residual(&a, &be)?.pass {
            continue;
        }
        for kappa in [-1, 0, 1] {
            let kappa = f.from_i64(kappa);
            let eps = &(&kappa + &f.one()) * &f.fraction(1, 4)?;
            let ctx = OperatorContext::on_bimodule(&a, &dual_regular(&a))?.with_mass(kappa.clone(), f.zero());
            let x = eaybe_residual(&a, &r, &eps)?.is_zero();
            let y = is_extended_o(&ctx, &tensor_as_map(&al), &tensor_as_map(&be))?;
            scan.cases += 1;
            scan.disagreements += usize::from(x != y);
            if x {
                scan.eaybe_solutions.push(r.clone());
            }
        }
    }
    Ok(scan)
}

fn c5_aybea(scan: &AybeaScan) -> Result<Outcome> {
    ok(
        scan.disagreements == 0 && scan.cases > 0,
        format!(
            "{} cases, {} disagreements, {} extended solutions",
            scan.cases,
            scan.disagreements,
            scan.eaybe_solutions.len()
        ),
    )
}

/// Every bimodule structure on a one-dimensional space over `a`.
fn one_dim_bimodules(a: &Algebra) -> Vec<Bimodule> {
    let f = a.field();
    let p = f.characteristic();
    let n = a.dim();
    let mut out = Vec::new();
    for code in 0..p.pow(2 * n as u32) {
        let mut c = code;
        let mut digit = || {
            let d = c % p;
            c /= p;
            Matrix::from_vec(f, 1, 1, vec![f.residue(d)]).unwrap()
        };
        let left: Vec<Matrix> = (0..n).map(|_| digit()).collect();
        let right: Vec<Matrix> = (0..n).map(|_| digit()).collect();
        let v = Bimodule::new(f, n, 1, left, right).unwrap();
        if validate_bimodule(a, &v).unwrap().pass {
            out.push(v);
        }
    }
    out
}

/// Weight-zero O-operators `V -> A` against skew solutions `α - α²¹` in `A ⋉ V*`.
fn c6_skew_lift() -> Result<Outcome> {
    let f = FieldSpec::Prime(3);
    let p = f.characteristic();
    let a = fixtures::nil2(f);
    let n = a.dim();
    let mut modules = one_dim_bimodules(&a);
    let reg = regular_bimodule(&a);
    modules.push(ybelab::bimodule::dual_bimodule(&reg));
    modules.push(reg);
    modules.push(Bimodule::zero_action(f, n, 2));
    let opts = SearchOptions::default().with_workers(workers());
    let mut compared = 0;
    let mut failures = Vec::new();
    let mut total = 0u128;
    for v in &modules {
        let m = v.dim();
        let d = DoubleContext::new(&a, v)?;
        let hat = d.hat().clone();
        let ctx = OperatorContext::on_bimodule(&a, v)?;
        let ops = search(&SearchSpace::maps(f, m, n)?, &Predicate::o_operator(&ctx), opts)?;
        let size = n + m;
        let mask: Vec<bool> = (0..size * size)
            .map(|k| {
                let (i, j) = (k / size, k % size);
                (i < n && j >= n) || (i >= n && j < n)
            })
            .collect();
        let space = SearchSpace::tensors(f, size)?.with_symmetry(Symmetry::Skew)?.with_support(mask)?;
        let sols = search(&space, &Predicate::aybe(&hat), opts)?;
        let lift = move |t: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; size * size];
            for i in 0..n {
                for j in 0..m {
                    let x = t[i * m + j];
                    out[i * size + n + j] = x;
                    out[(n + j) * size + i] = (p - x) % p;
                }
            }
            out
        };
        // the bijection is the same tensor the library builds
        for al in ops.maps().iter().take(3) {
            let (_, minus) = d.tilde_pm(al)?;
            let built: Vec<u64> = minus.table().entries().iter().map(|s| s.residue_value().unwrap()).collect();
            let digits: Vec<u64> = al.matrix().entries().iter().map(|s| s.residue_value().unwrap()).collect();
            if built != lift(&digits) {
                failures.push(format!("dim V={m}: lift disagrees with α̃₋"));
            }
        }
        let rep = compare_sets(&ops, &sols, Some(&lift))?;
        compared += 1;
        total += ops.count as u128;
        if !rep.pass {
            failures.push(format!("dim V={m}: {}", rep));
        }
    }
    ok(
        failures.is_empty(),
        format!("{compared} bimodules, {total} O-operators matched{}", suffix(&failures)),
    )
}

/// Dual products: both routes agree, and associativity matches the generalized equation.
fn c7_dual_product() -> Result<Outcome> {
    let f = FieldSpec::Prime(3);
    let mut cases = 0;
    let mut bad = 0;
    for a in [fixtures::nil2(f), fixtures::dual_num(f)] {
        for r in all_tensors(f, 2, Symmetry::None) {
            let (x, y) = dual_product_routes(&a, &r)?;
            let g = gaybe_residual(&a, &r)?.iter().all(|u| u.is_zero());
            cases += 1;
            bad += usize::from(x != y || dual_product(&a, &r)?.is_associative() != g);
        }
    }
    ok(bad == 0, format!("{cases} cases, {bad} disagreements"))
}

/// Invariance tuples for symmetric tensors and the lifted balance check for maps.
fn c8_constant_tuples() -> Result<Outcome> {
    let mut cases = 0;
    let mut bad = 0;
    let f5 = FieldSpec::Prime(5);
    for fx in fixtures::all(f5).into_iter().filter(|x| x.algebra.dim() == 2) {
        for s in all_tensors(f5, 2, Symmetry::Symmetric) {
            let (x, y, z) = invariance_tri_check(&fx.algebra, &s)?;
            cases += 1;
            bad += usize::from(!(x == y && y == z));
        }
    }
    let f3 = FieldSpec::Prime(3);
    for fx in fixtures::all(f3).into_iter().filter(|x| x.algebra.dim() == 2) {
        let a = &fx.algebra;
        let mut modules = one_dim_bimodules(a);
        modules.push(regular_bimodule(a));
        for v in &modules {
            let d = DoubleContext::new(a, v)?;
            for b in all_maps(f3, v.dim(), a.dim()) {
                let (x, y) = ybelab::double::lifted_balanced_check(&d, &b)?;
                cases += 1;
                bad += usize::from(x != y);
            }
        }
    }
    ok(bad == 0, format!("{cases} cases, {bad} disagreements"))
}

/// Aguiar maps of solutions of the opposite-order equation are Rota-Baxter of weight zero.
fn c9_aguiar() -> Result<Outcome> {
    let f = FieldSpec::Prime(3);
    let opts = SearchOptions::default().with_workers(workers());
    let mut solutions = 0;
    let mut bad = 0;
    for a in [fixtures::nil2(f), fixtures::ut2(f)] {
        let set = search(&SearchSpace::tensors(f, a.dim())?, &Predicate::aayb(&a), opts)?;
        for r in set.tensors() {
            solutions += 1;
            bad += usize::from(!rota_baxter_residual(&a, &aguiar_map(&a, &r)?, &f.zero())?.pass);
        }
    }
    ok(bad == 0 && solutions > 0, format!("{solutions} solutions, {bad} failures"))
}

/// Frobenius transport on the dual numbers with the trace form.
fn c10_frobenius() -> Result<Outcome> {
    let f = FieldSpec::Rationals;
    let a = fixtures::dual_num(f);
    let b = BilinearForm::new(Matrix::from_i64_rows(f, &[&[0, 1], &[1, 0]]))?;
    let phi_inv = phi(&b)?.inverse().expect("nondegenerate");
    let dual_ctx = OperatorContext::on_bimodule(&a, &dual_regular(&a))?.with_mass(f.one(), f.zero());
    let balanced = balanced_residual(&dual_ctx, &phi_inv, true)?.pass;
    let (inv, bal, hom) = invariance_tri_check(&a, &map_as_tensor(&phi_inv)?)?;
    let bmat = b.matrix().clone();
    let binv = bmat.inverse().expect("nondegenerate");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rand_mat = |skew: bool| {
        let data = (0..4).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        let m = Matrix::from_vec(f, 2, 2, data).unwrap();
        let s = if skew { m.sub(&m.transpose()) } else { m.add(&m.transpose()) };
        LinearMap::new(binv.mul(&s))
    };
    let mut cases = 0;
    let mut bad = 0;
    let mut adj_bad = 0;
    for k in 0..500 {
        let al = rand_mat(true);
        let be = rand_mat(false);
        let (sa, sb) = (adjoint_check(&al, &b)?, adjoint_check(&be, &b)?);
        adj_bad += usize::from(!sa.skew_adjoint || !sb.self_adjoint);
        let kappa: Scalar = f.from_i64(if k % 2 == 0 { 0 } else { -1 });
        cases += 1;
        bad += usize::from(!verify_frobenius_equivalence(&a, &al, &be, &b, &kappa)?.pass);
    }
    ok(
        balanced && inv && bal && hom && bad == 0 && adj_bad == 0,
        format!("φ⁻¹ balanced homomorphism={balanced}; {cases} random pairs, {bad} violations"),
    )
}

fn c11_two_mybe(scan: &AybeaScan) -> Result<Outcome> {
    let a = fixtures::nil2(FieldSpec::Prime(5));
    let mut bad = 0;
    for r in &scan.eaybe_solutions {
        bad += usize::from(!gaybe_residual(&a, r)?.iter().all(|u| u.is_zero()));
    }
    ok(
        bad == 0 && !scan.eaybe_solutions.is_empty(),
        format!("{} extended solutions, {bad} fail the generalized equation", scan.eaybe_solutions.len()),
    )
}

/// Solution sets are byte-identical across worker counts and repeated seeded runs.
fn c12_determinism() -> Result<Outcome> {
    let f = FieldSpec::Prime(3);
    let ut2 = fixtures::ut2(f);
    let nil = fixtures::nil2(f);
    let cases: Vec<(SearchSpace, Predicate)> = vec![
        (SearchSpace::tensors(f, 3)?, Predicate::aybe(&ut2)),
        (SearchSpace::tensors(f, 3)?.with_symmetry(Symmetry::Skew)?, Predicate::aayb(&ut2)),
        (SearchSpace::tensors(f, 2)?, Predicate::gaybe(&nil)),
        (SearchSpace::maps(f, 2, 2)?, Predicate::rota_baxter(&nil, &f.one())),
        (SearchSpace::maps(f, 2, 2)?, Predicate::o_operator(&OperatorContext::regular(&nil))),
    ];
    let mut bad = Vec::new();
    for (space, pred) in &cases {
        let runs: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&w| search(space, pred, SearchOptions::default().with_workers(w)).map(|s| s.to_json()))
            .collect::<Result<_>>()?;
        if runs.iter().any(|r| r != &runs[0]) {
            bad.push(format!("{} across workers", pred.id()));
        }
        let x = search_random(space, pred, 300, 12)?.to_json();
        let y = search_random(space, pred, 300, 12)?.to_json();
        if x != y {
            bad.push(format!("{} across seeded runs", pred.id()));
        }
    }
    ok(bad.is_empty(), format!("{} searches x 3 worker counts + 2 seeded runs{}", cases.len(), suffix(&bad)))
}

type Row = (usize, &'static str, u64, Result<Outcome>, Duration);

fn timed(rows: &mut Vec<Row>, id: usize, name: &'static str, limit: u64, f: impl FnOnce() -> Result<Outcome>) {
    let start = Instant::now();
    let out = f();
    rows.push((id, name, limit, out, start.elapsed()));
}

#[test]
fn acceptance_criteria() {
    let mut rows = Vec::new();
    timed(&mut rows, 1, "flagship skew tensor on UT2", 1, c1_flagship);
    timed(&mut rows, 2, "associativity criterion, exhaustive F3", 5, c2_product);
    timed(&mut rows, 3, "matched pairs, both directions", 10, c3_matched_pairs);
    timed(&mut rows, 4, "shifted Rota-Baxter equivalence", 5, c4_shift);
    let mut scan = None;
    timed(&mut rows, 5, "extended equation vs extended O-operator, F5", 30, || {
        let s = aybea_scan()?;
        let out = c5_aybea(&s);
        scan = Some(s);
        out
    });
    timed(&mut rows, 6, "O-operators vs skew solutions in the double", 60, c6_skew_lift);
    timed(&mut rows, 7, "dual product routes and associativity", 10, c7_dual_product);
    timed(&mut rows, 8, "invariance and lifted balance tuples", 10, c8_constant_tuples);
    timed(&mut rows, 9, "Aguiar maps are Rota-Baxter", 30, c9_aguiar);
    timed(&mut rows, 10, "Frobenius transport", 10, c10_frobenius);
    timed(&mut rows, 11, "extended solutions solve the generalized equation", 30, || match &scan {
        Some(s) => c11_two_mybe(s),
        None => ok(false, "criterion 5 scan did not run"),
    });
    timed(&mut rows, 12, "determinism across workers and seeds", 60, c12_determinism);

    let mut failed = Vec::new();
    for (id, name, limit, out, took) in &rows {
        let in_time = *took <= Duration::from_secs(*limit);
        let (pass, detail) = match out {
            Ok(o) => (o.pass && in_time, o.detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {id:>2} {}: {name} ({:.2}s, limit {limit}s) {detail}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if !pass {
            failed.push(*id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
