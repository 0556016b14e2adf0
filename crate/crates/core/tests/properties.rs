//! Hand-derived oracles and randomized invariants.

use proptest::prelude::*;

use ybelab::algebra::Algebra;
use ybelab::bimodule::{validate_bimodule_algebra, BimoduleAlgebra};
use ybelab::error::LabError;
use ybelab::field::{FieldSpec, Scalar};
use ybelab::fixtures;
use ybelab::matched_pair::{matched_pair_sum, semidirect_sum, split_algebra, validate_matched_pair};
use ybelab::matrix::{LinearMap, Matrix};
use ybelab::operator::{
    assoc_criterion_check, diamond_products, extended_o_residual, o_operator_residual, rota_baxter_residual,
    shift_equivalence, star_product, verify_ansatz, Gate, OperatorContext,
};
use ybelab::search::{search, Candidate, Predicate, SearchOptions, SearchSpace, Symmetry};
use ybelab::tensor::Tensor2;
use ybelab::ybe::{aayb_residual, aybe_residual};

const Q: FieldSpec = FieldSpec::Rationals;

fn small() -> impl Strategy<Value = i64> {
    -2i64..=2
}

fn map_q(n: usize, m: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(small(), n * m).prop_map(move |v| {
        LinearMap::new(Matrix::from_vec(Q, m, n, v.into_iter().map(|x| Q.from_i64(x)).collect()).unwrap())
    })
}

fn fixture(i: usize, f: FieldSpec) -> Algebra {
    let all = fixtures::all(f);
    all[i % all.len()].algebra.clone()
}

fn dim2_fixture(i: usize, f: FieldSpec) -> Algebra {
    let all: Vec<_> = fixtures::all(f).into_iter().filter(|x| x.algebra.dim() == 2).collect();
    all[i % all.len()].algebra.clone()
}

fn all_maps(f: FieldSpec, n: usize) -> Vec<LinearMap> {
    let space = SearchSpace::maps(f, n, n).unwrap();
    space
        .enumerate(u128::MAX)
        .unwrap()
        .map(|t| match space.candidate(&t) {
            Candidate::Map(m) => m,
            Candidate::Tensor(_) => unreachable!(),
        })
        .collect()
}

/// On Nil2 (`e1 e1 = e2`), `P` with `P(e1) = a e1 + c e2`, `P(e2) = b e1 + d e2` is Rota-Baxter
/// of weight zero iff `b = 0` and `a (a - 2d) = 0`.
fn nil2_rb_oracle(p: &LinearMap) -> bool {
    let m = p.matrix();
    let (a, b, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
    let two_d = d + d;
    b.is_zero() && (a * &(a - &two_d)).is_zero()
}

#[test]
fn nil2_rota_baxter_matches_hand_solution() {
    for (p, expected) in [(3, 15), (5, 45)] {
        let f = FieldSpec::Prime(p);
        let a = fixtures::nil2(f);
        let mut count = 0;
        for m in all_maps(f, 2) {
            let lib = rota_baxter_residual(&a, &m, &f.zero()).unwrap().pass;
            assert_eq!(lib, nil2_rb_oracle(&m), "{m:?}");
            count += usize::from(lib);
        }
        assert_eq!(count, expected);
    }
}

/// `A⁺ = k1 ⊕ A`, unit last. Products `x_{ab} y_{cd}` are formed as plain products of pure
/// tensors in `A⁺⊗A⁺⊗A⁺`, with the unit filling the empty slot.
struct Unitized {
    n: usize,
    table: Vec<Scalar>,
}

impl Unitized {
    fn new(a: &Algebra) -> Self {
        let f = a.field();
        let n = a.dim();
        let d = n + 1;
        let mut table = vec![f.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    table[(i * d + j) * d + k] = if i == n {
                        if j == k { f.one() } else { f.zero() }
                    } else if j == n {
                        if i == k { f.one() } else { f.zero() }
                    } else if k == n {
                        f.zero()
                    } else {
                        a.table().get(i, j, k).clone()
                    };
                }
            }
        }
        Unitized { n, table }
    }

    fn placed(&self, r: &Tensor2, slots: (usize, usize)) -> Vec<Scalar> {
        let d = self.n + 1;
        let f = r.field();
        let mut out = vec![f.zero(); d * d * d];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut idx = [self.n; 3];
                idx[slots.0] = i;
                idx[slots.1] = j;
                out[(idx[0] * d + idx[1]) * d + idx[2]] = r.get(i, j).clone();
            }
        }
        out
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.n + 1;
        let f = x[0].field();
        let mut out = vec![f.zero(); d * d * d];
        let split = |c: usize| [c / (d * d), (c / d) % d, c % d];
        for (cx, xv) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (cy, yv) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (ix, iy) = (split(cx), split(cy));
                let coeff = xv * yv;
                for k0 in 0..d {
                    let c0 = &self.table[(ix[0] * d + iy[0]) * d + k0];
                    if c0.is_zero() {
                        continue;
                    }
                    for k1 in 0..d {
                        let c1 = &self.table[(ix[1] * d + iy[1]) * d + k1];
                        if c1.is_zero() {
                            continue;
                        }
                        for k2 in 0..d {
                            let c2 = &self.table[(ix[2] * d + iy[2]) * d + k2];
                            if c2.is_zero() {
                                continue;
                            }
                            let slot = &mut out[(k0 * d + k1) * d + k2];
                            *slot = &*slot + &(&coeff * &(c0 * &(c1 * c2)));
                        }
                    }
                }
            }
        }
        out
    }

    /// `r12 r13 + r13 r23 - r23 r12`, restricted to `A⊗A⊗A` (the rest must vanish).
    fn aybe(&self, r: &Tensor2) -> Vec<Scalar> {
        let (r12, r13, r23) = (self.placed(r, (0, 1)), self.placed(r, (0, 2)), self.placed(r, (1, 2)));
        let t1 = self.mul(&r12, &r13);
        let t2 = self.mul(&r13, &r23);
        let t3 = self.mul(&r23, &r12);
        let d = self.n + 1;
        let mut out = Vec::new();
        for c in 0..d * d * d {
            let v = &(&t1[c] + &t2[c]) - &t3[c];
            let idx = [c / (d * d), (c / d) % d, c % d];
            if idx.contains(&self.n) {
                assert!(v.is_zero(), "component outside A⊗A⊗A");
            } else {
                out.push(v);
            }
        }
        out
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn aybe_matches_unitization(i in 0usize..5, seed in prop::collection::vec(small(), 16)) {
        let a = fixture(i, Q);
        let n = a.dim();
        let r = Tensor2::new(Matrix::from_vec(Q, n, n, seed[..n * n].iter().map(|&x| Q.from_i64(x)).collect()).unwrap()).unwrap();
        let lib = aybe_residual(&a, &r).unwrap();
        prop_assert_eq!(lib.entries().to_vec(), Unitized::new(&a).aybe(&r));
    }

    #[test]
    fn nil2_rota_baxter_oracle_over_q(p in map_q(2, 2)) {
        let a = fixtures::nil2(Q);
        prop_assert_eq!(rota_baxter_residual(&a, &p, &Q.zero()).unwrap().pass, nil2_rb_oracle(&p));
    }

    #[test]
    fn associativity_criterion_agrees(i in 0usize..3, regular in any::<bool>(), lam in small(), al in map_q(2, 2)) {
        let a = dim2_fixture(i, Q);
        let ctx = if regular { OperatorContext::regular(&a) } else { OperatorContext::regular_bimodule(&a) };
        let (x, y) = assoc_criterion_check(&ctx.with_weight(Q.from_i64(lam)), &al).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn extended_with_zero_modification_is_o_operator(i in 0usize..3, lam in small(), al in map_q(2, 2)) {
        let a = dim2_fixture(i, Q);
        let ctx = OperatorContext::regular(&a).with_weight(Q.from_i64(lam));
        let zero = LinearMap::zero(Q, 2, 2);
        let ext = extended_o_residual(&ctx, &al, &zero, Gate::BalancedHom).unwrap();
        let plain = o_operator_residual(&ctx, &al).unwrap();
        prop_assert_eq!(ext.pass, plain.pass);
        prop_assert_eq!(&ext.checks[0].witness, &plain.checks[0].witness);
        prop_assert_eq!(ext.checks[0].failures, plain.checks[0].failures);
    }

    #[test]
    fn ansatz_never_disagrees(i in 0usize..3, lam in small(), c in small(), al in map_q(2, 2)) {
        let a = dim2_fixture(i, Q);
        let ctx = OperatorContext::regular(&a).with_weight(Q.from_i64(lam));
        let beta = LinearMap::identity(Q, 2).scale(&Q.from_i64(c));
        match verify_ansatz(&ctx, &al.add(&beta), &al.sub(&beta)) {
            Ok(rep) => prop_assert!(rep.pass, "{}", rep),
            Err(LabError::Gate { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn diamond_products_form_bimodule_algebras(i in 0usize..3, lam in small(), c in small()) {
        let a = dim2_fixture(i, Q);
        let ctx = OperatorContext::regular(&a).with_weight(Q.from_i64(lam));
        let beta = LinearMap::identity(Q, 2).scale(&Q.from_i64(c));
        if let Ok((p, m)) = diamond_products(&ctx, &beta) {
            for t in [p, m] {
                let r = ctx.r.with_product(t).unwrap();
                prop_assert!(validate_bimodule_algebra(&a, &r).unwrap().pass);
            }
        }
    }

    #[test]
    fn shift_equivalence_never_disagrees(i in 0usize..3, lam in small(), al in map_q(2, 2)) {
        let a = dim2_fixture(i, Q);
        prop_assert!(shift_equivalence(&a, &al, &Q.from_i64(lam)).unwrap().pass);
    }

    #[test]
    fn aayb_is_aybe_of_opposite(i in 0usize..5, seed in prop::collection::vec(small(), 16)) {
        let a = fixture(i, Q);
        let n = a.dim();
        let r = Tensor2::new(Matrix::from_vec(Q, n, n, seed[..n * n].iter().map(|&x| Q.from_i64(x)).collect()).unwrap()).unwrap();
        prop_assert_eq!(aayb_residual(&a, &r).unwrap(), aybe_residual(&a.opposite(), &r).unwrap());
    }

    #[test]
    fn field_laws(p in prop::sample::select(vec![0u64, 2, 3, 5, 7]), x in -9i64..9, y in -9i64..9, z in -9i64..9) {
        let f = if p == 0 { Q } else { FieldSpec::Prime(p) };
        let (x, y, z) = (f.from_i64(x), f.from_i64(y), f.from_i64(z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, f.zero());
        if let Some(inv) = x.inverse() {
            prop_assert_eq!(&x * &inv, f.one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn semidirect_sums_split_back(i in 0usize..3, zero_product in any::<bool>()) {
        let a = dim2_fixture(i, Q);
        let r = if zero_product {
            BimoduleAlgebra::zero_product(ybelab::bimodule::regular_bimodule(&a))
        } else {
            BimoduleAlgebra::regular(&a)
        };
        let sum = semidirect_sum(&a, &r).unwrap();
        let mp = split_algebra(&sum, &[0, 1], &[2, 3]).unwrap();
        prop_assert!(validate_matched_pair(&mp, false).unwrap().pass);
        let back = matched_pair_sum(&mp).unwrap();
        prop_assert_eq!(back.table().constants(), sum.table().constants());
    }

    #[test]
    fn search_ignores_worker_count(workers in 1usize..9, which in 0usize..4) {
        let f = FieldSpec::Prime(3);
        let a = fixtures::dual_num(f);
        let (space, pred) = match which {
            0 => (SearchSpace::tensors(f, 2).unwrap(), Predicate::aybe(&a)),
            1 => (SearchSpace::tensors(f, 2).unwrap().with_symmetry(Symmetry::Skew).unwrap(), Predicate::aayb(&a)),
            2 => (SearchSpace::maps(f, 2, 2).unwrap(), Predicate::rota_baxter(&a, &f.one())),
            _ => (SearchSpace::maps(f, 2, 2).unwrap(), Predicate::o_operator(&OperatorContext::regular(&a))),
        };
        let one = search(&space, &pred, SearchOptions::default().with_workers(1)).unwrap();
        let many = search(&space, &pred, SearchOptions::default().with_workers(workers)).unwrap();
        prop_assert_eq!(one.to_json(), many.to_json());
    }
}

#[test]
fn weight_zero_rota_baxter_gives_associative_star_product() {
    let f = FieldSpec::Prime(3);
    for fx in fixtures::all(f).into_iter().filter(|x| x.algebra.dim() == 2) {
        let a = &fx.algebra;
        let ctx = OperatorContext::regular_bimodule(a);
        let mut seen = 0;
        for p in all_maps(f, 2) {
            if rota_baxter_residual(a, &p, &f.zero()).unwrap().pass {
                seen += 1;
                assert!(star_product(&ctx, &p).unwrap().is_associative(), "{} {p:?}", fx.name);
            }
        }
        assert!(seen > 0);
    }
}

#[test]
fn associativity_criterion_exhaustive_f3() {
    let f = FieldSpec::Prime(3);
    let maps = all_maps(f, 2);
    for fx in fixtures::all(f).into_iter().filter(|x| x.algebra.dim() == 2) {
        for ctx in [OperatorContext::regular(&fx.algebra), OperatorContext::regular_bimodule(&fx.algebra)] {
            for lam in 0..3 {
                let c = ctx.clone().with_weight(f.residue(lam));
                for al in &maps {
                    let (x, y) = assoc_criterion_check(&c, al).unwrap();
                    assert_eq!(x, y, "{} λ={lam} {al:?}", fx.name);
                }
            }
        }
    }
}
