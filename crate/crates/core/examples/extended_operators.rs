// Extended O-operators: a modification gate, the residual, and the δ± ansatz.

use ybelab::error::{LabError, Result};
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::matrix::LinearMap;
use ybelab::operator::{extended_o_residual, o_operator_residual, star_product, verify_ansatz, Gate, OperatorContext};

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Rationals;
    let a = fixtures::dual_num(f);
    let ctx = OperatorContext::regular(&a).with_weight(f.one());
    let alpha = LinearMap::identity(f, 2).scale(&f.from_i64(-1));

    let plain = o_operator_residual(&ctx, &alpha)?;
    println!("-id as an O-operator of weight 1 on the dual numbers:\n{plain}");
    let star = star_product(&ctx, &alpha)?;
    println!("induced product associative: {}", star.is_associative());

    let beta = LinearMap::identity(f, 2);
    let massive = ctx.clone().with_mass(f.from_i64(-1), f.one());
    match extended_o_residual(&massive, &alpha, &beta, Gate::BalancedHom) {
        Ok(r) => println!("extended with β = id, mass (-1, 1):\n{r}"),
        Err(LabError::Gate { gate, .. }) => println!("β rejected by gate: {gate}"),
        Err(e) => return Err(e),
    }

    let ansatz = verify_ansatz(&ctx, &alpha.add(&beta), &alpha.sub(&beta))?;
    println!("ansatz comparison:\n{ansatz}");
    assert!(ansatz.pass);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
