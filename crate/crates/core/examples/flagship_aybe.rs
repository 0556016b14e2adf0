// The skew tensor `E11⊗E12 - E12⊗E11` on upper triangular 2x2 matrices, checked three ways.

use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::operator::{o_operator_residual, OperatorContext};
use ybelab::tensor::{tensor_as_map, Tensor2};
use ybelab::ybe::{aybe_residual, dual_regular, operator_form_residual};

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Rationals;
    let a = fixtures::ut2(f);
    let r = Tensor2::from_entries(f, 3, &[(0, 1, 1), (1, 0, -1)]);

    let residual = aybe_residual(&a, &r)?;
    println!("direct expansion: {} components, all zero = {}", residual.entries().len(), residual.is_zero());

    let form = operator_form_residual(&a, &r)?;
    println!("operator form:\n{form}");

    let ctx = OperatorContext::on_bimodule(&a, &dual_regular(&a))?;
    let o_op = o_operator_residual(&ctx, &tensor_as_map(&r))?;
    println!("O-operator of weight 0 on the coregular bimodule:\n{o_op}");

    assert!(residual.is_zero() && form.pass && o_op.pass);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
