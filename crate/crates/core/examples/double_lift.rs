// Lifting a weight-0 Rota-Baxter operator `P` on Nil2 to the skew tensor `P - P²¹` in
// `A ⋉ A*`, which solves the associative Yang-Baxter equation there.

use ybelab::double::{double_aybe_tests, verify_skewgm, DoubleContext};
use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::matrix::{LinearMap, Matrix};
use ybelab::ybe::aybe_residual;

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Rationals;
    let a = fixtures::nil2(f);
    let p = LinearMap::new(Matrix::from_i64_rows(f, &[&[2, 0], &[0, 1]]));
    let d = DoubleContext::regular(&a)?;
    println!("double has dimension {}", d.hat().dim());

    let (_, minus) = d.tilde_pm(&p)?;
    let res = aybe_residual(d.hat(), &minus)?;
    println!("P - P²¹ solves the equation in the double: {}", res.is_zero());

    let zero = LinearMap::zero(f, 2, 2);
    println!("{}", verify_skewgm(&d, &p, &zero, &f.zero())?);
    println!("{}", double_aybe_tests(&a, &p, &f.zero())?);
    assert!(res.is_zero());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
