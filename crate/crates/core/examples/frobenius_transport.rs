// The trace form on the dual numbers transports operators on `A` to tensors in `A⊗A`.

use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::frobenius::{adjoint_check, intertwining_check, validate_frobenius, verify_frobenius_equivalence, BilinearForm};
use ybelab::matrix::{LinearMap, Matrix};

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Rationals;
    let a = fixtures::dual_num(f);
    let b = BilinearForm::new(Matrix::from_i64_rows(f, &[&[0, 1], &[1, 0]]))?;
    println!("symmetric Frobenius form:\n{}", validate_frobenius(&a, &b, true)?);
    println!("φ intertwines the regular and coregular actions:\n{}", intertwining_check(&a, &b)?);

    // B⁻¹S is skew-adjoint for skew S and self-adjoint for symmetric S
    let binv = b.matrix().inverse().expect("nondegenerate");
    let alpha = LinearMap::new(binv.mul(&Matrix::from_i64_rows(f, &[&[0, 1], &[-1, 0]])));
    let beta = LinearMap::new(binv.mul(b.matrix()));
    println!("α: {:?}, β: {:?}", adjoint_check(&alpha, &b)?, adjoint_check(&beta, &b)?);

    for kappa in [0, -1] {
        let rep = verify_frobenius_equivalence(&a, &alpha, &beta, &b, &f.from_i64(kappa))?;
        println!("κ = {kappa}:\n{rep}");
        assert!(rep.pass);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
