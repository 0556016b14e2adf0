// Splitting 2x2 matrices into two subalgebras recovers a matched pair whose sum is the original.

use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::matched_pair::{matched_pair_sum, split_algebra, validate_matched_pair};

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Rationals;
    let ut2 = fixtures::ut2(f);
    let mp = split_algebra(&ut2, &[0, 2], &[1])?;
    println!("UT2 = span(E11, E22) ⊕ span(E12):\n{}", validate_matched_pair(&mp, false)?);
    let sum = matched_pair_sum(&mp)?;
    println!("sum is associative: {}", sum.table().is_associative());

    let m2 = fixtures::m2(f);
    match split_algebra(&m2, &[0, 1], &[2, 3]) {
        Ok(mp) => println!("M2 split into rows:\n{}", validate_matched_pair(&mp, false)?),
        Err(e) => println!("M2 split into rows rejected: {e}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
