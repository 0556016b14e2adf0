// Exhaustive search for Rota-Baxter operators of weight 0 on the 2-dimensional nilpotent
// algebra over F3, cross-checked against the hand solution `P(e2) ∈ k e2`, `a(a - 2d) = 0`.

use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::fixtures;
use ybelab::search::{certify, search, Predicate, SearchOptions, SearchSpace};

pub fn run_example() -> Result<()> {
    let f = FieldSpec::Prime(3);
    let a = fixtures::nil2(f);
    let space = SearchSpace::maps(f, 2, 2)?;
    let pred = Predicate::rota_baxter(&a, &f.zero());
    let set = search(&space, &pred, SearchOptions::default())?;
    println!("{} of {} maps are Rota-Baxter of weight 0", set.count, set.examined);
    for p in set.maps() {
        let m = p.matrix();
        let (x, b, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
        assert!(b.is_zero() && (x * &(x - &(d + d))).is_zero());
        println!("  P(e1) = {:?}, P(e2) = {:?}", p.image(0), p.image(1));
    }
    assert_eq!(set.count, 15);
    assert!(certify(&set, &pred)?.pass);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
