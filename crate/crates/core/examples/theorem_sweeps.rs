// Exhaustive and seeded random sweeps over registered statements.

use ybelab::error::Result;
use ybelab::field::FieldSpec;
use ybelab::verify::{verify, Mode, VerifyOptions, TARGETS};

pub fn run_example() -> Result<()> {
    println!("{} registered statements", TARGETS.len());
    for id in ["thm:mp", "co:mop", "thm:skewgm", "pp:bialgebra"] {
        let ex = verify(id, &VerifyOptions::new(FieldSpec::Prime(3)).with_mode(Mode::Exhaustive))?;
        println!("{ex}");
        let rnd = verify(id, &VerifyOptions::new(FieldSpec::Rationals).with_mode(Mode::Random { trials: 40, seed: 1 }))?;
        println!("{rnd}");
        assert!(ex.pass() && rnd.pass());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
