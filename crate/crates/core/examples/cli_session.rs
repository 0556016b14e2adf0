// Driving the command line in-process: check, search, construct and verify.

use ybelab::cli::run_with;
use ybelab::error::Result;

fn call(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("ybelab").chain(args.iter().copied()), &mut out, &mut err);
    println!("$ ybelab {}  -> exit {code}", args.join(" "));
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    code
}

pub fn run_example() -> Result<()> {
    assert_eq!(call(&["check", "eq:aybe", "--algebra", "ut2", "--tensor", "flagship"]), 0);
    assert_eq!(call(&["check", "eq:rbo", "--algebra", "nil2", "--map", "id"]), 1);
    assert_eq!(call(&["search", "aayb", "--algebra", "nil2", "--field", "F3"]), 0);
    assert_eq!(call(&["construct", "star", "--algebra", "nil2", "--map", "P1"]), 0);
    assert_eq!(call(&["verify", "le:syin", "--field", "F5", "--exhaustive"]), 0);
    assert_eq!(call(&["check", "eq:rbo", "--algebra", "missing.json"]), 2);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
