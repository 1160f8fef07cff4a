//! Parse terms over a poset and compute in its free Boolean algebra.

use posalg::algebra::FreeAlgebra;
use posalg::expr::Expr;
use posalg::poset::v3;

fn main() -> posalg::error::Result<()> {
    let alg = FreeAlgebra::of(v3());
    let term = |s: &str| Expr::parse(s)?.eval(&alg, &|n: &str| alg.gen_named(n));

    // a ≤ c forces x(a) ≤ x(c)
    let a = term("x(a)")?;
    println!("x(a) & x(c) = x(a): {}", term("x(a) & x(c)")?.equals(&a)?);
    println!("x(a) <= x(c): {}", a.leq(&term("x(c)")?)?);
    println!("x(a) & !x(c) is zero: {}", term("x(a) & !x(c)")?.is_zero());

    for s in ["!x(c)", "x(a) | x(b)", "(x(a) | x(b)) & !(x(a) & x(b))", "x(c) | !x(c)"] {
        println!("{s:<32} => {}", term(s)?.to_dnf_string());
    }

    let atoms = alg.atoms()?;
    println!("{} atoms:", atoms.len());
    for atom in &atoms {
        println!("  {atom}");
    }
    Ok(())
}
