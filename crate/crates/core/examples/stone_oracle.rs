//! The set-theoretic model: points are final segments, generators are
//! the sets of points containing an element.

use posalg::expr::Expr;
use posalg::poset::{chain, v3};
use posalg::stone::{check_binary_subbase, interval_algebra_check, StoneSpace, SubfamilyScan};

fn main() -> posalg::error::Result<()> {
    let p = v3();
    let space = StoneSpace::of(&p)?;
    println!("{} points", space.len());
    for x in 0..p.len() {
        println!("  V_{} = {:?}", p.element_name(x), space.clopen_to_names(&space.v_set(x)?));
    }

    let e = Expr::parse("x(a) | x(b)")?;
    println!("{e} denotes {:?}", space.clopen_to_names(&space.denote_expr(&e)?));

    let gens: Vec<_> = (0..p.len()).map(|x| space.v_set(x)).collect::<Result<_, _>>()?;
    let closure = space.subalgebra_closure(&gens, 1 << 10)?;
    println!("generated subalgebra: {} sets, generates everything: {}", closure.len(), space.generates(&gens));

    let subbase = check_binary_subbase(&chain(4), SubfamilyScan::Exhaustive)?;
    println!("binary subbase on a 4-chain: {} subfamilies, holds {}", subbase.subfamilies_checked, subbase.holds());

    let r = interval_algebra_check(5)?;
    println!("interval algebra of a 5-chain: {} atoms, isomorphic {}", r.interval_atoms, r.isomorphic);
    Ok(())
}
