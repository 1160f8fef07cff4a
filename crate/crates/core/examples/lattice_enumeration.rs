//! Enumerate the product terms and the distributive lattice they generate.

use std::sync::Arc;

use posalg::algebra::FreeAlgebra;
use posalg::lattice::{
    enumerate_l, enumerate_pi, is_iso_is_to_pi, l_join, l_leq, l_meet, lattice_closure, LatticeMode,
};
use posalg::poset::{chain, v3, DEFAULT_ENUM_CAP};

fn main() -> posalg::error::Result<()> {
    let p = Arc::new(v3());
    let pi = enumerate_pi(&p, LatticeMode::Inclusive, DEFAULT_ENUM_CAP)?;
    println!("Pi(V3): {}", pi.iter().map(|t| t.format(&p)).collect::<Vec<_>>().join(", "));

    for mode in [LatticeMode::Inclusive, LatticeMode::Strict] {
        let l = enumerate_l(&p, mode, DEFAULT_ENUM_CAP)?;
        println!("L(V3) {mode:?}: {} elements", l.len());
        for e in &l {
            println!("  degree {}  {e}", e.degree());
        }
    }

    let l = enumerate_l(&p, LatticeMode::Strict, DEFAULT_ENUM_CAP)?;
    let (a, b) = (&l[0], &l[1]);
    println!("{a} v {b} = {}", l_join(a, b)?);
    println!("{a} ^ {b} = {}", l_meet(a, b)?);
    println!("{a} <= {b}: {}", l_leq(a, b)?);

    // on a chain the generators are already closed under meet and join
    let alg = FreeAlgebra::of(chain(4));
    let gens = (0..4).map(|i| alg.gen(i)).collect::<Result<Vec<_>, _>>()?;
    println!("closure of 4-chain generators: {} elements", lattice_closure(&gens, 1 << 10)?.len());

    let iso = is_iso_is_to_pi(&p, DEFAULT_ENUM_CAP)?;
    println!(
        "initial segments vs products: {} / {}, order isomorphic {}",
        iso.initial_segments, iso.products, iso.holds
    );
    Ok(())
}
