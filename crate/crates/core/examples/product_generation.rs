//! Generators of a product algebra from lattice elements of the factors.

use std::sync::Arc;

use posalg::lattice::{enumerate_l, LatticeMode};
use posalg::morphisms::{check_emap, product_generation_check, EMap};
use posalg::poset::{antichain, chain, v3, DEFAULT_ENUM_CAP};

fn main() -> posalg::error::Result<()> {
    let p = Arc::new(v3());
    let q = Arc::new(chain(2));
    let e = EMap::new(p.clone(), q.clone())?;
    println!("product poset has {} elements", e.product_poset().len());

    let lp = enumerate_l(&p, LatticeMode::Strict, DEFAULT_ENUM_CAP)?;
    let lq = enumerate_l(&q, LatticeMode::Strict, DEFAULT_ENUM_CAP)?;
    for a in lp.iter().take(3) {
        for b in &lq {
            println!("E({a}, {b}) = {}", e.eval(a, b)?);
        }
    }
    let report = check_emap(p.clone(), q.clone(), DEFAULT_ENUM_CAP)?;
    println!("{report:?}");

    let r = Arc::new(antichain(2));
    let lr = enumerate_l(&r, LatticeMode::Inclusive, DEFAULT_ENUM_CAP)?;
    let lp = enumerate_l(&p, LatticeMode::Inclusive, DEFAULT_ENUM_CAP)?;
    let g = product_generation_check(p, r, &lp, &lr, DEFAULT_ENUM_CAP)?;
    println!(
        "{} generators over {} points: {} classes, generates {}",
        g.generators, g.points, g.generated_atoms, g.generates
    );
    Ok(())
}
