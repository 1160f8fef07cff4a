//! Extending order-preserving maps to homomorphisms, plus the two
//! standard instances: relativizing below a generator and collapsing
//! onto a chain.

use std::sync::Arc;

use posalg::algebra::FreeAlgebra;
use posalg::lattice::LatticeMode;
use posalg::morphisms::{chain_epimorphism, check_chain_epimorphism, extend_hom, relativize};
use posalg::poset::{antichain, v3, DEFAULT_ENUM_CAP};

fn main() -> posalg::error::Result<()> {
    // a, b ↦ y0 and c ↦ y0 ∨ y1 is order preserving
    let p = Arc::new(v3());
    let target = FreeAlgebra::of(antichain(2));
    let (y0, y1) = (target.gen(0)?, target.gen(1)?);
    let images = vec![y0.clone(), y0.clone(), y0.join(&y1)?];
    let h = extend_hom(p.clone(), target, images)?;
    let src = FreeAlgebra::new(p.clone());
    let e = src.gen_named("c")?.minus(&src.gen_named("a")?)?;
    println!("h({e}) = {}", h.apply(&e)?);
    println!("injective: {}, laws violated: {:?}", h.is_injective()?, h.check_laws(64, 1)?);

    for q in 0..p.len() {
        let (_, r) = relativize(p.clone(), q)?;
        println!(
            "below x({}): keeps {:?}, {} atoms onto {}, bijective {}",
            r.element, r.kept, r.source_atoms, r.target_atoms, r.bijective
        );
    }

    let aug = p.linear_augmentation(3);
    let epi = chain_epimorphism(p.clone(), &aug)?;
    let report = check_chain_epimorphism(&epi, LatticeMode::Inclusive, DEFAULT_ENUM_CAP)?;
    println!("onto chain {:?}: {report:?}", aug.chain.names());
    Ok(())
}
